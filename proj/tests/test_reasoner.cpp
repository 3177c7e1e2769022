// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#include <algorithm>

#include "doctest.h"
#include "dlevo/reasoner.hpp"
#include "support.hpp"

using namespace dlevo;
using testsupport::atom_set;
using testsupport::example_kb;

namespace {

std::vector<std::string> texts(const std::set<Atom>& atoms) {
  std::vector<std::string> out;
  for (const Atom& a : atoms) out.push_back(to_text(a));
  return out;
}

}  // namespace

TEST_CASE("closure of the example ABox") {
  KnowledgeBase kb = example_kb();
  ClosedAtomSet closed = closure(kb.tbox, kb.abox);
  CHECK(closed.atoms ==
        atom_set(kb.signature,
                 "OD(s). TM(s). mf(s,t1). FT(t1). TD(b). TM(b). TM(p)."));
}

TEST_CASE("closure base cases") {
  KnowledgeBase kb = example_kb();
  TBoxIndex tbox(kb.tbox);
  CHECK(closure(tbox, {}).atoms.empty());

  std::vector<TBoxAssertion> no_pos = {
      ConceptInclusion{BasicConcept::atomic("OD"), BasicConcept::atomic("TD"),
                       true}};
  std::set<Atom> abox = {Atom("OD", "s"), Atom("TD", "s")};
  CHECK(closure(no_pos, abox).atoms == abox);
}

TEST_CASE("closure follows role and attribute hierarchies") {
  KnowledgeBase kb = parse_kb(R"(SIGNATURE
concept A.
role r.
role q.
attr u.
attr w.
TBOX
r ISA inv(q).
attr u ISA w.
exists q ISA A.
ABOX
r(x,y).
u(x, 3).
)");
  std::set<Atom> closed = closure(kb.tbox, kb.abox).atoms;
  CHECK(closed.count(Atom("q", "y", "x")) == 1);
  CHECK(closed.count(Atom("A", "y")) == 1);
  CHECK(closed.count(Atom("w", "x", TypedValue::integer(3))) == 1);
  CHECK(closed.size() == 5);
}

TEST_CASE("membership witnesses for the three basic concept forms") {
  std::set<Atom> atoms = {Atom("mf", "s", "t1"), Atom("TM", "p"),
                          Atom("age", "s", TypedValue::integer(3))};

  std::vector<Atom> w =
      member_basic(atoms, BasicConcept::some(RoleExpr{"mf", true}), "t1");
  REQUIRE(w.size() == 1);
  CHECK(w[0] == Atom("mf", "s", "t1"));

  CHECK(member_basic(atoms, BasicConcept::atomic("TM"), "p").size() == 1);
  CHECK(member_basic(atoms, BasicConcept::attr_domain("age"), "s").size() ==
        1);
  CHECK(member_basic(atoms, BasicConcept::atomic("TM"), "s").empty());
  CHECK(member_basic({}, BasicConcept::atomic("TM"), "p").empty());
}

TEST_CASE("path evaluation composes steps and collects support") {
  std::set<Atom> atoms = {Atom("OD", "s"), Atom("mf", "s", "t1")};

  Path direct;
  direct.steps.push_back(PathStep(RoleExpr{"mf", false}));
  std::vector<PathMatch> m = eval_path(atoms, direct);
  REQUIRE(m.size() == 1);
  CHECK(m[0].start == "s");
  CHECK(m[0].end == PathEnd("t1"));
  CHECK(m[0].support == std::set<Atom>{Atom("mf", "s", "t1")});

  Path tested;
  tested.steps.push_back(PathStep(TestStep{BasicConcept::atomic("OD")}));
  tested.steps.push_back(PathStep(RoleExpr{"mf", false}));
  m = eval_path(atoms, tested);
  REQUIRE(m.size() == 1);
  CHECK(m[0].support == atoms);

  Path inverse;
  inverse.steps.push_back(PathStep(RoleExpr{"mf", true}));
  m = eval_path(atoms, inverse);
  REQUIRE(m.size() == 1);
  CHECK(m[0].start == "t1");
  CHECK(m[0].end == PathEnd("s"));

  Path through_attr;
  through_attr.steps.push_back(PathStep(RoleExpr{"mf", false}));
  through_attr.steps.push_back(PathStep(AttributeStep{"age"}));
  std::set<Atom> with_attr = atoms;
  with_attr.insert(Atom("age", "t1", TypedValue::integer(9)));
  m = eval_path(with_attr, through_attr);
  REQUIRE(m.size() == 1);
  CHECK(m[0].end == PathEnd(TypedValue::integer(9)));
  CHECK(m[0].support.size() == 2);
}

TEST_CASE("singleton entailment") {
  KnowledgeBase kb = example_kb();
  TBoxIndex tbox(kb.tbox);
  CHECK(entails_atom(tbox, Atom("mf", "b", "t1"), Atom("TM", "b")));
  CHECK(entails_atom(tbox, Atom("mf", "b", "t1"), Atom("FT", "t1")));
  CHECK(entails_atom(tbox, Atom("TM", "p"), Atom("TM", "p")));
  CHECK(!entails_atom(tbox, Atom("TM", "p"), Atom("OD", "p")));
}

TEST_CASE("entailment from an unsatisfiable singleton is a contract error") {
  KnowledgeBase kb = parse_kb(R"(SIGNATURE
attr u.
TBOX
range(u) ISA integer.
ABOX
)");
  TBoxIndex tbox(kb.tbox);
  Atom bad("u", "x", TypedValue::string("oops"));
  try {
    entails_atom(tbox, bad, Atom("u", "x", TypedValue::integer(1)));
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(e.kind() == PreconditionError::Kind::UnsatSingleton);
  }
}

TEST_CASE("subsumee sets") {
  KnowledgeBase kb = example_kb();
  TBoxIndex tbox(kb.tbox);
  ClosedAtomSet closed = closure(tbox, kb.abox);

  CHECK(subsumee(tbox, closed, Atom("TM", "s")) ==
        atom_set(kb.signature, "TM(s). OD(s). mf(s,t1)."));
  CHECK(subsumee(tbox, closed, Atom("RD", "p")).empty());

  KnowledgeBase chain = testsupport::chain_kb();
  TBoxIndex ct(chain.tbox);
  ClosedAtomSet cc = closure(ct, chain.abox);
  CHECK(subsumee(ct, cc, Atom("D", "a")) ==
        atom_set(chain.signature, "B(a). C(a). D(a). E(a)."));
}

TEST_CASE("subsumee rejects a closure from a different TBox") {
  KnowledgeBase kb = example_kb();
  KnowledgeBase chain = testsupport::chain_kb();
  ClosedAtomSet closed = closure(kb.tbox, kb.abox);
  try {
    subsumee(TBoxIndex(chain.tbox), closed, Atom("TM", "s"));
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(e.kind() == PreconditionError::Kind::StaleClosure);
  }
}

TEST_CASE("TBox fingerprint is order independent") {
  KnowledgeBase kb = example_kb();
  std::vector<TBoxAssertion> reversed(kb.tbox.rbegin(), kb.tbox.rend());
  CHECK(TBoxIndex(kb.tbox).fingerprint() ==
        TBoxIndex(reversed).fingerprint());
  CHECK(TBoxIndex(kb.tbox).fingerprint() !=
        TBoxIndex(testsupport::chain_kb().tbox).fingerprint());
}

TEST_CASE("violation sets for the central insertion conflict") {
  KnowledgeBase kb = example_kb();
  TBoxIndex tbox(kb.tbox);
  std::set<Atom> united = closure(tbox, kb.abox).atoms;
  std::set<Atom> cl_f = closure(
      tbox, atom_set(kb.signature, "RD(p). OD(b). mf(b,t1).")).atoms;
  united.insert(cl_f.begin(), cl_f.end());

  std::vector<ViolationSet> vs = violation_sets(tbox, united);
  REQUIRE(vs.size() == 3);

  std::vector<std::pair<std::string, std::set<Atom>>> got;
  for (const ViolationSet& v : vs) got.push_back({to_text(v.violated), v.atoms});

  CHECK(got[0] ==
        std::pair(std::string("OD ISA not TD."),
                  atom_set(kb.signature, "OD(b). TD(b).")));
  CHECK(got[1] ==
        std::pair(std::string("RD ISA not TM."),
                  atom_set(kb.signature, "RD(p). TM(p).")));
  CHECK(got[2] ==
        std::pair(std::string("id OD : mf."),
                  atom_set(kb.signature,
                           "OD(s). OD(b). mf(s,t1). mf(b,t1).")));
}

TEST_CASE("violation sets include derived ways of breaking a constraint") {
  // TM is derivable from mf membership, so {mf(b,t1), FT(b)} breaks
  // TM ISA not FT just as {TM(b), FT(b)} does.
  KnowledgeBase kb = example_kb();
  TBoxIndex tbox(kb.tbox);
  std::set<Atom> closed =
      closure(tbox, atom_set(kb.signature, "mf(b,t1). FT(b).")).atoms;
  std::vector<ViolationSet> vs = violation_sets(tbox, closed);

  bool surface = false, derived = false;
  for (const ViolationSet& v : vs) {
    if (v.atoms == atom_set(kb.signature, "TM(b). FT(b).")) surface = true;
    if (v.atoms == atom_set(kb.signature, "mf(b,t1). FT(b).")) derived = true;
  }
  CHECK(surface);
  CHECK(derived);
}

TEST_CASE("functionality and range violations") {
  KnowledgeBase kb = parse_kb(R"(SIGNATURE
attr age.
TBOX
funct age.
range(age) ISA integer.
ABOX
)");
  TBoxIndex tbox(kb.tbox);

  std::set<Atom> two = {Atom("age", "s", TypedValue::integer(3)),
                        Atom("age", "s", TypedValue::integer(4))};
  std::vector<ViolationSet> vs = violation_sets(tbox, two);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].atoms == two);
  CHECK(to_text(vs[0].violated) == "funct age.");

  std::set<Atom> str = {Atom("age", "s", TypedValue::string("old"))};
  vs = violation_sets(tbox, str);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].atoms == str);
  CHECK(to_text(vs[0].violated) == "range(age) ISA integer.");
}

TEST_CASE("top as a range never violates, other domains are disjoint") {
  KnowledgeBase kb = parse_kb(R"(SIGNATURE
attr u.
attr w.
TBOX
range(u) ISA top.
range(w) ISA rational.
ABOX
u(x, "anything").
w(x, 3).
)");
  TBoxIndex tbox(kb.tbox);
  std::vector<ViolationSet> vs =
      violation_sets(tbox, closure(tbox, kb.abox).atoms);
  // An integer literal is not a rational literal: no datatype subsumption.
  REQUIRE(vs.size() == 1);
  CHECK(to_text(vs[0].violated) == "range(w) ISA rational.");
}

TEST_CASE("identification with an inverse path fires on shared subjects") {
  KnowledgeBase kb = example_kb();
  TBoxIndex tbox(kb.tbox);
  // Both tenancies hang off the same subject s, so the two role atoms alone
  // violate id FT : inv(mf): each one already entails its FT member. The
  // four-atom surface instance is a superset and must not be reported.
  std::set<Atom> closed = closure(
      tbox, atom_set(kb.signature, "FT(t1). FT(t2). mf(s,t1). mf(s,t2).")).atoms;
  std::vector<ViolationSet> vs = violation_sets(tbox, closed);
  REQUIRE(vs.size() == 1);
  CHECK(to_text(vs[0].violated) == "id FT : inv(mf).");
  CHECK(vs[0].atoms == atom_set(kb.signature, "mf(s,t1). mf(s,t2)."));
}

TEST_CASE("emitted violation sets are minimal") {
  KnowledgeBase kb = example_kb();
  TBoxIndex tbox(kb.tbox);
  std::set<Atom> united = closure(tbox, kb.abox).atoms;
  std::set<Atom> cl_f = closure(
      tbox, atom_set(kb.signature, "RD(p). OD(b). mf(b,t1).")).atoms;
  united.insert(cl_f.begin(), cl_f.end());

  for (const ViolationSet& v : violation_sets(tbox, united)) {
    std::vector<TBoxAssertion> check = partition_tbox(kb.tbox).positive;
    check.push_back(v.violated);
    CHECK(!is_satisfiable(TBoxIndex(check), v.atoms));
    for (const Atom& drop : v.atoms) {
      std::set<Atom> sub = v.atoms;
      sub.erase(drop);
      CHECK(is_satisfiable(TBoxIndex(check), sub));
    }
  }
}

TEST_CASE("satisfiability of the running examples") {
  KnowledgeBase kb = example_kb();
  CHECK(is_satisfiable(kb));

  std::set<Atom> extended = kb.abox;
  extended.insert(Atom("RD", "p"));
  CHECK(!is_satisfiable(TBoxIndex(kb.tbox), extended));

  CHECK(is_satisfiable(TBoxIndex(kb.tbox), {}));
}

TEST_CASE("closure results are tied to their TBox by fingerprint") {
  KnowledgeBase kb = example_kb();
  TBoxIndex tbox(kb.tbox);
  ClosedAtomSet closed = closure(tbox, kb.abox);
  CHECK(closed.tbox_fingerprint == tbox.fingerprint());
  CHECK(closure(tbox, closed.atoms).atoms == closed.atoms);
}

TEST_CASE("violation sets come out deterministically ordered") {
  KnowledgeBase kb = example_kb();
  TBoxIndex tbox(kb.tbox);
  std::set<Atom> united = closure(tbox, kb.abox).atoms;
  std::set<Atom> cl_f = closure(
      tbox, atom_set(kb.signature, "RD(p). OD(b). mf(b,t1).")).atoms;
  united.insert(cl_f.begin(), cl_f.end());

  std::vector<ViolationSet> once = violation_sets(tbox, united);
  std::vector<ViolationSet> twice = violation_sets(tbox, united);
  REQUIRE(once.size() == twice.size());
  for (size_t i = 0; i < once.size(); ++i) {
    CHECK(to_text(once[i].violated) == to_text(twice[i].violated));
    CHECK(texts(once[i].atoms) == texts(twice[i].atoms));
  }
}
