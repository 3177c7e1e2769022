// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#include "support.hpp"

namespace dlevo {
namespace testsupport {

const char* example_kb_text() {
  return R"(SIGNATURE
concept OD.
concept TD.
concept TM.
concept RD.
concept FT.
role mf.
TBOX
OD ISA TM.
TD ISA TM.
OD ISA not TD.
RD ISA not TM.
TM ISA exists mf.
TM ISA not FT.
exists mf ISA TM.
exists inv(mf) ISA FT.
id OD : mf.
id FT : inv(mf).
ABOX
OD(s).
mf(s,t1).
TD(b).
TM(p).
)";
}

KnowledgeBase example_kb() { return parse_kb(example_kb_text()); }

KnowledgeBase chain_kb() {
  return parse_kb(R"(SIGNATURE
concept B.
concept C.
concept D.
concept E.
TBOX
B ISA C.
C ISA D.
E ISA D.
ABOX
B(a).
E(a).
)");
}

std::vector<Atom> facts(const Signature& sig, const std::string& text) {
  return parse_facts(text, sig);
}

std::set<Atom> atom_set(const Signature& sig, const std::string& text) {
  std::vector<Atom> v = parse_facts(text, sig);
  return std::set<Atom>(v.begin(), v.end());
}

std::set<Atom> closed_abox(const KnowledgeBase& kb) {
  return closure(kb.tbox, kb.abox).atoms;
}

namespace {

size_t pick(std::mt19937& rng, size_t n) {
  return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
}

bool chance(std::mt19937& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

const std::vector<std::string> kConcepts = {"A", "B", "C", "D"};
const std::vector<std::string> kRoles = {"r", "s"};
const std::vector<std::string> kAttrs = {"u", "v"};
const std::vector<std::string> kInds = {"a", "b", "c", "d", "e"};

BasicConcept random_basic(std::mt19937& rng, bool allow_attr_domain) {
  size_t roll = pick(rng, allow_attr_domain ? 9 : 8);
  if (roll < 4) return BasicConcept::atomic(kConcepts[roll]);
  if (roll < 8)
    return BasicConcept::some(RoleExpr{kRoles[(roll - 4) / 2], roll % 2 == 1});
  return BasicConcept::attr_domain(kAttrs[pick(rng, kAttrs.size())]);
}

RoleExpr random_role(std::mt19937& rng) {
  return RoleExpr{kRoles[pick(rng, kRoles.size())], chance(rng, 0.4)};
}

PathStep random_pure_step(std::mt19937& rng) {
  return PathStep(random_role(rng));
}

Identification random_identification(std::mt19937& rng) {
  Identification id;
  id.base = BasicConcept::atomic(kConcepts[pick(rng, kConcepts.size())]);
  Path first;
  if (chance(rng, 0.2))
    first.steps.push_back(AttributeStep{kAttrs[pick(rng, kAttrs.size())]});
  else
    first.steps.push_back(random_pure_step(rng));
  id.paths.push_back(first);
  if (chance(rng, 0.45)) {
    Path second;
    second.steps.push_back(random_pure_step(rng));
    if (chance(rng, 0.5)) {
      if (chance(rng, 0.5))
        second.steps.push_back(
            PathStep(TestStep{random_basic(rng, false)}));
      else
        second.steps.push_back(random_pure_step(rng));
    }
    id.paths.push_back(second);
  }
  return id;
}

TypedValue random_value(std::mt19937& rng) {
  size_t roll = pick(rng, 4);
  if (roll < 3) return TypedValue::integer(static_cast<long long>(roll) + 1);
  return TypedValue::string("x");
}

Atom random_atom(std::mt19937& rng) {
  size_t roll = pick(rng, 10);
  const std::string& ind = kInds[pick(rng, kInds.size())];
  if (roll < 5) return Atom(kConcepts[pick(rng, kConcepts.size())], ind);
  if (roll < 8)
    return Atom(kRoles[pick(rng, kRoles.size())], ind,
                kInds[pick(rng, kInds.size())]);
  return Atom(kAttrs[pick(rng, kAttrs.size())], ind, random_value(rng));
}

}  // namespace

KnowledgeBase random_kb(std::mt19937& rng) {
  Signature sig;
  for (const std::string& c : kConcepts) sig.declare(SymbolKind::Concept, c);
  for (const std::string& r : kRoles) sig.declare(SymbolKind::Role, r);
  for (const std::string& u : kAttrs) sig.declare(SymbolKind::Attribute, u);

  std::vector<TBoxAssertion> tbox;
  tbox.push_back(random_identification(rng));

  size_t n_pos = pick(rng, 5);
  for (size_t i = 0; i < n_pos; ++i) {
    if (chance(rng, 0.25)) {
      RoleInclusion ri{random_role(rng), random_role(rng), false};
      if (ri.lhs == ri.rhs) continue;
      tbox.push_back(ri);
    } else if (chance(rng, 0.15)) {
      tbox.push_back(AttributeInclusion{kAttrs[0], kAttrs[1], false});
    } else {
      tbox.push_back(ConceptInclusion{random_basic(rng, true),
                                      random_basic(rng, true), false});
    }
  }

  size_t n_neg = pick(rng, 3);
  for (size_t i = 0; i < n_neg; ++i) {
    if (chance(rng, 0.2)) {
      tbox.push_back(RoleInclusion{random_role(rng), random_role(rng), true});
    } else {
      tbox.push_back(ConceptInclusion{random_basic(rng, true),
                                      random_basic(rng, true), true});
    }
  }

  if (chance(rng, 0.25))
    tbox.push_back(AttributeFunctionality{kAttrs[pick(rng, kAttrs.size())]});
  if (chance(rng, 0.2))
    tbox.push_back(
        ValueDomainInclusion{kAttrs[pick(rng, kAttrs.size())],
                             ValueDomain::Integer});
  if (tbox.size() > 8) tbox.resize(8);

  std::set<Atom> abox;
  size_t n_atoms = 1 + pick(rng, 10);
  while (abox.size() < n_atoms) abox.insert(random_atom(rng));

  return make_kb(std::move(sig), std::move(tbox),
                 std::vector<Atom>(abox.begin(), abox.end()));
}

RandomCase random_case(std::mt19937& rng) {
  RandomCase c;
  c.kb = random_kb(rng);
  size_t n = pick(rng, 4);
  for (size_t i = 0; i < n; ++i) c.change.push_back(random_atom(rng));
  return c;
}

Outcome run_fast(const KnowledgeBase& kb, const std::vector<Atom>& change,
                 bool insert) {
  try {
    EvolutionResult r =
        insert ? compute_insertion(kb, change) : compute_deletion(kb, change);
    return {"result", r.kb.abox};
  } catch (const PreconditionError& e) {
    return {e.kind() == PreconditionError::Kind::UnsatKb ? "error:unsat-kb"
                                                         : "error:unsat-facts",
            {}};
  }
}

Outcome run_oracle(const KnowledgeBase& kb, const std::vector<Atom>& change,
                   bool insert, size_t bound) {
  try {
    oracle::OracleResult r = oracle::widtio(
        kb, change, insert ? oracle::Op::Insert : oracle::Op::Delete, bound);
    return {"result", r.atoms};
  } catch (const oracle::BoundExceeded&) {
    return {"bound", {}};
  } catch (const PreconditionError& e) {
    return {e.kind() == PreconditionError::Kind::UnsatKb ? "error:unsat-kb"
                                                         : "error:unsat-facts",
            {}};
  }
}

}  // namespace testsupport
}  // namespace dlevo
