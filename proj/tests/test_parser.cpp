// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#include "doctest.h"
#include "dlevo/parser.hpp"
#include "support.hpp"

using namespace dlevo;
using testsupport::example_kb;
using testsupport::example_kb_text;

namespace {

ParseError::Kind kind_of(const std::string& text) {
  try {
    parse_kb(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ParseError::Kind::Lexical;
}

}  // namespace

TEST_CASE("the example KB parses into ten assertions and four atoms") {
  KnowledgeBase kb = example_kb();
  CHECK(kb.tbox.size() == 10);
  CHECK(kb.abox.size() == 4);
  CHECK(kb.abox.count(Atom("mf", "s", "t1")) == 1);
  CHECK(kb.signature.declared(SymbolKind::Role, "mf"));
}

TEST_CASE("empty sections yield the empty KB") {
  KnowledgeBase kb = parse_kb("SIGNATURE\nTBOX\nABOX\n");
  CHECK(kb == KnowledgeBase{});
  CHECK(serialize_kb(kb) == "SIGNATURE\nTBOX\nABOX\n");
}

TEST_CASE("comments and whitespace are insignificant") {
  KnowledgeBase kb = parse_kb(
      "SIGNATURE # vocabulary\n  concept  A .\nTBOX\n\n\nABOX\n A ( x ) .  # fact\n");
  CHECK(kb.abox.count(Atom("A", "x")) == 1);
}

TEST_CASE("fact lists preserve order and duplicates") {
  KnowledgeBase kb = example_kb();
  std::vector<Atom> f =
      parse_facts("RD(p). OD(b). mf(b,t1). RD(p).", kb.signature);
  REQUIRE(f.size() == 4);
  CHECK(f[0] == Atom("RD", "p"));
  CHECK(f[2] == Atom("mf", "b", "t1"));
  CHECK(f[3] == f[0]);
  CHECK(parse_facts("", kb.signature).empty());
}

TEST_CASE("literals default sensibly and accept explicit datatypes") {
  Signature sig;
  sig.declare(SymbolKind::Attribute, "age");
  sig.declare(SymbolKind::Attribute, "name");

  std::vector<Atom> f = parse_facts(
      "age(s, 33). name(s, \"ann\"). age(t, 33^^integer). "
      "name(t, \"33\"^^string). age(u, 1/3^^rational). "
      "name(u, true^^boolean).",
      sig);
  REQUIRE(f.size() == 6);
  CHECK(f[0].value() == TypedValue::integer(33));
  CHECK(f[1].value() == TypedValue::string("ann"));
  CHECK(f[0].value() == f[2].value());
  CHECK(f[3].value() == TypedValue::string("33"));
  CHECK(!(f[3].value() == f[2].value()));
  CHECK(f[4].value() == TypedValue("1/3", Datatype::Rational));
  CHECK(f[5].value() == TypedValue::boolean(true));
}

TEST_CASE("every error category carries a position") {
  CHECK(kind_of("SIGNATURE\nconcept A.\nTBOX\n@") ==
        ParseError::Kind::Lexical);
  CHECK(kind_of("SIGNATURE\nconcept A.\nTBOX\nA ISA") ==
        ParseError::Kind::Syntactic);
  CHECK(kind_of("SIGNATURE\nTBOX\nOD ISA TM.\nABOX\n") ==
        ParseError::Kind::UndeclaredName);
  CHECK(kind_of("SIGNATURE\nconcept A.\nrole r.\nTBOX\nA ISA r.\nABOX\n") ==
        ParseError::Kind::CategoryMismatch);
  CHECK(kind_of("SIGNATURE\nconcept A.\nconcept A.\nTBOX\nABOX\n") ==
        ParseError::Kind::DuplicateDeclaration);
  CHECK(kind_of("SIGNATURE\nconcept A.\nrole r.\nTBOX\nid A : r o r.\n"
                "ABOX\n") == ParseError::Kind::NonLocalId);
  CHECK(kind_of("SIGNATURE\nattr u.\nTBOX\nABOX\nu(x, 1/0^^rational).\n") ==
        ParseError::Kind::BadLiteral);

  try {
    parse_kb("SIGNATURE\nconcept A.\nTBOX\nA ISA\nABOX\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("5:") == 0);
  }
}

TEST_CASE("attribute atoms require literals, role atoms require objects") {
  Signature sig;
  sig.declare(SymbolKind::Role, "r");
  sig.declare(SymbolKind::Attribute, "u");
  CHECK_THROWS_AS(parse_facts("r(x, 3).", sig), ParseError);
  CHECK_THROWS_AS(parse_facts("u(x, y).", sig), ParseError);
  CHECK_THROWS_AS(parse_facts("r(x).", sig), ParseError);
}

TEST_CASE("bare fractions need an explicit datatype") {
  Signature sig;
  sig.declare(SymbolKind::Attribute, "u");
  CHECK_THROWS_AS(parse_facts("u(x, 1/2).", sig), ParseError);
  CHECK(parse_facts("u(x, 1/2^^rational).", sig)[0].value() ==
        TypedValue("1/2", Datatype::Rational));
}

TEST_CASE("predicate names cannot stand for individuals") {
  Signature sig;
  sig.declare(SymbolKind::Concept, "A");
  sig.declare(SymbolKind::Role, "r");
  CHECK_THROWS_AS(parse_facts("r(x, A).", sig), ParseError);
}

TEST_CASE("serialization is canonical and round-trips") {
  KnowledgeBase kb = example_kb();
  std::string rendered = serialize_kb(kb);
  CHECK(rendered == serialize_kb(parse_kb(rendered)));
  CHECK(parse_kb(rendered) == kb);
  CHECK(rendered == serialize_kb(example_kb()));
}

TEST_CASE("serialization does not depend on source order") {
  const char* shuffled = R"(SIGNATURE
role mf.
concept FT.
concept RD.
concept TM.
concept TD.
concept OD.
TBOX
id FT : inv(mf).
exists inv(mf) ISA FT.
id OD : mf.
exists mf ISA TM.
TM ISA not FT.
TM ISA exists mf.
RD ISA not TM.
OD ISA not TD.
TD ISA TM.
OD ISA TM.
ABOX
TM(p).
TD(b).
mf(s,t1).
OD(s).
)";
  CHECK(serialize_kb(parse_kb(shuffled)) == serialize_kb(example_kb()));
}

TEST_CASE("random KBs round-trip through text") {
  std::mt19937 rng(7);
  for (int i = 0; i < 25; ++i) {
    KnowledgeBase kb = testsupport::random_kb(rng);
    KnowledgeBase back = parse_kb(serialize_kb(kb));
    CHECK(back == kb);
  }
}

TEST_CASE("changelogs parse and serialize canonically") {
  KnowledgeBase kb = example_kb();
  std::string text =
      "insert: RD(p).; OD(b).; mf(b,t1).\n"
      "delete: TM(b).; mf(b,t1).\n"
      "insert: TM(c).\n";
  std::vector<ChangeStep> log = parse_changelog(text, kb.signature);
  REQUIRE(log.size() == 3);
  CHECK(log[0].op == ChangeStep::Op::Insert);
  CHECK(log[0].facts.size() == 3);
  CHECK(log[1].op == ChangeStep::Op::Delete);
  CHECK(log[2].facts == std::vector<Atom>{Atom("TM", "c")});
  CHECK(serialize_changelog(log) == text);
  CHECK(parse_changelog("", kb.signature).empty());

  CHECK_THROWS_AS(parse_changelog("upsert: TM(c).", kb.signature), ParseError);
}
