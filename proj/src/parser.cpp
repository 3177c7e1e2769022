// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#include "dlevo/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dlevo {

namespace {

enum class TokKind {
  Name,
  Int,
  Str,
  LParen,
  RParen,
  Comma,
  Colon,
  Dot,
  Semi,
  Caret2,
  Slash,
  End,
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "SIGNATURE", "TBOX",   "ABOX",    "concept", "role",     "attr",
      "funct",     "id",     "ISA",     "not",     "exists",   "inv",
      "delta",     "range",  "test",    "o",       "top",      "integer",
      "string",    "boolean", "rational", "insert",  "delete",
  };
  return words;
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t = next();
      out.push_back(t);
      if (t.kind == TokKind::End) break;
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Lexical, line_, col_, msg);
  }

  Token next() {
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    auto one = [&](TokKind k) {
      t.kind = k;
      t.text = std::string(1, c);
      ++pos_;
      ++col_;
      return t;
    };
    switch (c) {
      case '(': return one(TokKind::LParen);
      case ')': return one(TokKind::RParen);
      case ',': return one(TokKind::Comma);
      case ':': return one(TokKind::Colon);
      case '.': return one(TokKind::Dot);
      case ';': return one(TokKind::Semi);
      case '/': return one(TokKind::Slash);
      case '^':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '^') {
          t.kind = TokKind::Caret2;
          t.text = "^^";
          pos_ += 2;
          col_ += 2;
          return t;
        }
        fail("stray '^'");
      case '"':
        return lex_string(t);
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return lex_name(t);
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '+' || c == '-') && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))))
      return lex_int(t);
    fail(std::string("unexpected character '") + c + "'");
  }

  Token lex_string(Token t) {
    t.kind = TokKind::Str;
    ++pos_;
    ++col_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        ++col_;
        return t;
      }
      if (c == '\n') fail("newline in string literal");
      if (c == '\\') {
        ++pos_;
        ++col_;
        if (pos_ >= text_.size()) break;
        c = text_[pos_];
      }
      t.text.push_back(c);
      ++pos_;
      ++col_;
    }
    fail("unterminated string literal");
  }

  Token lex_name(Token t) {
    t.kind = TokKind::Name;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
      t.text.push_back(c);
      ++pos_;
      ++col_;
    }
    return t;
  }

  Token lex_int(Token t) {
    t.kind = TokKind::Int;
    char c = text_[pos_];
    if (c == '+' || c == '-') {
      t.text.push_back(c);
      ++pos_;
      ++col_;
    }
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      t.text.push_back(text_[pos_]);
      ++pos_;
      ++col_;
    }
    return t;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(Lexer(text).run()) {}

  KnowledgeBase kb_document() {
    KnowledgeBase kb;
    expect_word("SIGNATURE");
    while (at_word("concept") || at_word("role") || at_word("attr"))
      declaration(kb.signature);
    expect_word("TBOX");
    std::vector<TBoxAssertion> tbox;
    while (!at_word("ABOX") && !at_end()) tbox.push_back(tbox_assertion(kb.signature));
    expect_word("ABOX");
    std::vector<Atom> abox;
    while (!at_end()) abox.push_back(atom(kb.signature));
    expect_end();
    Signature sig = kb.signature;
    try {
      return make_kb(std::move(sig), std::move(tbox), std::move(abox));
    } catch (const ModelError& e) {
      // Parse-time checks should leave nothing for make_kb to reject; if
      // one slips through, surface it as a parse error, not a model error.
      fail(to_parse_kind(e.kind()), e.what());
    }
  }

  std::vector<Atom> fact_list(const Signature& sig) {
    std::vector<Atom> out;
    while (!at_end()) out.push_back(atom(sig));
    expect_end();
    return out;
  }

  std::vector<ChangeStep> changelog(const Signature& sig) {
    std::vector<ChangeStep> out;
    while (!at_end()) {
      ChangeStep step;
      if (at_word("insert")) {
        advance();
        step.op = ChangeStep::Op::Insert;
      } else if (at_word("delete")) {
        advance();
        step.op = ChangeStep::Op::Delete;
      } else {
        fail(ParseError::Kind::Syntactic, "expected 'insert' or 'delete'");
      }
      expect(TokKind::Colon, "':'");
      step.facts.push_back(atom(sig));
      while (peek().kind == TokKind::Semi) {
        advance();
        step.facts.push_back(atom(sig));
      }
      out.push_back(std::move(step));
    }
    expect_end();
    return out;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  Token advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  bool at_end() const { return peek().kind == TokKind::End; }

  bool at_word(const char* w) const {
    return peek().kind == TokKind::Name && peek().text == w;
  }

  static ParseError::Kind to_parse_kind(ModelError::Kind k) {
    switch (k) {
      case ModelError::Kind::UndeclaredName:
        return ParseError::Kind::UndeclaredName;
      case ModelError::Kind::CategoryMismatch:
        return ParseError::Kind::CategoryMismatch;
      case ModelError::Kind::NonLocalId:
        return ParseError::Kind::NonLocalId;
      case ModelError::Kind::BadLiteral:
        return ParseError::Kind::BadLiteral;
      case ModelError::Kind::DuplicateDeclaration:
        return ParseError::Kind::DuplicateDeclaration;
      case ModelError::Kind::Structural:
        break;
    }
    return ParseError::Kind::Syntactic;
  }

  [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg) const {
    fail_at(peek(), kind, msg);
  }

  [[noreturn]] static void fail_at(const Token& t, ParseError::Kind kind,
                                   const std::string& msg) {
    throw ParseError(kind, t.line, t.column, msg);
  }

  Token expect(TokKind k, const char* what) {
    if (peek().kind != k)
      fail(ParseError::Kind::Syntactic,
           std::string("expected ") + what + desc_here());
    return advance();
  }

  void expect_word(const char* w) {
    if (!at_word(w))
      fail(ParseError::Kind::Syntactic,
           std::string("expected '") + w + "'" + desc_here());
    advance();
  }

  void expect_end() {
    if (!at_end())
      fail(ParseError::Kind::Syntactic, "trailing input" + desc_here());
  }

  std::string desc_here() const {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::End: return " at end of input";
      case TokKind::Str: return ", got string literal";
      default: return ", got '" + t.text + "'";
    }
  }

  // A declared predicate name or an object constant: a plain identifier
  // that is not a reserved word.
  Token identifier(const char* what) {
    if (peek().kind != TokKind::Name)
      fail(ParseError::Kind::Syntactic,
           std::string("expected ") + what + desc_here());
    if (reserved_words().count(peek().text))
      fail(ParseError::Kind::Syntactic,
           "reserved word '" + peek().text + "' used as " + what);
    return advance();
  }

  void declaration(Signature& sig) {
    SymbolKind kind = SymbolKind::Concept;
    if (at_word("concept")) kind = SymbolKind::Concept;
    else if (at_word("role")) kind = SymbolKind::Role;
    else kind = SymbolKind::Attribute;
    advance();
    Token name = identifier("a name to declare");
    expect(TokKind::Dot, "'.'");
    try {
      sig.declare(kind, name.text);
    } catch (const ModelError& e) {
      fail_at(name, ParseError::Kind::DuplicateDeclaration, e.what());
    }
  }

  SymbolKind lookup_or_fail(const Signature& sig, const Token& name) {
    auto k = sig.lookup(name.text);
    if (!k)
      fail_at(name, ParseError::Kind::UndeclaredName,
              "undeclared name '" + name.text + "'");
    return *k;
  }

  void require_kind(const Signature& sig, const Token& name, SymbolKind want) {
    SymbolKind got = lookup_or_fail(sig, name);
    if (got != want)
      fail_at(name, ParseError::Kind::CategoryMismatch,
              "'" + name.text + "' is a " + to_string(got) + ", expected a " +
                  to_string(want));
  }

  RoleExpr role_expr(const Signature& sig) {
    if (at_word("inv")) {
      advance();
      expect(TokKind::LParen, "'('");
      Token name = identifier("a role name");
      require_kind(sig, name, SymbolKind::Role);
      expect(TokKind::RParen, "')'");
      return RoleExpr{name.text, true};
    }
    Token name = identifier("a role name");
    require_kind(sig, name, SymbolKind::Role);
    return RoleExpr{name.text, false};
  }

  BasicConcept basic_concept(const Signature& sig) {
    if (at_word("exists")) {
      advance();
      return BasicConcept::some(role_expr(sig));
    }
    if (at_word("delta")) {
      advance();
      expect(TokKind::LParen, "'('");
      Token name = identifier("an attribute name");
      require_kind(sig, name, SymbolKind::Attribute);
      expect(TokKind::RParen, "')'");
      return BasicConcept::attr_domain(name.text);
    }
    Token name = identifier("a concept name");
    require_kind(sig, name, SymbolKind::Concept);
    return BasicConcept::atomic(name.text);
  }

  // Either side of a concept or role inclusion; the leading token decides
  // which family we are in, and a bare name is classified by declaration.
  std::variant<BasicConcept, RoleExpr> inclusion_side(const Signature& sig) {
    if (at_word("exists") || at_word("delta")) return basic_concept(sig);
    if (at_word("inv")) return role_expr(sig);
    Token name = identifier("a concept or role name");
    SymbolKind k = lookup_or_fail(sig, name);
    if (k == SymbolKind::Concept) return BasicConcept::atomic(name.text);
    if (k == SymbolKind::Role) return RoleExpr{name.text, false};
    fail_at(name, ParseError::Kind::CategoryMismatch,
            "'" + name.text +
                "' is an attr; attribute inclusions are written 'attr " +
                name.text + " ISA ...'");
  }

  TBoxAssertion tbox_assertion(const Signature& sig) {
    if (at_word("funct")) {
      advance();
      Token name = identifier("an attribute name");
      require_kind(sig, name, SymbolKind::Attribute);
      expect(TokKind::Dot, "'.'");
      return AttributeFunctionality{name.text};
    }
    if (at_word("id")) return identification(sig);
    if (at_word("attr")) return attribute_inclusion(sig);
    if (at_word("range")) return value_domain_inclusion(sig);
    return plain_inclusion(sig);
  }

  TBoxAssertion identification(const Signature& sig) {
    Token id_tok = advance();
    Identification id;
    id.base = basic_concept(sig);
    expect(TokKind::Colon, "':'");
    id.paths.push_back(path(sig));
    while (peek().kind == TokKind::Comma) {
      advance();
      id.paths.push_back(path(sig));
    }
    expect(TokKind::Dot, "'.'");
    bool local = false;
    for (const Path& p : id.paths)
      if (p.length() == 1) local = true;
    if (!local)
      fail_at(id_tok, ParseError::Kind::NonLocalId,
              "identification needs a path of length 1");
    return id;
  }

  Path path(const Signature& sig) {
    Path p;
    p.steps.push_back(path_step(sig));
    while (at_word("o")) {
      Token sep = peek();
      advance();
      if (std::holds_alternative<AttributeStep>(p.steps.back()))
        fail_at(sep, ParseError::Kind::Syntactic,
                "attribute step must be the last step of a path");
      p.steps.push_back(path_step(sig));
    }
    return p;
  }

  PathStep path_step(const Signature& sig) {
    if (at_word("test")) {
      advance();
      expect(TokKind::LParen, "'('");
      BasicConcept b = basic_concept(sig);
      expect(TokKind::RParen, "')'");
      return TestStep{b};
    }
    if (at_word("attr")) {
      advance();
      Token name = identifier("an attribute name");
      require_kind(sig, name, SymbolKind::Attribute);
      return AttributeStep{name.text};
    }
    return role_expr(sig);
  }

  TBoxAssertion attribute_inclusion(const Signature& sig) {
    advance();  // attr
    Token lhs = identifier("an attribute name");
    require_kind(sig, lhs, SymbolKind::Attribute);
    expect_word("ISA");
    bool negated = false;
    if (at_word("not")) {
      advance();
      negated = true;
    }
    Token rhs = identifier("an attribute name");
    require_kind(sig, rhs, SymbolKind::Attribute);
    expect(TokKind::Dot, "'.'");
    return AttributeInclusion{lhs.text, rhs.text, negated};
  }

  TBoxAssertion value_domain_inclusion(const Signature& sig) {
    advance();  // range
    expect(TokKind::LParen, "'('");
    Token name = identifier("an attribute name");
    require_kind(sig, name, SymbolKind::Attribute);
    expect(TokKind::RParen, "')'");
    expect_word("ISA");
    Token dom = expect(TokKind::Name, "a value domain");
    auto d = value_domain_from_string(dom.text);
    if (!d)
      fail_at(dom, ParseError::Kind::Syntactic,
              "'" + dom.text + "' is not a value domain");
    expect(TokKind::Dot, "'.'");
    return ValueDomainInclusion{name.text, *d};
  }

  TBoxAssertion plain_inclusion(const Signature& sig) {
    Token start = peek();
    auto lhs = inclusion_side(sig);
    expect_word("ISA");
    bool negated = false;
    if (at_word("not")) {
      advance();
      negated = true;
    }
    if (std::holds_alternative<BasicConcept>(lhs)) {
      Token rt = peek();
      auto rhs = inclusion_side(sig);
      if (!std::holds_alternative<BasicConcept>(rhs))
        fail_at(rt, ParseError::Kind::CategoryMismatch,
                "concept inclusion needs a concept on the right");
      expect(TokKind::Dot, "'.'");
      return ConceptInclusion{std::get<BasicConcept>(lhs),
                              std::get<BasicConcept>(rhs), negated};
    }
    Token rt = peek();
    auto rhs = inclusion_side(sig);
    if (!std::holds_alternative<RoleExpr>(rhs))
      fail_at(rt, ParseError::Kind::CategoryMismatch,
              "role inclusion needs a role on the right");
    expect(TokKind::Dot, "'.'");
    (void)start;
    return RoleInclusion{std::get<RoleExpr>(lhs), std::get<RoleExpr>(rhs),
                         negated};
  }

  Datatype datatype_name(const Token& t) {
    if (t.text == "integer") return Datatype::Integer;
    if (t.text == "string") return Datatype::String;
    if (t.text == "boolean") return Datatype::Boolean;
    if (t.text == "rational") return Datatype::Rational;
    fail_at(t, ParseError::Kind::BadLiteral,
            "'" + t.text + "' is not a concrete datatype");
  }

  TypedValue literal() {
    Token first = peek();
    std::string lexical;
    std::optional<Datatype> dtype;
    bool needs_type = false;
    if (first.kind == TokKind::Str) {
      advance();
      lexical = first.text;
      dtype = Datatype::String;
    } else if (first.kind == TokKind::Int) {
      advance();
      lexical = first.text;
      dtype = Datatype::Integer;
      if (peek().kind == TokKind::Slash) {
        advance();
        Token den = expect(TokKind::Int, "a denominator");
        lexical += "/" + den.text;
        needs_type = true;  // n/d is only meaningful as a rational
      }
    } else if (first.kind == TokKind::Name) {
      advance();
      lexical = first.text;
      needs_type = true;
    } else {
      fail_at(first, ParseError::Kind::Syntactic,
              "expected a literal" + desc_here());
    }
    if (peek().kind == TokKind::Caret2) {
      advance();
      Token dt = expect(TokKind::Name, "a datatype");
      dtype = datatype_name(dt);
    } else if (needs_type) {
      fail_at(first, ParseError::Kind::BadLiteral,
              "literal '" + lexical + "' needs an explicit ^^datatype");
    }
    try {
      return TypedValue(lexical, *dtype);
    } catch (const ModelError& e) {
      fail_at(first, ParseError::Kind::BadLiteral, e.what());
    }
  }

  std::string object_constant(const Signature& sig) {
    Token name = identifier("an object constant");
    if (sig.lookup(name.text))
      fail_at(name, ParseError::Kind::CategoryMismatch,
              "predicate name '" + name.text + "' used as object constant");
    return name.text;
  }

  Atom atom(const Signature& sig) {
    Token pred = identifier("a predicate name");
    SymbolKind kind = lookup_or_fail(sig, pred);
    expect(TokKind::LParen, "'('");
    std::string subject = object_constant(sig);
    switch (kind) {
      case SymbolKind::Concept: {
        if (peek().kind == TokKind::Comma)
          fail(ParseError::Kind::CategoryMismatch,
               "concept '" + pred.text + "' takes one argument");
        expect(TokKind::RParen, "')'");
        expect(TokKind::Dot, "'.'");
        return Atom(pred.text, subject);
      }
      case SymbolKind::Role: {
        expect(TokKind::Comma, "','");
        if (peek().kind != TokKind::Name)
          fail(ParseError::Kind::CategoryMismatch,
               "role '" + pred.text + "' relates two objects");
        std::string object = object_constant(sig);
        expect(TokKind::RParen, "')'");
        expect(TokKind::Dot, "'.'");
        return Atom(pred.text, subject, object);
      }
      case SymbolKind::Attribute: {
        expect(TokKind::Comma, "','");
        if (peek().kind == TokKind::Name &&
            peek(1).kind != TokKind::Caret2 &&
            !reserved_words().count(peek().text))
          fail(ParseError::Kind::BadLiteral,
               "attribute '" + pred.text + "' takes a literal value");
        TypedValue v = literal();
        expect(TokKind::RParen, "')'");
        expect(TokKind::Dot, "'.'");
        return Atom(pred.text, subject, std::move(v));
      }
    }
    fail(ParseError::Kind::Syntactic, "unreachable");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

KnowledgeBase parse_kb(const std::string& text) {
  return Parser(text).kb_document();
}

std::vector<Atom> parse_facts(const std::string& text, const Signature& sig) {
  return Parser(text).fact_list(sig);
}

std::vector<ChangeStep> parse_changelog(const std::string& text,
                                        const Signature& sig) {
  return Parser(text).changelog(sig);
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  out << "SIGNATURE\n";
  std::vector<std::string> lines;
  for (auto kind :
       {SymbolKind::Concept, SymbolKind::Role, SymbolKind::Attribute})
    for (const std::string& n : kb.signature.names(kind))
      lines.push_back(std::string(to_string(kind)) + " " + n + ".");
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l << "\n";

  out << "TBOX\n";
  lines.clear();
  for (const auto& t : kb.tbox) lines.push_back(to_text(t));
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l << "\n";

  out << "ABOX\n";
  lines.clear();
  for (const Atom& a : kb.abox) lines.push_back(to_text(a) + ".");
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l << "\n";
  return out.str();
}

std::string serialize_changelog(const std::vector<ChangeStep>& log) {
  std::ostringstream out;
  for (const ChangeStep& step : log) {
    out << (step.op == ChangeStep::Op::Insert ? "insert: " : "delete: ");
    for (size_t i = 0; i < step.facts.size(); ++i) {
      if (i > 0) out << "; ";
      out << to_text(step.facts[i]) << ".";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace dlevo
