// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#include "dlevo/model.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace dlevo {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

// Normalizes an optionally signed decimal integer: no '+', no leading
// zeros, no negative zero.
std::string normalize_integer(const std::string& lex) {
  std::string s = lex;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(s.begin());
  }
  if (!all_digits(s))
    throw ModelError(ModelError::Kind::BadLiteral,
                     "not an integer literal: '" + lex + "'");
  size_t first = s.find_first_not_of('0');
  s = first == std::string::npos ? "0" : s.substr(first);
  if (negative && s != "0") s.insert(s.begin(), '-');
  return s;
}

long long gcd_ll(long long a, long long b) {
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// Rationals are written n or n/d with d > 0; the normal form is reduced,
// has a positive denominator, and omits a denominator of 1.
std::string normalize_rational(const std::string& lex) {
  std::string num = lex, den = "1";
  size_t slash = lex.find('/');
  if (slash != std::string::npos) {
    num = lex.substr(0, slash);
    den = lex.substr(slash + 1);
  }
  num = normalize_integer(num);
  if (!all_digits(den) || normalize_integer(den) == "0")
    throw ModelError(ModelError::Kind::BadLiteral,
                     "not a rational literal: '" + lex + "'");
  den = normalize_integer(den);
  try {
    long long n = std::stoll(num), d = std::stoll(den);
    long long g = gcd_ll(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (d == 1) return std::to_string(n);
    return std::to_string(n) + "/" + std::to_string(d);
  } catch (const std::out_of_range&) {
    throw ModelError(ModelError::Kind::BadLiteral,
                     "rational out of range: '" + lex + "'");
  }
}

}  // namespace

TypedValue::TypedValue(std::string lexical, Datatype type)
    : lexical_(std::move(lexical)), type_(type) {
  switch (type_) {
    case Datatype::Integer:
      lexical_ = normalize_integer(lexical_);
      break;
    case Datatype::Boolean:
      if (lexical_ != "true" && lexical_ != "false")
        throw ModelError(ModelError::Kind::BadLiteral,
                         "not a boolean literal: '" + lexical_ + "'");
      break;
    case Datatype::Rational:
      lexical_ = normalize_rational(lexical_);
      break;
    case Datatype::String:
      break;  // any character sequence
  }
}

TypedValue TypedValue::integer(long long v) {
  return TypedValue(std::to_string(v), Datatype::Integer);
}

TypedValue TypedValue::string(std::string s) {
  return TypedValue(std::move(s), Datatype::String);
}

TypedValue TypedValue::boolean(bool b) {
  return TypedValue(b ? "true" : "false", Datatype::Boolean);
}

const char* to_string(Datatype d) {
  switch (d) {
    case Datatype::Integer: return "integer";
    case Datatype::String: return "string";
    case Datatype::Boolean: return "boolean";
    case Datatype::Rational: return "rational";
  }
  return "?";
}

const char* to_string(ValueDomain d) {
  switch (d) {
    case ValueDomain::Top: return "top";
    case ValueDomain::Integer: return "integer";
    case ValueDomain::String: return "string";
    case ValueDomain::Boolean: return "boolean";
    case ValueDomain::Rational: return "rational";
  }
  return "?";
}

std::optional<ValueDomain> value_domain_from_string(const std::string& s) {
  if (s == "top") return ValueDomain::Top;
  if (s == "integer") return ValueDomain::Integer;
  if (s == "string") return ValueDomain::String;
  if (s == "boolean") return ValueDomain::Boolean;
  if (s == "rational") return ValueDomain::Rational;
  return std::nullopt;
}

std::string to_text(const TypedValue& v) {
  if (v.type() == Datatype::String) {
    std::string out = "\"";
    for (char c : v.lexical()) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    out += "\"^^string";
    return out;
  }
  return v.lexical() + "^^" + to_string(v.type());
}

const char* to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Concept: return "concept";
    case SymbolKind::Role: return "role";
    case SymbolKind::Attribute: return "attr";
  }
  return "?";
}

void Signature::declare(SymbolKind kind, const std::string& name) {
  if (lookup(name))
    throw ModelError(ModelError::Kind::DuplicateDeclaration,
                     "name declared twice: '" + name + "'");
  switch (kind) {
    case SymbolKind::Concept: concepts_.insert(name); break;
    case SymbolKind::Role: roles_.insert(name); break;
    case SymbolKind::Attribute: attributes_.insert(name); break;
  }
}

std::optional<SymbolKind> Signature::lookup(const std::string& name) const {
  if (concepts_.count(name)) return SymbolKind::Concept;
  if (roles_.count(name)) return SymbolKind::Role;
  if (attributes_.count(name)) return SymbolKind::Attribute;
  return std::nullopt;
}

bool Signature::declared(SymbolKind kind, const std::string& name) const {
  return lookup(name) == kind;
}

const std::set<std::string>& Signature::names(SymbolKind kind) const {
  switch (kind) {
    case SymbolKind::Concept: return concepts_;
    case SymbolKind::Role: return roles_;
    case SymbolKind::Attribute: return attributes_;
  }
  return concepts_;
}

BasicConcept BasicConcept::atomic(std::string name) {
  return BasicConcept{BasicKind::Atomic, std::move(name), false};
}

BasicConcept BasicConcept::some(RoleExpr q) {
  return BasicConcept{BasicKind::ExistsRole, std::move(q.role), q.inverted};
}

BasicConcept BasicConcept::attr_domain(std::string attribute) {
  return BasicConcept{BasicKind::AttrDomain, std::move(attribute), false};
}

int Path::length() const {
  int n = 0;
  for (const auto& s : steps)
    if (!std::holds_alternative<TestStep>(s)) ++n;
  return n;
}

bool is_positive_inclusion(const TBoxAssertion& t) {
  if (const auto* c = std::get_if<ConceptInclusion>(&t)) return !c->negated_rhs;
  if (const auto* r = std::get_if<RoleInclusion>(&t)) return !r->negated_rhs;
  if (const auto* a = std::get_if<AttributeInclusion>(&t)) return !a->negated_rhs;
  return false;
}

bool is_negative_constraint(const TBoxAssertion& t) {
  return !is_positive_inclusion(t) && !is_identification(t);
}

bool is_identification(const TBoxAssertion& t) {
  return std::holds_alternative<Identification>(t);
}

TBoxPartition partition_tbox(const std::vector<TBoxAssertion>& tbox) {
  TBoxPartition p;
  for (const auto& t : tbox) {
    if (is_positive_inclusion(t))
      p.positive.push_back(t);
    else if (is_identification(t))
      p.identification.push_back(t);
    else
      p.negative.push_back(t);
  }
  return p;
}

Atom::Atom(std::string concept_name, std::string subject)
    : kind_(AtomKind::Concept),
      predicate_(std::move(concept_name)),
      subject_(std::move(subject)) {}

Atom::Atom(std::string role_name, std::string subject, std::string object)
    : kind_(AtomKind::Role),
      predicate_(std::move(role_name)),
      subject_(std::move(subject)),
      object_(std::move(object)) {}

Atom::Atom(std::string attribute_name, std::string subject, TypedValue value)
    : kind_(AtomKind::Attribute),
      predicate_(std::move(attribute_name)),
      subject_(std::move(subject)),
      value_(std::move(value)) {}

bool Atom::operator==(const Atom& o) const {
  return kind_ == o.kind_ && predicate_ == o.predicate_ &&
         subject_ == o.subject_ && object_ == o.object_ && value_ == o.value_;
}

bool Atom::operator<(const Atom& o) const {
  if (predicate_ != o.predicate_) return predicate_ < o.predicate_;
  if (kind_ != o.kind_) return kind_ < o.kind_;
  if (subject_ != o.subject_) return subject_ < o.subject_;
  if (object_ != o.object_) return object_ < o.object_;
  if (value_.has_value() != o.value_.has_value()) return !value_.has_value();
  if (value_ && o.value_) return *value_ < *o.value_;
  return false;
}

std::string to_text(const Atom& a) {
  switch (a.kind()) {
    case AtomKind::Concept:
      return a.predicate() + "(" + a.subject() + ")";
    case AtomKind::Role:
      return a.predicate() + "(" + a.subject() + "," + a.object() + ")";
    case AtomKind::Attribute:
      return a.predicate() + "(" + a.subject() + "," + to_text(a.value()) + ")";
  }
  return "?";
}

std::string to_text(const RoleExpr& q) {
  return q.inverted ? "inv(" + q.role + ")" : q.role;
}

std::string to_text(const BasicConcept& b) {
  switch (b.kind) {
    case BasicKind::Atomic: return b.name;
    case BasicKind::ExistsRole: return "exists " + to_text(b.role());
    case BasicKind::AttrDomain: return "delta(" + b.name + ")";
  }
  return "?";
}

std::string to_text(const Path& p) {
  std::string out;
  for (size_t i = 0; i < p.steps.size(); ++i) {
    if (i > 0) out += " o ";
    const PathStep& s = p.steps[i];
    if (const auto* q = std::get_if<RoleExpr>(&s))
      out += to_text(*q);
    else if (const auto* a = std::get_if<AttributeStep>(&s))
      out += "attr " + a->attribute;
    else
      out += "test(" + to_text(std::get<TestStep>(s).basic) + ")";
  }
  return out;
}

std::string to_text(const TBoxAssertion& t) {
  struct Printer {
    std::string operator()(const ConceptInclusion& c) const {
      return to_text(c.lhs) + " ISA " + (c.negated_rhs ? "not " : "") +
             to_text(c.rhs) + ".";
    }
    std::string operator()(const RoleInclusion& r) const {
      return to_text(r.lhs) + " ISA " + (r.negated_rhs ? "not " : "") +
             to_text(r.rhs) + ".";
    }
    std::string operator()(const AttributeInclusion& a) const {
      return "attr " + a.lhs + " ISA " + (a.negated_rhs ? "not " : "") +
             a.rhs + ".";
    }
    std::string operator()(const ValueDomainInclusion& v) const {
      return "range(" + v.attribute + ") ISA " +
             std::string(to_string(v.domain)) + ".";
    }
    std::string operator()(const AttributeFunctionality& f) const {
      return "funct " + f.attribute + ".";
    }
    std::string operator()(const Identification& id) const {
      std::string out = "id " + to_text(id.base) + " : ";
      for (size_t i = 0; i < id.paths.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_text(id.paths[i]);
      }
      return out + ".";
    }
  };
  return std::visit(Printer{}, t);
}

std::set<std::string> atoms_individuals(const std::set<Atom>& atoms) {
  std::set<std::string> out;
  for (const Atom& a : atoms) {
    out.insert(a.subject());
    if (a.kind() == AtomKind::Role) out.insert(a.object());
  }
  return out;
}

void validate_role(const Signature& sig, const RoleExpr& q) {
  auto k = sig.lookup(q.role);
  if (!k)
    throw ModelError(ModelError::Kind::UndeclaredName,
                     "undeclared role: '" + q.role + "'");
  if (*k != SymbolKind::Role)
    throw ModelError(ModelError::Kind::CategoryMismatch,
                     "'" + q.role + "' is a " + to_string(*k) + ", not a role");
}

void validate_basic(const Signature& sig, const BasicConcept& b) {
  switch (b.kind) {
    case BasicKind::Atomic: {
      auto k = sig.lookup(b.name);
      if (!k)
        throw ModelError(ModelError::Kind::UndeclaredName,
                         "undeclared concept: '" + b.name + "'");
      if (*k != SymbolKind::Concept)
        throw ModelError(ModelError::Kind::CategoryMismatch,
                         "'" + b.name + "' is a " + to_string(*k) +
                             ", not a concept");
      break;
    }
    case BasicKind::ExistsRole:
      validate_role(sig, b.role());
      break;
    case BasicKind::AttrDomain: {
      auto k = sig.lookup(b.name);
      if (!k)
        throw ModelError(ModelError::Kind::UndeclaredName,
                         "undeclared attribute: '" + b.name + "'");
      if (*k != SymbolKind::Attribute)
        throw ModelError(ModelError::Kind::CategoryMismatch,
                         "'" + b.name + "' is a " + to_string(*k) +
                             ", not an attribute");
      break;
    }
  }
}

namespace {

void validate_attribute_name(const Signature& sig, const std::string& name) {
  auto k = sig.lookup(name);
  if (!k)
    throw ModelError(ModelError::Kind::UndeclaredName,
                     "undeclared attribute: '" + name + "'");
  if (*k != SymbolKind::Attribute)
    throw ModelError(ModelError::Kind::CategoryMismatch,
                     "'" + name + "' is a " + to_string(*k) +
                         ", not an attribute");
}

}  // namespace

void validate_path(const Signature& sig, const Path& p) {
  if (p.steps.empty())
    throw ModelError(ModelError::Kind::Structural, "empty path");
  for (size_t i = 0; i < p.steps.size(); ++i) {
    const PathStep& s = p.steps[i];
    if (const auto* q = std::get_if<RoleExpr>(&s)) {
      validate_role(sig, *q);
    } else if (const auto* a = std::get_if<AttributeStep>(&s)) {
      validate_attribute_name(sig, a->attribute);
      if (i + 1 != p.steps.size())
        throw ModelError(ModelError::Kind::Structural,
                         "attribute step before end of path");
    } else {
      validate_basic(sig, std::get<TestStep>(s).basic);
    }
  }
}

void validate_tbox_assertion(const Signature& sig, const TBoxAssertion& t) {
  struct Checker {
    const Signature& sig;
    void operator()(const ConceptInclusion& c) const {
      validate_basic(sig, c.lhs);
      validate_basic(sig, c.rhs);
    }
    void operator()(const RoleInclusion& r) const {
      validate_role(sig, r.lhs);
      validate_role(sig, r.rhs);
    }
    void operator()(const AttributeInclusion& a) const {
      validate_attribute_name(sig, a.lhs);
      validate_attribute_name(sig, a.rhs);
    }
    void operator()(const ValueDomainInclusion& v) const {
      validate_attribute_name(sig, v.attribute);
    }
    void operator()(const AttributeFunctionality& f) const {
      validate_attribute_name(sig, f.attribute);
    }
    void operator()(const Identification& id) const {
      validate_basic(sig, id.base);
      if (id.paths.empty())
        throw ModelError(ModelError::Kind::Structural,
                         "identification without paths");
      bool local = false;
      for (const Path& p : id.paths) {
        validate_path(sig, p);
        if (p.length() == 1) local = true;
      }
      if (!local)
        throw ModelError(ModelError::Kind::NonLocalId,
                         "identification needs a path of length 1: " +
                             to_text(TBoxAssertion(id)));
    }
  };
  std::visit(Checker{sig}, t);
}

void validate_atom(const Signature& sig, const Atom& a) {
  auto check_object = [&](const std::string& name) {
    if (sig.lookup(name))
      throw ModelError(ModelError::Kind::CategoryMismatch,
                       "predicate name used as object constant: '" + name +
                           "'");
  };
  auto k = sig.lookup(a.predicate());
  if (!k)
    throw ModelError(ModelError::Kind::UndeclaredName,
                     "undeclared predicate: '" + a.predicate() + "'");
  switch (a.kind()) {
    case AtomKind::Concept:
      if (*k != SymbolKind::Concept)
        throw ModelError(ModelError::Kind::CategoryMismatch,
                         "'" + a.predicate() + "' is a " + to_string(*k) +
                             ", used with one object argument");
      break;
    case AtomKind::Role:
      if (*k != SymbolKind::Role)
        throw ModelError(ModelError::Kind::CategoryMismatch,
                         "'" + a.predicate() + "' is a " + to_string(*k) +
                             ", used with two object arguments");
      check_object(a.object());
      break;
    case AtomKind::Attribute:
      if (*k != SymbolKind::Attribute)
        throw ModelError(ModelError::Kind::CategoryMismatch,
                         "'" + a.predicate() + "' is a " + to_string(*k) +
                             ", used with a value argument");
      break;
  }
  check_object(a.subject());
}

KnowledgeBase make_kb(Signature sig, std::vector<TBoxAssertion> tbox,
                      std::vector<Atom> abox) {
  KnowledgeBase kb;
  kb.signature = std::move(sig);
  std::sort(tbox.begin(), tbox.end(),
            [](const TBoxAssertion& a, const TBoxAssertion& b) {
              return to_text(a) < to_text(b);
            });
  tbox.erase(std::unique(tbox.begin(), tbox.end()), tbox.end());
  for (const auto& t : tbox) validate_tbox_assertion(kb.signature, t);
  kb.tbox = std::move(tbox);
  for (auto& a : abox) {
    validate_atom(kb.signature, a);
    kb.abox.insert(std::move(a));
  }
  return kb;
}

}  // namespace dlevo
