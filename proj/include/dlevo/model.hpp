// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dlevo {

/// Raised when a model-level invariant is violated at construction time.
class ModelError : public std::runtime_error {
 public:
  enum class Kind {
    UndeclaredName,
    CategoryMismatch,
    NonLocalId,
    BadLiteral,
    DuplicateDeclaration,
    Structural,
  };

  ModelError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Raised when an evolution or entailment operation is applied outside its
/// precondition.
class PreconditionError : public std::runtime_error {
 public:
  enum class Kind { UnsatKb, UnsatFacts, UnsatSingleton, StaleClosure };

  PreconditionError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

/// Concrete datatypes a value constant may carry.
enum class Datatype { Integer, String, Boolean, Rational };

/// Value domains usable on the right-hand side of a range inclusion.
/// Top is the union of all domains and never constrains anything.
enum class ValueDomain { Top, Integer, String, Boolean, Rational };

const char* to_string(Datatype d);
const char* to_string(ValueDomain d);
std::optional<ValueDomain> value_domain_from_string(const std::string& s);

/// A typed value constant. The lexical form is normalized on construction
/// (integers lose leading zeros and '+', rationals are reduced), so equality
/// on (datatype, lexical form) is value equality.
class TypedValue {
 public:
  TypedValue(std::string lexical, Datatype type);

  static TypedValue integer(long long v);
  static TypedValue string(std::string s);
  static TypedValue boolean(bool b);

  const std::string& lexical() const { return lexical_; }
  Datatype type() const { return type_; }

  bool operator==(const TypedValue& o) const {
    return type_ == o.type_ && lexical_ == o.lexical_;
  }
  bool operator<(const TypedValue& o) const {
    if (type_ != o.type_) return type_ < o.type_;
    return lexical_ < o.lexical_;
  }

 private:
  std::string lexical_;
  Datatype type_;
};

std::string to_text(const TypedValue& v);

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

enum class SymbolKind { Concept, Role, Attribute };

const char* to_string(SymbolKind k);

/// The declared predicate vocabulary. Concept, role, and attribute names are
/// pairwise disjoint; object constants are any identifiers that do not
/// collide with a declared predicate.
class Signature {
 public:
  void declare(SymbolKind kind, const std::string& name);

  std::optional<SymbolKind> lookup(const std::string& name) const;
  bool declared(SymbolKind kind, const std::string& name) const;
  const std::set<std::string>& names(SymbolKind kind) const;

  bool operator==(const Signature&) const = default;

 private:
  std::set<std::string> concepts_;
  std::set<std::string> roles_;
  std::set<std::string> attributes_;
};

// ---------------------------------------------------------------------------
// Concept and role expressions
// ---------------------------------------------------------------------------

/// An atomic role or its inverse.
struct RoleExpr {
  std::string role;
  bool inverted = false;

  auto operator<=>(const RoleExpr&) const = default;
};

enum class BasicKind { Atomic, ExistsRole, AttrDomain };

/// A basic concept: atomic A, existential restriction on a role, or the
/// domain of an attribute. General concepts (B or not B) are a BasicConcept
/// plus a polarity flag on the enclosing inclusion.
struct BasicConcept {
  BasicKind kind = BasicKind::Atomic;
  std::string name;       // concept, role, or attribute name
  bool inverted = false;  // meaningful for ExistsRole only

  static BasicConcept atomic(std::string name);
  static BasicConcept some(RoleExpr q);
  static BasicConcept attr_domain(std::string attribute);

  RoleExpr role() const { return RoleExpr{name, inverted}; }

  auto operator<=>(const BasicConcept&) const = default;
};

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

struct AttributeStep {
  std::string attribute;
  auto operator<=>(const AttributeStep&) const = default;
};

struct TestStep {
  BasicConcept basic;
  auto operator<=>(const TestStep&) const = default;
};

using PathStep = std::variant<RoleExpr, AttributeStep, TestStep>;

/// A composition of role, attribute, and test steps. Path length counts the
/// non-test steps; an attribute step may appear only in final position.
struct Path {
  std::vector<PathStep> steps;

  int length() const;

  auto operator<=>(const Path&) const = default;
};

// ---------------------------------------------------------------------------
// TBox assertions
// ---------------------------------------------------------------------------

struct ConceptInclusion {
  BasicConcept lhs;
  BasicConcept rhs;
  bool negated_rhs = false;
  auto operator<=>(const ConceptInclusion&) const = default;
};

struct RoleInclusion {
  RoleExpr lhs;
  RoleExpr rhs;
  bool negated_rhs = false;
  auto operator<=>(const RoleInclusion&) const = default;
};

struct AttributeInclusion {
  std::string lhs;
  std::string rhs;
  bool negated_rhs = false;
  auto operator<=>(const AttributeInclusion&) const = default;
};

struct ValueDomainInclusion {
  std::string attribute;
  ValueDomain domain = ValueDomain::Top;
  auto operator<=>(const ValueDomainInclusion&) const = default;
};

struct AttributeFunctionality {
  std::string attribute;
  auto operator<=>(const AttributeFunctionality&) const = default;
};

struct Identification {
  BasicConcept base;
  std::vector<Path> paths;
  auto operator<=>(const Identification&) const = default;
};

using TBoxAssertion = std::variant<ConceptInclusion, RoleInclusion,
                                   AttributeInclusion, ValueDomainInclusion,
                                   AttributeFunctionality, Identification>;

/// True for inclusions without negation on the right-hand side.
bool is_positive_inclusion(const TBoxAssertion& t);
/// True for negated inclusions, functionality, and value-domain inclusions.
bool is_negative_constraint(const TBoxAssertion& t);
bool is_identification(const TBoxAssertion& t);

struct TBoxPartition {
  std::vector<TBoxAssertion> positive;        // T+
  std::vector<TBoxAssertion> negative;        // T-
  std::vector<TBoxAssertion> identification;  // T_id
};

TBoxPartition partition_tbox(const std::vector<TBoxAssertion>& tbox);

// ---------------------------------------------------------------------------
// Atoms
// ---------------------------------------------------------------------------

enum class AtomKind { Concept, Role, Attribute };

/// A ground ABox assertion A(a), P(a,b), or U(a,v). Role atoms always use
/// the non-inverted role name.
class Atom {
 public:
  Atom(std::string concept_name, std::string subject);
  Atom(std::string role_name, std::string subject, std::string object);
  Atom(std::string attribute_name, std::string subject, TypedValue value);

  AtomKind kind() const { return kind_; }
  const std::string& predicate() const { return predicate_; }
  const std::string& subject() const { return subject_; }
  const std::string& object() const { return object_; }
  const TypedValue& value() const { return *value_; }

  bool operator==(const Atom& o) const;
  bool operator<(const Atom& o) const;

 private:
  AtomKind kind_;
  std::string predicate_;
  std::string subject_;
  std::string object_;                // role atoms only
  std::optional<TypedValue> value_;   // attribute atoms only
};

std::string to_text(const Atom& a);
std::string to_text(const RoleExpr& q);
std::string to_text(const BasicConcept& b);
std::string to_text(const Path& p);
std::string to_text(const TBoxAssertion& t);

/// Object constants occurring in any atom (values are not individuals).
std::set<std::string> atoms_individuals(const std::set<Atom>& atoms);

// ---------------------------------------------------------------------------
// Knowledge base
// ---------------------------------------------------------------------------

struct KnowledgeBase {
  Signature signature;
  std::vector<TBoxAssertion> tbox;  // deduplicated, canonical order
  std::set<Atom> abox;

  bool operator==(const KnowledgeBase&) const = default;
};

// Validation helpers. Each throws ModelError on the first violated invariant.
void validate_role(const Signature& sig, const RoleExpr& q);
void validate_basic(const Signature& sig, const BasicConcept& b);
void validate_path(const Signature& sig, const Path& p);
void validate_tbox_assertion(const Signature& sig, const TBoxAssertion& t);
void validate_atom(const Signature& sig, const Atom& a);

/// Validates all parts against the signature, deduplicates, and brings the
/// TBox into canonical order.
KnowledgeBase make_kb(Signature sig, std::vector<TBoxAssertion> tbox,
                      std::vector<Atom> abox);

}  // namespace dlevo
