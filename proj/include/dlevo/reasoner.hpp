// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "dlevo/model.hpp"

namespace dlevo {

/// A TBox partitioned and indexed for the single-premise closure rules.
/// Build once, reuse across closure / entailment / violation queries.
class TBoxIndex {
 public:
  explicit TBoxIndex(const std::vector<TBoxAssertion>& tbox);

  const std::vector<TBoxAssertion>& positive() const { return positive_; }
  const std::vector<TBoxAssertion>& negative() const { return negative_; }
  const std::vector<TBoxAssertion>& identifications() const { return ident_; }

  /// Negative constraints and identifications: everything a satisfiability
  /// check has to look at.
  const std::vector<TBoxAssertion>& checks() const { return checks_; }

  uint64_t fingerprint() const { return fingerprint_; }

  // Derivation rules, keyed by the predicate of the triggering atom.
  struct ConceptTarget {
    std::string rhs;          // atomic concept derived
    bool from_object = false; // role trigger: member is the object position
  };
  struct RoleTarget {
    bool lhs_inverted = false;
    std::string rhs;
    bool rhs_inverted = false;
  };

  const std::vector<ConceptTarget>* concept_rules(const std::string& p) const;
  const std::vector<ConceptTarget>* role_member_rules(const std::string& p) const;
  const std::vector<ConceptTarget>* attr_member_rules(const std::string& p) const;
  const std::vector<RoleTarget>* role_rules(const std::string& p) const;
  const std::vector<std::string>* attr_rules(const std::string& p) const;

 private:
  std::vector<TBoxAssertion> positive_, negative_, ident_, checks_;
  std::unordered_map<std::string, std::vector<ConceptTarget>> by_concept_;
  std::unordered_map<std::string, std::vector<ConceptTarget>> by_role_member_;
  std::unordered_map<std::string, std::vector<ConceptTarget>> by_attr_member_;
  std::unordered_map<std::string, std::vector<RoleTarget>> by_role_;
  std::unordered_map<std::string, std::vector<std::string>> by_attr_;
  uint64_t fingerprint_ = 0;
};

/// An atom set closed under the positive inclusions of a specific TBox.
/// The fingerprint ties the set to that TBox so stale pairings surface
/// as errors instead of silent nonsense.
struct ClosedAtomSet {
  std::set<Atom> atoms;
  uint64_t tbox_fingerprint = 0;
};

/// All atomic consequences of `atoms` over the individuals they mention.
ClosedAtomSet closure(const TBoxIndex& tbox, const std::set<Atom>& atoms);
ClosedAtomSet closure(const std::vector<TBoxAssertion>& tbox,
                      const std::set<Atom>& atoms);

/// Single-atom witnesses of `individual` belonging to `b` within `atoms`.
/// Empty result means not a member.
std::vector<Atom> member_basic(const std::set<Atom>& atoms,
                               const BasicConcept& b,
                               const std::string& individual);

/// Endpoint of a path: an object constant or an attribute value.
using PathEnd = std::variant<std::string, TypedValue>;

std::string to_text(const PathEnd& e);

struct PathMatch {
  std::string start;
  PathEnd end;
  std::set<Atom> support;  // atoms traversed, minimal per (start, end)
};

/// Evaluates a path over an atom set, reporting every (start, end) pair
/// together with the minimal support sets that realize it.
std::vector<PathMatch> eval_path(const std::set<Atom>& atoms, const Path& p);

/// Whether the singleton {premise} entails `conclusion` under `tbox`.
/// The singleton must itself be satisfiable with the TBox.
bool entails_atom(const TBoxIndex& tbox, const Atom& premise,
                  const Atom& conclusion);

/// The atoms of `closed` that individually entail `target`.
std::set<Atom> subsumee(const TBoxIndex& tbox, const ClosedAtomSet& closed,
                        const Atom& target);

/// A minimal atom set that together with one negative constraint or
/// identification is unsatisfiable.
struct ViolationSet {
  TBoxAssertion violated;
  std::set<Atom> atoms;
};

/// Enumerates all minimal violation sets within a T-closed atom set,
/// in a deterministic order.
std::vector<ViolationSet> violation_sets(const TBoxIndex& tbox,
                                         const std::set<Atom>& closed_atoms);

/// Whether any instance of `t` fires within a T-closed atom set.
bool violated_in(const TBoxAssertion& t, const std::set<Atom>& closed_atoms);

/// Satisfiability of an ABox under the indexed TBox. Closes internally.
bool is_satisfiable(const TBoxIndex& tbox, const std::set<Atom>& abox);
bool is_satisfiable(const KnowledgeBase& kb);

}  // namespace dlevo
