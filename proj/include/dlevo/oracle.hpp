// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

#include "dlevo/model.hpp"

namespace dlevo {
namespace oracle {

/// The enumeration universe grew past the configured bound; the exact
/// semantics are out of reach for this input.
class BoundExceeded : public std::runtime_error {
 public:
  BoundExceeded(size_t universe, size_t bound)
      : std::runtime_error("enumeration universe of " +
                           std::to_string(universe) +
                           " atoms exceeds bound " + std::to_string(bound)),
        universe_(universe),
        bound_(bound) {}

  size_t universe() const { return universe_; }
  size_t bound() const { return bound_; }

 private:
  size_t universe_;
  size_t bound_;
};

inline constexpr size_t kDefaultBound = 20;

enum class Op { Insert, Delete };

/// Fixpoint closure by plain re-scanning. Deliberately written without the
/// indexed machinery of the main reasoner so the two can check each other.
std::set<Atom> naive_closure(const std::vector<TBoxAssertion>& tbox,
                             const std::set<Atom>& atoms);

bool naive_satisfiable(const std::vector<TBoxAssertion>& tbox,
                       const std::set<Atom>& atoms);

/// Whether a candidate ABox accomplishes the change: satisfiable, and it
/// entails all facts (insertion) or fails to entail them all (deletion).
bool accomplishes(const std::vector<TBoxAssertion>& tbox,
                  const std::set<Atom>& candidate_abox,
                  const std::set<Atom>& facts, Op op);

/// Closures of all minimal-change accomplishing KBs, deduplicated, in a
/// deterministic order. Enumerates subsets of the input closure, so the
/// combined closure of input and facts must stay within `bound` atoms.
std::vector<std::set<Atom>> enumerate_minimal(const KnowledgeBase& kb,
                                              const std::vector<Atom>& facts,
                                              Op op,
                                              size_t bound = kDefaultBound);

struct OracleResult {
  std::set<Atom> atoms;  // closed result ABox
  bool no_op = false;    // nothing accomplishes the change
};

/// When-in-doubt-throw-it-out semantics: the intersection of all minimal
/// accomplishers' closures, or the input closure when there are none.
OracleResult widtio(const KnowledgeBase& kb, const std::vector<Atom>& facts,
                    Op op, size_t bound = kDefaultBound);

}  // namespace oracle
}  // namespace dlevo
