// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#pragma once

#include <set>
#include <vector>

#include "dlevo/model.hpp"
#include "dlevo/reasoner.hpp"

namespace dlevo {

/// Outcome of an evolution step. The result ABox is fully closed, so two
/// results agree exactly when their ABoxes are equal as sets.
struct EvolutionResult {
  KnowledgeBase kb;
  std::set<Atom> dropped;  // atoms of the input closure absent from the result
  std::set<Atom> added;    // atoms of the result absent from the input closure
  bool no_op = false;
  std::vector<ViolationSet> fired_violations;  // insertion conflicts resolved
};

/// Inserts the facts, retracting just enough of the old closure to stay
/// satisfiable. Facts that are themselves unsatisfiable with the TBox make
/// the call a flagged no-op.
EvolutionResult compute_insertion(const KnowledgeBase& kb,
                                  const std::vector<Atom>& facts);

/// Deletes the facts and everything that would re-derive them. A no-op when
/// the facts are empty or not all entailed; an error when the facts are
/// unsatisfiable with the TBox.
EvolutionResult compute_deletion(const KnowledgeBase& kb,
                                 const std::vector<Atom>& facts);

}  // namespace dlevo
