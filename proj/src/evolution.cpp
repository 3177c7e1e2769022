// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#include "dlevo/evolution.hpp"

#include <algorithm>
#include <map>

namespace dlevo {

namespace {

std::set<Atom> dedupe_validated(const KnowledgeBase& kb,
                                const std::vector<Atom>& facts) {
  std::set<Atom> out;
  for (const Atom& f : facts) {
    validate_atom(kb.signature, f);
    out.insert(f);
  }
  return out;
}

void require_satisfiable_kb(const TBoxIndex& tbox, const KnowledgeBase& kb) {
  if (!is_satisfiable(tbox, kb.abox))
    throw PreconditionError(PreconditionError::Kind::UnsatKb,
                            "input knowledge base is unsatisfiable");
}

EvolutionResult noop_result(const TBoxIndex& tbox, const KnowledgeBase& kb) {
  EvolutionResult r;
  r.kb = kb;
  r.kb.abox = closure(tbox, kb.abox).atoms;
  r.no_op = true;
  return r;
}

}  // namespace

EvolutionResult compute_deletion(const KnowledgeBase& kb,
                                 const std::vector<Atom>& facts) {
  TBoxIndex tbox(kb.tbox);
  require_satisfiable_kb(tbox, kb);
  std::set<Atom> f = dedupe_validated(kb, facts);

  if (!f.empty() && !is_satisfiable(tbox, f))
    throw PreconditionError(PreconditionError::Kind::UnsatFacts,
                            "facts to delete are unsatisfiable with the TBox");

  ClosedAtomSet cl_a = closure(tbox, kb.abox);
  bool all_entailed = std::all_of(f.begin(), f.end(), [&](const Atom& a) {
    return cl_a.atoms.count(a) > 0;
  });
  if (f.empty() || !all_entailed) return noop_result(tbox, kb);

  // Mutually entailing facts act as one: keep the textually least
  // representative of each equivalence class so the later filter cannot
  // discard a whole class against itself.
  std::map<Atom, std::set<Atom>> singleton_cl;
  for (const Atom& a : f) singleton_cl.emplace(a, closure(tbox, {a}).atoms);
  auto entails = [&](const Atom& x, const Atom& y) {
    return singleton_cl.at(x).count(y) > 0;
  };
  std::vector<Atom> reps;
  for (const Atom& a : f) {
    bool least = true;
    for (const Atom& b : f) {
      if (b == a || !entails(a, b) || !entails(b, a)) continue;
      if (to_text(b) < to_text(a)) least = false;
    }
    if (least) reps.push_back(a);
  }

  // Drop facts already entailed by another remaining fact; deleting the
  // stronger one removes them anyway.
  std::vector<Atom> targets;
  for (const Atom& a : reps) {
    bool redundant = false;
    for (const Atom& b : reps)
      if (!(b == a) && entails(b, a)) redundant = true;
    if (!redundant) targets.push_back(a);
  }

  EvolutionResult r;
  r.kb.signature = kb.signature;
  r.kb.tbox = kb.tbox;
  for (const Atom& g : cl_a.atoms) {
    ClosedAtomSet cl_g = closure(tbox, {g});
    bool doomed = std::any_of(targets.begin(), targets.end(), [&](const Atom& t) {
      return cl_g.atoms.count(t) > 0;
    });
    if (doomed)
      r.dropped.insert(g);
    else
      r.kb.abox.insert(g);
  }
  return r;
}

EvolutionResult compute_insertion(const KnowledgeBase& kb,
                                  const std::vector<Atom>& facts) {
  TBoxIndex tbox(kb.tbox);
  require_satisfiable_kb(tbox, kb);
  std::set<Atom> f = dedupe_validated(kb, facts);

  if (!f.empty() && !is_satisfiable(tbox, f)) return noop_result(tbox, kb);

  ClosedAtomSet cl_a = closure(tbox, kb.abox);
  ClosedAtomSet cl_f = closure(tbox, f);
  std::set<Atom> united = cl_a.atoms;
  united.insert(cl_f.atoms.begin(), cl_f.atoms.end());

  std::vector<ViolationSet> violations = violation_sets(tbox, united);

  // An old atom is given up when it takes part in some conflict that the
  // rest of that conflict, together with the new facts, survives without.
  std::set<Atom> retracted;
  std::vector<bool> fired(violations.size(), false);
  for (const Atom& alpha : cl_a.atoms) {
    if (cl_f.atoms.count(alpha)) continue;
    for (size_t i = 0; i < violations.size(); ++i) {
      const ViolationSet& v = violations[i];
      if (!v.atoms.count(alpha)) continue;
      std::set<Atom> probe = f;
      probe.insert(v.atoms.begin(), v.atoms.end());
      probe.erase(alpha);
      if (is_satisfiable(tbox, probe)) {
        retracted.insert(alpha);
        fired[i] = true;
      }
    }
  }

  std::set<Atom> base = f;
  for (const Atom& a : cl_a.atoms)
    if (!retracted.count(a)) base.insert(a);

  EvolutionResult r;
  r.kb.signature = kb.signature;
  r.kb.tbox = kb.tbox;
  r.kb.abox = closure(tbox, base).atoms;
  for (const Atom& a : cl_a.atoms)
    if (!r.kb.abox.count(a)) r.dropped.insert(a);
  for (const Atom& a : r.kb.abox)
    if (!cl_a.atoms.count(a)) r.added.insert(a);
  for (size_t i = 0; i < violations.size(); ++i)
    if (fired[i]) r.fired_violations.push_back(violations[i]);
  return r;
}

}  // namespace dlevo
