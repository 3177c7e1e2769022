// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#include "dlevo/reasoner.hpp"

#include <algorithm>
#include <deque>

namespace dlevo {

namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

void fnv(uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  h ^= '\n';
  h *= kFnvPrime;
}

/// Calls f for every atom whose predicate is p. Atoms sort by predicate
/// first, so this is a contiguous range of the set.
template <typename F>
void for_predicate(const std::set<Atom>& atoms, const std::string& p, F&& f) {
  for (auto it = atoms.lower_bound(Atom(p, ""));
       it != atoms.end() && it->predicate() == p; ++it)
    f(*it);
}

ValueDomain domain_of(Datatype d) {
  switch (d) {
    case Datatype::Integer: return ValueDomain::Integer;
    case Datatype::String: return ValueDomain::String;
    case Datatype::Boolean: return ValueDomain::Boolean;
    case Datatype::Rational: return ValueDomain::Rational;
  }
  return ValueDomain::Top;
}

/// Member individuals of a basic concept, each with its single-atom
/// witnesses drawn from `atoms`.
std::map<std::string, std::vector<Atom>> members_of(const std::set<Atom>& atoms,
                                                    const BasicConcept& b) {
  std::map<std::string, std::vector<Atom>> out;
  for_predicate(atoms, b.name, [&](const Atom& a) {
    switch (b.kind) {
      case BasicKind::Atomic:
        if (a.kind() == AtomKind::Concept) out[a.subject()].push_back(a);
        break;
      case BasicKind::ExistsRole:
        if (a.kind() == AtomKind::Role)
          out[b.inverted ? a.object() : a.subject()].push_back(a);
        break;
      case BasicKind::AttrDomain:
        if (a.kind() == AtomKind::Attribute) out[a.subject()].push_back(a);
        break;
    }
  });
  return out;
}

/// Extension of a role expression: ordered pairs with their witness atom.
std::vector<std::pair<std::pair<std::string, std::string>, Atom>> ext_pairs(
    const std::set<Atom>& atoms, const RoleExpr& q) {
  std::vector<std::pair<std::pair<std::string, std::string>, Atom>> out;
  for_predicate(atoms, q.role, [&](const Atom& a) {
    if (a.kind() != AtomKind::Role) return;
    if (q.inverted)
      out.push_back({{a.object(), a.subject()}, a});
    else
      out.push_back({{a.subject(), a.object()}, a});
  });
  return out;
}

}  // namespace

TBoxIndex::TBoxIndex(const std::vector<TBoxAssertion>& tbox) {
  TBoxPartition part = partition_tbox(tbox);
  positive_ = std::move(part.positive);
  negative_ = std::move(part.negative);
  ident_ = std::move(part.identification);
  checks_ = negative_;
  checks_.insert(checks_.end(), ident_.begin(), ident_.end());

  for (const auto& t : positive_) {
    if (const auto* c = std::get_if<ConceptInclusion>(&t)) {
      // Only an atomic right-hand side yields a new ABox atom; existential
      // and attribute-domain conclusions have anonymous witnesses.
      if (c->rhs.kind != BasicKind::Atomic) continue;
      switch (c->lhs.kind) {
        case BasicKind::Atomic:
          by_concept_[c->lhs.name].push_back({c->rhs.name, false});
          break;
        case BasicKind::ExistsRole:
          by_role_member_[c->lhs.name].push_back({c->rhs.name, c->lhs.inverted});
          break;
        case BasicKind::AttrDomain:
          by_attr_member_[c->lhs.name].push_back({c->rhs.name, false});
          break;
      }
    } else if (const auto* r = std::get_if<RoleInclusion>(&t)) {
      by_role_[r->lhs.role].push_back(
          {r->lhs.inverted, r->rhs.role, r->rhs.inverted});
    } else if (const auto* a = std::get_if<AttributeInclusion>(&t)) {
      by_attr_[a->lhs].push_back(a->rhs);
    }
  }

  std::vector<std::string> lines;
  lines.reserve(tbox.size());
  for (const auto& t : tbox) lines.push_back(to_text(t));
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  uint64_t h = kFnvOffset;
  for (const auto& l : lines) fnv(h, l);
  fingerprint_ = h;
}

const std::vector<TBoxIndex::ConceptTarget>* TBoxIndex::concept_rules(
    const std::string& p) const {
  auto it = by_concept_.find(p);
  return it == by_concept_.end() ? nullptr : &it->second;
}

const std::vector<TBoxIndex::ConceptTarget>* TBoxIndex::role_member_rules(
    const std::string& p) const {
  auto it = by_role_member_.find(p);
  return it == by_role_member_.end() ? nullptr : &it->second;
}

const std::vector<TBoxIndex::ConceptTarget>* TBoxIndex::attr_member_rules(
    const std::string& p) const {
  auto it = by_attr_member_.find(p);
  return it == by_attr_member_.end() ? nullptr : &it->second;
}

const std::vector<TBoxIndex::RoleTarget>* TBoxIndex::role_rules(
    const std::string& p) const {
  auto it = by_role_.find(p);
  return it == by_role_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* TBoxIndex::attr_rules(
    const std::string& p) const {
  auto it = by_attr_.find(p);
  return it == by_attr_.end() ? nullptr : &it->second;
}

ClosedAtomSet closure(const TBoxIndex& tbox, const std::set<Atom>& atoms) {
  ClosedAtomSet out;
  out.tbox_fingerprint = tbox.fingerprint();
  out.atoms = atoms;
  std::vector<Atom> work(atoms.begin(), atoms.end());
  auto add = [&](Atom a) {
    if (out.atoms.insert(a).second) work.push_back(std::move(a));
  };
  while (!work.empty()) {
    Atom a = std::move(work.back());
    work.pop_back();
    switch (a.kind()) {
      case AtomKind::Concept:
        if (const auto* rs = tbox.concept_rules(a.predicate()))
          for (const auto& r : *rs) add(Atom(r.rhs, a.subject()));
        break;
      case AtomKind::Role: {
        if (const auto* rs = tbox.role_member_rules(a.predicate()))
          for (const auto& r : *rs)
            add(Atom(r.rhs, r.from_object ? a.object() : a.subject()));
        if (const auto* rs = tbox.role_rules(a.predicate()))
          for (const auto& r : *rs) {
            const std::string& x = r.lhs_inverted ? a.object() : a.subject();
            const std::string& y = r.lhs_inverted ? a.subject() : a.object();
            add(r.rhs_inverted ? Atom(r.rhs, y, x) : Atom(r.rhs, x, y));
          }
        break;
      }
      case AtomKind::Attribute: {
        if (const auto* rs = tbox.attr_member_rules(a.predicate()))
          for (const auto& r : *rs) add(Atom(r.rhs, a.subject()));
        if (const auto* rs = tbox.attr_rules(a.predicate()))
          for (const auto& rhs : *rs) add(Atom(rhs, a.subject(), a.value()));
        break;
      }
    }
  }
  return out;
}

ClosedAtomSet closure(const std::vector<TBoxAssertion>& tbox,
                      const std::set<Atom>& atoms) {
  return closure(TBoxIndex(tbox), atoms);
}

std::vector<Atom> member_basic(const std::set<Atom>& atoms,
                               const BasicConcept& b,
                               const std::string& individual) {
  std::vector<Atom> out;
  for_predicate(atoms, b.name, [&](const Atom& a) {
    switch (b.kind) {
      case BasicKind::Atomic:
        if (a.kind() == AtomKind::Concept && a.subject() == individual)
          out.push_back(a);
        break;
      case BasicKind::ExistsRole:
        if (a.kind() == AtomKind::Role &&
            (b.inverted ? a.object() : a.subject()) == individual)
          out.push_back(a);
        break;
      case BasicKind::AttrDomain:
        if (a.kind() == AtomKind::Attribute && a.subject() == individual)
          out.push_back(a);
        break;
    }
  });
  return out;
}

std::string to_text(const PathEnd& e) {
  if (const auto* s = std::get_if<std::string>(&e)) return *s;
  return to_text(std::get<TypedValue>(e));
}

namespace {

/// Keeps only inclusion-minimal support sets per frontier node.
void antichain_insert(std::vector<std::set<Atom>>& supports,
                      const std::set<Atom>& s) {
  for (const auto& have : supports)
    if (std::includes(s.begin(), s.end(), have.begin(), have.end())) return;
  supports.erase(std::remove_if(supports.begin(), supports.end(),
                                [&](const std::set<Atom>& have) {
                                  return std::includes(have.begin(), have.end(),
                                                       s.begin(), s.end());
                                }),
                 supports.end());
  supports.push_back(s);
}

}  // namespace

std::vector<PathMatch> eval_path(const std::set<Atom>& atoms, const Path& p) {
  using Node = std::pair<std::string, PathEnd>;  // (start, current)
  std::map<Node, std::vector<std::set<Atom>>> frontier;
  for (const std::string& x : atoms_individuals(atoms))
    frontier[{x, PathEnd(x)}].push_back({});

  for (const PathStep& step : p.steps) {
    std::map<Node, std::vector<std::set<Atom>>> next;
    if (const auto* q = std::get_if<RoleExpr>(&step)) {
      std::multimap<std::string, std::pair<std::string, Atom>> fwd;
      for (const auto& [pr, atom] : ext_pairs(atoms, *q))
        fwd.insert({pr.first, {pr.second, atom}});
      for (const auto& [node, supports] : frontier) {
        const auto* at = std::get_if<std::string>(&node.second);
        if (!at) continue;
        auto [lo, hi] = fwd.equal_range(*at);
        for (auto it = lo; it != hi; ++it)
          for (const auto& sup : supports) {
            std::set<Atom> s = sup;
            s.insert(it->second.second);
            antichain_insert(next[{node.first, PathEnd(it->second.first)}], s);
          }
      }
    } else if (const auto* u = std::get_if<AttributeStep>(&step)) {
      for (const auto& [node, supports] : frontier) {
        const auto* at = std::get_if<std::string>(&node.second);
        if (!at) continue;
        for_predicate(atoms, u->attribute, [&](const Atom& a) {
          if (a.kind() != AtomKind::Attribute || a.subject() != *at) return;
          for (const auto& sup : supports) {
            std::set<Atom> s = sup;
            s.insert(a);
            antichain_insert(next[{node.first, PathEnd(a.value())}], s);
          }
        });
      }
    } else {
      const auto& test = std::get<TestStep>(step);
      for (const auto& [node, supports] : frontier) {
        const auto* at = std::get_if<std::string>(&node.second);
        if (!at) continue;
        for (const Atom& w : member_basic(atoms, test.basic, *at))
          for (const auto& sup : supports) {
            std::set<Atom> s = sup;
            s.insert(w);
            antichain_insert(next[node], s);
          }
      }
    }
    frontier = std::move(next);
  }

  std::vector<PathMatch> out;
  for (const auto& [node, supports] : frontier)
    for (const auto& sup : supports)
      out.push_back(PathMatch{node.first, node.second, sup});
  return out;
}

bool violated_in(const TBoxAssertion& t,
                 const std::set<Atom>& closed_atoms) {
  if (const auto* c = std::get_if<ConceptInclusion>(&t)) {
    if (!c->negated_rhs) return false;
    auto m1 = members_of(closed_atoms, c->lhs);
    if (m1.empty()) return false;
    auto m2 = members_of(closed_atoms, c->rhs);
    for (const auto& [x, w] : m1)
      if (m2.count(x)) return true;
    return false;
  }
  if (const auto* r = std::get_if<RoleInclusion>(&t)) {
    if (!r->negated_rhs) return false;
    std::set<std::pair<std::string, std::string>> lhs;
    for (const auto& [pr, a] : ext_pairs(closed_atoms, r->lhs)) lhs.insert(pr);
    for (const auto& [pr, a] : ext_pairs(closed_atoms, r->rhs))
      if (lhs.count(pr)) return true;
    return false;
  }
  if (const auto* a = std::get_if<AttributeInclusion>(&t)) {
    if (!a->negated_rhs) return false;
    std::set<std::pair<std::string, TypedValue>> lhs;
    for_predicate(closed_atoms, a->lhs, [&](const Atom& at) {
      lhs.insert({at.subject(), at.value()});
    });
    bool hit = false;
    for_predicate(closed_atoms, a->rhs, [&](const Atom& at) {
      if (lhs.count({at.subject(), at.value()})) hit = true;
    });
    return hit;
  }
  if (const auto* v = std::get_if<ValueDomainInclusion>(&t)) {
    if (v->domain == ValueDomain::Top) return false;
    bool hit = false;
    for_predicate(closed_atoms, v->attribute, [&](const Atom& at) {
      if (domain_of(at.value().type()) != v->domain) hit = true;
    });
    return hit;
  }
  if (const auto* f = std::get_if<AttributeFunctionality>(&t)) {
    // Atoms of one predicate iterate grouped by subject, so two adjacent
    // atoms with the same subject already witness a second value.
    bool hit = false;
    std::string cur_subject;
    bool have = false;
    for_predicate(closed_atoms, f->attribute, [&](const Atom& at) {
      if (have && at.subject() == cur_subject) hit = true;
      cur_subject = at.subject();
      have = true;
    });
    return hit;
  }
  const auto& id = std::get<Identification>(t);
  auto members = members_of(closed_atoms, id.base);
  if (members.size() < 2) return false;
  // End sets per member and path; a pair violates when it shares an end
  // on every path.
  std::vector<std::map<std::string, std::set<PathEnd>>> ends(id.paths.size());
  for (size_t i = 0; i < id.paths.size(); ++i)
    for (const PathMatch& m : eval_path(closed_atoms, id.paths[i]))
      if (members.count(m.start)) ends[i][m.start].insert(m.end);
  std::map<PathEnd, std::vector<std::string>> bucket;
  for (const auto& [x, es] : ends[0])
    for (const PathEnd& e : es) bucket[e].push_back(x);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [e, xs] : bucket)
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j) {
        auto pr = std::minmax(xs[i], xs[j]);
        if (!seen.insert({pr.first, pr.second}).second) continue;
        bool all = true;
        for (size_t k = 1; k < id.paths.size() && all; ++k) {
          auto ia = ends[k].find(pr.first);
          auto ib = ends[k].find(pr.second);
          if (ia == ends[k].end() || ib == ends[k].end()) {
            all = false;
            break;
          }
          bool common = false;
          for (const PathEnd& x : ia->second)
            if (ib->second.count(x)) {
              common = true;
              break;
            }
          all = common;
        }
        if (all) return true;
      }
  return false;
}

bool is_satisfiable(const TBoxIndex& tbox, const std::set<Atom>& abox) {
  ClosedAtomSet c = closure(tbox, abox);
  for (const auto& t : tbox.checks())
    if (violated_in(t, c.atoms)) return false;
  return true;
}

bool is_satisfiable(const KnowledgeBase& kb) {
  return is_satisfiable(TBoxIndex(kb.tbox), kb.abox);
}

bool entails_atom(const TBoxIndex& tbox, const Atom& premise,
                  const Atom& conclusion) {
  ClosedAtomSet c = closure(tbox, std::set<Atom>{premise});
  for (const auto& t : tbox.checks())
    if (violated_in(t, c.atoms))
      throw PreconditionError(
          PreconditionError::Kind::UnsatSingleton,
          "unsatisfiable premise: " + to_text(premise));
  return c.atoms.count(conclusion) > 0;
}

std::set<Atom> subsumee(const TBoxIndex& tbox, const ClosedAtomSet& closed,
                        const Atom& target) {
  if (closed.tbox_fingerprint != tbox.fingerprint())
    throw PreconditionError(PreconditionError::Kind::StaleClosure,
                            "closed set was built under a different TBox");
  std::set<Atom> out;
  for (const Atom& a : closed.atoms)
    if (entails_atom(tbox, a, target)) out.insert(a);
  return out;
}

namespace {

/// Surface instances of a constraint: pattern atom sets drawn directly
/// from the closed set that make the constraint fire.
std::vector<std::set<Atom>> surface_instances(const std::set<Atom>& closed,
                                              const TBoxAssertion& t) {
  std::vector<std::set<Atom>> out;
  if (const auto* c = std::get_if<ConceptInclusion>(&t)) {
    if (!c->negated_rhs) return out;
    auto m1 = members_of(closed, c->lhs);
    auto m2 = members_of(closed, c->rhs);
    for (const auto& [x, w1s] : m1) {
      auto it = m2.find(x);
      if (it == m2.end()) continue;
      for (const Atom& w1 : w1s)
        for (const Atom& w2 : it->second) out.push_back({w1, w2});
    }
  } else if (const auto* r = std::get_if<RoleInclusion>(&t)) {
    if (!r->negated_rhs) return out;
    std::map<std::pair<std::string, std::string>, std::vector<Atom>> lhs;
    for (const auto& [pr, a] : ext_pairs(closed, r->lhs))
      lhs[pr].push_back(a);
    for (const auto& [pr, a] : ext_pairs(closed, r->rhs)) {
      auto it = lhs.find(pr);
      if (it == lhs.end()) continue;
      for (const Atom& w : it->second) out.push_back({w, a});
    }
  } else if (const auto* a = std::get_if<AttributeInclusion>(&t)) {
    if (!a->negated_rhs) return out;
    std::map<std::pair<std::string, TypedValue>, Atom> lhs;
    for_predicate(closed, a->lhs, [&](const Atom& at) {
      lhs.insert({{at.subject(), at.value()}, at});
    });
    for_predicate(closed, a->rhs, [&](const Atom& at) {
      auto it = lhs.find({at.subject(), at.value()});
      if (it != lhs.end()) out.push_back({it->second, at});
    });
  } else if (const auto* v = std::get_if<ValueDomainInclusion>(&t)) {
    if (v->domain == ValueDomain::Top) return out;
    for_predicate(closed, v->attribute, [&](const Atom& at) {
      if (domain_of(at.value().type()) != v->domain) out.push_back({at});
    });
  } else if (const auto* f = std::get_if<AttributeFunctionality>(&t)) {
    std::map<std::string, std::vector<Atom>> by_subject;
    for_predicate(closed, f->attribute, [&](const Atom& at) {
      by_subject[at.subject()].push_back(at);
    });
    for (const auto& [x, as] : by_subject)
      for (size_t i = 0; i < as.size(); ++i)
        for (size_t j = i + 1; j < as.size(); ++j)
          out.push_back({as[i], as[j]});
  } else {
    const auto& id = std::get<Identification>(t);
    auto members = members_of(closed, id.base);
    if (members.size() < 2) return out;
    // Matches per path and member, with their minimal supports.
    std::vector<std::map<std::string, std::map<PathEnd, std::vector<std::set<Atom>>>>>
        match(id.paths.size());
    for (size_t i = 0; i < id.paths.size(); ++i)
      for (const PathMatch& m : eval_path(closed, id.paths[i]))
        if (members.count(m.start)) match[i][m.start][m.end].push_back(m.support);
    std::vector<std::string> xs;
    for (const auto& [x, w] : members) xs.push_back(x);
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j) {
        const std::string &a = xs[i], &b = xs[j];
        // Per path, the realizable (end, support_a, support_b) choices.
        std::vector<std::vector<std::set<Atom>>> path_choices;
        bool feasible = true;
        for (size_t k = 0; k < id.paths.size() && feasible; ++k) {
          std::vector<std::set<Atom>> choices;
          auto ia = match[k].find(a);
          auto ib = match[k].find(b);
          if (ia == match[k].end() || ib == match[k].end()) {
            feasible = false;
            break;
          }
          for (const auto& [end, sups_a] : ia->second) {
            auto ie = ib->second.find(end);
            if (ie == ib->second.end()) continue;
            for (const auto& sa : sups_a)
              for (const auto& sb : ie->second) {
                std::set<Atom> u = sa;
                u.insert(sb.begin(), sb.end());
                choices.push_back(std::move(u));
              }
          }
          if (choices.empty()) feasible = false;
          path_choices.push_back(std::move(choices));
        }
        if (!feasible) continue;
        // Cartesian product over paths, witnesses for both members.
        std::vector<size_t> pick(path_choices.size(), 0);
        for (;;) {
          std::set<Atom> base;
          for (size_t k = 0; k < pick.size(); ++k) {
            const auto& s = path_choices[k][pick[k]];
            base.insert(s.begin(), s.end());
          }
          for (const Atom& wa : members[a])
            for (const Atom& wb : members[b]) {
              std::set<Atom> inst = base;
              inst.insert(wa);
              inst.insert(wb);
              out.push_back(std::move(inst));
            }
          size_t k = 0;
          while (k < pick.size() && ++pick[k] == path_choices[k].size()) {
            pick[k] = 0;
            ++k;
          }
          if (k == pick.size()) break;
        }
      }
  }
  return out;
}

}  // namespace

std::vector<ViolationSet> violation_sets(const TBoxIndex& tbox,
                                         const std::set<Atom>& closed_atoms) {
  // Generators: for every atom of the closed set, which atoms of the set
  // individually derive it. Closure rules are single-premise, so every
  // minimal violating set picks one generator per pattern atom.
  std::map<Atom, std::vector<Atom>> gens;
  for (const Atom& g : closed_atoms) {
    ClosedAtomSet c = closure(tbox, std::set<Atom>{g});
    for (const Atom& d : c.atoms)
      if (closed_atoms.count(d)) gens[d].push_back(g);
  }

  std::vector<ViolationSet> out;
  for (const TBoxAssertion& t : tbox.checks()) {
    std::set<std::set<Atom>> minimal;
    std::set<std::set<Atom>> seen_instances;
    for (const std::set<Atom>& inst : surface_instances(closed_atoms, t)) {
      if (!seen_instances.insert(inst).second) continue;
      std::vector<const std::vector<Atom>*> choices;
      for (const Atom& r : inst) choices.push_back(&gens.at(r));
      std::vector<size_t> pick(choices.size(), 0);
      for (;;) {
        std::set<Atom> cand;
        for (size_t i = 0; i < choices.size(); ++i)
          cand.insert((*choices[i])[pick[i]]);
        // Greedy minimization in canonical text order. Once a removal is
        // rejected it stays rejected, so a single pass reaches a minimum.
        std::vector<Atom> order(cand.begin(), cand.end());
        std::sort(order.begin(), order.end(), [](const Atom& x, const Atom& y) {
          return to_text(x) < to_text(y);
        });
        for (const Atom& a : order) {
          std::set<Atom> trial = cand;
          trial.erase(a);
          if (violated_in(t, closure(tbox, trial).atoms)) cand = trial;
        }
        minimal.insert(std::move(cand));
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i]->size()) {
          pick[i] = 0;
          ++i;
        }
        if (i == pick.size()) break;
      }
    }
    for (const auto& v : minimal) out.push_back(ViolationSet{t, v});
  }

  std::sort(out.begin(), out.end(), [](const ViolationSet& a, const ViolationSet& b) {
    std::string ta = to_text(a.violated), tb = to_text(b.violated);
    if (ta != tb) return ta < tb;
    auto render = [](const ViolationSet& v) {
      std::vector<std::string> xs;
      for (const Atom& at : v.atoms) xs.push_back(to_text(at));
      std::sort(xs.begin(), xs.end());
      return xs;
    };
    return render(a) < render(b);
  });
  return out;
}

}  // namespace dlevo
