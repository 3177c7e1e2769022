// Copyright 2026 the dlevo authors. MIT license; see LICENSE.
//
// Everything here recomputes the semantics from first principles with plain
// scans and explicit subset enumeration. No code is shared with the indexed
// reasoner on purpose: the two sides exist to catch each other's mistakes.

#include "dlevo/oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <variant>

namespace dlevo {
namespace oracle {

namespace {

using End = std::variant<std::string, TypedValue>;

// If atom `a` makes some individual a member of `b`, that individual.
std::optional<std::string> witness_member(const Atom& a,
                                          const BasicConcept& b) {
  if (a.predicate() != b.name) return std::nullopt;
  switch (b.kind) {
    case BasicKind::Atomic:
      if (a.kind() == AtomKind::Concept) return a.subject();
      break;
    case BasicKind::ExistsRole:
      if (a.kind() == AtomKind::Role)
        return b.inverted ? a.object() : a.subject();
      break;
    case BasicKind::AttrDomain:
      if (a.kind() == AtomKind::Attribute) return a.subject();
      break;
  }
  return std::nullopt;
}

bool naive_member(const std::set<Atom>& atoms, const BasicConcept& b,
                  const std::string& x) {
  for (const Atom& a : atoms)
    if (witness_member(a, b) == std::optional<std::string>(x)) return true;
  return false;
}

std::set<std::string> individuals(const std::set<Atom>& atoms) {
  std::set<std::string> out;
  for (const Atom& a : atoms) {
    out.insert(a.subject());
    if (a.kind() == AtomKind::Role) out.insert(a.object());
  }
  return out;
}

// Every endpoint reachable from `node` along the rest of the path.
void naive_ends(const std::set<Atom>& atoms, const Path& p, size_t i,
                const End& node, std::set<End>& out) {
  if (i == p.steps.size()) {
    out.insert(node);
    return;
  }
  const auto* at = std::get_if<std::string>(&node);
  if (!at) return;
  const PathStep& step = p.steps[i];
  if (const auto* q = std::get_if<RoleExpr>(&step)) {
    for (const Atom& a : atoms) {
      if (a.kind() != AtomKind::Role || a.predicate() != q->role) continue;
      const std::string& from = q->inverted ? a.object() : a.subject();
      const std::string& to = q->inverted ? a.subject() : a.object();
      if (from == *at) naive_ends(atoms, p, i + 1, End(to), out);
    }
  } else if (const auto* u = std::get_if<AttributeStep>(&step)) {
    for (const Atom& a : atoms)
      if (a.kind() == AtomKind::Attribute && a.predicate() == u->attribute &&
          a.subject() == *at)
        naive_ends(atoms, p, i + 1, End(a.value()), out);
  } else {
    if (naive_member(atoms, std::get<TestStep>(step).basic, *at))
      naive_ends(atoms, p, i + 1, node, out);
  }
}

bool shares_end(const std::set<Atom>& atoms, const Path& p,
                const std::string& a, const std::string& b) {
  std::set<End> ea, eb;
  naive_ends(atoms, p, 0, End(a), ea);
  naive_ends(atoms, p, 0, End(b), eb);
  for (const End& e : ea)
    if (eb.count(e)) return true;
  return false;
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

bool violates(const std::vector<TBoxAssertion>& tbox, const TBoxAssertion& t,
              const std::set<Atom>& closed) {
  if (const auto* c = std::get_if<ConceptInclusion>(&t)) {
    if (!c->negated_rhs) return false;
    for (const std::string& x : individuals(closed))
      if (naive_member(closed, c->lhs, x) && naive_member(closed, c->rhs, x))
        return true;
    return false;
  }
  if (const auto* r = std::get_if<RoleInclusion>(&t)) {
    if (!r->negated_rhs) return false;
    auto ext = [&](const RoleExpr& q, const Atom& a)
        -> std::optional<std::pair<std::string, std::string>> {
      if (a.kind() != AtomKind::Role || a.predicate() != q.role)
        return std::nullopt;
      if (q.inverted) return std::make_pair(a.object(), a.subject());
      return std::make_pair(a.subject(), a.object());
    };
    for (const Atom& a1 : closed) {
      auto p1 = ext(r->lhs, a1);
      if (!p1) continue;
      for (const Atom& a2 : closed)
        if (ext(r->rhs, a2) == p1) return true;
    }
    return false;
  }
  if (const auto* ai = std::get_if<AttributeInclusion>(&t)) {
    if (!ai->negated_rhs) return false;
    for (const Atom& a1 : closed) {
      if (a1.kind() != AtomKind::Attribute || a1.predicate() != ai->lhs)
        continue;
      for (const Atom& a2 : closed)
        if (a2.kind() == AtomKind::Attribute && a2.predicate() == ai->rhs &&
            a2.subject() == a1.subject() && a2.value() == a1.value())
          return true;
    }
    return false;
  }
  if (const auto* v = std::get_if<ValueDomainInclusion>(&t)) {
    if (v->domain == ValueDomain::Top) return false;
    for (const Atom& a : closed)
      if (a.kind() == AtomKind::Attribute && a.predicate() == v->attribute &&
          domain_of(a.value().type()) != v->domain)
        return true;
    return false;
  }
  if (const auto* f = std::get_if<AttributeFunctionality>(&t)) {
    for (const Atom& a1 : closed) {
      if (a1.kind() != AtomKind::Attribute || a1.predicate() != f->attribute)
        continue;
      for (const Atom& a2 : closed)
        if (a2.kind() == AtomKind::Attribute &&
            a2.predicate() == f->attribute && a2.subject() == a1.subject() &&
            !(a2.value() == a1.value()))
          return true;
    }
    return false;
  }
  if (const auto* id = std::get_if<Identification>(&t)) {
    std::vector<std::string> members;
    for (const std::string& x : individuals(closed))
      if (naive_member(closed, id->base, x)) members.push_back(x);
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j) {
        bool all = true;
        for (const Path& p : id->paths)
          if (!shares_end(closed, p, members[i], members[j])) {
            all = false;
            break;
          }
        if (all) return true;
      }
    return false;
  }
  (void)tbox;
  return false;
}

}  // namespace

std::set<Atom> naive_closure(const std::vector<TBoxAssertion>& tbox,
                             const std::set<Atom>& atoms) {
  std::set<Atom> out = atoms;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Atom> current(out.begin(), out.end());
    for (const TBoxAssertion& t : tbox) {
      if (const auto* c = std::get_if<ConceptInclusion>(&t)) {
        if (c->negated_rhs || c->rhs.kind != BasicKind::Atomic) continue;
        for (const Atom& a : current)
          if (auto x = witness_member(a, c->lhs))
            changed |= out.insert(Atom(c->rhs.name, *x)).second;
      } else if (const auto* r = std::get_if<RoleInclusion>(&t)) {
        if (r->negated_rhs) continue;
        for (const Atom& a : current) {
          if (a.kind() != AtomKind::Role || a.predicate() != r->lhs.role)
            continue;
          std::string x = r->lhs.inverted ? a.object() : a.subject();
          std::string y = r->lhs.inverted ? a.subject() : a.object();
          Atom derived = r->rhs.inverted ? Atom(r->rhs.role, y, x)
                                         : Atom(r->rhs.role, x, y);
          changed |= out.insert(derived).second;
        }
      } else if (const auto* ai = std::get_if<AttributeInclusion>(&t)) {
        if (ai->negated_rhs) continue;
        for (const Atom& a : current)
          if (a.kind() == AtomKind::Attribute && a.predicate() == ai->lhs)
            changed |= out.insert(Atom(ai->rhs, a.subject(), a.value())).second;
      }
    }
  }
  return out;
}

bool naive_satisfiable(const std::vector<TBoxAssertion>& tbox,
                       const std::set<Atom>& atoms) {
  std::set<Atom> closed = naive_closure(tbox, atoms);
  for (const TBoxAssertion& t : tbox)
    if (violates(tbox, t, closed)) return false;
  return true;
}

bool accomplishes(const std::vector<TBoxAssertion>& tbox,
                  const std::set<Atom>& candidate_abox,
                  const std::set<Atom>& facts, Op op) {
  if (!naive_satisfiable(tbox, candidate_abox)) return false;
  std::set<Atom> closed = naive_closure(tbox, candidate_abox);
  bool all = std::all_of(facts.begin(), facts.end(), [&](const Atom& f) {
    return closed.count(f) > 0;
  });
  return op == Op::Insert ? all : !all;
}

namespace {

// Pattern masks: every way a constraint can fire inside the universe,
// as a bit mask of the atoms involved. A closed candidate set is
// unsatisfiable exactly when it covers some pattern.
class PatternTable {
 public:
  PatternTable(const std::vector<TBoxAssertion>& tbox,
               const std::vector<Atom>& u) {
    for (size_t i = 0; i < u.size(); ++i) set_.insert(u[i]);
    for (size_t i = 0; i < u.size(); ++i) pos_[u[i]] = i;
    for (const TBoxAssertion& t : tbox) collect(t, u);
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()),
                    patterns_.end());
  }

  bool unsat(uint64_t closed_mask) const {
    for (uint64_t p : patterns_)
      if ((p & ~closed_mask) == 0) return true;
    return false;
  }

 private:
  uint64_t bit(const Atom& a) const { return uint64_t(1) << pos_.at(a); }

  void collect(const TBoxAssertion& t, const std::vector<Atom>& u) {
    if (const auto* c = std::get_if<ConceptInclusion>(&t)) {
      if (!c->negated_rhs) return;
      for (const std::string& x : individuals(set_))
        for (const Atom& a1 : u)
          if (witness_member(a1, c->lhs) == std::optional<std::string>(x))
            for (const Atom& a2 : u)
              if (witness_member(a2, c->rhs) == std::optional<std::string>(x))
                patterns_.push_back(bit(a1) | bit(a2));
    } else if (const auto* r = std::get_if<RoleInclusion>(&t)) {
      if (!r->negated_rhs) return;
      auto ext = [](const RoleExpr& q, const Atom& a)
          -> std::optional<std::pair<std::string, std::string>> {
        if (a.kind() != AtomKind::Role || a.predicate() != q.role)
          return std::nullopt;
        if (q.inverted) return std::make_pair(a.object(), a.subject());
        return std::make_pair(a.subject(), a.object());
      };
      for (const Atom& a1 : u) {
        auto p1 = ext(r->lhs, a1);
        if (!p1) continue;
        for (const Atom& a2 : u)
          if (ext(r->rhs, a2) == p1) patterns_.push_back(bit(a1) | bit(a2));
      }
    } else if (const auto* ai = std::get_if<AttributeInclusion>(&t)) {
      if (!ai->negated_rhs) return;
      for (const Atom& a1 : u) {
        if (a1.kind() != AtomKind::Attribute || a1.predicate() != ai->lhs)
          continue;
        for (const Atom& a2 : u)
          if (a2.kind() == AtomKind::Attribute && a2.predicate() == ai->rhs &&
              a2.subject() == a1.subject() && a2.value() == a1.value())
            patterns_.push_back(bit(a1) | bit(a2));
      }
    } else if (const auto* v = std::get_if<ValueDomainInclusion>(&t)) {
      if (v->domain == ValueDomain::Top) return;
      for (const Atom& a : u)
        if (a.kind() == AtomKind::Attribute && a.predicate() == v->attribute &&
            domain_of(a.value().type()) != v->domain)
          patterns_.push_back(bit(a));
    } else if (const auto* f = std::get_if<AttributeFunctionality>(&t)) {
      for (const Atom& a1 : u) {
        if (a1.kind() != AtomKind::Attribute || a1.predicate() != f->attribute)
          continue;
        for (const Atom& a2 : u)
          if (a2.kind() == AtomKind::Attribute &&
              a2.predicate() == f->attribute &&
              a2.subject() == a1.subject() && !(a2.value() == a1.value()))
            patterns_.push_back(bit(a1) | bit(a2));
      }
    } else if (const auto* id = std::get_if<Identification>(&t)) {
      std::map<std::string, std::vector<uint64_t>> witness;
      for (const Atom& a : u)
        if (auto x = witness_member(a, id->base)) witness[*x].push_back(bit(a));
      std::vector<std::string> members;
      for (const auto& [x, w] : witness) members.push_back(x);
      for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
          collect_id_pair(*id, witness, members[i], members[j]);
    }
  }

  // All (end, support mask) realizations of a path from `node`.
  void realize(const Path& p, size_t i, const End& node, uint64_t sup,
               std::vector<std::pair<End, uint64_t>>& out) const {
    if (i == p.steps.size()) {
      out.push_back({node, sup});
      return;
    }
    const auto* at = std::get_if<std::string>(&node);
    if (!at) return;
    const PathStep& step = p.steps[i];
    if (const auto* q = std::get_if<RoleExpr>(&step)) {
      for (const auto& [a, b] : pos_) {
        if (a.kind() != AtomKind::Role || a.predicate() != q->role) continue;
        const std::string& from = q->inverted ? a.object() : a.subject();
        const std::string& to = q->inverted ? a.subject() : a.object();
        if (from == *at) realize(p, i + 1, End(to), sup | bit(a), out);
      }
    } else if (const auto* us = std::get_if<AttributeStep>(&step)) {
      for (const auto& [a, b] : pos_)
        if (a.kind() == AtomKind::Attribute &&
            a.predicate() == us->attribute && a.subject() == *at)
          realize(p, i + 1, End(a.value()), sup | bit(a), out);
    } else {
      const BasicConcept& bc = std::get<TestStep>(step).basic;
      for (const auto& [a, b] : pos_)
        if (witness_member(a, bc) == std::optional<std::string>(*at))
          realize(p, i + 1, node, sup | bit(a), out);
    }
  }

  void collect_id_pair(const Identification& id,
                       const std::map<std::string, std::vector<uint64_t>>& wit,
                       const std::string& a, const std::string& b) {
    // Per path, all masks that realize a shared end for both members.
    std::vector<std::vector<uint64_t>> per_path;
    for (const Path& p : id.paths) {
      std::vector<std::pair<End, uint64_t>> ra, rb;
      realize(p, 0, End(a), 0, ra);
      realize(p, 0, End(b), 0, rb);
      std::vector<uint64_t> masks;
      for (const auto& [ea, ma] : ra)
        for (const auto& [eb, mb] : rb)
          if (ea == eb) masks.push_back(ma | mb);
      if (masks.empty()) return;  // this pair cannot violate
      std::sort(masks.begin(), masks.end());
      masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
      per_path.push_back(std::move(masks));
    }
    std::vector<size_t> pick(per_path.size(), 0);
    for (;;) {
      uint64_t base = 0;
      for (size_t k = 0; k < pick.size(); ++k) base |= per_path[k][pick[k]];
      for (uint64_t wa : wit.at(a))
        for (uint64_t wb : wit.at(b)) patterns_.push_back(base | wa | wb);
      size_t k = 0;
      while (k < pick.size() && ++pick[k] == per_path[k].size()) {
        pick[k] = 0;
        ++k;
      }
      if (k == pick.size()) break;
    }
  }

  std::set<Atom> set_;
  std::map<Atom, size_t> pos_;
  std::vector<uint64_t> patterns_;
};

std::set<Atom> from_mask(const std::vector<Atom>& u, uint64_t m) {
  std::set<Atom> out;
  for (size_t i = 0; i < u.size(); ++i)
    if (m & (uint64_t(1) << i)) out.insert(u[i]);
  return out;
}

}  // namespace

std::vector<std::set<Atom>> enumerate_minimal(const KnowledgeBase& kb,
                                              const std::vector<Atom>& facts,
                                              Op op, size_t bound) {
  if (!naive_satisfiable(kb.tbox, kb.abox))
    throw PreconditionError(PreconditionError::Kind::UnsatKb,
                            "input knowledge base is unsatisfiable");
  std::set<Atom> f;
  for (const Atom& a : facts) {
    validate_atom(kb.signature, a);
    f.insert(a);
  }
  if (op == Op::Delete && !f.empty() && !naive_satisfiable(kb.tbox, f))
    throw PreconditionError(PreconditionError::Kind::UnsatFacts,
                            "facts to delete are unsatisfiable with the TBox");

  std::set<Atom> cl_a = naive_closure(kb.tbox, kb.abox);
  std::set<Atom> cl_f = naive_closure(kb.tbox, f);
  std::set<Atom> universe = cl_a;
  universe.insert(cl_f.begin(), cl_f.end());
  // 24 keeps the subset loop under a few seconds; beyond that the
  // enumeration is hopeless regardless of the caller's bound.
  size_t limit = std::min<size_t>(bound, 24);
  if (universe.size() > limit) throw BoundExceeded(universe.size(), limit);

  std::vector<Atom> u(universe.begin(), universe.end());
  std::map<Atom, size_t> pos;
  for (size_t i = 0; i < u.size(); ++i) pos[u[i]] = i;
  auto mask_of = [&](const std::set<Atom>& s) {
    uint64_t m = 0;
    for (const Atom& a : s) m |= uint64_t(1) << pos.at(a);
    return m;
  };
  uint64_t cl_a_mask = mask_of(cl_a);
  uint64_t cl_f_mask = mask_of(cl_f);
  uint64_t f_mask = mask_of(f);

  PatternTable patterns(kb.tbox, u);

  // Closure distributes over union atom by atom, so the closure of any
  // subset is the union of per-atom closures.
  std::vector<Atom> gen(cl_a.begin(), cl_a.end());
  std::vector<uint64_t> gen_cl(gen.size());
  for (size_t i = 0; i < gen.size(); ++i)
    gen_cl[i] = mask_of(naive_closure(kb.tbox, {gen[i]}));

  size_t n = gen.size();
  std::vector<uint64_t> table;
  if (n <= 22) {
    table.resize(size_t(1) << n, 0);
    for (size_t m = 1; m < table.size(); ++m) {
      size_t low = m & (~m + 1);
      size_t idx = 0;
      while ((size_t(1) << idx) != low) ++idx;
      table[m] = table[m & (m - 1)] | gen_cl[idx];
    }
  }
  auto closure_mask = [&](size_t m) {
    if (!table.empty()) return table[m];
    uint64_t v = 0;
    for (size_t i = 0; i < n; ++i)
      if (m & (size_t(1) << i)) v |= gen_cl[i];
    return v;
  };

  std::set<uint64_t> candidates;
  if (op == Op::Delete) {
    // Candidates are closures of subsets of the (satisfiable) input
    // closure, so they are satisfiable by construction. Deleting the empty
    // fact set is unaccomplishable: the empty set is entailed by anything.
    for (size_t m = 0; m < (size_t(1) << n); ++m) {
      uint64_t v = closure_mask(m);
      if (!f.empty() && (f_mask & ~v) != 0) candidates.insert(v);
    }
  } else {
    for (size_t m = 0; m < (size_t(1) << n); ++m) {
      uint64_t v = closure_mask(m) | cl_f_mask;
      if (!patterns.unsat(v)) candidates.insert(v);
    }
  }

  // Minimal change per the evolution ordering: strictly fewer deletions
  // win; with equal deletions, strictly fewer insertions win. A dominator
  // always has fewer deleted bits (or equal deleted and fewer inserted
  // bits), so sorting by those counts puts every dominator before the
  // candidates it beats and one pass against `kept` finds the minimal set.
  std::vector<uint64_t> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) {
    int da = __builtin_popcountll(cl_a_mask & ~a);
    int db = __builtin_popcountll(cl_a_mask & ~b);
    if (da != db) return da < db;
    int ia = __builtin_popcountll(a & ~cl_a_mask);
    int ib = __builtin_popcountll(b & ~cl_a_mask);
    if (ia != ib) return ia < ib;
    return a < b;
  });
  std::vector<uint64_t> kept;
  for (uint64_t x : order) {
    uint64_t dx = cl_a_mask & ~x, ix = x & ~cl_a_mask;
    bool beaten = false;
    for (uint64_t y : kept) {
      uint64_t dy = cl_a_mask & ~y, iy = y & ~cl_a_mask;
      if (((dy & ~dx) == 0 && dy != dx) ||
          (dy == dx && (iy & ~ix) == 0 && iy != ix)) {
        beaten = true;
        break;
      }
    }
    if (!beaten) kept.push_back(x);
  }

  std::vector<std::set<Atom>> out;
  for (uint64_t m : kept) out.push_back(from_mask(u, m));
  std::sort(out.begin(), out.end(), [](const std::set<Atom>& a,
                                       const std::set<Atom>& b) {
    std::vector<std::string> ta, tb;
    for (const Atom& x : a) ta.push_back(to_text(x));
    for (const Atom& x : b) tb.push_back(to_text(x));
    return ta < tb;
  });
  return out;
}

OracleResult widtio(const KnowledgeBase& kb, const std::vector<Atom>& facts,
                    Op op, size_t bound) {
  std::vector<std::set<Atom>> mins = enumerate_minimal(kb, facts, op, bound);
  OracleResult r;
  if (mins.empty()) {
    r.atoms = naive_closure(kb.tbox, kb.abox);
    r.no_op = true;
    return r;
  }
  r.atoms = mins.front();
  for (size_t i = 1; i < mins.size(); ++i) {
    std::set<Atom> next;
    std::set_intersection(r.atoms.begin(), r.atoms.end(), mins[i].begin(),
                          mins[i].end(), std::inserter(next, next.begin()));
    r.atoms = std::move(next);
  }
  return r;
}

}  // namespace oracle
}  // namespace dlevo
