// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "dlevo/evolution.hpp"
#include "dlevo/oracle.hpp"
#include "dlevo/parser.hpp"
#include "dlevo/reasoner.hpp"

namespace dlevo {
namespace testsupport {

// The running team knowledge base: official drivers (OD), test drivers
// (TD), race directors (RD), team members (TM), first tenants (FT) of the
// "member of" role mf. Ten TBox assertions, four ABox atoms.
const char* example_kb_text();
KnowledgeBase example_kb();

// Inclusion chain B ISA C ISA D plus E ISA D over {B(a), E(a)}.
KnowledgeBase chain_kb();

std::vector<Atom> facts(const Signature& sig, const std::string& text);
std::set<Atom> atom_set(const Signature& sig, const std::string& text);
std::set<Atom> closed_abox(const KnowledgeBase& kb);

// Deterministic random instances. Profile: at most 8 TBox assertions of
// which one is always an identification, at most 10 ABox atoms over at
// most 5 individuals, and 0..3 change facts.
struct RandomCase {
  KnowledgeBase kb;
  std::vector<Atom> change;
};
KnowledgeBase random_kb(std::mt19937& rng);
RandomCase random_case(std::mt19937& rng);

// Normalized outcome of one evolution run for differential comparison.
// kind is "result", "error:unsat-kb", "error:unsat-facts", or "bound";
// atoms is the result closure when kind is "result".
struct Outcome {
  std::string kind;
  std::set<Atom> atoms;

  bool operator==(const Outcome& o) const {
    return kind == o.kind && atoms == o.atoms;
  }
};
Outcome run_fast(const KnowledgeBase& kb, const std::vector<Atom>& change,
                 bool insert);
Outcome run_oracle(const KnowledgeBase& kb, const std::vector<Atom>& change,
                   bool insert, size_t bound = oracle::kDefaultBound);

}  // namespace testsupport
}  // namespace dlevo
