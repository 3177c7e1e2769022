// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dlevo/evolution.hpp"
#include "dlevo/oracle.hpp"
#include "dlevo/parser.hpp"
#include "dlevo/reasoner.hpp"

namespace {

using nlohmann::json;
using namespace dlevo;

constexpr int kOk = 0;
constexpr int kUnsatKb = 1;
constexpr int kParseError = 2;
constexpr int kPreconditionError = 3;
constexpr int kBoundExceeded = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

KnowledgeBase load_kb(const std::string& path) { return parse_kb(slurp(path)); }

// The --facts and --changelog values name a file when one exists, and are
// taken as literal text otherwise.
std::string file_or_inline(const std::string& value) {
  std::ifstream in(value, std::ios::binary);
  if (!in) return value;
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> atom_texts(const std::set<Atom>& atoms) {
  std::vector<std::string> out;
  for (const Atom& a : atoms) out.push_back(to_text(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::string joined(const std::set<Atom>& atoms) {
  std::string out;
  for (const std::string& t : atom_texts(atoms)) {
    if (!out.empty()) out += ", ";
    out += t;
  }
  return out;
}

json violations_json(const std::vector<ViolationSet>& vs) {
  json arr = json::array();
  for (const ViolationSet& v : vs)
    arr.push_back({{"constraint", to_text(v.violated)},
                   {"atoms", atom_texts(v.atoms)}});
  return arr;
}

void print_evolution(const KnowledgeBase& kb, const EvolutionResult& r,
                     bool as_json) {
  if (as_json) {
    json j;
    j["status"] = "ok";
    j["noop"] = r.no_op;
    j["atoms"] = atom_texts(r.kb.abox);
    j["dropped"] = atom_texts(r.dropped);
    j["added"] = atom_texts(r.added);
    j["violations"] = violations_json(r.fired_violations);
    std::cout << j.dump() << "\n";
    return;
  }
  (void)kb;
  std::cout << serialize_kb(r.kb);
  if (r.no_op) std::cout << "# noop\n";
  std::cout << "# dropped: " << joined(r.dropped) << "\n";
  std::cout << "# added: " << joined(r.added) << "\n";
}

int cmd_validate(const std::string& file, bool as_json) {
  load_kb(file);
  if (as_json)
    std::cout << json{{"status", "ok"}}.dump() << "\n";
  else
    std::cout << "ok\n";
  return kOk;
}

int cmd_closure(const std::string& file, bool as_json) {
  KnowledgeBase kb = load_kb(file);
  kb.abox = closure(TBoxIndex(kb.tbox), kb.abox).atoms;
  if (as_json) {
    json j;
    j["status"] = "ok";
    j["atoms"] = atom_texts(kb.abox);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << serialize_kb(kb);
  }
  return kOk;
}

int cmd_sat(const std::string& file, bool as_json) {
  KnowledgeBase kb = load_kb(file);
  TBoxIndex tbox(kb.tbox);
  if (is_satisfiable(tbox, kb.abox)) {
    if (as_json)
      std::cout << json{{"status", "ok"}}.dump() << "\n";
    else
      std::cout << "SAT\n";
    return kOk;
  }
  std::set<Atom> closed = closure(tbox, kb.abox).atoms;
  std::vector<ViolationSet> vs = violation_sets(tbox, closed);
  if (as_json) {
    json j;
    j["status"] = "unsat";
    j["violations"] = violations_json(vs);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "UNSAT\n";
    for (const ViolationSet& v : vs)
      std::cout << "violation: " << to_text(v.violated) << " :: "
                << joined(v.atoms) << "\n";
  }
  return kUnsatKb;
}

EvolutionResult oracle_evolution(const KnowledgeBase& kb,
                                 const std::vector<Atom>& facts,
                                 oracle::Op op) {
  oracle::OracleResult o = oracle::widtio(kb, facts, op);
  std::set<Atom> cl_a = oracle::naive_closure(kb.tbox, kb.abox);
  EvolutionResult r;
  r.kb.signature = kb.signature;
  r.kb.tbox = kb.tbox;
  r.kb.abox = o.atoms;
  r.no_op = o.no_op;
  for (const Atom& a : cl_a)
    if (!o.atoms.count(a)) r.dropped.insert(a);
  for (const Atom& a : o.atoms)
    if (!cl_a.count(a)) r.added.insert(a);
  return r;
}

int cmd_change(const std::string& file, const std::string& facts_value,
               bool insert, bool use_oracle, bool as_json) {
  KnowledgeBase kb = load_kb(file);
  std::vector<Atom> facts =
      parse_facts(file_or_inline(facts_value), kb.signature);
  EvolutionResult r;
  if (use_oracle)
    r = oracle_evolution(kb, facts,
                         insert ? oracle::Op::Insert : oracle::Op::Delete);
  else
    r = insert ? compute_insertion(kb, facts) : compute_deletion(kb, facts);
  print_evolution(kb, r, as_json);
  return kOk;
}

int cmd_apply(const std::string& file, const std::string& log_value,
              const std::string& out_path, bool as_json) {
  KnowledgeBase kb = load_kb(file);
  std::vector<ChangeStep> log =
      parse_changelog(file_or_inline(log_value), kb.signature);
  json steps = json::array();
  size_t index = 0;
  for (const ChangeStep& step : log) {
    ++index;
    bool insert = step.op == ChangeStep::Op::Insert;
    EvolutionResult r = insert ? compute_insertion(kb, step.facts)
                               : compute_deletion(kb, step.facts);
    kb = r.kb;
    if (as_json) {
      steps.push_back({{"index", index},
                       {"op", insert ? "insert" : "delete"},
                       {"facts", step.facts.size()},
                       {"status", r.no_op ? "noop" : "ok"},
                       {"dropped", r.dropped.size()},
                       {"added", r.added.size()}});
    } else {
      std::cout << "step " << index << ": " << (insert ? "insert" : "delete")
                << " " << step.facts.size() << " -> "
                << (r.no_op ? "noop" : "ok");
      if (!r.no_op)
        std::cout << " (dropped " << r.dropped.size() << ", added "
                  << r.added.size() << ")";
      std::cout << "\n";
    }
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << serialize_kb(kb);
  if (as_json)
    std::cout << json{{"status", "ok"}, {"steps", steps}}.dump() << "\n";
  return kOk;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const ModelError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParseError;
  } catch (const oracle::BoundExceeded& e) {
    std::cerr << "oracle: " << e.what() << "\n";
    return kBoundExceeded;
  } catch (const PreconditionError& e) {
    if (e.kind() == PreconditionError::Kind::UnsatKb) {
      std::cerr << "unsatisfiable knowledge base: " << e.what() << "\n";
      return kUnsatKb;
    }
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPreconditionError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DL-Lite knowledge base evolution under minimal-change "
               "semantics"};
  app.require_subcommand(1);

  std::string file, facts, changelog, out_path;
  bool as_json = false, use_oracle = false;

  auto add_common = [&](CLI::App* sub, bool with_file = true) {
    if (with_file)
      sub->add_option("file", file, "knowledge base file")->required();
    sub->add_flag("--json", as_json, "machine readable output");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and check a KB");
  add_common(validate);

  CLI::App* closure_cmd =
      app.add_subcommand("closure", "print the closed KB");
  add_common(closure_cmd);

  CLI::App* sat = app.add_subcommand("sat", "check satisfiability");
  add_common(sat);

  CLI::App* insert = app.add_subcommand("insert", "insert facts");
  add_common(insert);
  insert->add_option("--facts", facts, "facts file or inline text")
      ->required();
  insert->add_flag("--oracle", use_oracle,
                   "use the exact enumeration instead of the fast path");

  CLI::App* del = app.add_subcommand("delete", "delete facts");
  add_common(del);
  del->add_option("--facts", facts, "facts file or inline text")->required();
  del->add_flag("--oracle", use_oracle,
                "use the exact enumeration instead of the fast path");

  CLI::App* apply = app.add_subcommand("apply", "apply a changelog");
  add_common(apply);
  apply->add_option("--changelog", changelog, "changelog file or inline text")
      ->required();
  apply->add_option("--out", out_path, "output file")->required();

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed())
    return guarded([&] { return cmd_validate(file, as_json); });
  if (closure_cmd->parsed())
    return guarded([&] { return cmd_closure(file, as_json); });
  if (sat->parsed()) return guarded([&] { return cmd_sat(file, as_json); });
  if (insert->parsed())
    return guarded(
        [&] { return cmd_change(file, facts, true, use_oracle, as_json); });
  if (del->parsed())
    return guarded(
        [&] { return cmd_change(file, facts, false, use_oracle, as_json); });
  if (apply->parsed())
    return guarded([&] { return cmd_apply(file, changelog, out_path, as_json); });
  return kOk;
}
