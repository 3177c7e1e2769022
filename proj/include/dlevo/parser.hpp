// Copyright 2026 the dlevo authors. MIT license; see LICENSE.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dlevo/model.hpp"

namespace dlevo {

/// Raised on the first error in the input, with 1-based position.
class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    Lexical,
    Syntactic,
    UndeclaredName,
    CategoryMismatch,
    DuplicateDeclaration,
    NonLocalId,
    BadLiteral,
  };

  ParseError(Kind kind, int line, int column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

/// One step of a changelog: a batch insertion or deletion.
struct ChangeStep {
  enum class Op { Insert, Delete };
  Op op = Op::Insert;
  std::vector<Atom> facts;
};

/// Parses a full knowledge base document (SIGNATURE / TBOX / ABOX).
KnowledgeBase parse_kb(const std::string& text);

/// Parses a sequence of ground atoms against an existing signature.
/// Duplicates are preserved in order.
std::vector<Atom> parse_facts(const std::string& text, const Signature& sig);

/// Parses a changelog of insert/delete steps against a signature.
std::vector<ChangeStep> parse_changelog(const std::string& text,
                                        const Signature& sig);

/// Canonical text form: sections in fixed order, each section's lines
/// sorted lexicographically. Parsing the output reproduces the input KB.
std::string serialize_kb(const KnowledgeBase& kb);

std::string serialize_changelog(const std::vector<ChangeStep>& log);

}  // namespace dlevo
