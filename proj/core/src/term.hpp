#pragma once

// Generic term syntax shared by description files, lexicon files and
// command-line category arguments.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morphc/description.hpp"

namespace morphc::detail {

struct Term {
  enum class Kind { atom, variable, string, number, compound, list };

  Kind kind = Kind::atom;
  std::string text;          // functor / atom / variable name / string contents (UTF-8)
  std::vector<Term> args;    // compound arguments or list items
  std::vector<Term> tail;    // list tail, zero or one element
  bool quoted = false;
  SourceLoc loc;

  bool is_atom() const { return kind == Kind::atom || kind == Kind::number; }
  bool is_compound(std::string_view name, std::size_t arity) const {
    return kind == Kind::compound && text == name && args.size() == arity;
  }
};

struct SyntaxError : std::runtime_error {
  SourceLoc loc;
  SyntaxError(SourceLoc l, const std::string& message) : std::runtime_error(message), loc(l) {}
};

/// A statement `Head.` or `Head :- Body1, Body2.`
struct Clause {
  Term head;
  std::vector<Term> body;
  SourceLoc loc;
};

/// Splits a document into clauses. Syntax errors are reported per clause and
/// parsing resumes after the next terminating full stop.
std::vector<Clause> parse_clauses(std::string_view text, int source, std::vector<Diagnostic>& diagnostics);

/// Parses a single term with no terminating full stop.
Term parse_single_term(std::string_view text, int source);

std::string describe(const Term& t);

}  // namespace morphc::detail
