#pragma once

#include <string>
#include <string_view>

#include "tsat/formula.hpp"

namespace tsat {

struct ParseDiagnostics {
  std::size_t line = 1;
  std::string message;
};

class SyntaxError : public Error {
 public:
  explicit SyntaxError(ParseDiagnostics d)
      : Error("line " + std::to_string(d.line) + ": " + d.message), diagnostics(std::move(d)) {}

  ParseDiagnostics diagnostics;
};

class HeaderMismatchError : public Error {
 public:
  using Error::Error;
};

// Accepts "p cnf n m" (all weights 1) and "p wcnf n m" (leading weight per
// clause). Clauses are whitespace-separated signed integers terminated by 0
// and may span lines; 'c' lines are comments. Duplicate clauses merge. The
// hard-clause "top" header field of some WCNF dialects is rejected.
Formula parse_dimacs(std::string_view text);

// Canonical WCNF: header "p wcnf <max-var> <clauses>", clauses in canonical
// order, literals ascending by variable. parse_dimacs(write_dimacs(f)) == f.
std::string write_dimacs(const Formula& f);

}  // namespace tsat
