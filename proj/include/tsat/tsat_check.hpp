#pragma once

#include <optional>
#include <vector>

#include "tsat/formula.hpp"

namespace tsat {

enum class ViolationKind {
  conflicting_units,      // {x}, {~x}
  unit_unit_pair_clause,  // {x}, {y}, {~x,~y} up to per-variable sign flips
  unit_two_pair_clauses,  // {x}, {~x,y}, {~x,~y} up to per-variable sign flips
  empty_clause,           // unreachable for formulas built by this library
};

const char* to_string(ViolationKind kind);

// A set of one to three clauses with no common satisfying assignment.
struct Violation {
  ViolationKind kind;
  std::vector<Clause> clauses;
};

// Brute-force satisfiability of a clause triple: scans every choice of one
// literal per clause for pairwise consistency.
bool triple_satisfiable(const Clause& c1, const Clause& c2, const Clause& c3);

bool pair_satisfiable(const Clause& c1, const Clause& c2);

// t = 1 is vacuous (clauses are non-empty); t = 2 forbids conflicting unit
// pairs; t = 3 additionally forbids the two unit/2-clause triple patterns
// in every per-variable sign variant. Hash-based, no triple enumeration.
bool is_t_satisfiable(const Formula& f, int t);

// Returns a witness violation iff the formula is not t-satisfiable, t in {2,3}.
std::optional<Violation> find_violation(const Formula& f, int t);

}  // namespace tsat
