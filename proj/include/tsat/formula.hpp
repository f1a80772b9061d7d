#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsat {

using VarId = std::int32_t;
using Weight = std::int64_t;

// Base class for every error this library throws on bad input.
// Internal invariant violations throw std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TautologyError : public Error {
 public:
  using Error::Error;
};
class EmptyClauseError : public Error {
 public:
  using Error::Error;
};
class NonPositiveWeightError : public Error {
 public:
  using Error::Error;
};
class WeightOverflowError : public Error {
 public:
  using Error::Error;
};
class ConflictingUnitsError : public Error {
 public:
  using Error::Error;
};
class NotNormalizedError : public Error {
 public:
  using Error::Error;
};
class IncompleteAssignmentError : public Error {
 public:
  using Error::Error;
};
class NotSubformulaError : public Error {
 public:
  using Error::Error;
};

namespace detail {
[[noreturn]] void invariant_failure(const std::string& what);
inline void invariant(bool ok, const char* what) {
  if (!ok) invariant_failure(what);
}
}  // namespace detail

// Sum with the 63-bit positive budget enforced.
Weight checked_add(Weight a, Weight b);

struct Literal {
  VarId var = 0;
  bool negated = false;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(VarId v) { return {v, false}; }
inline Literal neg(VarId v) { return {v, true}; }
inline Literal negation(Literal l) { return {l.var, !l.negated}; }

struct Clause {
  std::vector<Literal> literals;  // sorted by variable id, one literal per variable
  Weight weight = 0;

  std::size_t size() const { return literals.size(); }
  bool is_unit() const { return literals.size() == 1; }
  const Literal* literal_on(VarId v) const;

  friend bool operator==(const Clause&, const Clause&) = default;
};

// Canonical clause order: lexicographic on the sorted literal sequence.
bool clause_less(const Clause& a, const Clause& b);

// Immutable weighted clause set. Clauses are kept in canonical order with
// unique literal sets; duplicates are merged at construction by summing
// weights. All operations on formulas are pure.
class Formula {
 public:
  Formula() = default;

  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<VarId>& variables() const { return variables_; }
  Weight total_weight() const { return total_weight_; }
  bool empty() const { return clauses_.empty(); }
  std::size_t size() const { return clauses_.size(); }
  bool has_variable(VarId v) const;

  friend bool operator==(const Formula&, const Formula&) = default;

  // Canonicalizes a clause list held by an operation that already validated
  // individual clauses. Merges duplicates and recomputes derived fields.
  static Formula from_clauses(std::vector<Clause> clauses);

 private:
  std::vector<Clause> clauses_;
  std::vector<VarId> variables_;
  Weight total_weight_ = 0;
};

// Sign-flip record: applying the same flip twice is the identity.
struct FlipMap {
  std::vector<VarId> flipped;  // sorted

  bool contains(VarId v) const;
  bool empty() const { return flipped.empty(); }
};

struct Assignment {
  std::map<VarId, bool> values;

  bool defines(VarId v) const { return values.count(v) != 0; }
  bool value(VarId v) const;  // IncompleteAssignmentError if undefined
};

struct PartialAssignment {
  std::map<VarId, bool> values;

  bool defines(VarId v) const { return values.count(v) != 0; }
  bool value(VarId v) const;
};

// The split of a normalized formula into unit clauses F1, the 2-clauses F2
// pairing a negated unit variable with a non-unit variable, the hard part
// F1 ∪ F2, and the soft remainder, together with the variable classes.
struct Partition {
  Formula f1;
  Formula f2;
  Formula f_hard;
  Formula f_soft;
  std::vector<VarId> v1;
  std::vector<VarId> v2;
  std::vector<VarId> v_soft;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

using RawClause = std::pair<std::vector<Literal>, Weight>;

Formula build_formula(const std::vector<RawClause>& raw);

// Flips variable signs so that every unit clause becomes positive. The
// returned FlipMap carries the flipped variables; satisfied weight is
// preserved when assignments are mapped through flip_assignment.
std::pair<Formula, FlipMap> flip_normalize(const Formula& f);

Assignment flip_assignment(const Assignment& a, const FlipMap& flips);

Partition partition(const Formula& f);

// Exact integer test of 133·w(F_soft) >= 18·(n1 + n2).
bool is_fat(const Partition& p);

bool satisfies(const Clause& c, const Assignment& a);
bool satisfies(const Clause& c, const PartialAssignment& a);

// Total weight of clauses satisfied by a; a must cover every variable of f.
Weight evaluate(const Formula& f, const Assignment& a);

// Clauses of f containing at least one variable from xs.
Formula subformula_touching(const Formula& f, const std::vector<VarId>& xs);

// Set difference; sub must appear in f clause-for-clause with equal weights.
Formula remove_clauses(const Formula& f, const Formula& sub);

}  // namespace tsat
