#include "tsat/formula.hpp"

#include <algorithm>
#include <limits>

namespace tsat {

namespace detail {
void invariant_failure(const std::string& what) {
  throw std::logic_error("internal invariant violated: " + what);
}
}  // namespace detail

Weight checked_add(Weight a, Weight b) {
  Weight out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw WeightOverflowError("clause weight sum exceeds the 63-bit budget");
  }
  return out;
}

const Literal* Clause::literal_on(VarId v) const {
  auto it = std::lower_bound(literals.begin(), literals.end(), Literal{v, false},
                             [](const Literal& l, const Literal& r) { return l.var < r.var; });
  if (it == literals.end() || it->var != v) return nullptr;
  return &*it;
}

bool clause_less(const Clause& a, const Clause& b) {
  return std::lexicographical_compare(a.literals.begin(), a.literals.end(),
                                      b.literals.begin(), b.literals.end());
}

bool Formula::has_variable(VarId v) const {
  return std::binary_search(variables_.begin(), variables_.end(), v);
}

Formula Formula::from_clauses(std::vector<Clause> clauses) {
  std::sort(clauses.begin(), clauses.end(), clause_less);
  Formula f;
  f.clauses_.reserve(clauses.size());
  for (auto& c : clauses) {
    if (!f.clauses_.empty() && f.clauses_.back().literals == c.literals) {
      f.clauses_.back().weight = checked_add(f.clauses_.back().weight, c.weight);
    } else {
      f.clauses_.push_back(std::move(c));
    }
  }
  f.total_weight_ = 0;
  for (const auto& c : f.clauses_) {
    f.total_weight_ = checked_add(f.total_weight_, c.weight);
    for (const auto& l : c.literals) f.variables_.push_back(l.var);
  }
  std::sort(f.variables_.begin(), f.variables_.end());
  f.variables_.erase(std::unique(f.variables_.begin(), f.variables_.end()), f.variables_.end());
  return f;
}

bool FlipMap::contains(VarId v) const {
  return std::binary_search(flipped.begin(), flipped.end(), v);
}

bool Assignment::value(VarId v) const {
  auto it = values.find(v);
  if (it == values.end()) {
    throw IncompleteAssignmentError("assignment does not cover variable " + std::to_string(v));
  }
  return it->second;
}

bool PartialAssignment::value(VarId v) const {
  auto it = values.find(v);
  if (it == values.end()) {
    throw IncompleteAssignmentError("partial assignment does not cover variable " + std::to_string(v));
  }
  return it->second;
}

Formula build_formula(const std::vector<RawClause>& raw) {
  std::vector<Clause> clauses;
  clauses.reserve(raw.size());
  for (const auto& [literals, weight] : raw) {
    if (literals.empty()) throw EmptyClauseError("clause has no literals");
    if (weight < 1) {
      throw NonPositiveWeightError("clause weight must be >= 1, got " + std::to_string(weight));
    }
    Clause c;
    c.literals = literals;
    c.weight = weight;
    std::sort(c.literals.begin(), c.literals.end());
    // Identical literals collapse (set semantics); opposite polarities on
    // one variable make the clause a tautology, which is rejected.
    std::size_t out = 0;
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
      if (c.literals[i].var < 1) {
        throw Error("variable ids must be positive, got " + std::to_string(c.literals[i].var));
      }
      if (out > 0 && c.literals[out - 1].var == c.literals[i].var) {
        if (c.literals[out - 1].negated != c.literals[i].negated) {
          throw TautologyError("clause contains variable " + std::to_string(c.literals[i].var) +
                               " in both polarities");
        }
        continue;
      }
      c.literals[out++] = c.literals[i];
    }
    c.literals.resize(out);
    clauses.push_back(std::move(c));
  }
  return Formula::from_clauses(std::move(clauses));
}

std::pair<Formula, FlipMap> flip_normalize(const Formula& f) {
  std::map<VarId, bool> unit_polarity;  // var -> negated
  for (const auto& c : f.clauses()) {
    if (!c.is_unit()) continue;
    const Literal l = c.literals.front();
    auto [it, inserted] = unit_polarity.emplace(l.var, l.negated);
    if (!inserted && it->second != l.negated) {
      throw ConflictingUnitsError("both {x} and {~x} present for variable " +
                                  std::to_string(l.var));
    }
  }
  FlipMap flips;
  for (const auto& [var, negated] : unit_polarity) {
    if (negated) flips.flipped.push_back(var);
  }
  if (flips.empty()) return {f, flips};

  std::vector<Clause> clauses = f.clauses();
  for (auto& c : clauses) {
    for (auto& l : c.literals) {
      if (flips.contains(l.var)) l.negated = !l.negated;
    }
  }
  return {Formula::from_clauses(std::move(clauses)), flips};
}

Assignment flip_assignment(const Assignment& a, const FlipMap& flips) {
  Assignment out = a;
  for (VarId v : flips.flipped) {
    auto it = out.values.find(v);
    if (it != out.values.end()) it->second = !it->second;
  }
  return out;
}

Partition partition(const Formula& f) {
  std::vector<Clause> f1, f2, f_soft;
  std::vector<VarId> v1;
  for (const auto& c : f.clauses()) {
    if (c.is_unit()) {
      if (c.literals.front().negated) {
        throw NotNormalizedError("negative unit clause on variable " +
                                 std::to_string(c.literals.front().var));
      }
      f1.push_back(c);
      v1.push_back(c.literals.front().var);
    }
  }
  std::sort(v1.begin(), v1.end());
  auto in_v1 = [&](VarId v) { return std::binary_search(v1.begin(), v1.end(), v); };

  std::vector<VarId> v2;
  for (const auto& c : f.clauses()) {
    if (c.is_unit()) continue;
    bool hard = false;
    VarId other = 0;
    if (c.size() == 2) {
      // One negated literal of a unit variable, the other variable outside V1.
      for (int i = 0; i < 2; ++i) {
        const Literal a = c.literals[i], b = c.literals[1 - i];
        if (a.negated && in_v1(a.var) && !in_v1(b.var)) {
          hard = true;
          other = b.var;
          break;
        }
      }
    }
    if (hard) {
      f2.push_back(c);
      v2.push_back(other);
    } else {
      f_soft.push_back(c);
    }
  }
  std::sort(v2.begin(), v2.end());
  v2.erase(std::unique(v2.begin(), v2.end()), v2.end());

  Partition p;
  p.f1 = Formula::from_clauses(f1);
  p.f2 = Formula::from_clauses(f2);
  std::vector<Clause> hard_clauses = f1;
  hard_clauses.insert(hard_clauses.end(), f2.begin(), f2.end());
  p.f_hard = Formula::from_clauses(std::move(hard_clauses));
  p.f_soft = Formula::from_clauses(std::move(f_soft));
  p.v1 = std::move(v1);
  p.v2 = std::move(v2);
  for (VarId v : f.variables()) {
    if (!std::binary_search(p.v1.begin(), p.v1.end(), v) &&
        !std::binary_search(p.v2.begin(), p.v2.end(), v)) {
      p.v_soft.push_back(v);
    }
  }
  p.n1 = p.v1.size();
  p.n2 = p.v2.size();
  return p;
}

bool is_fat(const Partition& p) {
  const auto lhs = static_cast<__int128>(133) * p.f_soft.total_weight();
  const auto rhs = static_cast<__int128>(18) * (p.n1 + p.n2);
  return lhs >= rhs;
}

bool satisfies(const Clause& c, const Assignment& a) {
  for (const auto& l : c.literals) {
    if (a.value(l.var) == !l.negated) return true;
  }
  return false;
}

bool satisfies(const Clause& c, const PartialAssignment& a) {
  for (const auto& l : c.literals) {
    if (a.defines(l.var) && a.value(l.var) == !l.negated) return true;
  }
  return false;
}

Weight evaluate(const Formula& f, const Assignment& a) {
  Weight sum = 0;
  for (const auto& c : f.clauses()) {
    if (satisfies(c, a)) sum += c.weight;  // bounded by total_weight, no overflow
  }
  return sum;
}

Formula subformula_touching(const Formula& f, const std::vector<VarId>& xs) {
  std::vector<VarId> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Clause> touched;
  for (const auto& c : f.clauses()) {
    for (const auto& l : c.literals) {
      if (std::binary_search(sorted.begin(), sorted.end(), l.var)) {
        touched.push_back(c);
        break;
      }
    }
  }
  return Formula::from_clauses(std::move(touched));
}

Formula remove_clauses(const Formula& f, const Formula& sub) {
  std::vector<Clause> rest;
  auto it = sub.clauses().begin();
  for (const auto& c : f.clauses()) {
    if (it != sub.clauses().end() && it->literals == c.literals) {
      if (it->weight != c.weight) {
        throw NotSubformulaError("clause weight mismatch between formula and subformula");
      }
      ++it;
      continue;
    }
    rest.push_back(c);
  }
  if (it != sub.clauses().end()) {
    throw NotSubformulaError("subformula contains a clause absent from the formula");
  }
  return Formula::from_clauses(std::move(rest));
}

}  // namespace tsat
