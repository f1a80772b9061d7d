#include "tsat/tsat_check.hpp"

#include <map>

namespace tsat {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::conflicting_units:
      return "conflicting-units";
    case ViolationKind::unit_unit_pair_clause:
      return "unit-unit-pair-clause";
    case ViolationKind::unit_two_pair_clauses:
      return "unit-two-pair-clauses";
    case ViolationKind::empty_clause:
      return "empty-clause";
  }
  return "unknown";
}

namespace {

bool consistent(const Literal& a, const Literal& b) {
  return a.var != b.var || a.negated == b.negated;
}

}  // namespace

bool pair_satisfiable(const Clause& c1, const Clause& c2) {
  for (const auto& l1 : c1.literals) {
    for (const auto& l2 : c2.literals) {
      if (consistent(l1, l2)) return true;
    }
  }
  return false;
}

bool triple_satisfiable(const Clause& c1, const Clause& c2, const Clause& c3) {
  for (const auto& l1 : c1.literals) {
    for (const auto& l2 : c2.literals) {
      if (!consistent(l1, l2)) continue;
      for (const auto& l3 : c3.literals) {
        if (consistent(l1, l3) && consistent(l2, l3)) return true;
      }
    }
  }
  return false;
}

std::optional<Violation> find_violation(const Formula& f, int t) {
  detail::invariant(t == 2 || t == 3, "find_violation expects t in {2,3}");

  // Unit clauses by variable; at most one per polarity after merging.
  std::map<Literal, const Clause*> units;
  for (const auto& c : f.clauses()) {
    if (c.is_unit()) units.emplace(c.literals.front(), &c);
  }
  for (const auto& [lit, clause] : units) {
    auto it = units.find(negation(lit));
    if (it != units.end() && lit < it->first) {
      return Violation{ViolationKind::conflicting_units, {*clause, *it->second}};
    }
  }
  if (t == 2) return std::nullopt;

  // {l1}, {l2}, {~l1, ~l2}: a 2-clause whose literals are both negations of
  // present unit literals.
  for (const auto& c : f.clauses()) {
    if (c.size() != 2) continue;
    auto u1 = units.find(negation(c.literals[0]));
    auto u2 = units.find(negation(c.literals[1]));
    if (u1 != units.end() && u2 != units.end()) {
      return Violation{ViolationKind::unit_unit_pair_clause,
                       {*u1->second, *u2->second, c}};
    }
  }

  // {l}, {~l, m}, {~l, ~m}: two 2-clauses sharing the negation of a unit
  // literal and opposite on their second variable.
  std::map<std::pair<Literal, VarId>, const Clause*> seen;
  for (const auto& c : f.clauses()) {
    if (c.size() != 2) continue;
    for (int i = 0; i < 2; ++i) {
      const Literal pivot = c.literals[i];
      const Literal other = c.literals[1 - i];
      auto unit = units.find(negation(pivot));
      if (unit == units.end()) continue;
      auto key = std::make_pair(pivot, other.var);
      auto [it, inserted] = seen.emplace(key, &c);
      if (!inserted && it->second->literal_on(other.var)->negated != other.negated) {
        return Violation{ViolationKind::unit_two_pair_clauses,
                         {*unit->second, *it->second, c}};
      }
    }
  }
  return std::nullopt;
}

bool is_t_satisfiable(const Formula& f, int t) {
  detail::invariant(t >= 1 && t <= 3, "is_t_satisfiable expects t in {1,2,3}");
  if (t == 1) return true;
  return !find_violation(f, t).has_value();
}

}  // namespace tsat
