#include "tsat/generator.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "tsat/autarky.hpp"
#include "tsat/tsat_check.hpp"

namespace tsat {

namespace {
constexpr std::size_t kClauseRetryBudget = 10'000;
constexpr std::size_t kExpandingRetryBudget = 200;
}  // namespace

std::uint64_t Rng::below(std::uint64_t n) {
  detail::invariant(n >= 1, "Rng::below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % n;
}

namespace {

void validate_spec(const GenSpec& spec) {
  if (spec.n_clauses > 0 && spec.n_vars < 1) {
    throw Error("generator needs n_vars >= 1 for a non-empty spec");
  }
  if (spec.max_weight < 1) throw Error("generator needs max_weight >= 1");
  if (spec.n_clauses > 0 && spec.max_clause_len < 1) {
    throw Error("generator needs max_clause_len >= 1");
  }
}

// Incremental view of the forbidden patterns: a new clause can only break
// 3-satisfiability through the unit clauses and 2-clauses already present.
// The generated formula is re-checked with the full pattern scan at the end.
class PatternIndex {
 public:
  bool admits(const std::vector<Literal>& lits) const {
    if (lits.size() == 1) {
      const Literal l = lits.front();
      if (units_.count(negation(l))) return false;  // {l}, {~l}
      auto it = twos_by_literal_.find(negation(l));
      if (it != twos_by_literal_.end()) {
        for (const auto& [var, mask] : it->second) {
          if (mask == 3) return false;  // {l}, {~l, m}, {~l, ~m}
          // {l}, {m'}, {~l, ~m'} for the unit m' opposing the other literal
          if ((mask & 1) && units_.count({var, true})) return false;
          if ((mask & 2) && units_.count({var, false})) return false;
        }
      }
      return true;
    }
    if (lits.size() == 2) {
      const Literal a = lits[0], b = lits[1];
      if (units_.count(negation(a)) && units_.count(negation(b))) return false;
      if (units_.count(negation(a)) && has_two(a, negation(b))) return false;
      if (units_.count(negation(b)) && has_two(b, negation(a))) return false;
      return true;
    }
    return true;  // patterns involve only units and 2-clauses
  }

  void add(const std::vector<Literal>& lits) {
    if (lits.size() == 1) {
      units_.insert(lits.front());
    } else if (lits.size() == 2) {
      twos_by_literal_[lits[0]][lits[1].var] |= lits[1].negated ? 2 : 1;
      twos_by_literal_[lits[1]][lits[0].var] |= lits[0].negated ? 2 : 1;
    }
  }

 private:
  bool has_two(const Literal& a, const Literal& b) const {
    auto it = twos_by_literal_.find(a);
    if (it == twos_by_literal_.end()) return false;
    auto jt = it->second.find(b.var);
    return jt != it->second.end() && (jt->second & (b.negated ? 2 : 1));
  }

  std::set<Literal> units_;
  std::map<Literal, std::map<VarId, int>> twos_by_literal_;
};

Formula generate_general(const GenSpec& spec, Rng& rng) {
  std::vector<RawClause> raw;
  PatternIndex index;
  for (std::size_t i = 0; i < spec.n_clauses; ++i) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kClauseRetryBudget && !accepted; ++attempt) {
      const std::size_t len = 1 + rng.below(std::min(spec.max_clause_len, spec.n_vars));
      std::set<VarId> vars;
      while (vars.size() < len) {
        vars.insert(static_cast<VarId>(1 + rng.below(spec.n_vars)));
      }
      std::vector<Literal> literals;
      for (VarId v : vars) literals.push_back({v, rng.below(2) == 1});
      if (!index.admits(literals)) continue;
      index.add(literals);
      const Weight weight =
          1 + static_cast<Weight>(rng.below(static_cast<std::uint64_t>(spec.max_weight)));
      raw.emplace_back(std::move(literals), weight);
      accepted = true;
    }
    if (!accepted) {
      throw GenerationExhaustedError("no 3-satisfiable clause found after " +
                                     std::to_string(kClauseRetryBudget) + " attempts");
    }
  }
  Formula f = build_formula(raw);
  detail::invariant(is_t_satisfiable(f, 3), "generator produced a 3-satisfiability violation");
  return f;
}

Formula generate_hard(const GenSpec& spec, Rng& rng) {
  if (spec.n_clauses == 0) return {};
  std::vector<RawClause> raw;
  const std::size_t n1 = 1 + rng.below(std::min(spec.n_vars, spec.n_clauses));
  auto random_weight = [&] {
    return 1 + static_cast<Weight>(rng.below(static_cast<std::uint64_t>(spec.max_weight)));
  };
  for (std::size_t x = 1; x <= n1; ++x) {
    raw.emplace_back(std::vector<Literal>{pos(static_cast<VarId>(x))}, random_weight());
  }
  // (x, y) pairs may carry only one polarity of y next to ~x; the opposite
  // one together with the unit {x} would break 3-satisfiability.
  std::set<std::pair<VarId, std::pair<VarId, bool>>> used;
  for (std::size_t i = n1; i < spec.n_clauses; ++i) {
    if (spec.n_vars == n1) {
      // No non-unit variables available: top up an existing unit's weight.
      const auto x = static_cast<VarId>(1 + rng.below(n1));
      raw.emplace_back(std::vector<Literal>{pos(x)}, random_weight());
      continue;
    }
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kClauseRetryBudget && !accepted; ++attempt) {
      const auto x = static_cast<VarId>(1 + rng.below(n1));
      const auto y = static_cast<VarId>(n1 + 1 + rng.below(spec.n_vars - n1));
      const bool y_negated = rng.below(2) == 1;
      if (used.count({x, {y, !y_negated}})) continue;
      used.insert({x, {y, y_negated}});
      raw.emplace_back(std::vector<Literal>{neg(x), Literal{y, y_negated}}, random_weight());
      accepted = true;
    }
    if (!accepted) {
      throw GenerationExhaustedError("no admissible hard clause found after " +
                                     std::to_string(kClauseRetryBudget) + " attempts");
    }
  }
  Formula f = build_formula(raw);
  detail::invariant(is_t_satisfiable(f, 3), "hard shape produced a 3-satisfiability violation");
  detail::invariant(partition(f).f_soft.empty(), "hard shape produced soft clauses");
  return f;
}

}  // namespace

Formula generate(const GenSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  switch (spec.shape) {
    case GenSpec::Shape::general_3sat:
      return generate_general(spec, rng);
    case GenSpec::Shape::hard:
      return generate_hard(spec, rng);
    case GenSpec::Shape::expanding_3sat: {
      for (std::size_t attempt = 0; attempt < kExpandingRetryBudget; ++attempt) {
        Formula f = generate_general(spec, rng);
        if (is_expanding(f)) return f;
      }
      throw GenerationExhaustedError("no expanding formula found after " +
                                     std::to_string(kExpandingRetryBudget) + " attempts");
    }
  }
  detail::invariant(false, "unknown generator shape");
  return {};
}

bool verify(const Formula& f, const Assignment& a, Weight claimed) {
  return evaluate(f, a) == claimed;
}

}  // namespace tsat
