#include "tsat/kernel.hpp"

#include <algorithm>
#include <limits>

#include "tsat/tsat_check.hpp"

namespace tsat {

const char* to_string(AeMethod method) {
  switch (method) {
    case AeMethod::guaranteed_by_bound:
      return "guaranteed-by-bound";
    case AeMethod::brute_forced:
      return "brute-forced";
    case AeMethod::shortcut_nonpositive_threshold:
      return "shortcut-nonpositive-threshold";
  }
  return "unknown";
}

AeInstance::AeInstance(Formula f, std::int64_t k_value) : formula(std::move(f)), k(k_value) {
  if (!is_t_satisfiable(formula, 3)) {
    throw NotThreeSatisfiableError("instance formula is not 3-satisfiable");
  }
}

std::pair<Assignment, Weight> brute_force_max(const Formula& f, std::size_t variable_cap) {
  const auto& vars = f.variables();
  if (vars.size() > variable_cap || vars.size() > 63) {
    throw TooManyVariablesError("brute force over " + std::to_string(vars.size()) +
                                " variables exceeds the cap of " + std::to_string(variable_cap));
  }
  // Bitmask per clause: satisfied iff a positive variable is set or a
  // negated variable is clear.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> clause_masks;
  clause_masks.reserve(f.size());
  auto var_bit = [&](VarId v) {
    const auto idx = static_cast<std::size_t>(
        std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
    return std::uint64_t{1} << idx;
  };
  for (const auto& c : f.clauses()) {
    std::uint64_t pos = 0, neg = 0;
    for (const auto& l : c.literals) (l.negated ? neg : pos) |= var_bit(l.var);
    clause_masks.emplace_back(pos, neg);
  }

  const std::uint64_t end = std::uint64_t{1} << vars.size();
  std::uint64_t best_mask = 0;
  Weight best = std::numeric_limits<Weight>::min();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    Weight w = 0;
    for (std::size_t ci = 0; ci < clause_masks.size(); ++ci) {
      const auto& [pos, neg] = clause_masks[ci];
      if ((mask & pos) != 0 || (~mask & neg) != 0) w += f.clauses()[ci].weight;
    }
    if (w > best) {
      best = w;
      best_mask = mask;
    }
  }

  Assignment a;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    a.values[vars[i]] = (best_mask >> i) & 1;
  }
  detail::invariant(evaluate(f, a) == best, "brute-force maximizer does not evaluate to best");
  return {std::move(a), best};
}

namespace {

std::int64_t checked_threshold(std::int64_t k, Weight autarky_weight) {
  const __int128 t = static_cast<__int128>(3) * k - autarky_weight;
  if (t < std::numeric_limits<std::int64_t>::min() ||
      t > std::numeric_limits<std::int64_t>::max()) {
    throw WeightOverflowError("decision threshold 3k - w(F_U) exceeds 64 bits");
  }
  return static_cast<std::int64_t>(t);
}

std::int64_t ceil_div3(std::int64_t a) { return a >= 0 ? (a + 2) / 3 : a / 3; }

}  // namespace

Kernel kernelize(const Formula& f, std::int64_t k) {
  if (!is_t_satisfiable(f, 3)) {
    throw NotThreeSatisfiableError("formula is not 3-satisfiable");
  }
  Kernel kern;
  kern.autarky = decompose(f);
  kern.residual = remove_clauses(f, kern.autarky.f_u);
  kern.threshold_numerator = checked_threshold(k, kern.autarky.f_u.total_weight());
  kern.k_prime = ceil_div3(kern.threshold_numerator);
  detail::invariant(kern.k_prime <= k, "kernel is not proper");
  detail::invariant(is_expanding(kern.residual), "kernel residual is not expanding");
  return kern;
}

AeDecision solve_ae(const AeInstance& inst, std::size_t variable_cap, std::size_t support_cap) {
  const Formula& f = inst.formula;
  AeDecision decision;
  decision.kernel = kernelize(f, inst.k);
  const Formula& residual = decision.kernel.residual;
  const Weight w_res = residual.total_weight();
  const std::int64_t threshold = decision.kernel.threshold_numerator;

  auto meets_threshold = [&](Weight sat_res) {
    return static_cast<__int128>(3) * sat_res - static_cast<__int128>(2) * w_res >= threshold;
  };
  auto conclude_yes = [&](AeMethod method, const Assignment& gamma) {
    auto [tau, value] = compose(decision.kernel.autarky, gamma, f);
    detail::invariant(static_cast<__int128>(3) * value >=
                          static_cast<__int128>(2) * f.total_weight() +
                              static_cast<__int128>(3) * inst.k,
                      "YES witness misses the decision inequality");
    decision.yes = true;
    decision.method = method;
    decision.witness = std::move(tau);
  };

  // The certificate both witnesses cases (1)-(2) and bounds |V(residual)|
  // for the brute-force fallback: 3*value - 2*w >= 2|V|/151.
  auto [normalized, flips] = flip_normalize(residual);
  const BoundCertificate certificate = expanding_bound(normalized, support_cap);
  Assignment gamma = flip_assignment(certificate.assignment, flips);
  detail::invariant(evaluate(residual, gamma) == certificate.value,
                    "flip mapping changed the certificate value");

  if (threshold <= 0) {
    conclude_yes(AeMethod::shortcut_nonpositive_threshold, gamma);
  } else if (meets_threshold(certificate.value)) {
    conclude_yes(AeMethod::guaranteed_by_bound, gamma);
  } else {
    auto [best, optimum] = brute_force_max(residual, variable_cap);
    if (meets_threshold(optimum)) {
      conclude_yes(AeMethod::brute_forced, best);
    } else {
      decision.yes = false;
      decision.method = AeMethod::brute_forced;
    }
  }
  return decision;
}

}  // namespace tsat
