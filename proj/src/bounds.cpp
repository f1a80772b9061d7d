#include "tsat/bounds.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "tsat/autarky.hpp"
#include "tsat/tsat_check.hpp"

namespace tsat {

const char* to_string(GuaranteeKind kind) {
  switch (kind) {
    case GuaranteeKind::yannakakis_soft:
      return "yannakakis-soft";
    case GuaranteeKind::hard_n2:
      return "hard-n2";
    case GuaranteeKind::hard_n1:
      return "hard-n1";
    case GuaranteeKind::hard_best:
      return "hard-best";
    case GuaranteeKind::expanding:
      return "expanding";
    case GuaranteeKind::composed:
      return "composed";
  }
  return "unknown";
}

const Rational& BiasProfile::of(VarId v) const {
  auto it = bias.find(v);
  detail::invariant(it != bias.end(), "bias profile missing a variable");
  return it->second;
}

WeightDistribution WeightDistribution::point(Weight v) {
  WeightDistribution d;
  d.probs_.clear();
  d.probs_.emplace(v, Rational(1));
  return d;
}

void WeightDistribution::shift(Weight value) {
  if (value == 0) return;
  std::map<Weight, Rational> shifted;
  for (const auto& [v, p] : probs_) shifted.emplace(checked_add(v, value), p);
  probs_ = std::move(shifted);
}

void WeightDistribution::convolve_bernoulli(Weight value, const Rational& p,
                                            std::size_t support_cap) {
  if (p == 1) {
    shift(value);
    return;
  }
  if (p == 0 || value == 0) return;
  const Rational q = Rational(1) - p;
  std::map<Weight, Rational> out;
  for (const auto& [v, pr] : probs_) {
    out[v] += pr * q;
    out[checked_add(v, value)] += pr * p;
  }
  if (out.size() > support_cap) {
    throw DistributionTooLargeError("weight distribution support exceeds cap of " +
                                    std::to_string(support_cap));
  }
  probs_ = std::move(out);
}

Rational WeightDistribution::mean() const {
  Rational m(0);
  for (const auto& [v, p] : probs_) m += p * v;
  return m;
}

Rational clause_sat_probability(const Clause& c, const BiasProfile& bias,
                                const PartialAssignment& fixed) {
  Rational all_false(1);
  for (const auto& l : c.literals) {
    if (fixed.defines(l.var)) {
      if (fixed.value(l.var) == !l.negated) return Rational(1);
      continue;  // literal certainly false
    }
    const Rational& p_true = bias.of(l.var);
    all_false *= l.negated ? p_true : Rational(1) - p_true;
  }
  return Rational(1) - all_false;
}

Rational conditional_max_expectation(const WeightDistribution& dplus,
                                     const WeightDistribution& dminus,
                                     std::size_t support_cap) {
  if (dplus.support().size() * dminus.support().size() > support_cap) {
    throw DistributionTooLargeError("max-expectation support product exceeds cap of " +
                                    std::to_string(support_cap));
  }
  Rational e(0);
  for (const auto& [u, pu] : dplus.support()) {
    for (const auto& [v, pv] : dminus.support()) {
      e += pu * pv * std::max(u, v);
    }
  }
  return e;
}

namespace {

struct Derandomization {
  PartialAssignment fixed;
  std::vector<Rational> trace;
};

// Fixes the given variables in order, each to the value with the larger
// exact conditional expectation (ties go to TRUE). The trace records the
// objective before any fix and after each one; it never decreases because
// the prior entry is a convex combination of the two candidates.
template <typename ObjectiveFn>
Derandomization run_conditional_expectation(PartialAssignment initial,
                                            const std::vector<VarId>& order,
                                            ObjectiveFn&& objective) {
  Derandomization out;
  out.fixed = std::move(initial);
  out.trace.push_back(objective(out.fixed));
  for (VarId v : order) {
    out.fixed.values[v] = true;
    Rational e_true = objective(out.fixed);
    out.fixed.values[v] = false;
    Rational e_false = objective(out.fixed);
    Rational chosen;
    if (e_true >= e_false) {
      out.fixed.values[v] = true;
      chosen = std::move(e_true);
    } else {
      chosen = std::move(e_false);
    }
    detail::invariant(chosen >= out.trace.back(), "conditional expectation decreased");
    out.trace.push_back(std::move(chosen));
  }
  return out;
}

// F2 clause {~x, l_y} split into its unit-variable side and the other literal.
struct HardLink {
  VarId x = 0;
  VarId y = 0;
  bool y_negated = false;
  Weight weight = 0;
};

std::vector<HardLink> hard_links(const Partition& p) {
  std::vector<HardLink> links;
  links.reserve(p.f2.size());
  for (const auto& c : p.f2.clauses()) {
    detail::invariant(c.size() == 2, "F2 clause is not binary");
    HardLink link;
    bool found = false;
    for (int i = 0; i < 2 && !found; ++i) {
      const Literal a = c.literals[i], b = c.literals[1 - i];
      if (a.negated && std::binary_search(p.v1.begin(), p.v1.end(), a.var) &&
          !std::binary_search(p.v1.begin(), p.v1.end(), b.var)) {
        link.x = a.var;
        link.y = b.var;
        link.y_negated = b.negated;
        link.weight = c.weight;
        found = true;
      }
    }
    detail::invariant(found, "F2 clause lacks the negated-unit/other-variable shape");
    links.push_back(link);
  }
  return links;
}

std::map<VarId, Weight> unit_weights(const Partition& p) {
  std::map<VarId, Weight> w;
  for (const auto& c : p.f1.clauses()) w.emplace(c.literals.front().var, c.weight);
  return w;
}

void check_hard_preconditions(const Formula& fh, const Partition& p) {
  if (!p.f_soft.empty() || !(p.f_hard == fh)) {
    throw NotHardError("formula contains soft clauses");
  }
  if (!is_t_satisfiable(fh, 3)) {
    throw NotThreeSatisfiableError("hard formula is not 3-satisfiable");
  }
}

// Each x feeds at most one of the positive/negative sides per non-unit
// variable, which makes the Bernoulli summands independent. Guaranteed by
// 3-satisfiability; re-checked structurally.
void check_link_independence(const std::vector<HardLink>& links) {
  std::map<std::pair<VarId, VarId>, int> sides;
  for (const auto& l : links) {
    int& mask = sides[{l.x, l.y}];
    mask |= l.y_negated ? 2 : 1;
    detail::invariant(mask != 3, "both {~x,y} and {~x,~y} present");
  }
}

std::string expression_string(const char* lhs_coeff, Weight value, const BigInt& lhs,
                              const std::string& rhs_terms, const BigInt& rhs) {
  std::ostringstream os;
  os << lhs_coeff << "*" << value << " = " << lhs << " >= " << rhs_terms << " = " << rhs;
  return os.str();
}

BoundCertificate finalize(const Formula& f, Assignment assignment, GuaranteeKind kind,
                          Rational guarantee, std::string expression,
                          std::vector<std::vector<Rational>> traces) {
  BoundCertificate cert;
  cert.assignment = std::move(assignment);
  cert.value = evaluate(f, cert.assignment);
  cert.guarantee = std::move(guarantee);
  cert.kind = kind;
  cert.bound_expression = std::move(expression);
  cert.expectation_traces = std::move(traces);
  detail::invariant(Rational(cert.value) >= cert.guarantee,
                    "certificate value is below its guarantee");
  for (const auto& trace : cert.expectation_traces) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
      detail::invariant(trace[i] >= trace[i - 1], "expectation trace decreased");
    }
  }
  return cert;
}

}  // namespace

BoundCertificate derandomize_biased(const Formula& f, const Partition& p) {
  if (!is_t_satisfiable(f, 3)) {
    throw NotThreeSatisfiableError("formula is not 3-satisfiable");
  }
  detail::invariant(
      checked_add(p.f_hard.total_weight(), p.f_soft.total_weight()) == f.total_weight(),
      "partition does not match formula");

  BiasProfile bias;
  for (VarId v : f.variables()) {
    const bool unit_var = std::binary_search(p.v1.begin(), p.v1.end(), v);
    bias.bias.emplace(v, unit_var ? Rational(2, 3) : Rational(1, 2));
  }
  auto objective = [&](const PartialAssignment& fixed) {
    Rational e(0);
    for (const auto& c : f.clauses()) {
      e += clause_sat_probability(c, bias, fixed) * c.weight;
    }
    return e;
  };
  auto run = run_conditional_expectation({}, f.variables(), objective);

  Assignment assignment{std::move(run.fixed.values)};
  const BigInt rhs = BigInt(18) * f.total_weight() + p.f_soft.total_weight();
  Rational guarantee(rhs, BigInt(27));
  const Weight value = evaluate(f, assignment);
  detail::invariant(Rational(value) == run.trace.back(), "final expectation is not the value");
  std::ostringstream rhs_terms;
  rhs_terms << "18*" << f.total_weight() << " + " << p.f_soft.total_weight();
  auto expr = expression_string("27", value, BigInt(27) * value, rhs_terms.str(), rhs);
  return finalize(f, std::move(assignment), GuaranteeKind::yannakakis_soft,
                  std::move(guarantee), std::move(expr), {std::move(run.trace)});
}

BoundCertificate hard_assignment_n2(const Formula& fh, const Partition& p,
                                    std::size_t support_cap) {
  check_hard_preconditions(fh, p);
  const auto links = hard_links(p);
  check_link_independence(links);

  std::map<VarId, std::vector<const HardLink*>> by_y;
  for (const auto& l : links) by_y[l.y].push_back(&l);

  // Objective: E[sat(F1)] + E[sat_alpha(F2)] + sum_j E[max(Y+_j, Y-_j)],
  // where Y+/Y- collect the weight of F2 clauses pending on each non-unit
  // variable once their unit variable is TRUE.
  auto objective = [&](const PartialAssignment& alpha) {
    Rational e(0);
    for (const auto& c : p.f1.clauses()) {
      const VarId x = c.literals.front().var;
      if (alpha.defines(x)) {
        if (alpha.value(x)) e += c.weight;
      } else {
        e += Rational(2, 3) * c.weight;
      }
    }
    for (const auto& l : links) {
      if (alpha.defines(l.x)) {
        if (!alpha.value(l.x)) e += l.weight;
      } else {
        e += Rational(1, 3) * l.weight;
      }
    }
    for (const auto& [y, ls] : by_y) {
      WeightDistribution plus, minus;
      for (const HardLink* l : ls) {
        WeightDistribution& side = l->y_negated ? minus : plus;
        if (alpha.defines(l->x)) {
          if (alpha.value(l->x)) side.shift(l->weight);
        } else {
          side.convolve_bernoulli(l->weight, Rational(2, 3), support_cap);
        }
      }
      e += conditional_max_expectation(plus, minus, support_cap);
    }
    return e;
  };
  auto run = run_conditional_expectation({}, p.v1, objective);

  Assignment assignment{std::move(run.fixed.values)};
  for (const auto& [y, ls] : by_y) {
    Weight y_plus = 0, y_minus = 0;
    for (const HardLink* l : ls) {
      if (assignment.value(l->x)) (l->y_negated ? y_minus : y_plus) += l->weight;
    }
    assignment.values[y] = y_plus >= y_minus;
  }
  const Weight value = evaluate(fh, assignment);
  detail::invariant(Rational(value) == run.trace.back(), "final expectation is not the value");
  const BigInt rhs = BigInt(6) * fh.total_weight() + BigInt(2) * p.n2;
  std::ostringstream rhs_terms;
  rhs_terms << "6*" << fh.total_weight() << " + 2*" << p.n2;
  auto expr = expression_string("9", value, BigInt(9) * value, rhs_terms.str(), rhs);
  return finalize(fh, std::move(assignment), GuaranteeKind::hard_n2, Rational(rhs, BigInt(9)),
                  std::move(expr), {std::move(run.trace)});
}

BoundCertificate hard_assignment_n1(const Formula& fh, const Partition& p,
                                    std::size_t support_cap) {
  check_hard_preconditions(fh, p);
  const auto links = hard_links(p);
  check_link_independence(links);
  const auto unit_w = unit_weights(p);

  std::map<VarId, std::vector<const HardLink*>> by_x;
  for (const auto& l : links) by_x[l.x].push_back(&l);

  // Objective: E[sat_beta(F2)] + sum_i E[max(w({x_i}), Z_i)], where Z_i is
  // the weight of F2 clauses on ~x_i left unsatisfied by beta.
  auto objective = [&](const PartialAssignment& beta) {
    Rational e(0);
    for (const auto& l : links) {
      if (beta.defines(l.y)) {
        if (beta.value(l.y) == !l.y_negated) e += l.weight;
      } else {
        e += Rational(1, 2) * l.weight;
      }
    }
    for (VarId x : p.v1) {
      WeightDistribution z;
      auto it = by_x.find(x);
      if (it != by_x.end()) {
        for (const HardLink* l : it->second) {
          if (beta.defines(l->y)) {
            if (beta.value(l->y) == l->y_negated) z.shift(l->weight);
          } else {
            z.convolve_bernoulli(l->weight, Rational(1, 2), support_cap);
          }
        }
      }
      e += conditional_max_expectation(WeightDistribution::point(unit_w.at(x)), z, support_cap);
    }
    return e;
  };
  auto run = run_conditional_expectation({}, p.v2, objective);

  Assignment assignment{std::move(run.fixed.values)};
  for (VarId x : p.v1) {
    Weight z = 0;
    auto it = by_x.find(x);
    if (it != by_x.end()) {
      for (const HardLink* l : it->second) {
        if (assignment.value(l->y) == l->y_negated) z += l->weight;
      }
    }
    assignment.values[x] = unit_w.at(x) >= z;
  }
  const Weight value = evaluate(fh, assignment);
  detail::invariant(Rational(value) == run.trace.back(), "final expectation is not the value");
  const BigInt rhs = BigInt(4) * fh.total_weight() + BigInt(p.n1);
  std::ostringstream rhs_terms;
  rhs_terms << "4*" << fh.total_weight() << " + " << p.n1;
  auto expr = expression_string("6", value, BigInt(6) * value, rhs_terms.str(), rhs);
  return finalize(fh, std::move(assignment), GuaranteeKind::hard_n1, Rational(rhs, BigInt(6)),
                  std::move(expr), {std::move(run.trace)});
}

BoundCertificate hard_best(const Formula& fh, const Partition& p, std::size_t support_cap) {
  BoundCertificate n2 = hard_assignment_n2(fh, p, support_cap);
  BoundCertificate n1 = hard_assignment_n1(fh, p, support_cap);
  BoundCertificate& winner = n1.value > n2.value ? n1 : n2;  // ties keep the n2 variant

  const BigInt rhs = BigInt(14) * fh.total_weight() + BigInt(2) * (p.n1 + p.n2);
  std::ostringstream rhs_terms;
  rhs_terms << "14*" << fh.total_weight() << " + 2*" << (p.n1 + p.n2);
  auto expr = expression_string("21", winner.value, BigInt(21) * winner.value, rhs_terms.str(), rhs);
  return finalize(fh, std::move(winner.assignment), GuaranteeKind::hard_best,
                  Rational(rhs, BigInt(21)), std::move(expr),
                  std::move(winner.expectation_traces));
}

BoundCertificate expanding_bound(const Formula& f, std::size_t support_cap) {
  if (!is_t_satisfiable(f, 3)) {
    throw NotThreeSatisfiableError("formula is not 3-satisfiable");
  }
  if (!is_expanding(f)) {
    throw NotExpandingError("formula is not expanding");
  }
  const Partition p = partition(f);

  // Fat chain candidate: the biased derandomization.
  BoundCertificate fat_cert = derandomize_biased(f, p);

  // Lean chain candidate: best hard construction on F_hard, then the
  // remaining variables by greedy conditional expectation over all of f.
  const Partition ph = partition(p.f_hard);
  BoundCertificate hard_cert = hard_best(p.f_hard, ph, support_cap);
  PartialAssignment seed{hard_cert.assignment.values};
  BiasProfile half;
  for (VarId v : p.v_soft) half.bias.emplace(v, Rational(1, 2));
  auto objective = [&](const PartialAssignment& fixed) {
    Rational e(0);
    for (const auto& c : f.clauses()) {
      e += clause_sat_probability(c, half, fixed) * c.weight;
    }
    return e;
  };
  auto ext = run_conditional_expectation(std::move(seed), p.v_soft, objective);
  Assignment lean_assignment{std::move(ext.fixed.values)};
  const Weight lean_value = evaluate(f, lean_assignment);
  detail::invariant(Rational(lean_value) == ext.trace.back(),
                    "final expectation is not the value");
  detail::invariant(lean_value >= hard_cert.value, "soft extension lost hard weight");
  std::vector<std::vector<Rational>> lean_traces = std::move(hard_cert.expectation_traces);
  lean_traces.push_back(std::move(ext.trace));

  const bool fat = is_fat(p);
  const bool fat_wins = fat ? fat_cert.value >= lean_value : fat_cert.value > lean_value;
  Assignment assignment = fat_wins ? std::move(fat_cert.assignment) : std::move(lean_assignment);
  std::vector<std::vector<Rational>> traces =
      fat_wins ? std::move(fat_cert.expectation_traces) : std::move(lean_traces);

  const Weight value = fat_wins ? fat_cert.value : lean_value;
  const BigInt rhs = BigInt(302) * f.total_weight() + BigInt(2) * f.variables().size();
  std::ostringstream rhs_terms;
  rhs_terms << "302*" << f.total_weight() << " + 2*" << f.variables().size();
  auto expr = expression_string("453", value, BigInt(453) * value, rhs_terms.str(), rhs);
  return finalize(f, std::move(assignment), GuaranteeKind::expanding, Rational(rhs, BigInt(453)),
                  std::move(expr), std::move(traces));
}

BoundCertificate full_bound(const Formula& f, std::size_t support_cap) {
  if (!is_t_satisfiable(f, 3)) {
    throw NotThreeSatisfiableError("formula is not 3-satisfiable");
  }
  auto [normalized, flips] = flip_normalize(f);
  const Autarky aut = decompose(normalized);
  const Formula residual = remove_clauses(normalized, aut.f_u);

  BoundCertificate res_cert = expanding_bound(residual, support_cap);
  auto [tau_normalized, value] = compose(aut, res_cert.assignment, normalized);
  Assignment tau = flip_assignment(tau_normalized, flips);
  detail::invariant(evaluate(f, tau) == value, "flip mapping changed the witness value");

  const BigInt rhs = BigInt(302) * f.total_weight() + BigInt(151) * aut.f_u.total_weight() +
                     BigInt(2) * residual.variables().size();
  std::ostringstream rhs_terms;
  rhs_terms << "302*" << f.total_weight() << " + 151*" << aut.f_u.total_weight() << " + 2*"
            << residual.variables().size();
  auto expr = expression_string("453", value, BigInt(453) * value, rhs_terms.str(), rhs);
  return finalize(f, std::move(tau), GuaranteeKind::composed, Rational(rhs, BigInt(453)),
                  std::move(expr), std::move(res_cert.expectation_traces));
}

}  // namespace tsat
