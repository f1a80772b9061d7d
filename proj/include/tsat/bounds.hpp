#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tsat/formula.hpp"
#include "tsat/rational.hpp"

namespace tsat {

class NotThreeSatisfiableError : public Error {
 public:
  using Error::Error;
};
class NotHardError : public Error {
 public:
  using Error::Error;
};
class NotExpandingError : public Error {
 public:
  using Error::Error;
};
class DistributionTooLargeError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

// Per-variable probability of TRUE under an independent product distribution.
// Only 2/3 (unit variables) and 1/2 occur in this toolkit.
struct BiasProfile {
  std::map<VarId, Rational> bias;

  const Rational& of(VarId v) const;
};

// Law of a non-negative integer-weight random variable, kept as an explicit
// support map. Built by convolving independent scaled Bernoulli summands.
class WeightDistribution {
 public:
  WeightDistribution() : probs_{{0, Rational(1)}} {}

  static WeightDistribution point(Weight v);

  // Adds an independent summand worth `value` with probability p.
  void convolve_bernoulli(Weight value, const Rational& p,
                          std::size_t support_cap = kDefaultSupportCap);
  void shift(Weight value);

  const std::map<Weight, Rational>& support() const { return probs_; }
  Rational mean() const;

 private:
  std::map<Weight, Rational> probs_;
};

enum class GuaranteeKind {
  yannakakis_soft,
  hard_n2,
  hard_n1,
  hard_best,
  expanding,
  composed,
};

const char* to_string(GuaranteeKind kind);

// A concrete assignment together with the exact rational lower bound its
// construction proves. value = evaluate(formula, assignment) >= guarantee,
// checked on every construction.
struct BoundCertificate {
  Assignment assignment;
  Weight value = 0;
  Rational guarantee;
  GuaranteeKind kind = GuaranteeKind::yannakakis_soft;
  // Cross-multiplied inequality with the actual numbers, e.g.
  // "9*3 = 27 >= 6*4 + 2*1 = 26".
  std::string bound_expression;
  // One entry per conditional-expectation run: the exact objective value
  // before any fix and after each variable fix. Non-decreasing.
  std::vector<std::vector<Rational>> expectation_traces;
};

// Exact probability that c is satisfied when fixed variables keep their
// values and the rest are independent per bias: 1 - prod P(literal false).
Rational clause_sat_probability(const Clause& c, const BiasProfile& bias,
                                const PartialAssignment& fixed);

// E[max(Y+, Y-)] by full support enumeration, exact.
Rational conditional_max_expectation(const WeightDistribution& dplus,
                                     const WeightDistribution& dminus,
                                     std::size_t support_cap = kDefaultSupportCap);

// Conditional-expectation derandomization under bias 2/3 on unit variables
// and 1/2 elsewhere; 27*value >= 18*w(F) + w(F_soft).
BoundCertificate derandomize_biased(const Formula& f, const Partition& p);

// Hard-formula scheme fixing the unit variables first;
// 9*value >= 6*w(F) + 2*n2.
BoundCertificate hard_assignment_n2(const Formula& fh, const Partition& p,
                                    std::size_t support_cap = kDefaultSupportCap);

// Hard-formula scheme fixing the non-unit variables first;
// 6*value >= 4*w(F) + n1.
BoundCertificate hard_assignment_n1(const Formula& fh, const Partition& p,
                                    std::size_t support_cap = kDefaultSupportCap);

// The better of the two hard schemes; 21*value >= 14*w(F) + 2*(n1 + n2).
BoundCertificate hard_best(const Formula& fh, const Partition& p,
                           std::size_t support_cap = kDefaultSupportCap);

// For an expanding 3-satisfiable normalized formula;
// 453*value >= 302*w(F) + 2*|V(F)|.
BoundCertificate expanding_bound(const Formula& f,
                                 std::size_t support_cap = kDefaultSupportCap);

// Autarky decomposition + expanding bound on the residual, composed;
// 453*value >= 302*w(F) + 151*w(F_U) + 2*|V(F \ F_U)|. Normalization is
// handled internally and the witness mapped back.
BoundCertificate full_bound(const Formula& f,
                            std::size_t support_cap = kDefaultSupportCap);

}  // namespace tsat
