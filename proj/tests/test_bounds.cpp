#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "tsat/autarky.hpp"
#include "tsat/bounds.hpp"
#include "tsat/tsat_check.hpp"

using namespace tsat;

namespace {

const Formula kFourClause = F({{{1}, 1}, {{2}, 1}, {{-1, 3}, 1}, {{-2, -3}, 1}});

BiasProfile bias_for(const Formula& f, const Partition& p) {
  BiasProfile bias;
  for (VarId v : f.variables()) {
    const bool unit_var = std::binary_search(p.v1.begin(), p.v1.end(), v);
    bias.bias.emplace(v, unit_var ? Rational(2, 3) : Rational(1, 2));
  }
  return bias;
}

void check_traces(const BoundCertificate& cert) {
  for (const auto& trace : cert.expectation_traces) {
    REQUIRE(!trace.empty());
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] >= trace[i - 1]);
  }
  CHECK(Rational(cert.value) >= cert.expectation_traces.back().front());
}

}  // namespace

TEST_CASE("clause_sat_probability under the biased product distribution") {
  const Formula f = F({{{1}, 1}, {{-1, -2}, 1}, {{2, 3}, 1}});
  const Partition p = partition(f);
  const BiasProfile bias = bias_for(f, p);
  REQUIRE(p.v1 == std::vector<VarId>{1});

  CHECK(clause_sat_probability(F({{{1}, 1}}).clauses()[0], bias, {}) == Rational(2, 3));
  CHECK(clause_sat_probability(F({{{-1, -2}, 1}}).clauses()[0], bias, {}) == Rational(2, 3));
  CHECK(clause_sat_probability(F({{{2, 3}, 1}}).clauses()[0], bias, {}) == Rational(3, 4));

  // Fixed variables collapse the probability.
  PartialAssignment fixed;
  fixed.values[1] = true;
  CHECK(clause_sat_probability(F({{{1}, 1}}).clauses()[0], bias, fixed) == Rational(1));
  CHECK(clause_sat_probability(F({{{-1, -2}, 1}}).clauses()[0], bias, fixed) == Rational(1, 2));
}

TEST_CASE("conditional_max_expectation") {
  WeightDistribution yplus, yminus;
  yplus.convolve_bernoulli(1, Rational(2, 3));
  yminus.convolve_bernoulli(1, Rational(2, 3));
  CHECK(conditional_max_expectation(yplus, yminus) == Rational(8, 9));
  // E[(Y+ + Y-)/2] + E|Y+ - Y-|/2 decomposition: 2/3 + (1/2)(4/9).
  CHECK(Rational(8, 9) == Rational(2, 3) + Rational(1, 2) * Rational(4, 9));

  CHECK(conditional_max_expectation(yplus, WeightDistribution{}) == yplus.mean());
  CHECK(conditional_max_expectation(WeightDistribution{}, WeightDistribution{}) == Rational(0));

  WeightDistribution big;
  for (int i = 0; i < 5; ++i) big.convolve_bernoulli(1 << i, Rational(1, 2));
  CHECK(big.support().size() == 32);
  CHECK_THROWS_AS(conditional_max_expectation(big, big, 100), DistributionTooLargeError);
}

TEST_CASE("weight distribution bookkeeping") {
  WeightDistribution d;
  d.convolve_bernoulli(2, Rational(1, 3));
  d.convolve_bernoulli(2, Rational(1, 2));
  Rational total(0);
  for (const auto& [v, p] : d.support()) total += p;
  CHECK(total == Rational(1));
  CHECK(d.mean() == Rational(2, 3) + Rational(1));
  d.shift(5);
  CHECK(d.mean() == Rational(2, 3) + Rational(6));
}

TEST_CASE("derandomize_biased on a single unit") {
  const Formula f = F({{{1}, 1}});
  const BoundCertificate cert = derandomize_biased(f, partition(f));
  CHECK(cert.value == 1);
  CHECK(cert.guarantee == Rational(18, 27));
  CHECK(cert.kind == GuaranteeKind::yannakakis_soft);
  check_traces(cert);
}

TEST_CASE("derandomize_biased reaches the optimum of the four-clause example") {
  const BoundCertificate cert = derandomize_biased(kFourClause, partition(kFourClause));
  CHECK(cert.value == 3);
  CHECK(oracle::opt(kFourClause).second == 3);
  CHECK(Rational(27) * cert.value >= Rational(18 * 4));
  CHECK(evaluate(kFourClause, cert.assignment) == 3);
  check_traces(cert);
}

TEST_CASE("derandomize_biased guarantee covers all-soft formulas") {
  // Only 3-literal clauses: every clause is soft, so 27*value >= 19*w.
  const Formula f = F({{{1, 2, 3}, 2}, {{-1, -2, -3}, 1}, {{1, -2, 3}, 4}});
  const Partition p = partition(f);
  REQUIRE(p.f_soft == f);
  const BoundCertificate cert = derandomize_biased(f, p);
  CHECK(Rational(27) * cert.value >= Rational(19) * f.total_weight());
  CHECK(cert.guarantee == Rational(19 * 7, 27));
}

TEST_CASE("derandomize_biased rejects non-3-satisfiable input") {
  const Formula f = F({{{1}, 1}, {{2}, 1}, {{-1, -2}, 1}});
  CHECK_THROWS_AS(derandomize_biased(f, Partition{}), NotThreeSatisfiableError);
}

TEST_CASE("hard_assignment_n2") {
  const Partition p = partition(kFourClause);
  const BoundCertificate cert = hard_assignment_n2(kFourClause, p);
  CHECK(cert.value == 3);
  CHECK(Rational(9 * 3) >= Rational(6 * 4 + 2 * 1));
  CHECK(cert.guarantee == Rational(26, 9));
  // Exact initial objective: (2/3)*2 + (1/3)*2 + E[max(Y+,Y-)] = 2 + 8/9.
  CHECK(cert.expectation_traces[0].front() == Rational(26, 9));
  check_traces(cert);

  const Formula single = F({{{1}, 5}});
  const BoundCertificate s = hard_assignment_n2(single, partition(single));
  CHECK(s.value == 5);

  const Formula mixed = F({{{1}, 1}, {{-1, 2}, 2}});
  const BoundCertificate m = hard_assignment_n2(mixed, partition(mixed));
  CHECK(m.value == 3);
  CHECK(oracle::opt(mixed).second == 3);
  CHECK(Rational(9 * 3) >= Rational(6 * 3 + 2));
}

TEST_CASE("hard_assignment_n1 meets the four-clause bound with equality") {
  const Partition p = partition(kFourClause);
  const BoundCertificate cert = hard_assignment_n1(kFourClause, p);
  CHECK(cert.value == 3);
  CHECK(Rational(6) * cert.value == Rational(4 * 4 + 2));  // 18 = 18, tight
  CHECK(cert.guarantee == Rational(3));
  // Exact initial objective: (1/2)*2 + max-terms 1 + 1 = 3.
  CHECK(cert.expectation_traces[0].front() == Rational(3));
  check_traces(cert);

  const Formula single = F({{{1}, 5}});
  const BoundCertificate s = hard_assignment_n1(single, partition(single));
  CHECK(s.value == 5);
  CHECK(Rational(6 * 5) >= Rational(4 * 5 + 1));
}

TEST_CASE("hard constructions reject soft clauses and 3-sat violations") {
  const Formula soft = F({{{1}, 1}, {{1, 2, 3}, 1}});
  CHECK_THROWS_AS(hard_assignment_n2(soft, partition(soft)), NotHardError);
  CHECK_THROWS_AS(hard_assignment_n1(soft, partition(soft)), NotHardError);
  CHECK_THROWS_AS(hard_best(soft, partition(soft)), NotHardError);

  const Formula bad = F({{{1}, 1}, {{-1, 2}, 1}, {{-1, -2}, 1}});
  CHECK_THROWS_AS(hard_assignment_n1(bad, partition(bad)), NotThreeSatisfiableError);
}

TEST_CASE("hard_best takes the better construction") {
  const Partition p = partition(kFourClause);
  const BoundCertificate cert = hard_best(kFourClause, p);
  CHECK(cert.value == 3);
  CHECK(Rational(21 * 3) >= Rational(14 * 4 + 2 * 3));
  CHECK(cert.guarantee == Rational(14 * 4 + 2 * 3, 21));
  CHECK(cert.kind == GuaranteeKind::hard_best);

  const Formula single = F({{{1}, 1}});
  CHECK(hard_best(single, partition(single)).value == 1);

  CHECK(hard_best(Formula{}, partition(Formula{})).value == 0);
}

TEST_CASE("expanding_bound on the lean four-clause example") {
  const BoundCertificate cert = expanding_bound(kFourClause);
  CHECK(cert.value == 3);
  CHECK(cert.kind == GuaranteeKind::expanding);
  CHECK(cert.guarantee == Rational(302 * 4 + 2 * 3, 453));
  CHECK(Rational(453 * 3) >= Rational(302 * 4 + 2 * 3));
  check_traces(cert);
}

TEST_CASE("expanding_bound on a fat example") {
  const Formula f = F({{{1, 2}, 1}, {{1}, 1}, {{2}, 1}});
  REQUIRE(is_fat(partition(f)));
  REQUIRE(is_expanding(f));
  const BoundCertificate cert = expanding_bound(f);
  CHECK(cert.value == 3);  // all clauses satisfiable at once
  CHECK(Rational(453 * 3) >= Rational(302 * 3 + 2 * 2));
}

TEST_CASE("expanding_bound rejects bad inputs") {
  CHECK(expanding_bound(Formula{}).value == 0);
  CHECK_THROWS_AS(expanding_bound(F({{{1, 2, 3}, 1}, {{-1, 2}, 1}})), NotExpandingError);
  CHECK_THROWS_AS(expanding_bound(F({{{1}, 1}, {{-1}, 1}})), NotThreeSatisfiableError);
}

TEST_CASE("full_bound composes the decomposition example") {
  const Formula f = F({{{1, 2}, 1}, {{3}, 2}});
  const BoundCertificate cert = full_bound(f);
  CHECK(cert.value == 3);
  CHECK(cert.kind == GuaranteeKind::composed);
  CHECK(cert.guarantee == Rational(302 * 3 + 151 * 1 + 2 * 1, 453));
  CHECK(evaluate(f, cert.assignment) == 3);
}

TEST_CASE("full_bound equals expanding_bound on expanding formulas") {
  const BoundCertificate full = full_bound(kFourClause);
  const BoundCertificate exp = expanding_bound(kFourClause);
  CHECK(full.value == exp.value);
  CHECK(full.assignment.values == exp.assignment.values);
  CHECK(full.guarantee == Rational(302 * 4 + 2 * 3, 453));  // w(F_U) = 0
}

TEST_CASE("full_bound normalizes negative units internally") {
  const Formula f = F({{{-1}, 1}});
  const BoundCertificate cert = full_bound(f);
  CHECK(cert.value == 1);
  CHECK(cert.assignment.values.at(1) == false);
  CHECK(Rational(453) >= Rational(302 + 2));
}

TEST_CASE("certificates stay sound and below the optimum on random corpora") {
  std::mt19937_64 rng(67);
  int tested = 0;
  for (int i = 0; i < 150; ++i) {
    const Formula f = oracle::random_formula(rng, 6, 10, 4);
    if (!is_t_satisfiable(f, 3)) continue;
    ++tested;
    const BoundCertificate cert = full_bound(f);
    CHECK(evaluate(f, cert.assignment) == cert.value);
    CHECK(Rational(cert.value) >= cert.guarantee);
    CHECK(cert.value <= oracle::opt(f).second);
    check_traces(cert);
  }
  CHECK(tested > 60);
}
