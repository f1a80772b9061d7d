// Acceptance suite: exercises every guarantee of the toolkit on seeded
// corpora with exact integer arithmetic and prints one PASS/FAIL line per
// criterion. Exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tsat/autarky.hpp"
#include "tsat/bounds.hpp"
#include "tsat/dimacs.hpp"
#include "tsat/generator.hpp"
#include "tsat/kernel.hpp"
#include "tsat/tsat_check.hpp"

using namespace tsat;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!pass) ++g_failures;
}

using i128 = __int128;

std::vector<Formula> make_corpus(GenSpec::Shape shape, std::size_t count,
                                 std::uint64_t seed_base) {
  std::vector<Formula> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GenSpec spec;
    spec.n_vars = 3 + i % 8;        // 3..10 variables
    spec.n_clauses = 5 + i % 16;    // 5..20 clauses
    spec.max_weight = 5;
    spec.max_clause_len = 3;
    spec.seed = seed_base + i;
    spec.shape = shape;
    corpus.push_back(generate(spec));
  }
  return corpus;
}

bool traces_monotone(const BoundCertificate& cert) {
  for (const auto& trace : cert.expectation_traces) {
    if (trace.empty()) return false;
    for (std::size_t i = 1; i < trace.size(); ++i) {
      if (trace[i] < trace[i - 1]) return false;
    }
  }
  return Rational(cert.value) >= cert.expectation_traces.back().front();
}

// Criterion 1: composed bound soundness over the general corpus.
void criterion_composed(const std::vector<Formula>& corpus) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t checked = 0;
  std::string detail;
  bool pass = true;
  for (const Formula& f : corpus) {
    const BoundCertificate cert = full_bound(f);
    const auto [normalized, flips] = flip_normalize(f);
    const Autarky aut = decompose(normalized);
    const Formula residual = remove_clauses(normalized, aut.f_u);
    const i128 lhs = i128{453} * cert.value;
    const i128 rhs = i128{302} * f.total_weight() + i128{151} * aut.f_u.total_weight() +
                     i128{2} * residual.variables().size();
    const bool sound = evaluate(f, cert.assignment) == cert.value && lhs >= rhs &&
                       cert.value <= oracle::opt(f).second;
    if (!sound) {
      pass = false;
      detail = "failed on " + write_dimacs(f);
      break;
    }
    ++checked;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (pass && secs >= 60.0) {
    pass = false;
    detail = "runtime budget exceeded";
  }
  if (pass) {
    std::ostringstream os;
    os << checked << " instances, " << static_cast<int>(secs * 1000) << " ms";
    detail = os.str();
  }
  report(1, "453*value >= 302*w + 151*w(F_U) + 2*|V(F\\F_U)| and value <= optimum", pass,
         detail);
}

// Criterion 2: the three hard-formula bounds, plus the tightness witness.
void criterion_hard(const std::vector<Formula>& corpus) {
  bool pass = true;
  std::string detail;
  std::size_t checked = 0;
  for (const Formula& f : corpus) {
    const Partition p = partition(f);
    const BoundCertificate n2 = hard_assignment_n2(f, p);
    const BoundCertificate n1 = hard_assignment_n1(f, p);
    const BoundCertificate best = hard_best(f, p);
    const bool ok =
        i128{9} * n2.value >= i128{6} * f.total_weight() + i128{2} * p.n2 &&
        i128{6} * n1.value >= i128{4} * f.total_weight() + i128{1} * p.n1 &&
        i128{21} * best.value >= i128{14} * f.total_weight() + i128{2} * (p.n1 + p.n2) &&
        traces_monotone(n2) && traces_monotone(n1) &&
        evaluate(f, n2.assignment) == n2.value && evaluate(f, n1.assignment) == n1.value;
    if (!ok) {
      pass = false;
      detail = "failed on " + write_dimacs(f);
      break;
    }
    ++checked;
  }
  if (pass) {
    const Formula tight = F({{{1}, 1}, {{2}, 1}, {{-1, 3}, 1}, {{-2, -3}, 1}});
    const BoundCertificate cert = hard_assignment_n1(tight, partition(tight));
    if (6 * cert.value != 4 * tight.total_weight() + 2) {
      pass = false;
      detail = "tightness witness 18 = 18 failed";
    } else {
      detail = std::to_string(checked) + " instances, n1 bound tight at 18 = 18";
    }
  }
  report(2, "hard bounds 9v >= 6w + 2*n2, 6v >= 4w + n1, 21v >= 14w + 2(n1+n2)", pass, detail);
}

// Criterion 3: biased derandomization bound over the general corpus.
void criterion_biased(const std::vector<Formula>& corpus) {
  bool pass = true;
  std::string detail;
  std::size_t checked = 0;
  for (const Formula& f : corpus) {
    const Formula normalized = flip_normalize(f).first;
    const Partition p = partition(normalized);
    const BoundCertificate cert = derandomize_biased(normalized, p);
    const bool ok = i128{27} * cert.value >=
                        i128{18} * normalized.total_weight() + p.f_soft.total_weight() &&
                    traces_monotone(cert) && evaluate(normalized, cert.assignment) == cert.value;
    if (!ok) {
      pass = false;
      detail = "failed on " + write_dimacs(f);
      break;
    }
    ++checked;
  }
  if (pass) detail = std::to_string(checked) + " instances";
  report(3, "27*value >= 18*w + w(F_soft)", pass, detail);
}

// Criterion 4: expanding bound over the expanding corpus.
void criterion_expanding(const std::vector<Formula>& corpus) {
  bool pass = true;
  std::string detail;
  std::size_t checked = 0;
  for (const Formula& f : corpus) {
    const Formula normalized = flip_normalize(f).first;
    const BoundCertificate cert = expanding_bound(normalized);
    const bool ok = i128{453} * cert.value >= i128{302} * normalized.total_weight() +
                                                  i128{2} * normalized.variables().size() &&
                    traces_monotone(cert) && evaluate(normalized, cert.assignment) == cert.value;
    if (!ok) {
      pass = false;
      detail = "failed on " + write_dimacs(f);
      break;
    }
    ++checked;
  }
  if (pass) detail = std::to_string(checked) + " instances";
  report(4, "453*value >= 302*w + 2*|V| on expanding formulas", pass, detail);
}

// Criterion 5: autarky machinery on every corpus instance.
void criterion_autarky(const std::vector<Formula>& corpora) {
  bool pass = true;
  std::string detail;
  std::size_t checked = 0;
  std::mt19937_64 rng(0xA07A);
  for (const Formula& f : corpora) {
    const Autarky aut = decompose(f);
    for (const auto& c : aut.f_u.clauses()) {
      if (!satisfies(c, aut.beta)) {
        pass = false;
        detail = "beta misses a touched clause";
      }
    }
    const Formula residual = remove_clauses(f, aut.f_u);
    if (!is_expanding(residual) || !oracle::expanding_exhaustive(residual)) {
      pass = false;
      detail = "residual not expanding";
    }
    std::vector<VarId> free_vars;
    for (VarId v : f.variables()) {
      if (!std::binary_search(aut.u.begin(), aut.u.end(), v)) free_vars.push_back(v);
    }
    for (int g = 0; g < 100 && pass; ++g) {
      oracle::Values tau = oracle::random_assignment(rng, free_vars);
      const std::int64_t res_value = oracle::eval(residual, tau);
      tau.insert(aut.beta.values.begin(), aut.beta.values.end());
      if (oracle::eval(f, tau) != aut.f_u.total_weight() + res_value) {
        pass = false;
        detail = "composition identity failed";
      }
    }
    if (!pass) {
      detail += " on " + write_dimacs(f);
      break;
    }
    ++checked;
  }
  if (pass) detail = std::to_string(checked) + " instances, 100 completions each";
  report(5, "autarky satisfies F_U, residual expanding, composition identity", pass, detail);
}

// Criterion 6: pattern characterization vs exhaustive pair/triple checking.
void criterion_patterns() {
  std::mt19937_64 rng(0x3A7);
  bool pass = true;
  std::string detail;
  std::size_t violating = 0;
  const std::size_t total = 5000;
  for (std::size_t i = 0; i < total; ++i) {
    const Formula f = oracle::random_formula(rng, 4, 8);
    const bool fast = is_t_satisfiable(f, 3);
    if (fast != oracle::tsat_bruteforce(f, 3)) {
      pass = false;
      detail = "disagreement on " + write_dimacs(f);
      break;
    }
    if (is_t_satisfiable(f, 2) != oracle::tsat_bruteforce(f, 2)) {
      pass = false;
      detail = "t=2 disagreement on " + write_dimacs(f);
      break;
    }
    if (!fast) ++violating;
  }
  if (pass && violating < 500) {
    pass = false;
    detail = "only " + std::to_string(violating) + " violating instances";
  }
  if (pass) {
    detail = std::to_string(total) + " formulas, " + std::to_string(violating) + " violating";
  }
  report(6, "pattern-based 3-satisfiability matches exhaustive triple checking", pass, detail);
}

// Criterion 7: the above-guarantee decision procedure.
void criterion_kernel(const std::vector<Formula>& corpus) {
  bool pass = true;
  std::string detail;
  std::size_t decisions = 0;
  for (const Formula& f : corpus) {
    const std::int64_t opt = oracle::opt(f).second;
    for (std::int64_t k = 0; k <= 5 && pass; ++k) {
      const Kernel kern = kernelize(f, k);
      if (kern.k_prime > k) {
        pass = false;
        detail = "kernel not proper";
      }
      const AeDecision d = solve_ae(AeInstance(f, k));
      const bool expected = 3 * opt >= 2 * f.total_weight() + 3 * k;
      if (d.yes != expected) {
        pass = false;
        detail = "decision mismatch at k=" + std::to_string(k);
      } else if (d.yes) {
        if (!d.witness.has_value() ||
            3 * evaluate(f, *d.witness) < 2 * f.total_weight() + 3 * k) {
          pass = false;
          detail = "invalid YES witness at k=" + std::to_string(k);
        }
      }
      ++decisions;
    }
    if (!pass) {
      detail += " on " + write_dimacs(f);
      break;
    }
  }
  if (pass) detail = std::to_string(decisions) + " decisions";
  report(7, "solve-ae agrees with brute force for k in 0..5, witnesses verified", pass, detail);
}

// Test-side sampler for the initial objective of the two hard schemes.
struct HardShape {
  struct Link {
    VarId x, y;
    bool y_negated;
    Weight w;
  };
  std::vector<Link> links;
  std::vector<std::pair<VarId, Weight>> units;
  std::vector<VarId> v2;
};

HardShape shape_of(const Formula& f) {
  const Partition p = partition(f);
  HardShape s;
  for (const auto& c : p.f1.clauses()) s.units.emplace_back(c.literals.front().var, c.weight);
  for (const auto& c : p.f2.clauses()) {
    for (int i = 0; i < 2; ++i) {
      const Literal a = c.literals[i], b = c.literals[1 - i];
      if (a.negated && std::binary_search(p.v1.begin(), p.v1.end(), a.var) &&
          !std::binary_search(p.v1.begin(), p.v1.end(), b.var)) {
        s.links.push_back({a.var, b.var, b.negated, c.weight});
        break;
      }
    }
  }
  s.v2 = p.v2;
  return s;
}

double sample_n2_objective(const HardShape& s, std::mt19937_64& rng) {
  std::map<VarId, bool> alpha;
  for (const auto& [x, w] : s.units) alpha[x] = rng() % 3 < 2;  // TRUE w.p. 2/3
  double g = 0;
  for (const auto& [x, w] : s.units) {
    if (alpha[x]) g += static_cast<double>(w);
  }
  std::map<VarId, std::pair<Weight, Weight>> pending;  // y -> (Y+, Y-)
  for (const auto& l : s.links) {
    if (!alpha[l.x]) {
      g += static_cast<double>(l.w);
    } else {
      (l.y_negated ? pending[l.y].second : pending[l.y].first) += l.w;
    }
  }
  for (VarId y : s.v2) {
    const auto [plus, minus] = pending[y];
    g += static_cast<double>(std::max(plus, minus));
  }
  return g;
}

double sample_n1_objective(const HardShape& s, std::mt19937_64& rng) {
  std::map<VarId, bool> beta;
  for (VarId y : s.v2) beta[y] = rng() % 2;
  double h = 0;
  std::map<VarId, Weight> z;
  for (const auto& l : s.links) {
    if (beta[l.y] == !l.y_negated) {
      h += static_cast<double>(l.w);
    } else {
      z[l.x] += l.w;
    }
  }
  for (const auto& [x, w] : s.units) h += static_cast<double>(std::max(w, z[x]));
  return h;
}

// Criterion 8: trace monotonicity (checked inline above) plus the Monte-Carlo
// cross-check of the initial expectations of the two hard schemes.
void criterion_montecarlo(const std::vector<Formula>& hard_corpus) {
  bool pass = true;
  std::string detail;
  std::mt19937_64 rng(0xE57);
  const std::size_t samples = 100000;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Formula& f = hard_corpus[137 + 101 * i];
    const Partition p = partition(f);
    const HardShape s = shape_of(f);
    for (int scheme = 0; scheme < 2; ++scheme) {
      const BoundCertificate cert =
          scheme == 0 ? hard_assignment_n2(f, p) : hard_assignment_n1(f, p);
      const double exact = cert.expectation_traces[0].front().convert_to<double>();
      double sum = 0, sumsq = 0;
      for (std::size_t t = 0; t < samples; ++t) {
        const double g =
            scheme == 0 ? sample_n2_objective(s, rng) : sample_n1_objective(s, rng);
        sum += g;
        sumsq += g * g;
      }
      const double mean = sum / samples;
      const double var = std::max(0.0, (sumsq - sum * sum / samples) / (samples - 1));
      const double sigma = std::sqrt(var / samples);
      const double tolerance = 3 * sigma + 1e-9;
      if (std::abs(mean - exact) > tolerance) {
        pass = false;
        std::ostringstream os;
        os << "scheme " << (scheme == 0 ? "n2" : "n1") << ": |" << mean << " - " << exact
           << "| > " << tolerance;
        detail = os.str();
      }
      ++checked;
    }
  }
  if (pass) detail = std::to_string(checked) + " scheme runs, 100000 samples each, within 3 sigma";
  report(8, "expectation traces non-decreasing; initial expectations match Monte-Carlo", pass,
         detail);
}

// Criterion 9: DIMACS round trips and parser robustness.
void criterion_io(const std::vector<Formula>& corpora) {
  bool pass = true;
  std::string detail;
  for (const Formula& f : corpora) {
    const std::string text = write_dimacs(f);
    const Formula back = parse_dimacs(text);
    if (back != f || write_dimacs(back) != text) {
      pass = false;
      detail = "round trip failed on " + text;
      break;
    }
  }
  std::size_t fuzzed = 0;
  if (pass) {
    std::mt19937_64 rng(0xF022);
    const std::string alphabet = "pc wcnf0123456789-\n\t\re";
    const std::string valid = "p wcnf 3 2\n2 1 -2 0\n1 3 0\n";
    for (std::size_t i = 0; i < 1000000; ++i) {
      std::string text;
      switch (rng() % 3) {
        case 0: {  // arbitrary bytes
          const std::size_t len = rng() % 48;
          for (std::size_t j = 0; j < len; ++j) text += static_cast<char>(rng() & 0xff);
          break;
        }
        case 1: {  // plausible-looking token soup
          const std::size_t len = rng() % 48;
          for (std::size_t j = 0; j < len; ++j) text += alphabet[rng() % alphabet.size()];
          break;
        }
        default: {  // mutated valid document
          text = valid;
          const std::size_t edits = 1 + rng() % 4;
          for (std::size_t j = 0; j < edits; ++j) {
            text[rng() % text.size()] = static_cast<char>(rng() & 0xff);
          }
          break;
        }
      }
      try {
        (void)parse_dimacs(text);
      } catch (const Error&) {
        // expected for malformed input
      } catch (...) {
        pass = false;
        detail = "foreign exception from fuzzed input";
        break;
      }
      ++fuzzed;
    }
  }
  if (pass) {
    detail = std::to_string(corpora.size()) + " round trips, " + std::to_string(fuzzed) +
             " fuzzed inputs";
  }
  report(9, "DIMACS round-trip byte-exact; parser survives fuzzing", pass, detail);
}

}  // namespace

int main() {
  const auto corpus_general = make_corpus(GenSpec::Shape::general_3sat, 1000, 10'000);
  const auto corpus_hard = make_corpus(GenSpec::Shape::hard, 1000, 20'000);
  const auto corpus_expanding = make_corpus(GenSpec::Shape::expanding_3sat, 1000, 30'000);
  std::vector<Formula> all = corpus_general;
  all.insert(all.end(), corpus_hard.begin(), corpus_hard.end());
  all.insert(all.end(), corpus_expanding.begin(), corpus_expanding.end());

  criterion_composed(corpus_general);
  criterion_hard(corpus_hard);
  criterion_biased(corpus_general);
  criterion_expanding(corpus_expanding);
  criterion_autarky(all);
  criterion_patterns();
  criterion_kernel(corpus_general);
  criterion_montecarlo(corpus_hard);
  criterion_io(all);

  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed\n";
  } else {
    std::cout << g_failures << " acceptance criteria failed\n";
  }
  return g_failures;
}
