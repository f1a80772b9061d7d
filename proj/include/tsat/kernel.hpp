#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "tsat/autarky.hpp"
#include "tsat/bounds.hpp"
#include "tsat/formula.hpp"

namespace tsat {

class TooManyVariablesError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultVariableCap = 30;

// Decision instance: does some assignment satisfy weight >= (2/3)w(F) + k?
struct AeInstance {
  Formula formula;
  std::int64_t k = 0;

  AeInstance(Formula f, std::int64_t k_value);  // rejects non-3-satisfiable formulas
};

// Expanding residual with the rescaled parameter. The exact integer decision
// threshold is 3k - w(F_U): the answer is YES iff
// 3*sat(residual) - 2*w(residual) >= threshold_numerator.
struct Kernel {
  Formula residual;
  std::int64_t k_prime = 0;             // ceil((3k - w(F_U)) / 3), reported for reference
  std::int64_t threshold_numerator = 0;
  Autarky autarky;                      // decomposition behind the kernel
};

enum class AeMethod {
  guaranteed_by_bound,
  brute_forced,
  shortcut_nonpositive_threshold,
};

const char* to_string(AeMethod method);

struct AeDecision {
  bool yes = false;
  std::optional<Assignment> witness;  // present iff yes
  Kernel kernel;
  AeMethod method = AeMethod::brute_forced;
};

// Exact optimum by enumerating all 2^|V| assignments; the first maximizer in
// ascending bitmask order (ascending variable ids, FALSE first) is returned.
std::pair<Assignment, Weight> brute_force_max(const Formula& f,
                                              std::size_t variable_cap = kDefaultVariableCap);

Kernel kernelize(const Formula& f, std::int64_t k);

AeDecision solve_ae(const AeInstance& inst, std::size_t variable_cap = kDefaultVariableCap,
                    std::size_t support_cap = kDefaultSupportCap);

}  // namespace tsat
