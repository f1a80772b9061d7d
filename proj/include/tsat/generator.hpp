#pragma once

#include <cstdint>
#include <random>

#include "tsat/formula.hpp"

namespace tsat {

class GenerationExhaustedError : public Error {
 public:
  using Error::Error;
};

// Seeded, portable random stream: raw std::mt19937_64 outputs, bounded draws
// by unbiased rejection sampling. Identical (seed, draw sequence) pairs
// reproduce identical values on any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

struct GenSpec {
  std::size_t n_vars = 0;
  std::size_t n_clauses = 0;
  Weight max_weight = 1;
  std::size_t max_clause_len = 3;
  std::uint64_t seed = 0;

  enum class Shape { general_3sat, hard, expanding_3sat };
  Shape shape = Shape::general_3sat;
};

// Deterministic for a given spec. general-3sat rejection-samples random
// clauses, discarding any that would break 3-satisfiability; hard emits
// positive units plus {~x, y}/{~x, ~y} clauses only; expanding-3sat retries
// general-3sat until the result is expanding.
Formula generate(const GenSpec& spec);

bool verify(const Formula& f, const Assignment& a, Weight claimed);

}  // namespace tsat
