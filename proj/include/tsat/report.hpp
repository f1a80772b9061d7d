#pragma once

#include <optional>
#include <string>

#include "tsat/autarky.hpp"
#include "tsat/bounds.hpp"
#include "tsat/formula.hpp"
#include "tsat/kernel.hpp"
#include "tsat/tsat_check.hpp"

namespace tsat {

// Inputs to the machine-readable reports. The JSON schema is fixed and
// documented in the README; rational guarantees are emitted as {num, den}
// integer pairs and assignments as lists of signed variable ids.

struct CheckReport {
  int t = 3;
  std::optional<Violation> violation;
};

struct PartitionReport {
  FlipMap flips;
  Partition parts;
};

struct DecomposeReport {
  Autarky autarky;
  Formula residual;
};

struct AeReport {
  std::int64_t k = 0;
  AeDecision decision;
  std::optional<Weight> witness_value;
};

struct VerifyReport {
  Weight claimed = 0;
  Weight evaluated = 0;
};

std::string write_report(const BoundCertificate& cert);
std::string write_report(const CheckReport& report);
std::string write_report(const PartitionReport& report);
std::string write_report(const DecomposeReport& report);
std::string write_report(const AeReport& report);
std::string write_report(const VerifyReport& report);

}  // namespace tsat
