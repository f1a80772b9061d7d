#include "tsat/report.hpp"

#include <limits>

#include "json.hpp"

namespace tsat {

namespace {

using Json = nlohmann::ordered_json;

Json int_json(const BigInt& v) {
  // Values beyond 64 bits are emitted as decimal strings to stay lossless.
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

Json rational_json(const Rational& r) {
  return Json{{"num", int_json(numerator(r))}, {"den", int_json(denominator(r))}};
}

Json signed_ids(const std::map<VarId, bool>& values) {
  Json out = Json::array();
  for (const auto& [var, value] : values) {
    out.push_back(value ? static_cast<std::int64_t>(var) : -static_cast<std::int64_t>(var));
  }
  return out;
}

Json clause_json(const Clause& c) {
  Json literals = Json::array();
  for (const auto& l : c.literals) {
    literals.push_back(l.negated ? -static_cast<std::int64_t>(l.var)
                                 : static_cast<std::int64_t>(l.var));
  }
  return Json{{"literals", std::move(literals)}, {"weight", c.weight}};
}

Json formula_summary(const Formula& f) {
  return Json{{"clauses", f.size()},
              {"weight", f.total_weight()},
              {"variables", f.variables().size()}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string write_report(const BoundCertificate& cert) {
  Json j{{"type", "bound-certificate"},
         {"kind", to_string(cert.kind)},
         {"value", cert.value},
         {"guarantee", rational_json(cert.guarantee)},
         {"inequality", cert.bound_expression},
         {"assignment", signed_ids(cert.assignment.values)}};
  return dump(j);
}

std::string write_report(const CheckReport& report) {
  Json j{{"type", "tsat-check"}, {"t", report.t}, {"satisfiable", !report.violation.has_value()}};
  if (report.violation.has_value()) {
    Json clauses = Json::array();
    for (const auto& c : report.violation->clauses) clauses.push_back(clause_json(c));
    j["violation"] = Json{{"kind", to_string(report.violation->kind)},
                          {"clauses", std::move(clauses)}};
  } else {
    j["violation"] = nullptr;
  }
  return dump(j);
}

std::string write_report(const PartitionReport& report) {
  Json j{{"type", "partition"},
         {"flipped", report.flips.flipped},
         {"n1", report.parts.n1},
         {"n2", report.parts.n2},
         {"v1", report.parts.v1},
         {"v2", report.parts.v2},
         {"v_soft", report.parts.v_soft},
         {"f1", formula_summary(report.parts.f1)},
         {"f2", formula_summary(report.parts.f2)},
         {"f_soft", formula_summary(report.parts.f_soft)}};
  return dump(j);
}

std::string write_report(const DecomposeReport& report) {
  Json j{{"type", "decomposition"},
         {"autarky",
          Json{{"vars", report.autarky.u}, {"assignment", signed_ids(report.autarky.beta.values)}}},
         {"touched", formula_summary(report.autarky.f_u)},
         {"residual", formula_summary(report.residual)},
         {"residual_expanding", true}};
  return dump(j);
}

std::string write_report(const AeReport& report) {
  Json j{{"type", "ae-decision"},
         {"decision", report.decision.yes ? "yes" : "no"},
         {"k", report.k},
         {"method", to_string(report.decision.method)}};
  if (report.decision.witness.has_value()) {
    j["witness"] = signed_ids(report.decision.witness->values);
    if (report.witness_value.has_value()) j["witness_value"] = *report.witness_value;
  }
  j["kernel"] = Json{{"k_prime", report.decision.kernel.k_prime},
                     {"threshold_numerator", report.decision.kernel.threshold_numerator},
                     {"residual", formula_summary(report.decision.kernel.residual)},
                     {"autarky_vars", report.decision.kernel.autarky.u}};
  return dump(j);
}

std::string write_report(const VerifyReport& report) {
  Json j{{"type", "verify"},
         {"claimed", report.claimed},
         {"evaluated", report.evaluated},
         {"ok", report.claimed == report.evaluated}};
  return dump(j);
}

}  // namespace tsat
