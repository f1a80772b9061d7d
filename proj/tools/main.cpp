#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tsat/dimacs.hpp"
#include "tsat/generator.hpp"
#include "tsat/kernel.hpp"
#include "tsat/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitFormulaShape = 3;
constexpr int kExitResourceCap = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tsat::Error("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

tsat::Formula load_formula(const std::string& path) {
  return tsat::parse_dimacs(read_file(path));
}

// Whitespace-separated signed integers, DIMACS v-line style: 'v' tokens are
// skipped and a 0 token ends the assignment.
tsat::Assignment parse_assignment(const std::string& text) {
  tsat::Assignment a;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "v") continue;
    std::int64_t lit = 0;
    try {
      std::size_t used = 0;
      lit = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw tsat::Error("assignment file: expected a signed integer, got '" + token + "'");
    }
    if (lit == 0) break;
    const auto var = static_cast<tsat::VarId>(lit < 0 ? -lit : lit);
    a.values[var] = lit > 0;
  }
  return a;
}

void print_signed(std::ostream& os, const std::map<tsat::VarId, bool>& values) {
  if (values.empty()) {
    os << "(empty)";
    return;
  }
  bool first = true;
  for (const auto& [var, value] : values) {
    if (!first) os << " ";
    os << (value ? static_cast<std::int64_t>(var) : -static_cast<std::int64_t>(var));
    first = false;
  }
}

void print_vars(std::ostream& os, const std::vector<tsat::VarId>& vars) {
  if (vars.empty()) {
    os << "(none)";
    return;
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) os << " ";
    os << vars[i];
  }
}

void print_clause_line(std::ostream& os, const tsat::Clause& c) {
  os << "  " << c.weight;
  for (const auto& l : c.literals) {
    os << " " << (l.negated ? -static_cast<std::int64_t>(l.var) : static_cast<std::int64_t>(l.var));
  }
  os << " 0\n";
}

std::string summary(const tsat::Formula& f) {
  std::ostringstream os;
  os << f.size() << " clauses, weight " << f.total_weight() << ", " << f.variables().size()
     << " variables";
  return os.str();
}

std::string rational_string(const tsat::Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

int run_check(const std::string& path, int t, bool json) {
  const tsat::Formula f = load_formula(path);
  tsat::CheckReport report;
  report.t = t;
  if (t >= 2) report.violation = tsat::find_violation(f, t);
  if (json) {
    std::cout << tsat::write_report(report);
    return kExitOk;
  }
  if (!report.violation.has_value()) {
    std::cout << t << "-satisfiable\n";
  } else {
    std::cout << "not " << t << "-satisfiable\n";
    std::cout << "violation: " << tsat::to_string(report.violation->kind) << "\n";
    for (const auto& c : report.violation->clauses) print_clause_line(std::cout, c);
  }
  return kExitOk;
}

int run_partition(const std::string& path, bool json) {
  const tsat::Formula f = load_formula(path);
  tsat::PartitionReport report;
  auto [normalized, flips] = tsat::flip_normalize(f);
  report.flips = flips;
  report.parts = tsat::partition(normalized);
  if (json) {
    std::cout << tsat::write_report(report);
    return kExitOk;
  }
  std::cout << "flipped: ";
  print_vars(std::cout, report.flips.flipped);
  std::cout << "\nn1: " << report.parts.n1 << "\nn2: " << report.parts.n2 << "\nv1: ";
  print_vars(std::cout, report.parts.v1);
  std::cout << "\nv2: ";
  print_vars(std::cout, report.parts.v2);
  std::cout << "\nv_soft: ";
  print_vars(std::cout, report.parts.v_soft);
  std::cout << "\nf1: " << summary(report.parts.f1) << "\nf2: " << summary(report.parts.f2)
            << "\nf_soft: " << summary(report.parts.f_soft) << "\n";
  return kExitOk;
}

int run_decompose(const std::string& path, bool json) {
  const tsat::Formula f = load_formula(path);
  tsat::DecomposeReport report;
  report.autarky = tsat::decompose(f);
  report.residual = tsat::remove_clauses(f, report.autarky.f_u);
  tsat::detail::invariant(tsat::is_expanding(report.residual), "residual is not expanding");
  if (json) {
    std::cout << tsat::write_report(report);
    return kExitOk;
  }
  std::cout << "autarky vars: ";
  print_vars(std::cout, report.autarky.u);
  std::cout << "\nautarky assignment: ";
  print_signed(std::cout, report.autarky.beta.values);
  std::cout << "\ntouched: " << summary(report.autarky.f_u)
            << "\nresidual: " << summary(report.residual)
            << "\nresidual expanding: yes (a maximum matching saturates all "
            << report.residual.variables().size() << " residual variables)\n";
  return kExitOk;
}

tsat::BoundCertificate run_bound_mode(const tsat::Formula& f, const std::string& mode) {
  if (mode == "auto" || mode == "full") {
    return tsat::full_bound(f);
  }
  auto [normalized, flips] = tsat::flip_normalize(f);
  const tsat::Partition parts = tsat::partition(normalized);
  tsat::BoundCertificate cert;
  if (mode == "yannakakis") {
    cert = tsat::derandomize_biased(normalized, parts);
  } else if (mode == "hard-n1") {
    cert = tsat::hard_assignment_n1(normalized, parts);
  } else {
    cert = tsat::hard_assignment_n2(normalized, parts);
  }
  cert.assignment = tsat::flip_assignment(cert.assignment, flips);
  tsat::detail::invariant(tsat::evaluate(f, cert.assignment) == cert.value,
                          "flip mapping changed the certificate value");
  return cert;
}

int run_bound(const std::string& path, const std::string& mode, bool json) {
  const tsat::Formula f = load_formula(path);
  const tsat::BoundCertificate cert = run_bound_mode(f, mode);
  if (json) {
    std::cout << tsat::write_report(cert);
    return kExitOk;
  }
  std::cout << "kind: " << tsat::to_string(cert.kind) << "\nvalue: " << cert.value
            << "\nguarantee: " << rational_string(cert.guarantee)
            << "\ninequality: " << cert.bound_expression << "\nassignment: ";
  print_signed(std::cout, cert.assignment.values);
  std::cout << "\n";
  return kExitOk;
}

int run_solve_ae(const std::string& path, std::int64_t k, std::size_t cap, bool json) {
  const tsat::Formula f = load_formula(path);
  tsat::AeReport report;
  report.k = k;
  report.decision = tsat::solve_ae(tsat::AeInstance(f, k), cap);
  if (report.decision.witness.has_value()) {
    report.witness_value = tsat::evaluate(f, *report.decision.witness);
  }
  if (json) {
    std::cout << tsat::write_report(report);
    return kExitOk;
  }
  std::cout << (report.decision.yes ? "YES" : "NO") << "\nk: " << k
            << "\nmethod: " << tsat::to_string(report.decision.method) << "\n";
  if (report.decision.witness.has_value()) {
    std::cout << "witness: ";
    print_signed(std::cout, report.decision.witness->values);
    std::cout << "\nwitness value: " << *report.witness_value << "\n";
  }
  const tsat::Kernel& kern = report.decision.kernel;
  std::cout << "kernel: residual " << summary(kern.residual) << "; k' = " << kern.k_prime
            << "; threshold = " << kern.threshold_numerator << "\n";
  return kExitOk;
}

int run_gen(const tsat::GenSpec& spec) {
  std::cout << tsat::write_dimacs(tsat::generate(spec));
  return kExitOk;
}

int run_verify(const std::string& path, const std::string& assignment_path, tsat::Weight claimed,
               bool json) {
  const tsat::Formula f = load_formula(path);
  const tsat::Assignment a = parse_assignment(read_file(assignment_path));
  tsat::VerifyReport report;
  report.claimed = claimed;
  report.evaluated = tsat::evaluate(f, a);
  if (json) {
    std::cout << tsat::write_report(report);
    return kExitOk;
  }
  if (report.evaluated == report.claimed) {
    std::cout << "ok: value " << report.evaluated << " matches the claim\n";
  } else {
    std::cout << "mismatch: evaluated " << report.evaluated << ", claimed " << report.claimed
              << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted-CNF toolkit for 3-satisfiable MaxSat bounds"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;
  int t = 3;
  std::string mode = "auto";
  std::int64_t k = 0;
  std::size_t cap = tsat::kDefaultVariableCap;
  std::string assignment_path;
  tsat::Weight claimed = 0;
  tsat::GenSpec spec;
  std::string shape = "general-3sat";

  auto* check = app.add_subcommand("check", "decide t-satisfiability");
  check->add_option("file", file)->required();
  check->add_option("--t", t)->check(CLI::Range(1, 3));
  check->add_flag("--json", json);

  auto* part = app.add_subcommand("partition", "unit/hard/soft split after sign normalization");
  part->add_option("file", file)->required();
  part->add_flag("--json", json);

  auto* dec = app.add_subcommand("decompose", "matching autarky and expanding residual");
  dec->add_option("file", file)->required();
  dec->add_flag("--json", json);

  auto* bound = app.add_subcommand("bound", "derandomized assignment with a proven guarantee");
  bound->add_option("file", file)->required();
  bound->add_option("--mode", mode)
      ->check(CLI::IsMember({"auto", "yannakakis", "hard-n1", "hard-n2", "full"}));
  bound->add_flag("--json", json);

  auto* ae = app.add_subcommand("solve-ae", "decide sat(F) >= (2/3)w(F) + k");
  ae->add_option("file", file)->required();
  ae->add_option("--k", k)->required();
  ae->add_option("--cap", cap);
  ae->add_flag("--json", json);

  auto* gen = app.add_subcommand("gen", "write a seeded random WCNF instance to stdout");
  gen->add_option("--vars", spec.n_vars)->required();
  gen->add_option("--clauses", spec.n_clauses)->required();
  gen->add_option("--max-weight", spec.max_weight);
  gen->add_option("--max-clause-len", spec.max_clause_len);
  gen->add_option("--seed", spec.seed)->required();
  gen->add_option("--shape", shape)
      ->check(CLI::IsMember({"general-3sat", "hard", "expanding-3sat"}));

  auto* ver = app.add_subcommand("verify", "check a claimed satisfied weight");
  ver->add_option("file", file)->required();
  ver->add_option("--assignment", assignment_path)->required();
  ver->add_option("--claimed", claimed)->required();
  ver->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (*check) return run_check(file, t, json);
    if (*part) return run_partition(file, json);
    if (*dec) return run_decompose(file, json);
    if (*bound) return run_bound(file, mode, json);
    if (*ae) return run_solve_ae(file, k, cap, json);
    if (*gen) {
      if (shape == "hard") {
        spec.shape = tsat::GenSpec::Shape::hard;
      } else if (shape == "expanding-3sat") {
        spec.shape = tsat::GenSpec::Shape::expanding_3sat;
      }
      return run_gen(spec);
    }
    if (*ver) return run_verify(file, assignment_path, claimed, json);
  } catch (const tsat::NotThreeSatisfiableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormulaShape;
  } catch (const tsat::NotHardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormulaShape;
  } catch (const tsat::NotExpandingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormulaShape;
  } catch (const tsat::ConflictingUnitsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormulaShape;
  } catch (const tsat::NotNormalizedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormulaShape;
  } catch (const tsat::TooManyVariablesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const tsat::DistributionTooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const tsat::GenerationExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const tsat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
