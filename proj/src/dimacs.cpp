#include "tsat/dimacs.hpp"

#include <charconv>
#include <limits>
#include <sstream>
#include <vector>

namespace tsat {

namespace {

struct Token {
  std::string_view text;
  std::size_t line = 1;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits into whitespace-separated tokens, dropping comment lines.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t end = text.find('\n', i);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(i, end - i);
    std::size_t j = 0;
    while (j < row.size() && is_space(row[j])) ++j;
    if (j < row.size() && row[j] != 'c') {
      while (j < row.size()) {
        std::size_t start = j;
        while (j < row.size() && !is_space(row[j])) ++j;
        tokens.push_back({row.substr(start, j - start), line});
        while (j < row.size() && is_space(row[j])) ++j;
      }
    }
    i = end + 1;
    ++line;
  }
  return tokens;
}

[[noreturn]] void fail(std::size_t line, std::string message) {
  throw SyntaxError(ParseDiagnostics{line, std::move(message)});
}

std::int64_t parse_int(const Token& tok, const char* what) {
  std::int64_t value = 0;
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec == std::errc::result_out_of_range) {
    fail(tok.line, std::string(what) + " '" + std::string(tok.text) + "' is out of range");
  }
  if (ec != std::errc() || ptr != end) {
    fail(tok.line, std::string("expected ") + what + ", got '" + std::string(tok.text) + "'");
  }
  return value;
}

}  // namespace

Formula parse_dimacs(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  std::size_t pos = 0;
  auto next = [&](const char* what) -> const Token& {
    if (pos >= tokens.size()) {
      fail(tokens.empty() ? 1 : tokens.back().line,
           std::string("unexpected end of input, expected ") + what);
    }
    return tokens[pos++];
  };

  const Token& p = next("header");
  if (p.text != "p") fail(p.line, "expected DIMACS header 'p cnf ...' or 'p wcnf ...'");
  const Token& format = next("format");
  bool weighted = false;
  if (format.text == "wcnf") {
    weighted = true;
  } else if (format.text != "cnf") {
    fail(format.line, "unknown format '" + std::string(format.text) + "', expected cnf or wcnf");
  }
  const std::int64_t num_vars = parse_int(next("variable count"), "variable count");
  const std::int64_t num_clauses = parse_int(next("clause count"), "clause count");
  if (num_vars < 0 || num_vars > std::numeric_limits<VarId>::max()) {
    fail(p.line, "variable count out of range");
  }
  if (num_clauses < 0) fail(p.line, "clause count out of range");
  if (pos < tokens.size() && tokens[pos].line == p.line) {
    fail(p.line,
         "unexpected header field '" + std::string(tokens[pos].text) +
             "' (the WCNF hard-clause 'top' field is not supported)");
  }

  std::vector<RawClause> raw;
  raw.reserve(static_cast<std::size_t>(num_clauses));
  for (std::int64_t c = 0; c < num_clauses; ++c) {
    Weight weight = 1;
    if (weighted) {
      const Token& wt = next("clause weight");
      std::int64_t value = 0;
      auto [ptr, ec] =
          std::from_chars(wt.text.data(), wt.text.data() + wt.text.size(), value);
      if (ec == std::errc::result_out_of_range) {
        throw WeightOverflowError("line " + std::to_string(wt.line) + ": clause weight '" +
                                  std::string(wt.text) + "' exceeds the 63-bit budget");
      }
      if (ec != std::errc() || ptr != wt.text.data() + wt.text.size()) {
        fail(wt.line, "expected clause weight, got '" + std::string(wt.text) + "'");
      }
      if (value < 1) {
        throw NonPositiveWeightError("line " + std::to_string(wt.line) +
                                     ": clause weight must be >= 1, got " +
                                     std::to_string(value));
      }
      weight = value;
    }
    std::vector<Literal> literals;
    for (;;) {
      const Token& tok = next("literal");
      const std::int64_t lit = parse_int(tok, "literal");
      if (lit == 0) break;
      const std::int64_t var = lit < 0 ? -lit : lit;
      if (var > num_vars) {
        throw HeaderMismatchError("line " + std::to_string(tok.line) + ": literal " +
                                  std::to_string(lit) + " exceeds declared variable count " +
                                  std::to_string(num_vars));
      }
      literals.push_back({static_cast<VarId>(var), lit < 0});
    }
    if (literals.empty()) {
      throw EmptyClauseError("line " + std::to_string(tokens[pos - 1].line) +
                             ": clause has no literals");
    }
    raw.emplace_back(std::move(literals), weight);
  }
  if (pos < tokens.size()) {
    fail(tokens[pos].line, "more clauses than the declared count " + std::to_string(num_clauses));
  }
  return build_formula(raw);
}

std::string write_dimacs(const Formula& f) {
  std::ostringstream os;
  const VarId max_var = f.variables().empty() ? 0 : f.variables().back();
  os << "p wcnf " << max_var << " " << f.size() << "\n";
  for (const auto& c : f.clauses()) {
    os << c.weight;
    for (const auto& l : c.literals) {
      os << " " << (l.negated ? -static_cast<std::int64_t>(l.var) : static_cast<std::int64_t>(l.var));
    }
    os << " 0\n";
  }
  return os.str();
}

}  // namespace tsat
