#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tsat/formula.hpp"

namespace tsat {

class NotMaximumError : public Error {
 public:
  using Error::Error;
};
class DomainOverlapError : public Error {
 public:
  using Error::Error;
};

// Variable-clause incidence structure. Clause multiplicity is modeled as a
// node capacity of min(weight, |V|): a matching can never use more copies
// of one clause than there are variables.
struct IncidenceGraph {
  std::vector<VarId> variables;                    // sorted, = formula variables
  std::vector<Weight> clause_capacity;             // per canonical clause index
  std::vector<std::vector<std::size_t>> var_adj;   // variable index -> clause indices

  std::size_t num_variables() const { return variables.size(); }
  std::size_t num_clauses() const { return clause_capacity.size(); }
};

// A maximum matching between variables and clause copies. Indices follow the
// IncidenceGraph built from the same formula.
struct Matching {
  std::vector<std::optional<std::size_t>> clause_of_var;  // per variable index
  std::vector<std::vector<std::size_t>> vars_of_clause;   // per clause index
  std::size_t size = 0;
};

// A partial assignment satisfying every clause it touches, plus the touched
// subformula.
struct Autarky {
  std::vector<VarId> u;     // sorted
  PartialAssignment beta;   // defined exactly on u
  Formula f_u;              // clauses containing a variable of u

  bool empty() const { return u.empty(); }
};

IncidenceGraph build_incidence(const Formula& f);

// Maximum-cardinality matching respecting clause capacities, computed as a
// unit-capacity flow over the capacity-expanded bipartite graph.
Matching maximum_matching(const IncidenceGraph& g);

// Variables reachable from unmatched variable nodes by alternating paths,
// assigned so that each matched variable satisfies its matched clause;
// unmatched variables get FALSE. The residual f \ f_u is expanding.
Autarky extract_autarky(const Formula& f, const Matching& m);

// Hall-type condition with capacities: true iff w(F_X) >= |X| for every
// X subseteq V(f), decided by whether a maximum matching saturates all
// variable nodes.
bool is_expanding(const Formula& f);

// tau = beta union gamma and its value; equals w(F_U) + sat_gamma(F \ F_U).
std::pair<Assignment, Weight> compose(const Autarky& aut, const Assignment& gamma,
                                      const Formula& f);

// build_incidence + maximum_matching + extract_autarky in one step.
Autarky decompose(const Formula& f);

}  // namespace tsat
