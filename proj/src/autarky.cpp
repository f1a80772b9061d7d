#include "tsat/autarky.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace tsat {

IncidenceGraph build_incidence(const Formula& f) {
  IncidenceGraph g;
  g.variables = f.variables();
  const auto num_vars = static_cast<Weight>(g.variables.size());
  g.clause_capacity.reserve(f.size());
  for (const auto& c : f.clauses()) {
    g.clause_capacity.push_back(std::min(c.weight, num_vars));
  }
  g.var_adj.resize(g.variables.size());
  auto var_index = [&](VarId v) {
    return static_cast<std::size_t>(
        std::lower_bound(g.variables.begin(), g.variables.end(), v) - g.variables.begin());
  };
  for (std::size_t ci = 0; ci < f.size(); ++ci) {
    for (const auto& l : f.clauses()[ci].literals) {
      g.var_adj[var_index(l.var)].push_back(ci);
    }
  }
  return g;
}

namespace {

// Dinic over source -> variable (cap 1) -> clause (cap 1 per incidence)
// -> sink (cap = clause capacity). Equivalent to Hopcroft-Karp on the
// capacity-expanded graph.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : head_(nodes, -1), level_(nodes), next_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, Weight cap) {
    const std::size_t id = to_.size();
    to_.push_back(to);
    cap_.push_back(cap);
    next_edge_.push_back(head_[from]);
    head_[from] = static_cast<std::ptrdiff_t>(id);
    to_.push_back(from);
    cap_.push_back(0);
    next_edge_.push_back(head_[to]);
    head_[to] = static_cast<std::ptrdiff_t>(id + 1);
    return id;
  }

  Weight max_flow(std::size_t source, std::size_t sink) {
    Weight flow = 0;
    while (bfs(source, sink)) {
      next_ = head_;
      while (Weight pushed = dfs(source, sink, std::numeric_limits<Weight>::max())) {
        flow += pushed;
      }
    }
    return flow;
  }

  Weight residual(std::size_t edge) const { return cap_[edge]; }

 private:
  bool bfs(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<std::size_t> queue{source};
    level_[source] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (auto e = head_[u]; e >= 0; e = next_edge_[static_cast<std::size_t>(e)]) {
        const auto id = static_cast<std::size_t>(e);
        if (cap_[id] > 0 && level_[to_[id]] < 0) {
          level_[to_[id]] = level_[u] + 1;
          queue.push_back(to_[id]);
        }
      }
    }
    return level_[sink] >= 0;
  }

  Weight dfs(std::size_t u, std::size_t sink, Weight limit) {
    if (u == sink || limit == 0) return limit;
    for (auto& e = next_[u]; e >= 0; e = next_edge_[static_cast<std::size_t>(e)]) {
      const auto id = static_cast<std::size_t>(e);
      const std::size_t v = to_[id];
      if (cap_[id] > 0 && level_[v] == level_[u] + 1) {
        if (Weight pushed = dfs(v, sink, std::min(limit, cap_[id]))) {
          cap_[id] -= pushed;
          cap_[id ^ 1] += pushed;
          return pushed;
        }
      }
    }
    level_[u] = -1;
    return 0;
  }

  std::vector<std::ptrdiff_t> head_;
  std::vector<std::size_t> to_;
  std::vector<Weight> cap_;
  std::vector<std::ptrdiff_t> next_edge_;
  std::vector<int> level_;
  std::vector<std::ptrdiff_t> next_;
};

}  // namespace

Matching maximum_matching(const IncidenceGraph& g) {
  const std::size_t nv = g.num_variables();
  const std::size_t nc = g.num_clauses();
  const std::size_t source = nv + nc;
  const std::size_t sink = source + 1;
  FlowNetwork net(nv + nc + 2);

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence_edge(nv);
  for (std::size_t vi = 0; vi < nv; ++vi) {
    net.add_edge(source, vi, 1);
    for (std::size_t ci : g.var_adj[vi]) {
      incidence_edge[vi].emplace_back(ci, net.add_edge(vi, nv + ci, 1));
    }
  }
  for (std::size_t ci = 0; ci < nc; ++ci) {
    net.add_edge(nv + ci, sink, g.clause_capacity[ci]);
  }

  Matching m;
  m.size = static_cast<std::size_t>(net.max_flow(source, sink));
  m.clause_of_var.assign(nv, std::nullopt);
  m.vars_of_clause.assign(nc, {});
  for (std::size_t vi = 0; vi < nv; ++vi) {
    for (const auto& [ci, edge] : incidence_edge[vi]) {
      if (net.residual(edge) == 0) {  // saturated incidence edge = matched pair
        detail::invariant(!m.clause_of_var[vi].has_value(),
                          "variable matched to more than one clause");
        m.clause_of_var[vi] = ci;
        m.vars_of_clause[ci].push_back(vi);
      }
    }
  }
  return m;
}

Autarky extract_autarky(const Formula& f, const Matching& m) {
  const IncidenceGraph g = build_incidence(f);
  detail::invariant(m.clause_of_var.size() == g.num_variables() &&
                        m.vars_of_clause.size() == g.num_clauses(),
                    "matching does not index this formula");

  // Alternating reachability from unmatched variables: variable -> clause by
  // any incidence edge, clause -> variable by matching edges only. Reaching
  // a clause with spare capacity would be an augmenting path.
  std::vector<char> var_seen(g.num_variables(), 0), clause_seen(g.num_clauses(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t vi = 0; vi < g.num_variables(); ++vi) {
    if (!m.clause_of_var[vi].has_value()) {
      var_seen[vi] = 1;
      queue.push_back(vi);
    }
  }
  while (!queue.empty()) {
    const std::size_t vi = queue.front();
    queue.pop_front();
    for (std::size_t ci : g.var_adj[vi]) {
      if (clause_seen[ci]) continue;
      clause_seen[ci] = 1;
      if (static_cast<Weight>(m.vars_of_clause[ci].size()) < g.clause_capacity[ci]) {
        throw NotMaximumError("augmenting path found; matching is not maximum");
      }
      for (std::size_t wi : m.vars_of_clause[ci]) {
        if (!var_seen[wi]) {
          var_seen[wi] = 1;
          queue.push_back(wi);
        }
      }
    }
  }

  Autarky aut;
  for (std::size_t vi = 0; vi < g.num_variables(); ++vi) {
    if (!var_seen[vi]) continue;
    const VarId var = g.variables[vi];
    aut.u.push_back(var);
    bool value = false;
    if (m.clause_of_var[vi].has_value()) {
      const Clause& c = f.clauses()[*m.clause_of_var[vi]];
      const Literal* lit = c.literal_on(var);
      detail::invariant(lit != nullptr, "matched clause does not contain its variable");
      value = !lit->negated;
    }
    aut.beta.values[var] = value;
  }
  aut.f_u = subformula_touching(f, aut.u);
  for (const auto& c : aut.f_u.clauses()) {
    detail::invariant(satisfies(c, aut.beta), "extracted assignment misses a touched clause");
  }
  return aut;
}

bool is_expanding(const Formula& f) {
  const IncidenceGraph g = build_incidence(f);
  return maximum_matching(g).size == g.num_variables();
}

std::pair<Assignment, Weight> compose(const Autarky& aut, const Assignment& gamma,
                                      const Formula& f) {
  for (VarId v : aut.u) {
    if (gamma.defines(v)) {
      throw DomainOverlapError("gamma assigns autarky variable " + std::to_string(v));
    }
  }
  for (const auto& c : aut.f_u.clauses()) {
    detail::invariant(satisfies(c, aut.beta), "beta is not an autarky for f_u");
  }
  Assignment tau;
  tau.values = aut.beta.values;
  tau.values.insert(gamma.values.begin(), gamma.values.end());
  const Weight value = evaluate(f, tau);
  detail::invariant(
      value == checked_add(aut.f_u.total_weight(), evaluate(remove_clauses(f, aut.f_u), gamma)),
      "autarky composition identity failed");
  return {std::move(tau), value};
}

Autarky decompose(const Formula& f) {
  return extract_autarky(f, maximum_matching(build_incidence(f)));
}

}  // namespace tsat
