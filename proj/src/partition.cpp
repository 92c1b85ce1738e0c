#include "impsel/partition.hpp"

#include <algorithm>
#include <set>

namespace impsel {

BipartiteGraph build_regular_bipartite_graph(int k, int b) {
  if (k <= 0 || k % 2 != 0) {
    throw PreconditionError("k must be a positive even number, got " + std::to_string(k));
  }
  const int half = k / 2;
  if (b < 1 || b > half) {
    throw PreconditionError("degree b = " + std::to_string(b) + " outside [1, k/2 = " +
                            std::to_string(half) + "]");
  }
  BipartiteGraph g;
  g.left_size = half;
  g.right_size = half;
  g.degree = b;
  g.edges.reserve(static_cast<std::size_t>(half) * static_cast<std::size_t>(b));
  for (int i = 0; i < half; ++i)
    for (int l = 0; l < b; ++l) g.edges.push_back({i, half + (i + l) % half});
  return g;
}

bool is_bipartite(const BipartiteGraph& g) {
  return std::all_of(g.edges.begin(), g.edges.end(), [&](const auto& e) {
    return e[0] >= 0 && e[0] < g.left_size && e[1] >= g.left_size && e[1] < g.order();
  });
}

bool is_regular(const BipartiteGraph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.order()), 0);
  for (const auto& e : g.edges) {
    if (e[0] < 0 || e[1] < 0 || e[0] >= g.order() || e[1] >= g.order()) return false;
    ++deg[e[0]];
    ++deg[e[1]];
  }
  return std::all_of(deg.begin(), deg.end(), [&](int d) { return d == g.degree; });
}

bool is_simple(const BipartiteGraph& g) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges) {
    if (e[0] == e[1]) return false;
    if (!seen.emplace(std::min(e[0], e[1]), std::max(e[0], e[1])).second) return false;
  }
  return true;
}

bool Hypergraph::is_regular(int d) const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count), 0);
  for (const auto& e : hyperedges)
    for (int v : e) ++deg[v];
  return std::all_of(deg.begin(), deg.end(), [&](int x) { return x == d; });
}

bool Hypergraph::is_uniform(int b) const {
  return std::all_of(hyperedges.begin(), hyperedges.end(),
                     [&](const auto& e) { return static_cast<int>(e.size()) == b; });
}

bool Hypergraph::is_linear() const {
  for (std::size_t p = 0; p < hyperedges.size(); ++p) {
    for (std::size_t q = p + 1; q < hyperedges.size(); ++q) {
      std::vector<int> common;
      std::set_intersection(hyperedges[p].begin(), hyperedges[p].end(), hyperedges[q].begin(),
                            hyperedges[q].end(), std::back_inserter(common));
      if (common.size() > 1) return false;
    }
  }
  return true;
}

bool Hypergraph::has_repeated_hyperedges() const {
  std::set<std::vector<int>> seen(hyperedges.begin(), hyperedges.end());
  return seen.size() != hyperedges.size();
}

Hypergraph as_hypergraph(const BipartiteGraph& g) {
  Hypergraph h;
  h.vertex_count = g.order();
  for (const auto& e : g.edges) h.hyperedges.push_back({std::min(e[0], e[1]), std::max(e[0], e[1])});
  return h;
}

Hypergraph dual(const Hypergraph& h) {
  Hypergraph d;
  d.vertex_count = static_cast<int>(h.hyperedges.size());
  d.hyperedges.assign(static_cast<std::size_t>(h.vertex_count), {});
  for (int e = 0; e < d.vertex_count; ++e)
    for (int v : h.hyperedges[e]) d.hyperedges[v].push_back(e);
  return d;
}

Hypergraph dual(const BipartiteGraph& g) { return dual(as_hypergraph(g)); }

EdgeColoring edge_color(const BipartiteGraph& g) {
  if (!is_bipartite(g)) throw PreconditionError("edge_color: graph is not bipartite");
  const int order = g.order();
  int colors = 0;
  {
    std::vector<int> deg(static_cast<std::size_t>(order), 0);
    for (const auto& e : g.edges) colors = std::max({colors, ++deg[e[0]], ++deg[e[1]]});
  }
  // at[v][c]: edge index of color c at v, or -1.
  std::vector<std::vector<int>> at(static_cast<std::size_t>(order),
                                   std::vector<int>(static_cast<std::size_t>(colors) + 1, -1));
  EdgeColoring out;
  out.colors = colors;
  out.color_of.assign(g.edges.size(), 0);

  auto smallest_free = [&](int v) {
    for (int c = 1; c <= colors; ++c)
      if (at[v][c] < 0) return c;
    return 0;
  };
  auto other_end = [&](int e, int v) { return g.edges[e][0] == v ? g.edges[e][1] : g.edges[e][0]; };

  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const int u = g.edges[e][0];
    const int v = g.edges[e][1];
    const int a = smallest_free(u);
    if (at[v][a] >= 0) {
      const int c = smallest_free(v);
      // Alternating a/c path from v. It cannot reach u in a bipartite graph,
      // so swapping it frees a at v while a stays free at u.
      std::vector<int> path;
      int x = v;
      int want = a;
      while (at[x][want] >= 0) {
        const int f = at[x][want];
        path.push_back(f);
        x = other_end(f, x);
        want = want == a ? c : a;
      }
      for (int f : path) {
        const int old = out.color_of[f];
        at[g.edges[f][0]][old] = -1;
        at[g.edges[f][1]][old] = -1;
      }
      for (int f : path) {
        const int swapped = out.color_of[f] == a ? c : a;
        out.color_of[f] = swapped;
        at[g.edges[f][0]][swapped] = f;
        at[g.edges[f][1]][swapped] = f;
      }
    }
    out.color_of[e] = a;
    at[u][a] = e;
    at[v][a] = e;
  }
  return out;
}

bool is_feasible(const BipartiteGraph& g, const EdgeColoring& c) {
  if (c.color_of.size() != g.edges.size()) return false;
  std::set<std::pair<int, int>> used;  // (vertex, color)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const int col = c.color_of[e];
    if (col < 1 || col > c.colors) return false;
    if (!used.emplace(g.edges[e][0], col).second) return false;
    if (!used.emplace(g.edges[e][1], col).second) return false;
  }
  return true;
}

PartitionSystem PartitionSystem::build(int n, int k) {
  if (n <= 0 || k <= 0) throw PreconditionError("n and k must be positive");
  if (k % 2 != 0) throw PreconditionError("k = " + std::to_string(k) + " is not even");
  if ((2 * n) % k != 0) {
    throw PreconditionError("b = 2n/k = " + std::to_string(2 * n) + "/" + std::to_string(k) +
                            " is not a natural number");
  }
  const int b = 2 * n / k;
  if (b < 2) throw PreconditionError("b = " + std::to_string(b) + " < 2");
  if (b > k / 2) {
    throw PreconditionError("b = " + std::to_string(b) + " exceeds k/2 = " + std::to_string(k / 2));
  }

  const BipartiteGraph g = build_regular_bipartite_graph(k, b);
  const EdgeColoring coloring = edge_color(g);

  // Edges at graph vertex 0 become agents 1..b, the rest follow in stored order.
  std::vector<int> label(g.edges.size(), 0);
  int next = 1;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (g.edges[e][0] == 0 || g.edges[e][1] == 0) label[e] = next++;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (label[e] == 0) label[e] = next++;

  PartitionSystem ps;
  ps.n_ = n;
  ps.b_ = b;
  ps.candidate_sets_.assign(static_cast<std::size_t>(k), {});
  ps.slots_.assign(static_cast<std::size_t>(n), {0, 0});
  ps.colors_.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const Agent j = label[e];
    const int p = std::min(g.edges[e][0], g.edges[e][1]) + 1;
    const int q = std::max(g.edges[e][0], g.edges[e][1]) + 1;
    ps.candidate_sets_[p - 1].push_back(j);
    ps.candidate_sets_[q - 1].push_back(j);
    ps.slots_[j - 1] = {p, q};
    ps.colors_[j - 1] = coloring.color_of[e];
  }
  for (auto& s : ps.candidate_sets_) std::sort(s.begin(), s.end());
  return ps;
}

PartitionSystem PartitionSystem::from_sets(int n, std::vector<AgentSet> candidate_sets,
                                           std::vector<int> colors) {
  const int k = static_cast<int>(candidate_sets.size());
  if (n <= 0 || k == 0) throw PreconditionError("partition system needs n > 0 and k > 0");
  if (static_cast<int>(colors.size()) != n) {
    throw PreconditionError("expected " + std::to_string(n) + " colors, got " +
                            std::to_string(colors.size()));
  }
  PartitionSystem ps;
  ps.n_ = n;
  ps.b_ = static_cast<int>(candidate_sets.front().size());
  ps.slots_.assign(static_cast<std::size_t>(n), {0, 0});
  for (int p = 1; p <= k; ++p) {
    auto& s = candidate_sets[p - 1];
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw PreconditionError("candidate set " + std::to_string(p) + " repeats an agent");
    }
    for (Agent j : s) {
      if (j < 1 || j > n) {
        throw PreconditionError("candidate set " + std::to_string(p) + " contains agent " +
                                std::to_string(j) + " outside [1, n]");
      }
      auto& slot = ps.slots_[j - 1];
      if (slot.first == 0) {
        slot.first = p;
      } else if (slot.second == 0) {
        slot.second = p;
      } else {
        throw PreconditionError("property (iii): agent " + std::to_string(j) +
                                " is a candidate in more than two sets");
      }
    }
  }
  for (Agent j = 1; j <= n; ++j) {
    if (ps.slots_[j - 1].second == 0) {
      throw PreconditionError("property (iii): agent " + std::to_string(j) +
                              " is a candidate in fewer than two sets");
    }
  }
  ps.candidate_sets_ = std::move(candidate_sets);
  ps.colors_ = std::move(colors);
  const auto problems = check_partition_properties(ps);
  if (!problems.empty()) throw PreconditionError(problems.front());
  if (ps.b_ < 2) throw PreconditionError("b = " + std::to_string(ps.b_) + " < 2");
  return ps;
}

AgentSet PartitionSystem::voters(int p) const {
  AgentSet out;
  out.reserve(static_cast<std::size_t>(n_));
  for (Agent i = 1; i <= n_; ++i)
    if (!is_candidate(p, i)) out.push_back(i);
  return out;
}

std::vector<std::string> check_partition_properties(const PartitionSystem& ps,
                                                    bool require_normalized) {
  std::vector<std::string> problems;
  const int k = ps.k();
  const int b = ps.b();
  for (int p = 1; p <= k; ++p) {
    if (static_cast<int>(ps.candidates(p).size()) != b) {
      problems.push_back("property (i): |S_2^" + std::to_string(p) + "| = " +
                         std::to_string(ps.candidates(p).size()) + " != b = " + std::to_string(b));
    }
  }
  for (int p = 1; p <= k; ++p) {
    for (int q = p + 1; q <= k; ++q) {
      AgentSet common;
      std::set_intersection(ps.candidates(p).begin(), ps.candidates(p).end(),
                            ps.candidates(q).begin(), ps.candidates(q).end(),
                            std::back_inserter(common));
      if (common.size() > 1) {
        problems.push_back("property (ii): S_2^" + std::to_string(p) + " and S_2^" +
                           std::to_string(q) + " share " + std::to_string(common.size()) +
                           " agents");
      }
    }
  }
  for (Agent j = 1; j <= ps.n(); ++j) {
    int count = 0;
    for (int p = 1; p <= k; ++p)
      count += std::binary_search(ps.candidates(p).begin(), ps.candidates(p).end(), j) ? 1 : 0;
    if (count != 2) {
      problems.push_back("property (iii): agent " + std::to_string(j) + " is a candidate in " +
                         std::to_string(count) + " sets");
    }
  }
  for (Agent j = 1; j <= ps.n(); ++j) {
    if (ps.color(j) < 1 || ps.color(j) > b) {
      problems.push_back("property (iv): agent " + std::to_string(j) + " has color " +
                         std::to_string(ps.color(j)) + " outside [1, b]");
    }
  }
  for (int p = 1; p <= k; ++p) {
    const auto& s = ps.candidates(p);
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = x + 1; y < s.size(); ++y)
        if (ps.color(s[x]) == ps.color(s[y])) {
          problems.push_back("property (iv): agents " + std::to_string(s[x]) + " and " +
                             std::to_string(s[y]) + " share color " +
                             std::to_string(ps.color(s[x])) + " and candidate set " +
                             std::to_string(p));
        }
  }
  if (require_normalized && ps.candidates(1) != all_agents(b)) {
    problems.push_back("normalization: S_2^1 != {1, ..., b}");
  }
  return problems;
}

std::vector<AgentSet> color_classes(const PartitionSystem& ps, const AgentSet& u) {
  std::vector<AgentSet> classes(static_cast<std::size_t>(ps.b()));
  for (Agent v : u) {
    if (v < 1 || v > ps.n()) {
      throw PreconditionError("agent " + std::to_string(v) + " outside [1, " +
                              std::to_string(ps.n()) + "]");
    }
    classes[ps.color(v) - 1].push_back(v);
  }
  for (auto& c : classes) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return classes;
}

}  // namespace impsel
