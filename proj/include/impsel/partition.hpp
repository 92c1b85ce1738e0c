#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "impsel/core.hpp"

namespace impsel {

/// b-regular bipartite graph on vertices {0, ..., k-1}; the left side is
/// {0, ..., k/2 - 1}. Each edge stands for one agent, each vertex for one
/// candidate set.
struct BipartiteGraph {
  int left_size = 0;
  int right_size = 0;
  int degree = 0;
  std::vector<std::array<int, 2>> edges;  // {left, right}

  int order() const { return left_size + right_size; }
  int size() const { return static_cast<int>(edges.size()); }
};

/// Edges {i, k' + (i + l) mod k'} for i < k', l < b, in lexicographic (i, l)
/// order. Accepts 1 <= b <= k/2 with k even.
BipartiteGraph build_regular_bipartite_graph(int k, int b);

/// Structural checks used by tests and the partition-system validator.
bool is_bipartite(const BipartiteGraph& g);
bool is_regular(const BipartiteGraph& g);
bool is_simple(const BipartiteGraph& g);

struct Hypergraph {
  int vertex_count = 0;
  /// Multiset of hyperedges; each hyperedge is a sorted list of vertices.
  std::vector<std::vector<int>> hyperedges;

  bool is_regular(int d) const;
  bool is_uniform(int b) const;
  /// Any two hyperedges (distinct positions in the multiset) share <= 1 vertex.
  bool is_linear() const;
  bool has_repeated_hyperedges() const;
};

/// Incidence-transpose dual: vertex e of the result is edge e of g, hyperedge
/// v is the set of edges incident to graph vertex v.
Hypergraph dual(const BipartiteGraph& g);
Hypergraph dual(const Hypergraph& h);
Hypergraph as_hypergraph(const BipartiteGraph& g);

struct EdgeColoring {
  int colors = 0;
  /// Color in [1, colors] for each edge index.
  std::vector<int> color_of;
};

/// Kőnig edge coloring with exactly max-degree colors. Edges are processed in
/// stored order; each takes the smallest color free at its left end, flipping
/// an alternating path from the right end when that color is taken there.
EdgeColoring edge_color(const BipartiteGraph& g);

bool is_feasible(const BipartiteGraph& g, const EdgeColoring& c);

/// Robust partition system S(n, k): k candidate sets of size b = 2n/k, every
/// agent in exactly two of them, pairwise intersections of size <= 1, and an
/// agent coloring with b colors that never repeats inside a candidate set.
class PartitionSystem {
 public:
  /// Canonical system from the regular bipartite graph. Requires k even,
  /// b = 2n/k integral and 2 <= b <= k/2. Guarantees S_2^1 = {1, ..., b}.
  static PartitionSystem build(int n, int k);

  /// Arbitrary system given explicitly (e.g. loaded from a file). Validates
  /// all four structural properties; throws PreconditionError otherwise.
  static PartitionSystem from_sets(int n, std::vector<AgentSet> candidate_sets,
                                   std::vector<int> colors);

  int n() const { return n_; }
  int k() const { return static_cast<int>(candidate_sets_.size()); }
  int b() const { return b_; }

  /// Candidate set S_2^p for p in [1, k].
  const AgentSet& candidates(int p) const { return candidate_sets_.at(p - 1); }
  const std::vector<AgentSet>& candidate_sets() const { return candidate_sets_; }
  /// Voter set S_1^p = [n] \ S_2^p.
  AgentSet voters(int p) const;
  bool is_candidate(int p, Agent j) const { return left(j) == p || right(j) == p; }

  /// l(j) < r(j): the two partitions in which j is a candidate.
  int left(Agent j) const { return slots_[j - 1].first; }
  int right(Agent j) const { return slots_[j - 1].second; }
  int color(Agent j) const { return colors_[j - 1]; }
  const std::vector<int>& colors() const { return colors_; }

 private:
  PartitionSystem() = default;

  int n_ = 0;
  int b_ = 0;
  std::vector<AgentSet> candidate_sets_;
  std::vector<std::pair<int, int>> slots_;
  std::vector<int> colors_;
};

/// Lists every violated property of ps; empty when (i)-(iv) all hold. When
/// require_normalized is set, S_2^1 = {1, ..., b} is checked as well.
std::vector<std::string> check_partition_properties(const PartitionSystem& ps,
                                                    bool require_normalized = false);

/// Splits u into b classes by agent color; class t holds agents of color t + 1.
std::vector<AgentSet> color_classes(const PartitionSystem& ps, const AgentSet& u);

}  // namespace impsel
