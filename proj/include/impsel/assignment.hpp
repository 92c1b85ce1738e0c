#pragma once

#include <optional>
#include <vector>

#include "impsel/core.hpp"
#include "impsel/partition.hpp"
#include "impsel/selection.hpp"

namespace impsel {

/// One weight matrix per job, all over the same n agents.
class InstanceTuple {
 public:
  InstanceTuple() = default;
  explicit InstanceTuple(std::vector<WeightMatrix> matrices);

  int n() const { return matrices_.empty() ? 0 : matrices_.front().n(); }
  int m() const { return static_cast<int>(matrices_.size()); }
  const WeightMatrix& job(int l) const { return matrices_.at(l - 1); }
  WeightMatrix& job(int l) { return matrices_.at(l - 1); }
  const std::vector<WeightMatrix>& matrices() const { return matrices_; }

  InstanceTuple padded(int n_new) const;

  friend bool operator==(const InstanceTuple&, const InstanceTuple&) = default;

 private:
  std::vector<WeightMatrix> matrices_;
};

/// jobs[l - 1] is X_l.
struct Assignment {
  std::vector<AgentSet> jobs;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// X_l pairwise disjoint and |X_l| <= k.
bool is_feasible(const Assignment& x, int k);

/// sum over jobs l of sigma(X_l; A_l).
Weight assignment_score(const InstanceTuple& t, const Assignment& x);

struct AssignmentResult {
  Assignment assignment;
  /// x^p for p = 1..k, before doubly assigned agents are resolved.
  std::vector<std::vector<Agent>> partials;
  Weight score = 0;
  Rational alpha;
  std::optional<GenParams> params;
};

/// Lexicographically largest (sum_l table_l(p, v_l), v_1, ..., v_m) over
/// injective m-tuples v drawn from S_2^p.
std::vector<Agent> best_partial_assignment(int p, const PartitionSystem& ps,
                                           const std::vector<ModifiedScoreTable>& tables, int m);

/// Assign_k. An agent picked for two jobs keeps the one where it receives more
/// votes (the larger job index on a tie).
AssignmentResult assign_k(const InstanceTuple& t, int k, const PartitionSystem& ps);

/// alpha = k~ / (2 k ceil(2n/k~)); additionally requires m k <= n.
Rational guarantee_alpha_assign(int n, int m, int k);

/// Zero-pads every job matrix to n~ and runs Assign_k~ on ps(n~, k~).
AssignmentResult gen_assign(const InstanceTuple& t, int k);

}  // namespace impsel
