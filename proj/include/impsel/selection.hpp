#pragma once

#include <optional>
#include <vector>

#include "impsel/core.hpp"
#include "impsel/partition.hpp"

namespace impsel {

/// Each agent's score split across its two candidacies: the left slot counts
/// every voter of partition l(j), the right slot only voters of r(j) that were
/// not already voters of l(j). left(j) + right(j) == sigma(j).
class ModifiedScoreTable {
 public:
  ModifiedScoreTable() = default;
  ModifiedScoreTable(const PartitionSystem& ps, std::vector<Weight> left,
                     std::vector<Weight> right);

  int n() const { return static_cast<int>(left_.size()); }
  Weight left(Agent j) const { return left_[j - 1]; }
  Weight right(Agent j) const { return right_[j - 1]; }

  /// Modified score of j in partition p; p must be l(j) or r(j).
  Weight in_partition(int p, Agent j) const;

 private:
  std::vector<int> left_slot_;
  std::vector<int> right_slot_;
  std::vector<Weight> left_;
  std::vector<Weight> right_;
};

ModifiedScoreTable modified_scores(const WeightMatrix& a, const PartitionSystem& ps);

/// Padding parameters used to lift the mechanism to arbitrary (n, k).
struct GenParams {
  int k_tilde = 0;
  int n_tilde = 0;
  int b = 0;
  Rational alpha;
};

struct SelectionResult {
  AgentSet selected;
  /// i^p for p = 1..k (on the padded instance when produced by gen_select, so
  /// entries may exceed n; selected never does).
  std::vector<Agent> winners;
  Weight score = 0;
  Rational alpha;
  std::optional<GenParams> params;
};

/// Select_k: one winner per partition, maximizing (modified score, index).
SelectionResult select_k(const WeightMatrix& a, int k, const PartitionSystem& ps);

/// k~ = k - k mod 2, n~ = (k~/2) ceil(2n/k~), b = ceil(2n/k~), alpha as below.
/// Throws ApplicabilityError unless 1 < k < n and k~^2 >= 4n.
GenParams padding_params(int n, int k);

/// alpha = k~ / (k ceil(2n/k~)).
Rational guarantee_alpha(int n, int k);

/// Pads A with zero agents up to n~, runs Select_k~ on the canonical ps(n~, k~)
/// and drops the padded agents from the output.
SelectionResult gen_select(const WeightMatrix& a, int k);

}  // namespace impsel
