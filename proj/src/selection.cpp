#include "impsel/selection.hpp"

#include <algorithm>
#include <string>

namespace impsel {

ModifiedScoreTable::ModifiedScoreTable(const PartitionSystem& ps, std::vector<Weight> left,
                                       std::vector<Weight> right)
    : left_(std::move(left)), right_(std::move(right)) {
  left_slot_.reserve(left_.size());
  right_slot_.reserve(left_.size());
  for (Agent j = 1; j <= ps.n(); ++j) {
    left_slot_.push_back(ps.left(j));
    right_slot_.push_back(ps.right(j));
  }
}

Weight ModifiedScoreTable::in_partition(int p, Agent j) const {
  if (p == left_slot_[j - 1]) return left_[j - 1];
  if (p == right_slot_[j - 1]) return right_[j - 1];
  throw PreconditionError("agent " + std::to_string(j) + " is not a candidate in partition " +
                          std::to_string(p));
}

ModifiedScoreTable modified_scores(const WeightMatrix& a, const PartitionSystem& ps) {
  if (a.n() != ps.n()) {
    throw PreconditionError("matrix has n = " + std::to_string(a.n()) +
                            " but partition system has n = " + std::to_string(ps.n()));
  }
  const int n = a.n();
  std::vector<Weight> left(static_cast<std::size_t>(n));
  std::vector<Weight> right(static_cast<std::size_t>(n));
  for (Agent j = 1; j <= n; ++j) {
    const int l = ps.left(j);
    const int r = ps.right(j);
    Weight all_voters = 0;
    for (Agent i = 1; i <= n; ++i)
      if (!ps.is_candidate(l, i)) all_voters += a(i, j);
    Weight fresh = 0;  // voters of r(j) that are not voters of l(j): S_2^l minus S_2^r
    for (Agent i : ps.candidates(l))
      if (!ps.is_candidate(r, i)) fresh += a(i, j);
    left[j - 1] = all_voters;
    right[j - 1] = fresh;
  }
  return ModifiedScoreTable(ps, std::move(left), std::move(right));
}

SelectionResult select_k(const WeightMatrix& a, int k, const PartitionSystem& ps) {
  if (k != ps.k()) {
    throw PreconditionError("k = " + std::to_string(k) + " but partition system has " +
                            std::to_string(ps.k()) + " partitions");
  }
  const ModifiedScoreTable table = modified_scores(a, ps);
  SelectionResult result;
  result.winners.reserve(static_cast<std::size_t>(k));
  for (int p = 1; p <= k; ++p) {
    Agent best = 0;
    Weight best_score = 0;
    for (Agent j : ps.candidates(p)) {
      const Weight s = table.in_partition(p, j);
      if (best == 0 || s > best_score || (s == best_score && j > best)) {
        best = j;
        best_score = s;
      }
    }
    result.winners.push_back(best);
  }
  result.selected = result.winners;
  std::sort(result.selected.begin(), result.selected.end());
  result.selected.erase(std::unique(result.selected.begin(), result.selected.end()),
                        result.selected.end());
  result.score = total_score(a, result.selected);
  result.alpha = Rational(1, ps.b());
  return result;
}

GenParams padding_params(int n, int k) {
  if (!(1 < k && k < n)) {
    throw ApplicabilityError("requires 1 < k < n, got n = " + std::to_string(n) +
                             ", k = " + std::to_string(k));
  }
  const int k_tilde = k - k % 2;
  if (static_cast<long long>(k_tilde) * k_tilde < 4LL * n) {
    throw ApplicabilityError("requires k - k mod 2 >= 2 sqrt(n): " + std::to_string(k_tilde) +
                             "^2 < 4 * " + std::to_string(n));
  }
  GenParams g;
  g.k_tilde = k_tilde;
  g.b = (2 * n + k_tilde - 1) / k_tilde;
  g.n_tilde = k_tilde / 2 * g.b;
  g.alpha = Rational(k_tilde, static_cast<std::int64_t>(k) * g.b);
  return g;
}

Rational guarantee_alpha(int n, int k) { return padding_params(n, k).alpha; }

SelectionResult gen_select(const WeightMatrix& a, int k) {
  const GenParams g = padding_params(a.n(), k);
  const PartitionSystem ps = PartitionSystem::build(g.n_tilde, g.k_tilde);
  SelectionResult result =
      g.n_tilde == a.n() ? select_k(a, g.k_tilde, ps) : select_k(a.padded(g.n_tilde), g.k_tilde, ps);
  std::erase_if(result.selected, [&](Agent j) { return j > a.n(); });
  result.score = total_score(a, result.selected);
  result.alpha = g.alpha;
  result.params = g;
  return result;
}

}  // namespace impsel
