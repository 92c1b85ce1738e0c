#include "impsel/assignment.hpp"

#include <algorithm>
#include <string>

namespace impsel {

InstanceTuple::InstanceTuple(std::vector<WeightMatrix> matrices) : matrices_(std::move(matrices)) {
  for (const auto& a : matrices_) {
    if (a.n() != n()) throw ValidationError("instance tuple mixes matrices of different sizes");
  }
}

InstanceTuple InstanceTuple::padded(int n_new) const {
  std::vector<WeightMatrix> out;
  out.reserve(matrices_.size());
  for (const auto& a : matrices_) out.push_back(a.padded(n_new));
  return InstanceTuple(std::move(out));
}

bool is_feasible(const Assignment& x, int k) {
  std::vector<Agent> all;
  for (const auto& job : x.jobs) {
    if (static_cast<int>(job.size()) > k) return false;
    all.insert(all.end(), job.begin(), job.end());
  }
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

Weight assignment_score(const InstanceTuple& t, const Assignment& x) {
  Weight s = 0;
  for (int l = 1; l <= static_cast<int>(x.jobs.size()); ++l) s += total_score(t.job(l), x.jobs[l - 1]);
  return s;
}

namespace {

struct TupleSearch {
  int p;
  int m;
  const std::vector<ModifiedScoreTable>& tables;
  std::vector<Agent> descending;  // S_2^p, largest first
  std::vector<Agent> current;
  std::vector<char> used;
  std::vector<Agent> best;
  Weight best_sum = 0;

  // Tuples are visited in descending lexicographic order of (v_1, ..., v_m),
  // so keeping only strict improvements yields the lexicographic maximum of
  // (sum, v_1, ..., v_m).
  void run(int l, Weight partial) {
    if (l == m) {
      if (best.empty() || partial > best_sum) {
        best = current;
        best_sum = partial;
      }
      return;
    }
    for (std::size_t c = 0; c < descending.size(); ++c) {
      if (used[c]) continue;
      used[c] = 1;
      current.push_back(descending[c]);
      run(l + 1, partial + tables[l].in_partition(p, descending[c]));
      current.pop_back();
      used[c] = 0;
    }
  }
};

}  // namespace

std::vector<Agent> best_partial_assignment(int p, const PartitionSystem& ps,
                                           const std::vector<ModifiedScoreTable>& tables, int m) {
  if (p < 1 || p > ps.k()) throw PreconditionError("partition index out of range");
  if (m < 1) throw PreconditionError("need at least one job");
  if (static_cast<int>(tables.size()) != m) {
    throw PreconditionError("expected one score table per job");
  }
  const AgentSet& candidates = ps.candidates(p);
  if (m > static_cast<int>(candidates.size())) {
    throw PreconditionError("m = " + std::to_string(m) + " exceeds b = " +
                            std::to_string(candidates.size()));
  }
  TupleSearch search{p, m, tables, {candidates.rbegin(), candidates.rend()}, {}, {}, {}, 0};
  search.used.assign(candidates.size(), 0);
  search.current.reserve(static_cast<std::size_t>(m));
  search.run(0, 0);
  return search.best;
}

AssignmentResult assign_k(const InstanceTuple& t, int k, const PartitionSystem& ps) {
  const int n = t.n();
  const int m = t.m();
  if (m < 1) throw PreconditionError("instance tuple has no jobs");
  if (n != ps.n()) {
    throw PreconditionError("instance has n = " + std::to_string(n) +
                            " but partition system has n = " + std::to_string(ps.n()));
  }
  if (k != ps.k()) {
    throw PreconditionError("k = " + std::to_string(k) + " but partition system has " +
                            std::to_string(ps.k()) + " partitions");
  }
  if (static_cast<long long>(m) * k > n) {
    throw PreconditionError("m k = " + std::to_string(m * k) + " exceeds n = " + std::to_string(n));
  }
  if (m > ps.b()) {
    throw PreconditionError("m = " + std::to_string(m) + " exceeds b = " + std::to_string(ps.b()));
  }

  std::vector<ModifiedScoreTable> tables;
  tables.reserve(static_cast<std::size_t>(m));
  for (const auto& a : t.matrices()) tables.push_back(modified_scores(a, ps));

  AssignmentResult result;
  result.assignment.jobs.assign(static_cast<std::size_t>(m), {});
  // jobs_of[j - 1]: jobs j was picked for, at most one per candidacy.
  std::vector<std::vector<int>> jobs_of(static_cast<std::size_t>(n));
  for (int p = 1; p <= k; ++p) {
    auto x = best_partial_assignment(p, ps, tables, m);
    for (int l = 1; l <= m; ++l) {
      auto& held = jobs_of[x[l - 1] - 1];
      if (std::find(held.begin(), held.end(), l) == held.end()) held.push_back(l);
    }
    result.partials.push_back(std::move(x));
  }

  for (Agent j = 1; j <= n; ++j) {
    auto& held = jobs_of[j - 1];
    if (held.size() == 2) {
      const int l0 = held[0];
      const int l1 = held[1];
      const auto key0 = std::pair(t.job(l0).column_sum(j), l0);
      const auto key1 = std::pair(t.job(l1).column_sum(j), l1);
      std::erase(held, key0 < key1 ? l0 : l1);
    }
    for (int l : held) result.assignment.jobs[l - 1].push_back(j);
  }
  result.score = assignment_score(t, result.assignment);
  result.alpha = Rational(1, 2LL * ps.b());
  return result;
}

Rational guarantee_alpha_assign(int n, int m, int k) {
  if (m < 1) throw ApplicabilityError("need at least one job");
  if (static_cast<long long>(m) * k > n) {
    throw ApplicabilityError("requires m k <= n, got m k = " + std::to_string(m * k) +
                             " > n = " + std::to_string(n));
  }
  return padding_params(n, k).alpha * Rational(1, 2);
}

AssignmentResult gen_assign(const InstanceTuple& t, int k) {
  const int n = t.n();
  const Rational alpha = guarantee_alpha_assign(n, t.m(), k);
  const GenParams g = padding_params(n, k);
  const PartitionSystem ps = PartitionSystem::build(g.n_tilde, g.k_tilde);
  AssignmentResult result =
      g.n_tilde == n ? assign_k(t, g.k_tilde, ps) : assign_k(t.padded(g.n_tilde), g.k_tilde, ps);
  for (auto& job : result.assignment.jobs) std::erase_if(job, [&](Agent j) { return j > n; });
  result.score = assignment_score(t, result.assignment);
  result.alpha = alpha;
  result.params = g;
  result.params->alpha = alpha;
  return result;
}

}  // namespace impsel
