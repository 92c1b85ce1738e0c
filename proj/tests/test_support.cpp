#include "test_support.hpp"

#include <algorithm>

namespace impsel::testing {

std::string data_path(const std::string& name) { return std::string(IMPSEL_TEST_DATA) + "/" + name; }

WeightMatrix example_matrix() {
  return WeightMatrix::from_rows({
      {0, 2, 0, 0, 0, 3, 0, 0, 1},
      {0, 0, 1, 0, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 3, 0},
      {0, 0, 2, 0, 0, 0, 0, 0, 0},
      {2, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 3, 0, 1, 0, 0},
      {0, 3, 2, 0, 0, 0, 0, 2, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 2, 0, 1, 0, 2, 0},
  });
}

std::vector<std::pair<int, int>> conforming_pairs(int n_max, bool strict) {
  std::vector<std::pair<int, int>> out;
  for (int n = 2; n <= n_max; ++n) {
    for (int k = 2; k <= n; k += 2) {
      if ((2 * n) % k != 0) continue;
      const int b = 2 * n / k;
      if (b < 2 || 2 * b > k) continue;
      if (strict && k == n) continue;
      out.emplace_back(n, k);
    }
  }
  return out;
}

WeightMatrix random_matrix(int n, int max_weight, Rng& rng) {
  WeightMatrix a(n);
  for (Agent i = 1; i <= n; ++i)
    for (Agent j = 1; j <= n; ++j)
      if (i != j) a.set(i, j, static_cast<Weight>(rng.uniform_int(0, max_weight)));
  return a;
}

WeightMatrix random_sparse_matrix(int n, int max_weight, double density, Rng& rng) {
  WeightMatrix a(n);
  for (Agent i = 1; i <= n; ++i)
    for (Agent j = 1; j <= n; ++j)
      if (i != j && rng.bernoulli(density)) a.set(i, j, static_cast<Weight>(rng.uniform_int(1, max_weight)));
  return a;
}

InstanceTuple random_tuple(int n, int m, int max_weight, Rng& rng) {
  std::vector<WeightMatrix> jobs;
  for (int l = 0; l < m; ++l) jobs.push_back(random_matrix(n, max_weight, rng));
  return InstanceTuple(std::move(jobs));
}

Weight brute_force_opt_k(const WeightMatrix& a, int k) {
  const int n = a.n();
  Weight best = -1;
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    Weight s = 0;
    for (Agent j = 1; j <= n; ++j)
      if (pick[static_cast<std::size_t>(j - 1)])
        for (Agent i = 1; i <= n; ++i) s += a(i, j);
    best = std::max(best, s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

Weight brute_force_opt_assignment(const InstanceTuple& t, int k) {
  const int n = t.n();
  const int m = t.m();
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  Weight best = 0;
  while (true) {
    std::vector<int> fill(static_cast<std::size_t>(m) + 1, 0);
    for (int l : label) ++fill[static_cast<std::size_t>(l)];
    bool ok = true;
    for (int l = 1; l <= m; ++l) ok = ok && fill[static_cast<std::size_t>(l)] <= k;
    if (ok) {
      Weight s = 0;
      for (Agent j = 1; j <= n; ++j) {
        const int l = label[static_cast<std::size_t>(j - 1)];
        if (l == 0) continue;
        for (Agent i = 1; i <= n; ++i) s += t.job(l)(i, j);
      }
      best = std::max(best, s);
    }
    int pos = 0;
    while (pos < n && label[static_cast<std::size_t>(pos)] == m) label[static_cast<std::size_t>(pos++)] = 0;
    if (pos == n) break;
    ++label[static_cast<std::size_t>(pos)];
  }
  return best;
}

}  // namespace impsel::testing
