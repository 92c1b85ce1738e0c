#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "impsel/assignment.hpp"
#include "impsel/core.hpp"
#include "impsel/random.hpp"

namespace impsel::testing {

std::string data_path(const std::string& name);

/// The 9-agent example with k = 6 used throughout the tests.
WeightMatrix example_matrix();

/// (n, k) with k even, b = 2n/k integral and 2 <= b <= k/2. With strict set,
/// additionally k < n.
std::vector<std::pair<int, int>> conforming_pairs(int n_max, bool strict);

WeightMatrix random_matrix(int n, int max_weight, Rng& rng);
/// Entries nonzero with probability density, values in [1, max_weight].
WeightMatrix random_sparse_matrix(int n, int max_weight, double density, Rng& rng);
InstanceTuple random_tuple(int n, int m, int max_weight, Rng& rng);

/// Best size-k score by enumerating every k-subset.
Weight brute_force_opt_k(const WeightMatrix& a, int k);

/// Best assignment score by enumerating every labeling agent -> {none, 1..m}
/// and discarding those over capacity.
Weight brute_force_opt_assignment(const InstanceTuple& t, int k);

}  // namespace impsel::testing
