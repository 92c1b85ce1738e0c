#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "impsel/assignment.hpp"
#include "impsel/core.hpp"
#include "impsel/partition.hpp"

namespace impsel {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

struct OptSelection {
  AgentSet set;
  Weight score = 0;
};

/// Best size-k set. sigma is additive over agents, so this is the k largest
/// column sums; ties go to smaller indices.
OptSelection opt_k(const WeightMatrix& a, int k);

struct OptAssignment {
  Assignment assignment;
  Weight score = 0;
  std::uint64_t nodes = 0;
};

/// Exact maximum-score feasible assignment, by dynamic programming over agents
/// with the per-job fill counts as state. Throws BudgetExceeded when the state
/// space would exceed `budget` nodes.
OptAssignment opt_assignment(const InstanceTuple& t, int k,
                             std::uint64_t budget = kDefaultOracleBudget);

/// The adversarial instance: for every j in S_2^1 = [b], one unit vote from
/// h(j), the smallest agent of S_2^{r(j)} outside [b]. Select_k scores 1 on it
/// while the optimum scores b.
WeightMatrix tightness_instance(int n, int k, const PartitionSystem& ps);

struct RatioReport {
  std::string instance_id;
  Weight mechanism_score = 0;
  Weight oracle_score = 0;
  double ratio = 1.0;
  Rational alpha;
  bool pass = true;
};

/// pass <=> mechanism_score >= alpha * oracle_score, compared exactly for
/// integral scores. A zero optimum counts as ratio 1.
RatioReport make_ratio_report(std::string instance_id, Weight mechanism_score,
                              Weight oracle_score, const Rational& alpha);

using SelectionMechanism = std::function<AgentSet(const WeightMatrix&)>;
using AssignmentMechanism = std::function<Assignment(const InstanceTuple&)>;

/// Lifts a selection mechanism to a one-job assignment mechanism.
AssignmentMechanism as_assignment_mechanism(SelectionMechanism mech);

/// Non-impartial reference mechanism: the k agents with the highest scores.
AgentSet top_k_baseline(const WeightMatrix& a, int k);

/// Which instances and which row deviations check_impartial explores.
struct DeviationSpace {
  int n = 0;
  int m = 1;
  /// Entry values for base instances and, in exhaustive mode, for deviations.
  std::vector<Weight> grid{0, 1, 2};
  /// Exhaustive mode: most nonzero entries a deviating row may have across all
  /// jobs; negative means unrestricted (the full grid^(m (n - 1)) product).
  int max_support = -1;
  bool exhaustive = true;
  /// Random mode: deviations sampled per (instance, agent), entries uniform in
  /// [0, max_weight].
  int random_deviations = 0;
  int max_weight = 10;
  /// Randomly drawn base instances, appended after `fixed_bases`.
  int base_instances = 0;
  std::vector<InstanceTuple> fixed_bases;
  std::uint64_t seed = 1;
  /// Cap on mechanism evaluations; 0 means unlimited.
  std::uint64_t budget = 0;
  int threads = 1;
};

struct Violation {
  int instance = 0;
  Agent agent = 0;
  /// Agent's deviating row, job-major: m blocks of n entries.
  std::vector<Weight> deviating_row;
  /// Job holding the agent (0 = unassigned) before and after the deviation.
  int before = 0;
  int after = 0;
};

struct ImpartialityReport {
  std::string mechanism;
  std::uint64_t trials = 0;
  std::uint64_t violation_count = 0;
  /// First violations in canonical order (instance, agent, row); capped.
  std::vector<Violation> violations;
  bool budget_exhausted = false;

  bool certified() const { return violation_count == 0 && !budget_exhausted; }
};

ImpartialityReport check_impartial(const std::string& mechanism_id,
                                   const AssignmentMechanism& mechanism,
                                   const DeviationSpace& space);

}  // namespace impsel
