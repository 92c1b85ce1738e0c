#include "impsel/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "impsel/random.hpp"

namespace impsel {

OptSelection opt_k(const WeightMatrix& a, int k) {
  if (k < 0 || k > a.n()) {
    throw PreconditionError("opt_k: k = " + std::to_string(k) + " outside [0, n = " +
                            std::to_string(a.n()) + "]");
  }
  const auto sums = a.column_sums();
  AgentSet order = all_agents(a.n());
  std::stable_sort(order.begin(), order.end(),
                   [&](Agent x, Agent y) { return sums[x - 1] > sums[y - 1]; });
  OptSelection out;
  out.set.assign(order.begin(), order.begin() + k);
  std::sort(out.set.begin(), out.set.end());
  for (Agent j : out.set) out.score += sums[j - 1];
  return out;
}

OptAssignment opt_assignment(const InstanceTuple& t, int k, std::uint64_t budget) {
  const int n = t.n();
  const int m = t.m();
  if (m < 1) throw PreconditionError("opt_assignment: instance has no jobs");
  if (k < 0) throw PreconditionError("opt_assignment: negative k");

  // State: fill count of each job, mixed radix (k + 1).
  std::uint64_t states = 1;
  for (int l = 0; l < m; ++l) {
    states *= static_cast<std::uint64_t>(k) + 1;
    if (states > budget) break;
  }
  const std::uint64_t nodes = states * (static_cast<std::uint64_t>(n) + 1);
  if (states > budget || nodes > budget) {
    throw BudgetExceeded("opt_assignment: state space of " + std::to_string(nodes) +
                         " nodes exceeds budget " + std::to_string(budget));
  }

  std::vector<std::vector<Weight>> score(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) {
    const auto sums = t.job(l + 1).column_sums();
    score[l].assign(sums.begin(), sums.end());
  }
  std::vector<std::uint64_t> stride(static_cast<std::size_t>(m), 1);
  for (int l = 1; l < m; ++l) stride[l] = stride[l - 1] * (static_cast<std::uint64_t>(k) + 1);
  auto fill = [&](std::uint64_t s, int l) {
    return static_cast<int>((s / stride[l]) % (static_cast<std::uint64_t>(k) + 1));
  };

  // best[j][s]: best score obtainable from agents j+1..n given fill state s.
  // choice: 0 = unassigned, l = job l.
  std::vector<std::vector<Weight>> best(static_cast<std::size_t>(n) + 1,
                                        std::vector<Weight>(states, 0.0));
  std::vector<std::vector<std::uint8_t>> choice(static_cast<std::size_t>(n),
                                                std::vector<std::uint8_t>(states, 0));
  for (int j = n - 1; j >= 0; --j) {
    for (std::uint64_t s = 0; s < states; ++s) {
      Weight value = best[j + 1][s];
      std::uint8_t pick = 0;
      for (int l = 0; l < m; ++l) {
        if (fill(s, l) == k) continue;
        const Weight v = score[l][j] + best[j + 1][s + stride[l]];
        if (v > value) {
          value = v;
          pick = static_cast<std::uint8_t>(l + 1);
        }
      }
      best[j][s] = value;
      choice[j][s] = pick;
    }
  }

  OptAssignment out;
  out.nodes = nodes;
  out.assignment.jobs.assign(static_cast<std::size_t>(m), {});
  std::uint64_t s = 0;
  for (int j = 0; j < n; ++j) {
    const int pick = choice[j][s];
    if (pick > 0) {
      out.assignment.jobs[pick - 1].push_back(j + 1);
      s += stride[pick - 1];
    }
  }
  out.score = assignment_score(t, out.assignment);
  return out;
}

WeightMatrix tightness_instance(int n, int k, const PartitionSystem& ps) {
  if (ps.n() != n || ps.k() != k) {
    throw PreconditionError("tightness_instance: partition system is for (" +
                            std::to_string(ps.n()) + ", " + std::to_string(ps.k()) + ")");
  }
  const int b = ps.b();
  if (ps.candidates(1) != all_agents(b)) {
    throw PreconditionError("tightness_instance: requires S_2^1 = {1, ..., b}");
  }
  WeightMatrix a(n);
  for (Agent j = 1; j <= b; ++j) {
    const AgentSet& second = ps.candidates(ps.right(j));
    const auto h = std::find_if(second.begin(), second.end(), [&](Agent i) { return i > b; });
    if (h == second.end()) throw PreconditionError("tightness_instance: no eligible voter");
    a.set(*h, j, 1.0);
  }
  return a;
}

RatioReport make_ratio_report(std::string instance_id, Weight mechanism_score,
                              Weight oracle_score, const Rational& alpha) {
  RatioReport r;
  r.instance_id = std::move(instance_id);
  r.mechanism_score = mechanism_score;
  r.oracle_score = oracle_score;
  r.alpha = alpha;
  r.ratio = oracle_score > 0 ? mechanism_score / oracle_score : 1.0;
  r.pass = mechanism_score * static_cast<double>(alpha.den()) >=
           oracle_score * static_cast<double>(alpha.num());
  return r;
}

AssignmentMechanism as_assignment_mechanism(SelectionMechanism mech) {
  return [mech = std::move(mech)](const InstanceTuple& t) {
    return Assignment{{mech(t.job(1))}};
  };
}

AgentSet top_k_baseline(const WeightMatrix& a, int k) { return opt_k(a, k).set; }

namespace {

int job_of(const Assignment& x, Agent i) {
  for (std::size_t l = 0; l < x.jobs.size(); ++l)
    if (std::binary_search(x.jobs[l].begin(), x.jobs[l].end(), i)) return static_cast<int>(l) + 1;
  return 0;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = seed ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b * 0xC2B2AE3D27D4EB4FULL);
  x ^= x >> 31;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 29;
  return x;
}

InstanceTuple random_base(const DeviationSpace& space, int index) {
  Rng rng(mix_seed(space.seed, static_cast<std::uint64_t>(index), 0));
  std::vector<WeightMatrix> jobs;
  for (int l = 0; l < space.m; ++l) {
    WeightMatrix a(space.n);
    for (Agent i = 1; i <= space.n; ++i)
      for (Agent j = 1; j <= space.n; ++j)
        if (i != j) {
          const auto g = rng.uniform_int(0, static_cast<std::int64_t>(space.grid.size()) - 1);
          a.set(i, j, space.grid[static_cast<std::size_t>(g)]);
        }
    jobs.push_back(std::move(a));
  }
  return InstanceTuple(std::move(jobs));
}

struct Worker {
  const AssignmentMechanism& mechanism;
  const DeviationSpace& space;
  std::atomic<std::uint64_t>& evaluations;
  std::atomic<bool>& exhausted;

  std::uint64_t trials = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;

  static constexpr std::size_t kKeep = 100;

  bool charge() {
    if (space.budget == 0) return true;
    if (evaluations.fetch_add(1) >= space.budget) {
      exhausted = true;
      return false;
    }
    return true;
  }

  // Row of agent i in every job, job-major.
  static std::vector<Weight> gather(const InstanceTuple& t, Agent i) {
    std::vector<Weight> row;
    for (const auto& a : t.matrices()) {
      auto r = a.row(i);
      row.insert(row.end(), r.begin(), r.end());
    }
    return row;
  }

  static void scatter(InstanceTuple& t, Agent i, const std::vector<Weight>& row) {
    const int n = t.n();
    for (int l = 1; l <= t.m(); ++l)
      t.job(l).set_row(i, std::span<const Weight>(row).subspan(static_cast<std::size_t>((l - 1) * n),
                                                               static_cast<std::size_t>(n)));
  }

  bool evaluate(int instance, InstanceTuple& work, Agent i, const std::vector<Weight>& row,
                int before) {
    if (!charge()) return false;
    scatter(work, i, row);
    const int after = job_of(mechanism(work), i);
    ++trials;
    if (after != before) {
      ++violation_count;
      if (violations.size() < kKeep) violations.push_back({instance, i, row, before, after});
    }
    return true;
  }

  bool enumerate(int instance, InstanceTuple& work, Agent i, int before,
                 const std::vector<std::size_t>& positions, std::size_t pos, int support_left,
                 std::vector<Weight>& row) {
    if (pos == positions.size()) return evaluate(instance, work, i, row, before);
    for (Weight v : space.grid) {
      const bool nonzero = v != 0;
      if (nonzero && space.max_support >= 0 && support_left == 0) continue;
      row[positions[pos]] = v;
      if (!enumerate(instance, work, i, before, positions, pos + 1,
                     support_left - (nonzero ? 1 : 0), row))
        return false;
    }
    row[positions[pos]] = 0;
    return true;
  }

  void run_instance(int instance, const InstanceTuple& base) {
    const int n = base.n();
    const Assignment baseline = mechanism(base);
    InstanceTuple work = base;
    for (Agent i = 1; i <= n && !exhausted; ++i) {
      const int before = job_of(baseline, i);
      const std::vector<Weight> original = gather(base, i);
      std::vector<Weight> row(original.size(), 0.0);
      if (space.exhaustive) {
        std::vector<std::size_t> positions;
        for (int l = 0; l < base.m(); ++l)
          for (Agent j = 1; j <= n; ++j)
            if (j != i) positions.push_back(static_cast<std::size_t>(l * n + (j - 1)));
        if (!enumerate(instance, work, i, before, positions, 0, space.max_support, row)) return;
      } else {
        Rng rng(mix_seed(space.seed, static_cast<std::uint64_t>(instance) + 1,
                         static_cast<std::uint64_t>(i)));
        for (int d = 0; d < space.random_deviations; ++d) {
          for (int l = 0; l < base.m(); ++l)
            for (Agent j = 1; j <= n; ++j)
              row[static_cast<std::size_t>(l * n + (j - 1))] =
                  j == i ? 0.0 : static_cast<Weight>(rng.uniform_int(0, space.max_weight));
          if (!evaluate(instance, work, i, row, before)) return;
        }
      }
      scatter(work, i, original);
    }
  }
};

}  // namespace

ImpartialityReport check_impartial(const std::string& mechanism_id,
                                   const AssignmentMechanism& mechanism,
                                   const DeviationSpace& space) {
  if (space.n < 2 || space.m < 1) throw PreconditionError("check_impartial: need n >= 2, m >= 1");
  std::vector<InstanceTuple> bases = space.fixed_bases;
  for (const auto& b : bases) {
    if (b.n() != space.n || b.m() != space.m) {
      throw PreconditionError("check_impartial: fixed base instance has wrong shape");
    }
  }
  for (int r = 0; r < space.base_instances; ++r) bases.push_back(random_base(space, r));

  std::atomic<std::uint64_t> evaluations{0};
  std::atomic<bool> exhausted{false};
  const int threads = std::max(1, std::min<int>(space.threads, static_cast<int>(bases.size())));
  std::vector<Worker> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) workers.push_back(Worker{mechanism, space, evaluations, exhausted, 0, 0, {}});

  auto work = [&](int w) {
    for (std::size_t idx = static_cast<std::size_t>(w); idx < bases.size();
         idx += static_cast<std::size_t>(threads)) {
      if (exhausted) return;
      workers[w].run_instance(static_cast<int>(idx), bases[idx]);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  ImpartialityReport report;
  report.mechanism = mechanism_id;
  report.budget_exhausted = exhausted;
  for (auto& w : workers) {
    report.trials += w.trials;
    report.violation_count += w.violation_count;
    report.violations.insert(report.violations.end(), w.violations.begin(), w.violations.end());
  }
  std::sort(report.violations.begin(), report.violations.end(), [](const auto& x, const auto& y) {
    return std::tie(x.instance, x.agent, x.deviating_row) <
           std::tie(y.instance, y.agent, y.deviating_row);
  });
  if (report.violations.size() > Worker::kKeep) report.violations.resize(Worker::kKeep);
  return report;
}

}  // namespace impsel
