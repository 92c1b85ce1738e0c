#include "impsel/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "impsel/io.hpp"

namespace impsel {

using nlohmann::json;

namespace {

/// Raised when a command ran but its result fails the check it reports on.
struct CommandFailed {
  json payload;
  int code = kExitFailure;
};

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ' ';
      s += e.is_array() ? "[" + scalar_text(e) + "]" : scalar_text(e);
    }
    return s;
  }
  return v.dump();
}

void print_pretty(const json& v, std::ostream& out, int indent = 0) {
  if (!v.is_object()) {
    out << std::string(indent, ' ') << scalar_text(v) << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& [key, _] : v.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : v.items()) {
    const bool nested = value.is_object() ||
                        (value.is_array() && !value.empty() && value.front().is_object());
    out << std::string(indent, ' ') << std::left << std::setw(static_cast<int>(width)) << key;
    if (!nested) {
      out << "  " << scalar_text(value) << '\n';
    } else if (value.is_object()) {
      out << '\n';
      print_pretty(value, out, indent + 2);
    } else {
      out << '\n';
      for (const auto& e : value) {
        print_pretty(e, out, indent + 2);
        out << '\n';
      }
    }
  }
}

void print_grid_pretty(const GuaranteeGrid& grid, std::ostream& out) {
  const bool with_m = !grid.cells.empty() && grid.cells.front().m.has_value();
  out << std::right << std::setw(5) << "n" << std::setw(5) << "k";
  if (with_m) out << std::setw(5) << "m";
  out << std::setw(10) << "alpha" << std::setw(10) << "decimal" << '\n';
  for (const auto& c : grid.cells) {
    out << std::setw(5) << c.n << std::setw(5) << c.k;
    if (with_m) out << std::setw(5) << *c.m;
    if (c.alpha) {
      std::ostringstream dec;
      dec << std::fixed << std::setprecision(4) << c.alpha->to_double();
      out << std::setw(10) << c.alpha->to_string() << std::setw(10) << dec.str() << '\n';
    } else {
      out << std::setw(10) << "n/a" << std::setw(10) << "n/a" << '\n';
    }
  }
}

std::uint64_t oracle_budget(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("IMPSEL_ORACLE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw ValidationError(std::string("IMPSEL_ORACLE_BUDGET: '") + env + "' is not a count");
    }
    return v;
  }
  return kDefaultOracleBudget;
}

int resolve_k(std::optional<int> flag, const InstanceFile& file) {
  if (flag) return *flag;
  if (file.k) return *file.k;
  throw PreconditionError("-k is required when the instance file does not specify k");
}

std::vector<Weight> parse_grid(const std::string& text) {
  std::vector<Weight> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double w = std::stod(item, &used);
      if (used != item.size() || w < 0) throw std::invalid_argument(item);
      grid.push_back(w);
    } catch (const std::exception&) {
      throw ValidationError("--grid: '" + item + "' is not a nonnegative weight");
    }
  }
  if (grid.empty()) throw ValidationError("--grid: empty");
  return grid;
}

struct Options {
  bool pretty = false;
  std::uint64_t seed = 1;

  std::string instance;
  std::optional<int> k;
  std::optional<int> n;
  std::string partition_file;
  bool oracle = false;
  bool assignment = false;
  std::optional<std::uint64_t> budget;

  std::string mechanism;
  int m = 1;
  std::string grid = "0,1,2";
  int max_support = -1;
  int random_deviations = 0;
  int max_weight = 10;
  int bases = 0;
  std::vector<std::string> base_files;
  std::uint64_t eval_budget = 0;
  int threads = 1;

  int n_min = 4, n_max = 40, k_min = 2, k_max = 40;
  std::optional<int> grid_m;
  std::string format = "json";

  std::string kind;
  double p = 0.5;
  bool sparse = false;
};

json cmd_select(const Options& o) {
  const InstanceFile file = parse_instance_file(o.instance);
  const WeightMatrix& a = file.as_matrix();
  SelectionResult r;
  int k = 0;
  if (!o.partition_file.empty()) {
    const PartitionSystem ps = parse_partition_file(o.partition_file);
    if (o.k && *o.k != ps.k()) {
      throw ValidationError("-k " + std::to_string(*o.k) + " does not match the partition file's k = " +
                            std::to_string(ps.k()));
    }
    k = ps.k();
    r = select_k(a, k, ps);
  } else {
    k = resolve_k(o.k, file);
    r = gen_select(a, k);
  }
  std::optional<OptSelection> opt;
  if (o.oracle) opt = opt_k(a, k);
  json out = to_json(r, opt);
  if (opt && !out.at("pass").get<bool>()) throw CommandFailed{out};
  return out;
}

json cmd_assign(const Options& o) {
  const InstanceFile file = parse_instance_file(o.instance);
  const InstanceTuple t = file.as_tuple();
  AssignmentResult r;
  int k = 0;
  if (!o.partition_file.empty()) {
    const PartitionSystem ps = parse_partition_file(o.partition_file);
    if (o.k && *o.k != ps.k()) {
      throw ValidationError("-k " + std::to_string(*o.k) + " does not match the partition file's k = " +
                            std::to_string(ps.k()));
    }
    k = ps.k();
    r = assign_k(t, k, ps);
  } else {
    k = resolve_k(o.k, file);
    r = gen_assign(t, k);
  }
  std::optional<OptAssignment> opt;
  if (o.oracle) opt = opt_assignment(t, k, oracle_budget(o.budget));
  json out = to_json(r, opt);
  if (opt && !out.at("pass").get<bool>()) throw CommandFailed{out};
  return out;
}

json cmd_opt(const Options& o) {
  const InstanceFile file = parse_instance_file(o.instance);
  const int k = resolve_k(o.k, file);
  if (o.assignment || file.is_tuple()) {
    const OptAssignment opt = opt_assignment(file.as_tuple(), k, oracle_budget(o.budget));
    return json{{"jobs", opt.assignment.jobs}, {"score", weight_to_json(opt.score)}, {"nodes", opt.nodes}};
  }
  const OptSelection opt = opt_k(file.as_matrix(), k);
  return json{{"set", opt.set}, {"score", weight_to_json(opt.score)}};
}

AssignmentMechanism make_mechanism(const std::string& id, int n, int m, int k) {
  const auto single_job = [&] {
    if (m != 1) throw PreconditionError("mechanism '" + id + "' selects for a single job; got --m " + std::to_string(m));
  };
  if (id == "select") {
    single_job();
    const PartitionSystem ps = PartitionSystem::build(n, k);
    return as_assignment_mechanism([ps, k](const WeightMatrix& a) { return select_k(a, k, ps).selected; });
  }
  if (id == "gen-select") {
    single_job();
    (void)padding_params(n, k);
    return as_assignment_mechanism([k](const WeightMatrix& a) { return gen_select(a, k).selected; });
  }
  if (id == "top-k") {
    single_job();
    return as_assignment_mechanism([k](const WeightMatrix& a) { return top_k_baseline(a, k); });
  }
  if (id == "constant") {
    return [m, k](const InstanceTuple&) {
      Assignment x;
      x.jobs.resize(static_cast<std::size_t>(m));
      for (Agent i = 1; i <= k; ++i) x.jobs[0].push_back(i);
      return x;
    };
  }
  if (id == "assign") {
    const PartitionSystem ps = PartitionSystem::build(n, k);
    return [ps, k](const InstanceTuple& t) { return assign_k(t, k, ps).assignment; };
  }
  if (id == "gen-assign") {
    (void)guarantee_alpha_assign(n, m, k);
    return [k](const InstanceTuple& t) { return gen_assign(t, k).assignment; };
  }
  throw PreconditionError("unknown mechanism '" + id +
                          "'; expected select, gen-select, assign, gen-assign, top-k or constant");
}

json cmd_verify(const Options& o) {
  if (!o.n || !o.k) throw PreconditionError("verify: -n and -k are required");
  DeviationSpace space;
  space.n = *o.n;
  space.m = o.m;
  space.grid = parse_grid(o.grid);
  space.max_support = o.max_support;
  space.exhaustive = o.random_deviations == 0;
  space.random_deviations = o.random_deviations;
  space.max_weight = o.max_weight;
  space.base_instances = o.bases;
  space.seed = o.seed;
  space.budget = o.eval_budget;
  space.threads = o.threads;
  for (const auto& path : o.base_files) space.fixed_bases.push_back(parse_instance_file(path).as_tuple());
  if (space.fixed_bases.empty() && space.base_instances == 0) space.base_instances = 1;
  const ImpartialityReport report = check_impartial(o.mechanism, make_mechanism(o.mechanism, *o.n, o.m, *o.k), space);
  json out = to_json(report);
  out["n"] = space.n;
  out["m"] = space.m;
  out["k"] = *o.k;
  if (report.violation_count > 0) throw CommandFailed{out};
  if (report.budget_exhausted) throw CommandFailed{out, kExitBudget};
  return out;
}

json cmd_tightness(const Options& o) {
  if (!o.n || !o.k) throw PreconditionError("tightness: -n and -k are required");
  const PartitionSystem ps = PartitionSystem::build(*o.n, *o.k);
  const WeightMatrix a = tightness_instance(*o.n, *o.k, ps);
  const SelectionResult r = select_k(a, *o.k, ps);
  const OptSelection opt = opt_k(a, *o.k);
  const Rational expected(1, ps.b());
  const bool exact = ratio_equals(r.score, opt.score, expected);
  json out{{"n", *o.n},
           {"k", *o.k},
           {"b", ps.b()},
           {"instance", to_json(a, true)},
           {"selected", r.selected},
           {"select_score", weight_to_json(r.score)},
           {"opt_score", weight_to_json(opt.score)},
           {"ratio", opt.score > 0 ? Rational(static_cast<std::int64_t>(r.score),
                                              static_cast<std::int64_t>(opt.score)).to_string()
                                   : std::string("1")},
           {"expected_ratio", expected.to_string()},
           {"pass", exact}};
  if (!exact) throw CommandFailed{out};
  return out;
}

json cmd_partitions(const Options& o) {
  if (!o.n || !o.k) throw PreconditionError("partitions: -n and -k are required");
  const PartitionSystem ps = PartitionSystem::build(*o.n, *o.k);
  const auto problems = check_partition_properties(ps, true);
  json out = to_json(ps);
  out["properties_hold"] = problems.empty();
  out["problems"] = problems;
  if (!problems.empty()) throw CommandFailed{out};
  return out;
}

InstanceFile cmd_generate(const Options& o) {
  const GeneratorParams params{*o.n, o.m, o.k.value_or(0), o.max_weight, o.p};
  InstanceFile file = generate(parse_generator_kind(o.kind), params, o.seed);
  if (o.sparse) file.sparse = true;
  if (o.format == "csv") file.format = Format::Csv;
  return file;
}

void emit(const json& v, const Options& o, std::ostream& out) {
  if (o.pretty) {
    print_pretty(v, out);
  } else {
    out << v.dump(2) << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Impartial selection and assignment mechanisms", "impsel"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", o.pretty, "Human-readable output instead of JSON");
  app.add_option("--seed", o.seed, "Seed for generators and random verification spaces");

  auto* select = app.add_subcommand("select", "Run the selection mechanism on an instance");
  select->add_option("instance", o.instance, "Instance file (.json or .csv)")->required();
  select->add_option("-k", o.k, "Number of agents to select");
  select->add_option("--partition-file", o.partition_file, "Use this partition system instead of the canonical one");
  select->add_flag("--oracle", o.oracle, "Compare against the optimum");

  auto* assign = app.add_subcommand("assign", "Run the assignment mechanism on an instance tuple");
  assign->add_option("instance", o.instance, "Instance file (.json or .csv)")->required();
  assign->add_option("-k", o.k, "Capacity of every job");
  assign->add_option("--partition-file", o.partition_file, "Use this partition system instead of the canonical one");
  assign->add_flag("--oracle", o.oracle, "Compare against the optimal assignment");
  assign->add_option("--budget", o.budget, "Oracle node budget (default: $IMPSEL_ORACLE_BUDGET or 1e7)");

  auto* opt = app.add_subcommand("opt", "Compute the optimum");
  opt->add_option("instance", o.instance, "Instance file (.json or .csv)")->required();
  opt->add_option("-k", o.k, "Set size or job capacity");
  opt->add_flag("--assignment", o.assignment, "Optimal assignment instead of optimal set");
  opt->add_option("--budget", o.budget, "Oracle node budget (default: $IMPSEL_ORACLE_BUDGET or 1e7)");

  auto* verify = app.add_subcommand("verify", "Check a mechanism for impartiality violations");
  verify->add_option("mechanism", o.mechanism, "select, gen-select, assign, gen-assign, top-k or constant")->required();
  verify->add_option("-n", o.n, "Number of agents")->required();
  verify->add_option("-k", o.k, "Selection size or job capacity")->required();
  verify->add_option("--m", o.m, "Number of jobs");
  verify->add_option("--grid", o.grid, "Comma-separated entry values");
  verify->add_option("--max-support", o.max_support, "Most nonzero entries in a deviating row (-1: any)");
  verify->add_option("--random", o.random_deviations, "Sampled deviations per agent instead of exhaustive");
  verify->add_option("--max-weight", o.max_weight, "Entry bound for sampled deviations");
  verify->add_option("--bases", o.bases, "Random base instances drawn from the grid");
  verify->add_option("--base", o.base_files, "Base instance file (repeatable)");
  verify->add_option("--budget", o.eval_budget, "Cap on mechanism evaluations (0: none)");
  verify->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* tight = app.add_subcommand("tightness", "Evaluate the worst-case instance");
  tight->add_option("-n", o.n, "Number of agents")->required();
  tight->add_option("-k", o.k, "Selection size")->required();

  auto* parts = app.add_subcommand("partitions", "Build and check the canonical partition system");
  parts->add_option("-n", o.n, "Number of agents")->required();
  parts->add_option("-k", o.k, "Number of partitions")->required();

  auto* grid = app.add_subcommand("alpha-grid", "Tabulate the guarantee over ranges of n and k");
  grid->add_option("--n-min", o.n_min);
  grid->add_option("--n-max", o.n_max);
  grid->add_option("--k-min", o.k_min);
  grid->add_option("--k-max", o.k_max);
  grid->add_option("--m", o.grid_m, "Assignment guarantee for m jobs");
  grid->add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));

  auto* gen = app.add_subcommand("generate", "Generate an instance");
  gen->add_option("kind", o.kind, "uniform-int, unweighted-bernoulli or tightness")->required();
  gen->add_option("-n", o.n, "Number of agents")->required();
  gen->add_option("-k", o.k, "Selection size (tightness)");
  gen->add_option("--m", o.m, "Number of jobs");
  gen->add_option("--max", o.max_weight, "Largest weight (uniform-int)");
  gen->add_option("-p", o.p, "Vote probability (unweighted-bernoulli)");
  gen->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  gen->add_flag("--sparse", o.sparse, "Emit JSON triplets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*select) {
      emit(cmd_select(o), o, out);
    } else if (*assign) {
      emit(cmd_assign(o), o, out);
    } else if (*opt) {
      emit(cmd_opt(o), o, out);
    } else if (*verify) {
      emit(cmd_verify(o), o, out);
    } else if (*tight) {
      emit(cmd_tightness(o), o, out);
    } else if (*parts) {
      emit(cmd_partitions(o), o, out);
    } else if (*grid) {
      const GuaranteeGrid g = alpha_grid(o.n_min, o.n_max, o.k_min, o.k_max, o.grid_m);
      if (o.pretty) {
        print_grid_pretty(g, out);
      } else if (o.format == "tsv") {
        out << g.to_tsv();
      } else {
        out << g.to_json().dump(2) << '\n';
      }
    } else if (*gen) {
      const InstanceFile file = cmd_generate(o);
      if (o.pretty && file.format == Format::Json) {
        emit(json::parse(serialize_instance(file)), o, out);
      } else {
        out << serialize_instance(file);
      }
    }
    return kExitOk;
  } catch (const CommandFailed& f) {
    emit(f.payload, o, out);
    return f.code;
  } catch (const ApplicabilityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace impsel
