#include "impsel/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace impsel {

using nlohmann::json;

InstanceTuple InstanceFile::as_tuple() const {
  if (const auto* t = std::get_if<InstanceTuple>(&data)) return *t;
  return InstanceTuple({std::get<WeightMatrix>(data)});
}

const WeightMatrix& InstanceFile::as_matrix() const {
  if (const auto* a = std::get_if<WeightMatrix>(&data)) return *a;
  const auto& t = std::get<InstanceTuple>(data);
  if (t.m() != 1) {
    throw ValidationError("expected a single weight matrix, got a tuple of " +
                          std::to_string(t.m()) + " matrices");
  }
  return t.job(1);
}

namespace {

std::string format_weight(Weight w) {
  if (w == std::floor(w) && std::fabs(w) < 9.0e15) {
    return std::to_string(static_cast<long long>(w));
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string where(int line, int field) {
  return "line " + std::to_string(line) + ", field " + std::to_string(field);
}

double parse_number(std::string_view s, int line, int field) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(where(line, field) + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

int parse_count(std::string_view s, int line, int field, const char* name) {
  const double v = parse_number(s, line, field);
  if (v != std::floor(v) || v < 1 || v > 1e6) {
    throw ParseError(where(line, field) + ": " + name + " must be a positive integer");
  }
  return static_cast<int>(v);
}

InstanceFile parse_csv(std::string_view text) {
  struct Line {
    int number;
    std::string_view content;
  };
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++number;
    const auto content = trim(raw);
    if (!content.empty() && content.front() != '#') lines.push_back({number, content});
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty()) throw ParseError("line 1: missing 'n[,m[,k]]' header");

  const auto header = split_commas(lines[0].content);
  if (header.size() > 3) throw ParseError("line " + std::to_string(lines[0].number) + ": header has more than 3 fields");
  const int n = parse_count(header[0], lines[0].number, 1, "n");
  const int m = header.size() > 1 ? parse_count(header[1], lines[0].number, 2, "m") : 1;
  InstanceFile file;
  file.format = Format::Csv;
  if (header.size() > 2) file.k = parse_count(header[2], lines[0].number, 3, "k");

  const std::size_t expected = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  if (lines.size() - 1 != expected) {
    const int at = lines.size() - 1 < expected ? number : lines[expected + 1].number;
    throw ParseError("line " + std::to_string(at) + ": expected " + std::to_string(expected) +
                     " matrix rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<WeightMatrix> jobs;
  for (int l = 0; l < m; ++l) {
    WeightMatrix a(n);
    for (int i = 0; i < n; ++i) {
      const Line& line = lines[1 + static_cast<std::size_t>(l) * n + i];
      const auto fields = split_commas(line.content);
      if (static_cast<int>(fields.size()) != n) {
        throw ValidationError("line " + std::to_string(line.number) + ": ragged row with " +
                              std::to_string(fields.size()) + " entries, expected " +
                              std::to_string(n));
      }
      for (int j = 0; j < n; ++j) {
        const double w = parse_number(fields[j], line.number, j + 1);
        try {
          a.set(i + 1, j + 1, w);
        } catch (const ValidationError& e) {
          throw ValidationError(where(line.number, j + 1) + ": " + e.what());
        }
      }
    }
    jobs.push_back(std::move(a));
  }
  if (m == 1) {
    file.data = std::move(jobs.front());
  } else {
    file.data = InstanceTuple(std::move(jobs));
  }
  return file;
}

int json_count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw ParseError("field '" + field + "': expected a positive integer");
  }
  return j.get<int>();
}

WeightMatrix matrix_from_json(const json& j, int n, const std::string& path, bool& sparse) {
  WeightMatrix a(n);
  if (j.contains("weights")) {
    const json& rows = j.at("weights");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
      throw ValidationError("field '" + path + "weights': expected " + std::to_string(n) + " rows");
    }
    for (int i = 0; i < n; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      const std::string row_path = path + "weights[" + std::to_string(i) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != n) {
        throw ValidationError("field '" + row_path + "': ragged row, expected " +
                              std::to_string(n) + " entries");
      }
      for (int c = 0; c < n; ++c) {
        const json& w = row[static_cast<std::size_t>(c)];
        if (!w.is_number()) {
          throw ParseError("field '" + row_path + "[" + std::to_string(c) + "]': not a number");
        }
        try {
          a.set(i + 1, c + 1, w.get<double>());
        } catch (const ValidationError& e) {
          throw ValidationError("field '" + row_path + "[" + std::to_string(c) + "]': " + e.what());
        }
      }
    }
    return a;
  }
  if (j.contains("triplets")) {
    sparse = true;
    const json& triplets = j.at("triplets");
    if (!triplets.is_array()) throw ParseError("field '" + path + "triplets': expected an array");
    std::set<std::pair<int, int>> seen;
    for (std::size_t t = 0; t < triplets.size(); ++t) {
      const json& tr = triplets[t];
      const std::string tpath = path + "triplets[" + std::to_string(t) + "]";
      if (!tr.is_array() || tr.size() != 3 || !tr[0].is_number_integer() ||
          !tr[1].is_number_integer() || !tr[2].is_number()) {
        throw ParseError("field '" + tpath + "': expected [voter, candidate, weight]");
      }
      const int i = tr[0].get<int>();
      const int c = tr[1].get<int>();
      if (i < 1 || i > n || c < 1 || c > n) {
        throw ValidationError("field '" + tpath + "': agent index outside [1, " +
                              std::to_string(n) + "]");
      }
      if (i == c) throw ValidationError("field '" + tpath + "': diagonal vote by agent " + std::to_string(i));
      if (!seen.emplace(i, c).second) {
        throw ValidationError("field '" + tpath + "': duplicate entry (" + std::to_string(i) +
                              ", " + std::to_string(c) + ")");
      }
      try {
        a.set(i, c, tr[2].get<double>());
      } catch (const ValidationError& e) {
        throw ValidationError("field '" + tpath + "': " + e.what());
      }
    }
    return a;
  }
  throw ParseError("field '" + path + "': expected 'weights' or 'triplets'");
}

InstanceFile parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("JSON: top level must be an object");
  if (!doc.contains("n")) throw ParseError("field 'n': missing");
  const int n = json_count(doc.at("n"), "n");
  InstanceFile file;
  file.format = Format::Json;
  if (doc.contains("k")) file.k = json_count(doc.at("k"), "k");
  if (doc.contains("matrices")) {
    const json& ms = doc.at("matrices");
    if (!ms.is_array() || ms.empty()) throw ParseError("field 'matrices': expected a non-empty array");
    if (doc.contains("m") && json_count(doc.at("m"), "m") != static_cast<int>(ms.size())) {
      throw ValidationError("field 'm': does not match the number of matrices");
    }
    std::vector<WeightMatrix> jobs;
    for (std::size_t l = 0; l < ms.size(); ++l)
      jobs.push_back(matrix_from_json(ms[l], n, "matrices[" + std::to_string(l) + "].", file.sparse));
    file.data = InstanceTuple(std::move(jobs));
  } else {
    file.data = matrix_from_json(doc, n, "", file.sparse);
  }
  return file;
}

}  // namespace

InstanceFile parse_instance(std::string_view text, Format format) {
  return format == Format::Csv ? parse_csv(text) : parse_json(text);
}

InstanceFile parse_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return parse_instance(buf.str(), csv ? Format::Csv : Format::Json);
}

json weight_to_json(Weight w) {
  if (w == std::floor(w) && std::fabs(w) < 9.0e15) return static_cast<long long>(w);
  return w;
}

json rational_to_json(const Rational& r) { return r.to_string(); }

json to_json(const WeightMatrix& a, bool sparse) {
  json out = json::object();
  if (sparse) {
    json triplets = json::array();
    for (Agent i = 1; i <= a.n(); ++i)
      for (Agent j = 1; j <= a.n(); ++j)
        if (a(i, j) != 0) triplets.push_back({i, j, weight_to_json(a(i, j))});
    out["triplets"] = std::move(triplets);
  } else {
    json rows = json::array();
    for (Agent i = 1; i <= a.n(); ++i) {
      json row = json::array();
      for (Agent j = 1; j <= a.n(); ++j) row.push_back(weight_to_json(a(i, j)));
      rows.push_back(std::move(row));
    }
    out["weights"] = std::move(rows);
  }
  return out;
}

std::string serialize_instance(const InstanceFile& file) {
  const InstanceTuple t = file.as_tuple();
  if (file.format == Format::Csv) {
    std::ostringstream out;
    out << t.n();
    if (t.m() > 1 || file.k) out << ',' << t.m();
    if (file.k) out << ',' << *file.k;
    out << '\n';
    for (const auto& a : t.matrices()) {
      for (Agent i = 1; i <= a.n(); ++i) {
        for (Agent j = 1; j <= a.n(); ++j) out << (j > 1 ? "," : "") << format_weight(a(i, j));
        out << '\n';
      }
    }
    return out.str();
  }
  json doc;
  doc["n"] = t.n();
  if (file.k) doc["k"] = *file.k;
  if (file.is_tuple()) {
    doc["m"] = t.m();
    json ms = json::array();
    for (const auto& a : t.matrices()) ms.push_back(to_json(a, file.sparse));
    doc["matrices"] = std::move(ms);
  } else {
    doc.update(to_json(t.job(1), file.sparse));
  }
  return doc.dump() + "\n";
}

// Generators -----------------------------------------------------------------

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "uniform-int") return GeneratorKind::UniformInt;
  if (name == "unweighted-bernoulli") return GeneratorKind::UnweightedBernoulli;
  if (name == "tightness") return GeneratorKind::Tightness;
  throw PreconditionError("unknown generator kind '" + std::string(name) + "'");
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::UniformInt: return "uniform-int";
    case GeneratorKind::UnweightedBernoulli: return "unweighted-bernoulli";
    case GeneratorKind::Tightness: return "tightness";
  }
  return "?";
}

WeightMatrix random_uniform_matrix(int n, int max_weight, Rng& rng) {
  WeightMatrix a(n);
  for (Agent i = 1; i <= n; ++i)
    for (Agent j = 1; j <= n; ++j)
      if (i != j) a.set(i, j, static_cast<Weight>(rng.uniform_int(0, max_weight)));
  return a;
}

WeightMatrix random_bernoulli_matrix(int n, double p, Rng& rng) {
  WeightMatrix a(n);
  for (Agent i = 1; i <= n; ++i)
    for (Agent j = 1; j <= n; ++j)
      if (i != j && rng.bernoulli(p)) a.set(i, j, 1.0);
  return a;
}

InstanceFile generate(GeneratorKind kind, const GeneratorParams& params, std::uint64_t seed) {
  if (params.n < 2) throw PreconditionError("generate: n must be at least 2");
  if (params.m < 1) throw PreconditionError("generate: m must be at least 1");
  InstanceFile file;
  Rng rng(seed);
  std::vector<WeightMatrix> jobs;
  switch (kind) {
    case GeneratorKind::UniformInt:
      if (params.max_weight < 0) throw PreconditionError("generate: max weight must be >= 0");
      for (int l = 0; l < params.m; ++l) jobs.push_back(random_uniform_matrix(params.n, params.max_weight, rng));
      break;
    case GeneratorKind::UnweightedBernoulli:
      if (!(params.p >= 0.0 && params.p <= 1.0)) throw PreconditionError("generate: p must lie in [0, 1]");
      for (int l = 0; l < params.m; ++l) jobs.push_back(random_bernoulli_matrix(params.n, params.p, rng));
      break;
    case GeneratorKind::Tightness: {
      if (params.m != 1) throw PreconditionError("generate: tightness instances have one job");
      const PartitionSystem ps = PartitionSystem::build(params.n, params.k);
      jobs.push_back(tightness_instance(params.n, params.k, ps));
      file.k = params.k;
      file.sparse = true;
      break;
    }
  }
  if (jobs.size() == 1) {
    file.data = std::move(jobs.front());
  } else {
    file.data = InstanceTuple(std::move(jobs));
  }
  return file;
}

// Guarantee grid --------------------------------------------------------------

GuaranteeGrid alpha_grid(int n_min, int n_max, int k_min, int k_max, std::optional<int> m) {
  GuaranteeGrid grid;
  for (int n = n_min; n <= n_max; ++n) {
    for (int k = k_min; k <= k_max; ++k) {
      GridCell cell{n, k, m, std::nullopt};
      try {
        cell.alpha = m ? guarantee_alpha_assign(n, *m, k) : guarantee_alpha(n, k);
      } catch (const ApplicabilityError&) {
      }
      grid.cells.push_back(cell);
    }
  }
  return grid;
}

std::string GuaranteeGrid::to_tsv() const {
  const bool with_m = !cells.empty() && cells.front().m.has_value();
  std::ostringstream out;
  out << "n\tk\t" << (with_m ? "m\t" : "") << "alpha_num\talpha_den\talpha_decimal\n";
  for (const auto& c : cells) {
    out << c.n << '\t' << c.k << '\t';
    if (with_m) out << *c.m << '\t';
    if (c.alpha) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", c.alpha->to_double());
      out << c.alpha->num() << '\t' << c.alpha->den() << '\t' << buf << '\n';
    } else {
      out << "n/a\tn/a\tn/a\n";
    }
  }
  return out.str();
}

json GuaranteeGrid::to_json() const {
  json rows = json::array();
  for (const auto& c : cells) {
    json row{{"n", c.n}, {"k", c.k}};
    if (c.m) row["m"] = *c.m;
    if (c.alpha) {
      row["alpha"] = c.alpha->to_string();
      row["alpha_decimal"] = c.alpha->to_double();
    } else {
      row["alpha"] = "n/a";
    }
    rows.push_back(std::move(row));
  }
  return json{{"cells", std::move(rows)}};
}

// JSON views -------------------------------------------------------------------

json to_json(const PartitionSystem& ps) {
  return json{{"n", ps.n()},
              {"k", ps.k()},
              {"b", ps.b()},
              {"candidate_sets", ps.candidate_sets()},
              {"colors", ps.colors()}};
}

PartitionSystem partition_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    auto sets = j.at("candidate_sets").get<std::vector<AgentSet>>();
    auto colors = j.at("colors").get<std::vector<int>>();
    if (j.contains("k") && j.at("k").get<int>() != static_cast<int>(sets.size())) {
      throw ValidationError("partition file: k does not match the number of candidate sets");
    }
    PartitionSystem ps = PartitionSystem::from_sets(n, std::move(sets), std::move(colors));
    if (j.contains("b") && j.at("b").get<int>() != ps.b()) {
      throw ValidationError("partition file: b does not match the candidate set size");
    }
    return ps;
  } catch (const json::exception& e) {
    throw ParseError(std::string("partition file: ") + e.what());
  }
}

PartitionSystem parse_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("partition file: ") + e.what());
  }
  return partition_from_json(doc);
}

namespace {

void add_ratio(json& out, Weight score, Weight opt, const Rational& alpha) {
  out["opt_score"] = weight_to_json(opt);
  const RatioReport r = make_ratio_report("", score, opt, alpha);
  const bool integral = score == std::floor(score) && opt == std::floor(opt) && opt < 9.0e15;
  if (opt == 0) {
    out["ratio"] = "1";
  } else if (integral) {
    out["ratio"] = Rational(static_cast<std::int64_t>(score), static_cast<std::int64_t>(opt)).to_string();
  } else {
    out["ratio"] = r.ratio;
  }
  out["ratio_decimal"] = r.ratio;
  out["pass"] = r.pass;
}

}  // namespace

json to_json(const SelectionResult& r, const std::optional<OptSelection>& opt) {
  json out{{"selected", r.selected},
           {"winners", r.winners},
           {"score", weight_to_json(r.score)},
           {"alpha", rational_to_json(r.alpha)},
           {"alpha_decimal", r.alpha.to_double()}};
  if (r.params) {
    out["params"] = {{"k_tilde", r.params->k_tilde}, {"n_tilde", r.params->n_tilde}, {"b", r.params->b}};
  }
  if (opt) {
    add_ratio(out, r.score, opt->score, r.alpha);
    out["opt_set"] = opt->set;
  }
  return out;
}

json to_json(const Assignment& x) { return json{{"jobs", x.jobs}}; }

json to_json(const AssignmentResult& r, const std::optional<OptAssignment>& opt) {
  json out{{"jobs", r.assignment.jobs},
           {"score", weight_to_json(r.score)},
           {"alpha", rational_to_json(r.alpha)},
           {"alpha_decimal", r.alpha.to_double()}};
  if (r.params) {
    out["params"] = {{"k_tilde", r.params->k_tilde}, {"n_tilde", r.params->n_tilde}, {"b", r.params->b}};
  }
  if (opt) {
    add_ratio(out, r.score, opt->score, r.alpha);
    out["opt_jobs"] = opt->assignment.jobs;
  }
  return out;
}

json to_json(const RatioReport& r) {
  return json{{"instance", r.instance_id},
              {"mechanism_score", weight_to_json(r.mechanism_score)},
              {"oracle_score", weight_to_json(r.oracle_score)},
              {"ratio", r.ratio},
              {"alpha", rational_to_json(r.alpha)},
              {"pass", r.pass}};
}

json to_json(const ImpartialityReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    json row = json::array();
    for (Weight w : v.deviating_row) row.push_back(weight_to_json(w));
    violations.push_back({{"instance", v.instance},
                          {"agent", v.agent},
                          {"deviating_row", std::move(row)},
                          {"before", v.before},
                          {"after", v.after}});
  }
  return json{{"mechanism", r.mechanism},
              {"trials", r.trials},
              {"violation_count", r.violation_count},
              {"violations", std::move(violations)},
              {"budget_exhausted", r.budget_exhausted},
              {"certified", r.certified()}};
}

}  // namespace impsel
