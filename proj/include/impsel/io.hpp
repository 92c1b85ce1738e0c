#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "impsel/assignment.hpp"
#include "impsel/core.hpp"
#include "impsel/oracle.hpp"
#include "impsel/partition.hpp"
#include "impsel/random.hpp"
#include "impsel/selection.hpp"
#include "json.hpp"

namespace impsel {

/// Malformed input file; the message carries the line or field location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

/// A parsed instance file. JSON files hold either one dense `weights` matrix,
/// sparse 1-indexed `triplets`, or a `matrices` array of either for a tuple.
/// CSV files start with a `n[,m[,k]]` header followed by m blocks of n rows.
struct InstanceFile {
  Format format = Format::Json;
  std::variant<WeightMatrix, InstanceTuple> data;
  std::optional<int> k;
  /// Serialize JSON matrices as triplets instead of dense rows.
  bool sparse = false;

  bool is_tuple() const { return std::holds_alternative<InstanceTuple>(data); }
  /// Single matrices are promoted to a one-job tuple.
  InstanceTuple as_tuple() const;
  /// Throws ValidationError for tuples with more than one job.
  const WeightMatrix& as_matrix() const;
};

InstanceFile parse_instance(std::string_view text, Format format);
/// Format chosen by extension: `.csv` is CSV, anything else JSON.
InstanceFile parse_instance_file(const std::string& path);
std::string serialize_instance(const InstanceFile& file);

// Generators -----------------------------------------------------------------

enum class GeneratorKind { UniformInt, UnweightedBernoulli, Tightness };

GeneratorKind parse_generator_kind(std::string_view name);
std::string to_string(GeneratorKind kind);

struct GeneratorParams {
  int n = 0;
  int m = 1;
  int k = 0;           // tightness only
  int max_weight = 10; // uniform-int only
  double p = 0.5;      // unweighted-bernoulli only
};

/// Deterministic in (kind, params, seed). Tightness ignores the seed.
InstanceFile generate(GeneratorKind kind, const GeneratorParams& params, std::uint64_t seed);

/// Off-diagonal entries uniform in [0, max_weight].
WeightMatrix random_uniform_matrix(int n, int max_weight, Rng& rng);
/// Off-diagonal entries 1 with probability p.
WeightMatrix random_bernoulli_matrix(int n, double p, Rng& rng);

// Guarantee grid --------------------------------------------------------------

struct GridCell {
  int n = 0;
  int k = 0;
  std::optional<int> m;
  std::optional<Rational> alpha;  // empty when the guarantee does not apply
};

struct GuaranteeGrid {
  std::vector<GridCell> cells;

  std::string to_tsv() const;
  nlohmann::json to_json() const;
};

/// alpha for every (n, k) in the ranges; with m set, the assignment guarantee.
GuaranteeGrid alpha_grid(int n_min, int n_max, int k_min, int k_max,
                         std::optional<int> m = std::nullopt);

// JSON views -------------------------------------------------------------------

/// Integral weights become JSON integers, others doubles.
nlohmann::json weight_to_json(Weight w);
nlohmann::json rational_to_json(const Rational& r);

nlohmann::json to_json(const PartitionSystem& ps);
PartitionSystem partition_from_json(const nlohmann::json& j);
PartitionSystem parse_partition_file(const std::string& path);

nlohmann::json to_json(const SelectionResult& r, const std::optional<OptSelection>& opt);
nlohmann::json to_json(const AssignmentResult& r, const std::optional<OptAssignment>& opt);
nlohmann::json to_json(const Assignment& x);
nlohmann::json to_json(const RatioReport& r);
nlohmann::json to_json(const ImpartialityReport& r);
nlohmann::json to_json(const WeightMatrix& a, bool sparse);

}  // namespace impsel
