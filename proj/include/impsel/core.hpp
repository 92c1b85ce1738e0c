#pragma once

#include <cstdint>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace impsel {

/// Agents are labeled 1..n throughout the public interface.
using Agent = int;

/// Sorted, duplicate-free list of agent labels.
using AgentSet = std::vector<Agent>;

using Weight = double;

/// Violated precondition of an operation (bad parameters, mismatched sizes).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (n, k) outside the range where the approximation guarantees apply.
class ApplicabilityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Input data breaks a WeightMatrix / instance invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact non-negative-denominator rational, always stored in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  Rational operator*(const Rational& other) const;
  Rational operator/(const Rational& other) const;

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// value >= alpha, evaluated as value * den >= num in floating point. Exact
/// whenever value is an integer below 2^53 / den.
bool at_least(Weight value, const Rational& alpha);

/// numerator / denominator == alpha, exact under the same conditions.
bool ratio_equals(Weight numerator, Weight denominator, const Rational& alpha);

/// Non-negative n x n matrix with zero diagonal. Entry (i, j) is the weight of
/// the vote cast by agent i for agent j.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(int n);

  /// Builds from dense rows; throws ValidationError for ragged, negative,
  /// non-finite or diagonal entries.
  static WeightMatrix from_rows(const std::vector<std::vector<Weight>>& rows);

  int n() const { return n_; }
  Weight operator()(Agent voter, Agent candidate) const {
    return w_[index(voter, candidate)];
  }
  void set(Agent voter, Agent candidate, Weight w);

  std::span<const Weight> row(Agent voter) const;
  void set_row(Agent voter, std::span<const Weight> values);

  /// sigma(j): total weight received by j.
  Weight column_sum(Agent candidate) const;
  std::vector<Weight> column_sums() const;

  /// Copy extended with zero rows/columns up to size n_new >= n.
  WeightMatrix padded(int n_new) const;

  bool is_integral() const;

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t index(Agent voter, Agent candidate) const {
    return static_cast<std::size_t>(voter - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(candidate - 1);
  }
  void check_agent(Agent a) const;

  int n_ = 0;
  std::vector<Weight> w_;
};

/// sigma_R(S; A): sum of A(i, j) over voters i in R and candidates j in S.
Weight total_score(const WeightMatrix& a, const AgentSet& voters, const AgentSet& candidates);

/// sigma(S; A) with R = [n].
Weight total_score(const WeightMatrix& a, const AgentSet& candidates);

/// {1, ..., n}
AgentSet all_agents(int n);

}  // namespace impsel
