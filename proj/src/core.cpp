#include "impsel/core.hpp"

#include <cmath>
#include <numeric>

namespace impsel {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw PreconditionError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator*(const Rational& other) const {
  return Rational(num_ * other.num_, den_ * other.den_);
}

Rational Rational::operator/(const Rational& other) const {
  return Rational(num_ * other.den_, den_ * other.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool at_least(Weight value, const Rational& alpha) {
  return value * static_cast<double>(alpha.den()) >= static_cast<double>(alpha.num());
}

bool ratio_equals(Weight numerator, Weight denominator, const Rational& alpha) {
  return numerator * static_cast<double>(alpha.den()) ==
         denominator * static_cast<double>(alpha.num());
}

WeightMatrix::WeightMatrix(int n) : n_(n) {
  if (n < 0) throw PreconditionError("WeightMatrix: negative dimension");
  w_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
}

WeightMatrix WeightMatrix::from_rows(const std::vector<std::vector<Weight>>& rows) {
  const int n = static_cast<int>(rows.size());
  WeightMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw ValidationError("row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
    for (int j = 0; j < n; ++j) m.set(i + 1, j + 1, rows[i][j]);
  }
  return m;
}

void WeightMatrix::check_agent(Agent a) const {
  if (a < 1 || a > n_) {
    throw PreconditionError("agent " + std::to_string(a) + " outside [1, " +
                            std::to_string(n_) + "]");
  }
}

void WeightMatrix::set(Agent voter, Agent candidate, Weight w) {
  check_agent(voter);
  check_agent(candidate);
  if (!std::isfinite(w) || w < 0) {
    throw ValidationError("weight (" + std::to_string(voter) + ", " +
                          std::to_string(candidate) + ") must be finite and non-negative");
  }
  if (voter == candidate && w != 0) {
    throw ValidationError("diagonal vote by agent " + std::to_string(voter));
  }
  w_[index(voter, candidate)] = w;
}

std::span<const Weight> WeightMatrix::row(Agent voter) const {
  check_agent(voter);
  return {w_.data() + index(voter, 1), static_cast<std::size_t>(n_)};
}

void WeightMatrix::set_row(Agent voter, std::span<const Weight> values) {
  check_agent(voter);
  if (static_cast<int>(values.size()) != n_) {
    throw PreconditionError("set_row: expected " + std::to_string(n_) + " entries");
  }
  for (int j = 1; j <= n_; ++j) set(voter, j, values[j - 1]);
}

Weight WeightMatrix::column_sum(Agent candidate) const {
  check_agent(candidate);
  Weight s = 0;
  for (Agent i = 1; i <= n_; ++i) s += w_[index(i, candidate)];
  return s;
}

std::vector<Weight> WeightMatrix::column_sums() const {
  std::vector<Weight> sums(static_cast<std::size_t>(n_), 0.0);
  for (Agent i = 1; i <= n_; ++i)
    for (Agent j = 1; j <= n_; ++j) sums[j - 1] += w_[index(i, j)];
  return sums;
}

WeightMatrix WeightMatrix::padded(int n_new) const {
  if (n_new < n_) throw PreconditionError("padded: target size smaller than n");
  WeightMatrix out(n_new);
  for (Agent i = 1; i <= n_; ++i)
    for (Agent j = 1; j <= n_; ++j) out.w_[out.index(i, j)] = w_[index(i, j)];
  return out;
}

bool WeightMatrix::is_integral() const {
  for (Weight w : w_)
    if (w != std::floor(w)) return false;
  return true;
}

namespace {
void check_set(const WeightMatrix& a, const AgentSet& s) {
  for (Agent x : s)
    if (x < 1 || x > a.n())
      throw PreconditionError("agent " + std::to_string(x) + " outside [1, " +
                              std::to_string(a.n()) + "]");
}
}  // namespace

Weight total_score(const WeightMatrix& a, const AgentSet& voters, const AgentSet& candidates) {
  check_set(a, voters);
  check_set(a, candidates);
  Weight s = 0;
  for (Agent j : candidates)
    for (Agent i : voters) s += a(i, j);
  return s;
}

Weight total_score(const WeightMatrix& a, const AgentSet& candidates) {
  Weight s = 0;
  for (Agent j : candidates) s += a.column_sum(j);
  return s;
}

AgentSet all_agents(int n) {
  AgentSet out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), 1);
  return out;
}

}  // namespace impsel
