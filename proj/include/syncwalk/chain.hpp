#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "syncwalk/rational.hpp"

namespace syncwalk {

// Row-stochastic transition matrix over states 0..m-1 with exact rational
// entries. q(x, y) is the probability of stepping from x to y.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(std::vector<std::vector<Rat>> rows);

  int size() const { return m_; }
  const Rat& q(int x, int y) const { return a_[static_cast<size_t>(x) * m_ + y]; }

  // Row support sizes (out-degrees of the transition digraph).
  int row_support(int x) const;
  bool same_support(const StochasticMatrix& other) const;

  bool operator==(const StochasticMatrix& other) const = default;

 private:
  int m_;
  std::vector<Rat> a_;  // row-major
};

// Probability vector over 0..m-1, exact, entries >= 0 summing to 1.
class Distribution {
 public:
  explicit Distribution(std::vector<Rat> w);

  int size() const { return static_cast<int>(w_.size()); }
  const Rat& p(int x) const { return w_[static_cast<size_t>(x)]; }
  const std::vector<Rat>& weights() const { return w_; }

  bool operator==(const Distribution& other) const = default;

 private:
  std::vector<Rat> w_;
};

enum class ChainClass { Mixing, IrreduciblePeriodic, Reducible };

struct Classification {
  ChainClass kind;
  // Mixing: least r with Q^r everywhere positive. 0 otherwise.
  int positive_power = 0;
  // IrreduciblePeriodic: the period (> 1). 1 for Mixing, 0 for Reducible.
  int period = 0;
};

const char* chain_class_name(ChainClass c);

// Mixing is decided by boolean support powers up to the primitivity bound
// m^2 - 2m + 2; otherwise strong connectivity splits the remaining classes.
Classification classify(const StochasticMatrix& q);

// Directed edge set {(x, y) : q(x, y) > 0}.
std::vector<std::pair<int, int>> support(const StochasticMatrix& q);

// Exact Q^n (n >= 0; n = 0 gives the identity).
StochasticMatrix matrix_power(const StochasticMatrix& q, long long n);

// Unique stationary law. Throws PreconditionError("no unique stationary law")
// when classify(q) is Reducible.
Distribution stationary(const StochasticMatrix& q);

// Normalized fixed point of the transpose system when it is unique, without
// any class check (a reducible chain with a single closed class qualifies).
std::optional<Distribution> solve_stationary(const StochasticMatrix& q);

// Entry-wise best rational approximation with denominators <= max_den.
// Exact zeros stay zero, positive entries stay positive (bumped to 1/max_den
// if they would round to zero), and each row is repaired to sum to one by
// adjusting its largest entry. Requires max_den >= m, entries >= 0 and row
// sums within 1e-6 of one; throws PreconditionError otherwise.
StochasticMatrix rationalize(const std::vector<std::vector<double>>& rows, long long max_den);

}  // namespace syncwalk
