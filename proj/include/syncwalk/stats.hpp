#pragma once

#include <vector>

#include "syncwalk/chain.hpp"

namespace syncwalk {

// -t ln t, continuously extended by phi(0) = 0.
double phi(double t);

// (1/2) sum |p_i - q_i| over equal-length vectors.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

// TV between empirical frequencies of `counts` and `target`.
double tv_distance_counts(const std::vector<long long>& counts, const Distribution& target);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

// Pearson statistic of observed counts against expected probabilities
// (cells with zero expectation must have zero count).
double chi_square_stat(const std::vector<long long>& counts, const Distribution& expected);

// Upper-tail p-value of the chi-square distribution with df degrees of freedom.
double chi_square_pvalue(double stat, int df);

}  // namespace syncwalk
