#include "syncwalk/stats.hpp"

#include <cmath>
#include <stdexcept>

#include "syncwalk/errors.hpp"

namespace syncwalk {

double phi(double t) {
  if (t < 0) throw PreconditionError("phi needs a non-negative argument");
  if (t == 0.0) return 0.0;
  return -t * std::log(t);
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw PreconditionError("vectors of different lengths");
  double s = 0;
  for (size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
  return s / 2;
}

double tv_distance_counts(const std::vector<long long>& counts, const Distribution& target) {
  if (static_cast<int>(counts.size()) != target.size())
    throw PreconditionError("count vector does not match the distribution");
  long long n = 0;
  for (long long c : counts) n += c;
  if (n <= 0) throw PreconditionError("empty sample");
  double s = 0;
  for (size_t i = 0; i < counts.size(); ++i)
    s += std::fabs(static_cast<double>(counts[i]) / static_cast<double>(n) -
                   to_double(target.p(static_cast<int>(i))));
  return s / 2;
}

namespace {

// Series expansion of P(a, x), reliable for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < 10000; ++i) {
    ap += 1;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), reliable for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1 - a;
  double c = 1 / tiny;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0) || x < 0) throw PreconditionError("invalid incomplete gamma arguments");
  if (x == 0) return 0;
  if (x < a + 1) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double chi_square_stat(const std::vector<long long>& counts, const Distribution& expected) {
  if (static_cast<int>(counts.size()) != expected.size())
    throw PreconditionError("count vector does not match the distribution");
  long long n = 0;
  for (long long c : counts) n += c;
  if (n <= 0) throw PreconditionError("empty sample");
  double stat = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    const double e = to_double(expected.p(static_cast<int>(i))) * static_cast<double>(n);
    if (e == 0.0) {
      if (counts[i] != 0) throw PreconditionError("observed mass on a zero-probability cell");
      continue;
    }
    const double diff = static_cast<double>(counts[i]) - e;
    stat += diff * diff / e;
  }
  return stat;
}

double chi_square_pvalue(double stat, int df) {
  if (df < 1) throw PreconditionError("degrees of freedom must be positive");
  if (stat <= 0) return 1.0;
  return 1.0 - regularized_gamma_p(static_cast<double>(df) / 2.0, stat / 2.0);
}

}  // namespace syncwalk
