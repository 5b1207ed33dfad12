#include "syncwalk/chain.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "internal/bitmat.hpp"
#include "syncwalk/errors.hpp"

namespace syncwalk {

StochasticMatrix::StochasticMatrix(std::vector<std::vector<Rat>> rows)
    : m_(static_cast<int>(rows.size())) {
  if (m_ == 0) throw PreconditionError("matrix must be non-empty");
  a_.reserve(static_cast<size_t>(m_) * m_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m_) throw PreconditionError("matrix must be square");
    Rat sum = 0;
    for (const auto& e : row) {
      if (e < 0) throw PreconditionError("negative entry");
      sum += e;
      a_.push_back(e);
    }
    if (sum != 1) throw PreconditionError("row does not sum to one");
  }
}

int StochasticMatrix::row_support(int x) const {
  int c = 0;
  for (int y = 0; y < m_; ++y)
    if (q(x, y) > 0) ++c;
  return c;
}

bool StochasticMatrix::same_support(const StochasticMatrix& other) const {
  if (other.m_ != m_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if ((a_[i] > 0) != (other.a_[i] > 0)) return false;
  return true;
}

Distribution::Distribution(std::vector<Rat> w) : w_(std::move(w)) {
  if (w_.empty()) throw PreconditionError("distribution must be non-empty");
  Rat sum = 0;
  for (const auto& e : w_) {
    if (e < 0) throw PreconditionError("negative probability");
    sum += e;
  }
  if (sum != 1) throw PreconditionError("probabilities do not sum to one");
}

const char* chain_class_name(ChainClass c) {
  switch (c) {
    case ChainClass::Mixing: return "mixing";
    case ChainClass::IrreduciblePeriodic: return "irreducible-periodic";
    case ChainClass::Reducible: return "reducible";
  }
  return "unknown";
}

Classification classify(const StochasticMatrix& q) {
  const int m = q.size();
  internal::BitMat b(m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (q.q(x, y) > 0) b.set(x, y);

  const auto sc = internal::classify_bool_support(b);
  if (sc.primitive) return {ChainClass::Mixing, sc.positive_power, 1};
  if (!sc.strongly_connected) return {ChainClass::Reducible, 0, 0};
  return {ChainClass::IrreduciblePeriodic, 0, sc.period};
}

std::vector<std::pair<int, int>> support(const StochasticMatrix& q) {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < q.size(); ++x)
    for (int y = 0; y < q.size(); ++y)
      if (q.q(x, y) > 0) out.emplace_back(x, y);
  return out;
}

namespace {

StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b) {
  const int m = a.size();
  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(m, Rat(0)));
  for (int x = 0; x < m; ++x)
    for (int k = 0; k < m; ++k) {
      const Rat& axk = a.q(x, k);
      if (axk == 0) continue;
      for (int y = 0; y < m; ++y)
        if (b.q(k, y) != 0) rows[x][y] += axk * b.q(k, y);
    }
  return StochasticMatrix(std::move(rows));
}

StochasticMatrix identity_matrix(int m) {
  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(m, Rat(0)));
  for (int x = 0; x < m; ++x) rows[x][x] = 1;
  return StochasticMatrix(std::move(rows));
}

// Unique solution of [Q^T - I; all-ones] v = [0; 1] by exact elimination;
// nullopt when the system is rank-deficient (several fixed points).
std::optional<std::vector<Rat>> unique_fixed_point(const StochasticMatrix& q) {
  const int m = q.size();
  const int rows = m + 1;
  std::vector<std::vector<Rat>> aug(rows, std::vector<Rat>(m + 1, Rat(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) aug[i][j] = q.q(j, i) - (i == j ? Rat(1) : Rat(0));
  for (int j = 0; j < m; ++j) aug[m][j] = 1;
  aug[m][m] = 1;

  int r = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < m && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (aug[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(aug[r], aug[p]);
    const Rat inv = aug[r][c];
    for (int j = c; j <= m; ++j) aug[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      const Rat f = aug[i][c];
      for (int j = c; j <= m; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (aug[i][m] != 0) return std::nullopt;  // inconsistent
  if (r < m) return std::nullopt;             // solution space has positive dimension

  std::vector<Rat> v(m, Rat(0));
  for (int i = 0; i < r; ++i) v[static_cast<size_t>(pivot_col[i])] = aug[i][m];
  return v;
}

}  // namespace

StochasticMatrix matrix_power(const StochasticMatrix& q, long long n) {
  if (n < 0) throw PreconditionError("negative matrix power");
  StochasticMatrix result = identity_matrix(q.size());
  StochasticMatrix base = q;
  while (n > 0) {
    if (n & 1) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

Distribution stationary(const StochasticMatrix& q) {
  if (classify(q).kind == ChainClass::Reducible)
    throw PreconditionError("no unique stationary law");
  auto v = unique_fixed_point(q);
  if (!v) throw std::logic_error("stationary solve failed on an irreducible chain");
  return Distribution(std::move(*v));
}

std::optional<Distribution> solve_stationary(const StochasticMatrix& q) {
  auto v = unique_fixed_point(q);
  if (!v) return std::nullopt;
  for (const auto& e : *v)
    if (e < 0) return std::nullopt;
  return Distribution(std::move(*v));
}

StochasticMatrix rationalize(const std::vector<std::vector<double>>& rows, long long max_den) {
  const int m = static_cast<int>(rows.size());
  if (m == 0) throw PreconditionError("matrix must be non-empty");
  if (max_den < m) throw PreconditionError("max_den must be at least the state count");

  std::vector<std::vector<Rat>> out(m);
  for (int x = 0; x < m; ++x) {
    if (static_cast<int>(rows[x].size()) != m) throw PreconditionError("matrix must be square");
    double s = 0;
    for (double e : rows[x]) {
      if (!std::isfinite(e)) throw PreconditionError("non-finite entry");
      if (e < 0) throw PreconditionError("negative entry");
      s += e;
    }
    if (std::fabs(s - 1.0) > 1e-6) throw PreconditionError("row sum deviates from one by more than 1e-6");

    auto& r = out[x];
    r.reserve(m);
    for (double e : rows[x]) {
      if (e == 0.0) {
        r.emplace_back(0);
        continue;
      }
      Rat approx = best_rational(e, max_den);
      if (approx == 0) approx = Rat(1, max_den);  // keep the support
      r.push_back(std::move(approx));
    }

    Rat sum = 0;
    for (const auto& e : r) sum += e;
    if (sum != 1) {
      int big = 0;
      for (int y = 1; y < m; ++y)
        if (r[y] > r[big]) big = y;
      r[big] += Rat(1) - sum;
      if (r[big] <= 0) throw PreconditionError("row repair would break the support");
    }
  }
  return StochasticMatrix(std::move(out));
}

}  // namespace syncwalk
