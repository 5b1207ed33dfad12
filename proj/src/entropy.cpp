#include "syncwalk/entropy.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>

#include "syncwalk/errors.hpp"
#include "syncwalk/stats.hpp"

namespace syncwalk {

double chain_entropy(const StochasticMatrix& q, const Distribution& lambda) {
  if (lambda.size() != q.size()) throw PreconditionError("distribution does not match the matrix");
  double h = 0;
  for (int x = 0; x < q.size(); ++x) {
    const double lx = to_double(lambda.p(x));
    if (lx == 0) continue;
    double row = 0;
    for (int y = 0; y < q.size(); ++y) row += phi(to_double(q.q(x, y)));
    h += lx * row;
  }
  return h;
}

double chain_entropy(const StochasticMatrix& q) { return chain_entropy(q, stationary(q)); }

double law_entropy(const MappingLaw& mu) {
  double h = 0;
  for (const auto& [f, w] : mu.atoms()) h += phi(to_double(w));
  return h;
}

PUniformCheck is_p_uniform(const StochasticMatrix& q) {
  const int m = q.size();
  PUniformCheck out;

  std::vector<Rat> base;
  for (int y = 0; y < m; ++y) base.push_back(q.q(0, y));
  std::vector<Rat> base_sorted = base;
  std::sort(base_sorted.begin(), base_sorted.end());
  for (int x = 1; x < m; ++x) {
    std::vector<Rat> row;
    for (int y = 0; y < m; ++y) row.push_back(q.q(x, y));
    std::sort(row.begin(), row.end());
    if (row != base_sorted) return out;  // not permutations of a common law
  }

  out.p_uniform = true;
  out.nu = base;
  out.tau.assign(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m), -1));
  for (int x = 0; x < m; ++x) {
    std::vector<char> used(static_cast<size_t>(m), 0);
    for (int y = 0; y < m; ++y) {
      if (x == 0) {
        out.tau[0][static_cast<size_t>(y)] = y;  // canonical witness: identity on row 0
        continue;
      }
      for (int t = 0; t < m; ++t) {
        if (used[static_cast<size_t>(t)] || out.nu[static_cast<size_t>(t)] != q.q(x, y)) continue;
        out.tau[static_cast<size_t>(x)][static_cast<size_t>(y)] = t;
        used[static_cast<size_t>(t)] = 1;
        break;
      }
    }
  }
  return out;
}

EntropyFamilyResult entropy_family(const StochasticMatrix& q, long long n,
                                   const ColoringSearchOptions& search) {
  const auto cls = classify(q);
  if (cls.kind != ChainClass::Mixing)
    throw PreconditionError(std::string("chain is not mixing: ") + chain_class_name(cls.kind));
  const auto pu = is_p_uniform(q);
  if (!pu.p_uniform) throw PreconditionError("chain is not p-uniform");

  const int m = q.size();
  std::vector<int> supp;
  for (int y = 0; y < m; ++y)
    if (pu.nu[static_cast<size_t>(y)] > 0) supp.push_back(y);
  const int d = static_cast<int>(supp.size());

  // Slot maps sigma_i(x) = tau_x^{-1}(supp[i]).
  std::vector<std::vector<int>> tau_inv(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m), -1));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) tau_inv[static_cast<size_t>(x)][static_cast<size_t>(pu.tau[static_cast<size_t>(x)][static_cast<size_t>(y)])] = y;
  std::vector<MappingTable> slots(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    slots[static_cast<size_t>(i)].image.resize(static_cast<size_t>(m));
    for (int x = 0; x < m; ++x)
      slots[static_cast<size_t>(i)].image[static_cast<size_t>(x)] =
          tau_inv[static_cast<size_t>(x)][static_cast<size_t>(supp[static_cast<size_t>(i)])];
  }

  const AdjacencyMatrix a = build_support_graph(q);
  const RoadColoring coloring = find_synchronizing_coloring(a, search);
  std::vector<MappingTable> sync_set = coloring.colors;
  std::sort(sync_set.begin(), sync_set.end());
  sync_set.erase(std::unique(sync_set.begin(), sync_set.end()), sync_set.end());
  const int s1 = static_cast<int>(sync_set.size());

  // Weight of slot i at parameter n: nu_i + bonus_i / n with
  // bonus_i = 1{slot in sync set}/s1 - 1/d; sync-only maps get 1/(n s1).
  long long n_min = 1;
  std::vector<Rat> bonus(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    const bool in_sync = std::binary_search(sync_set.begin(), sync_set.end(), slots[static_cast<size_t>(i)]);
    bonus[static_cast<size_t>(i)] = (in_sync ? Rat(1, s1) : Rat(0)) - Rat(1, d);
    if (bonus[static_cast<size_t>(i)] < 0) {
      // need n >= -bonus_i / nu_i
      const Rat bound = -bonus[static_cast<size_t>(i)] / pu.nu[static_cast<size_t>(supp[static_cast<size_t>(i)])];
      const Int need = (rat_num(bound) + rat_den(bound) - 1) / rat_den(bound);
      n_min = std::max(n_min, need.template convert_to<long long>());
    }
  }
  if (n < n_min)
    throw PreconditionError("family parameter too small; the smallest valid n is " +
                            std::to_string(n_min));

  std::vector<std::pair<MappingTable, Rat>> atoms;
  for (int i = 0; i < d; ++i)
    atoms.emplace_back(slots[static_cast<size_t>(i)],
                       pu.nu[static_cast<size_t>(supp[static_cast<size_t>(i)])] + bonus[static_cast<size_t>(i)] / n);
  for (const auto& f : sync_set) {
    const bool is_slot = std::find(slots.begin(), slots.end(), f) != slots.end();
    if (!is_slot) atoms.emplace_back(f, Rat(1, static_cast<long long>(s1) * n));
  }

  EntropyFamilyResult out{MappingLaw(m, std::move(atoms)), n, n_min, 0, 0, 0};
  if (!verify_mapping_law(out.law, q)) throw std::logic_error("family law does not realize the chain");
  if (!is_synchronizing(out.law.support())) throw std::logic_error("family law lost synchronization");
  out.law_entropy = law_entropy(out.law);
  out.chain_entropy = chain_entropy(q);
  out.gap = out.law_entropy - out.chain_entropy;
  return out;
}

TwoStateFamilyResult two_state_family(const Rat& p, const Rat& eps) {
  if (p <= 0 || p >= 1) throw PreconditionError("p must lie strictly between 0 and 1");
  const Rat cap = std::min(p, Rat(1) - p);
  if (eps < 0 || eps > cap) throw PreconditionError("eps must lie in [0, min(p, 1-p)]");

  StochasticMatrix chain({{p, Rat(1) - p}, {Rat(1) - p, p}});
  std::vector<std::pair<MappingTable, Rat>> atoms;
  atoms.emplace_back(identity_map(2), p - eps);                 // keep
  atoms.emplace_back(MappingTable{{1, 0}}, Rat(1) - p - eps);   // swap
  atoms.emplace_back(constant_map(2, 0), eps);
  atoms.emplace_back(constant_map(2, 1), eps);

  TwoStateFamilyResult out{MappingLaw(2, std::move(atoms)), std::move(chain), 0, 0, 0};
  out.chain_entropy = chain_entropy(out.chain);
  out.law_entropy = law_entropy(out.law);
  out.gap = out.law_entropy - out.chain_entropy;
  return out;
}

namespace {

// Support-compatible maps in lexicographic order.
std::vector<MappingTable> compatible_maps(const StochasticMatrix& q) {
  const int m = q.size();
  std::vector<std::vector<int>> choices(static_cast<size_t>(m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (q.q(x, y) > 0) choices[static_cast<size_t>(x)].push_back(y);

  std::vector<MappingTable> out;
  MappingTable cur;
  cur.image.assign(static_cast<size_t>(m), 0);
  std::vector<size_t> idx(static_cast<size_t>(m), 0);
  while (true) {
    for (int x = 0; x < m; ++x) cur.image[static_cast<size_t>(x)] = choices[static_cast<size_t>(x)][idx[static_cast<size_t>(x)]];
    out.push_back(cur);
    int x = m - 1;
    while (x >= 0) {
      if (++idx[static_cast<size_t>(x)] < choices[static_cast<size_t>(x)].size()) break;
      idx[static_cast<size_t>(x)] = 0;
      --x;
    }
    if (x < 0) break;
  }
  return out;
}

}  // namespace

GapFloorResult entropy_gap_floor(const StochasticMatrix& q, const Rat& step,
                                 const GapFloorOptions& opts) {
  const int m = q.size();
  if (m > 3) throw PreconditionError("gap floor supports at most three states");
  if (step <= 0 || step > 1) throw PreconditionError("grid step must lie in (0, 1]");
  const auto cls = classify(q);
  if (cls.kind != ChainClass::Mixing)
    throw PreconditionError(std::string("chain is not mixing: ") + chain_class_name(cls.kind));

  const Distribution lambda = stationary(q);
  const double h_chain = chain_entropy(q, lambda);

  const std::vector<MappingTable> maps = compatible_maps(q);
  const int n = static_cast<int>(maps.size());

  // Marginal constraints sum_{f: f(x)=y} mu(f) = q(x, y) on the support.
  std::vector<std::vector<Rat>> aug;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (q.q(x, y) == 0) continue;
      std::vector<Rat> row(static_cast<size_t>(n) + 1, Rat(0));
      for (int j = 0; j < n; ++j)
        if (maps[static_cast<size_t>(j)](x) == y) row[static_cast<size_t>(j)] = 1;
      row[static_cast<size_t>(n)] = q.q(x, y);
      aug.push_back(std::move(row));
    }

  // Exact reduced row echelon form.
  int rank = 0;
  std::vector<int> pivot_cols;
  for (int c = 0; c < n && rank < static_cast<int>(aug.size()); ++c) {
    int p = -1;
    for (int i = rank; i < static_cast<int>(aug.size()); ++i)
      if (aug[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(aug[static_cast<size_t>(rank)], aug[static_cast<size_t>(p)]);
    const Rat inv = aug[static_cast<size_t>(rank)][static_cast<size_t>(c)];
    for (int j = c; j <= n; ++j) aug[static_cast<size_t>(rank)][static_cast<size_t>(j)] /= inv;
    for (int i = 0; i < static_cast<int>(aug.size()); ++i) {
      if (i == rank) continue;
      const Rat f = aug[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (f == 0) continue;
      for (int j = c; j <= n; ++j)
        aug[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * aug[static_cast<size_t>(rank)][static_cast<size_t>(j)];
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  for (int i = rank; i < static_cast<int>(aug.size()); ++i)
    if (aug[static_cast<size_t>(i)][static_cast<size_t>(n)] != 0)
      throw std::logic_error("marginal system inconsistent");

  std::vector<int> free_cols;
  {
    std::vector<char> is_pivot(static_cast<size_t>(n), 0);
    for (int c : pivot_cols) is_pivot[static_cast<size_t>(c)] = 1;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
  }
  const int k = static_cast<int>(free_cols.size());
  if (k > opts.max_free_dims)
    throw PreconditionError("solution polytope has too many free dimensions: " + std::to_string(k));

  // Grid values j * step while <= 1.
  std::vector<Rat> grid_values;
  for (Rat v = 0; v <= 1; v += step) grid_values.push_back(v);

  long long grid_points = 0;
  long long feasible_points = 0;
  double floor_gap = 0;
  bool found = false;
  std::vector<std::pair<MappingTable, Rat>> best_atoms;
  std::unordered_map<std::uint64_t, bool> sync_memo;

  std::vector<size_t> idx(static_cast<size_t>(std::max(k, 1)), 0);
  std::vector<Rat> weights(static_cast<size_t>(n), Rat(0));
  while (true) {
    ++grid_points;
    for (int j = 0; j < n; ++j) weights[static_cast<size_t>(j)] = 0;
    for (int f = 0; f < k; ++f)
      weights[static_cast<size_t>(free_cols[static_cast<size_t>(f)])] = grid_values[idx[static_cast<size_t>(f)]];
    bool feasible = true;
    for (int i = 0; i < rank && feasible; ++i) {
      Rat v = aug[static_cast<size_t>(i)][static_cast<size_t>(n)];
      for (int f = 0; f < k; ++f) {
        const int c = free_cols[static_cast<size_t>(f)];
        const Rat& coef = aug[static_cast<size_t>(i)][static_cast<size_t>(c)];
        if (coef != 0) v -= coef * grid_values[idx[static_cast<size_t>(f)]];
      }
      if (v < 0) feasible = false;
      weights[static_cast<size_t>(pivot_cols[static_cast<size_t>(i)])] = std::move(v);
    }

    if (feasible) {
      std::uint64_t mask = 0;
      std::vector<MappingTable> supp_maps;
      for (int j = 0; j < n; ++j)
        if (weights[static_cast<size_t>(j)] > 0) {
          mask |= std::uint64_t(1) << j;
          supp_maps.push_back(maps[static_cast<size_t>(j)]);
        }
      auto memo = sync_memo.find(mask);
      bool sync;
      if (memo != sync_memo.end()) {
        sync = memo->second;
      } else {
        sync = !supp_maps.empty() && is_synchronizing(supp_maps);
        sync_memo.emplace(mask, sync);
      }
      if (sync) {
        ++feasible_points;
        double h = 0;
        for (int j = 0; j < n; ++j) h += phi(to_double(weights[static_cast<size_t>(j)]));
        const double gap = h - h_chain;
        if (!found || gap < floor_gap) {
          found = true;
          floor_gap = gap;
          best_atoms.clear();
          for (int j = 0; j < n; ++j)
            if (weights[static_cast<size_t>(j)] > 0)
              best_atoms.emplace_back(maps[static_cast<size_t>(j)], weights[static_cast<size_t>(j)]);
        }
      }
    }

    if (k == 0) break;
    int f = k - 1;
    while (f >= 0) {
      if (++idx[static_cast<size_t>(f)] < grid_values.size()) break;
      idx[static_cast<size_t>(f)] = 0;
      --f;
    }
    if (f < 0) break;
  }

  if (!found) throw std::runtime_error("no synchronizing law on the grid");
  return GapFloorResult{floor_gap, MappingLaw(m, std::move(best_atoms)), grid_points,
                        feasible_points};
}

}  // namespace syncwalk
