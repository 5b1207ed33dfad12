#pragma once

#include <optional>
#include <vector>

#include "syncwalk/chain.hpp"
#include "syncwalk/coloring.hpp"
#include "syncwalk/law.hpp"

namespace syncwalk {

// Entropy rate of the chain under a stationary start, in nats:
// sum_x lambda(x) sum_y phi(q(x, y)).
double chain_entropy(const StochasticMatrix& q, const Distribution& lambda);

// Convenience overload using stationary(q).
double chain_entropy(const StochasticMatrix& q);

// Shannon entropy of the per-step map draw, in nats.
double law_entropy(const MappingLaw& mu);

struct PUniformCheck {
  bool p_uniform = false;
  // When p_uniform: q(x, y) = nu(tau[x][y]) with every tau[x] a permutation
  // and tau[0] the identity.
  std::vector<Rat> nu;
  std::vector<std::vector<int>> tau;
};

// A chain is p-uniform when all rows are permutations of one distribution.
PUniformCheck is_p_uniform(const StochasticMatrix& q);

struct EntropyFamilyResult {
  MappingLaw law;
  long long n = 0;      // the parameter actually used
  long long n_min = 0;  // least n for which every weight is non-negative
  double law_entropy = 0.0;
  double chain_entropy = 0.0;
  double gap = 0.0;  // law_entropy - chain_entropy, >= 0
};

// For a mixing p-uniform chain, the explicit law whose entropy approaches the
// chain's entropy rate as n grows: the permutation-like slot maps
// sigma_i(x) = tau_x^{-1}(x_i) carry nu(x_i) - 1/(nd), and a synchronizing
// coloring of the support shares n^{-1} of mass. Throws PreconditionError if
// the chain is not mixing, not p-uniform, or n < n_min (the message reports
// n_min).
EntropyFamilyResult entropy_family(const StochasticMatrix& q, long long n,
                                   const ColoringSearchOptions& search = {});

struct TwoStateFamilyResult {
  MappingLaw law;
  StochasticMatrix chain;
  double chain_entropy = 0.0;
  double law_entropy = 0.0;
  double gap = 0.0;
};

// The two-state family: chain ((p, 1-p), (1-p, p)); the law puts p - eps on
// the identity, 1 - p - eps on the swap, and eps on each constant map.
// Requires 0 < p < 1 and 0 <= eps <= min(p, 1-p). The eps = 0 boundary is
// allowed (a pure permutation mixture, support not synchronizing).
TwoStateFamilyResult two_state_family(const Rat& p, const Rat& eps);

struct GapFloorOptions {
  // Bail out above this many free grid dimensions.
  int max_free_dims = 8;
};

struct GapFloorResult {
  double floor_gap = 0.0;   // min over the grid of law_entropy - chain_entropy
  MappingLaw arg_min;       // a grid law attaining the floor
  long long grid_points = 0;
  long long feasible_points = 0;  // non-negative + synchronizing support
};

// Exhaustive floor of the entropy gap over all mapping laws of q with
// synchronizing support, restricted to a grid of spacing `step` on the free
// coordinates of the exact solution polytope (m <= 3). Grid points violating
// non-negativity or synchronization are skipped. Throws PreconditionError for
// m > 3, non-mixing q, or too many free dimensions; RuntimeError if no grid
// point is feasible.
GapFloorResult entropy_gap_floor(const StochasticMatrix& q, const Rat& step,
                                 const GapFloorOptions& opts = {});

}  // namespace syncwalk
