#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "syncwalk/law.hpp"

namespace syncwalk {

// Deterministic stream of randomness: (seed, stream) fully determine every
// draw, so runs are reproducible and sub-streams are independent.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // Exact uniform draw from {0, ..., n-1} by rejection; n >= 1.
  Int uniform_below(const Int& n);

 private:
  std::mt19937_64 eng_;
};

// Inverse-CDF draws of whole maps from a law, over the law's canonical atom
// order, using one exact uniform integer below the common denominator.
class LawSampler {
 public:
  explicit LawSampler(const MappingLaw& mu);

  const MappingTable& draw(RngStream& rng) const;
  int state_count() const { return m_; }

 private:
  int m_;
  std::vector<MappingTable> maps_;
  std::vector<Int> cumulative_;  // cumulative numerators over total_
  Int total_;
};

struct WalkTrace {
  int start = 0;
  std::vector<MappingTable> steps;  // steps[k] moves states[k] to states[k+1]
  std::vector<int> states;          // states[0] = start, size n+1
};

// n forward steps x_{k} = f_k(x_{k-1}) with f_k drawn iid from mu.
WalkTrace simulate_forward(const MappingLaw& mu, int start, long long n, RngStream& rng);

struct CftpResult {
  int value = 0;       // exact stationary draw
  long long depth = 0; // minimal number of composed past maps
  Word word;           // the composed maps, oldest first; word.composed() is constant
};

struct CftpOptions {
  long long depth_cap = 1'000'000;
};

// Coupling from the past over whole-map compositions: extend backwards with
// memoized draws under a doubling schedule until the composition
// f_0 . f_{-1} . ... . f_{-(D-1)} is constant, and return its image point.
// Requires synchronizing support (PreconditionError otherwise); exceeding
// depth_cap throws BudgetError. The returned depth is minimal, and the value
// does not depend on any starting state.
class CftpSampler {
 public:
  explicit CftpSampler(const MappingLaw& mu, const CftpOptions& opts = {});

  CftpResult sample(RngStream& rng) const;

 private:
  LawSampler sampler_;
  CftpOptions opts_;
};

CftpResult cftp_sample(const MappingLaw& mu, RngStream& rng, const CftpOptions& opts = {});

struct CoalescenceStats {
  long long samples = 0;
  double mean_depth = 0.0;
  long long min_depth = 0;
  long long max_depth = 0;
  long long depth_p50 = 0;
  long long depth_p90 = 0;
  long long depth_p99 = 0;
  std::vector<long long> value_counts;  // per-state tally of returned values
};

// n independent CFTP runs on streams (seed, 0..n-1).
CoalescenceStats coalescence_stats(const MappingLaw& mu, long long n, std::uint64_t seed,
                                   const CftpOptions& opts = {});

}  // namespace syncwalk
