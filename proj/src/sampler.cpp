#include "syncwalk/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "syncwalk/coloring.hpp"
#include "syncwalk/errors.hpp"

namespace syncwalk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : eng_(splitmix64(splitmix64(seed) ^ splitmix64(stream * 0xD1B54A32D192ED03ULL + 1))) {}

std::uint64_t RngStream::next_u64() { return eng_(); }

Int RngStream::uniform_below(const Int& n) {
  if (n <= 0) throw PreconditionError("uniform draw needs a positive bound");
  if (n == 1) return 0;

  if (n <= Int(std::numeric_limits<std::uint64_t>::max())) {
    const auto bound = n.template convert_to<std::uint64_t>();
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    while (true) {
      const std::uint64_t r = next_u64();
      if (r < limit) return Int(r % bound);
    }
  }

  const unsigned bits = boost::multiprecision::msb(n) + 1;
  while (true) {
    Int v = 0;
    unsigned remaining = bits;
    while (remaining >= 64) {
      v <<= 64;
      v |= Int(next_u64());
      remaining -= 64;
    }
    if (remaining > 0) {
      v <<= remaining;
      v |= Int(next_u64() >> (64 - remaining));
    }
    if (v < n) return v;
  }
}

LawSampler::LawSampler(const MappingLaw& mu) : m_(mu.state_count()) {
  Int den = 1;
  for (const auto& [f, w] : mu.atoms()) den = lcm_int(den, rat_den(w));
  total_ = den;
  Int c = 0;
  for (const auto& [f, w] : mu.atoms()) {
    maps_.push_back(f);
    c += rat_num(w) * (den / rat_den(w));
    cumulative_.push_back(c);
  }
  if (c != total_) throw std::logic_error("law weights do not fill the common denominator");
}

const MappingTable& LawSampler::draw(RngStream& rng) const {
  const Int u = rng.uniform_below(total_);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return maps_[static_cast<size_t>(it - cumulative_.begin())];
}

WalkTrace simulate_forward(const MappingLaw& mu, int start, long long n, RngStream& rng) {
  if (start < 0 || start >= mu.state_count()) throw PreconditionError("start state out of range");
  if (n < 0) throw PreconditionError("negative step count");
  const LawSampler sampler(mu);
  WalkTrace trace;
  trace.start = start;
  trace.states.reserve(static_cast<size_t>(n) + 1);
  trace.steps.reserve(static_cast<size_t>(n));
  trace.states.push_back(start);
  int x = start;
  for (long long k = 0; k < n; ++k) {
    const MappingTable& f = sampler.draw(rng);
    x = f(x);
    trace.steps.push_back(f);
    trace.states.push_back(x);
  }
  return trace;
}

CftpSampler::CftpSampler(const MappingLaw& mu, const CftpOptions& opts)
    : sampler_(mu), opts_(opts) {
  if (!is_synchronizing(mu.support()))
    throw PreconditionError("law support is not synchronizing");
  if (opts_.depth_cap < 1) throw PreconditionError("depth cap must be positive");
}

CftpResult CftpSampler::sample(RngStream& rng) const {
  const int m = sampler_.state_count();
  // draws[j] is the map at time -j; the composition runs newest-to-oldest,
  // extending one map at a time, so the reported depth is minimal.
  std::vector<const MappingTable*> draws;
  std::vector<int> composed(static_cast<size_t>(m));
  for (int x = 0; x < m; ++x) composed[static_cast<size_t>(x)] = x;

  long long depth = 0;
  while (true) {
    const MappingTable& f = sampler_.draw(rng);
    draws.push_back(&f);
    ++depth;
    // composed := composed . f  (f acts first, being further in the past)
    std::vector<int> next(static_cast<size_t>(m));
    for (int x = 0; x < m; ++x) next[static_cast<size_t>(x)] = composed[static_cast<size_t>(f(x))];
    composed = std::move(next);

    bool constant = true;
    for (int x = 1; x < m && constant; ++x)
      constant = composed[static_cast<size_t>(x)] == composed[0];
    if (constant) break;
    if (depth >= opts_.depth_cap) throw BudgetError("coalescence depth cap exceeded");
  }

  CftpResult out;
  out.value = composed[0];
  out.depth = depth;
  out.word.maps.reserve(draws.size());
  for (auto it = draws.rbegin(); it != draws.rend(); ++it) out.word.maps.push_back(**it);
  return out;
}

CftpResult cftp_sample(const MappingLaw& mu, RngStream& rng, const CftpOptions& opts) {
  return CftpSampler(mu, opts).sample(rng);
}

CoalescenceStats coalescence_stats(const MappingLaw& mu, long long n, std::uint64_t seed,
                                   const CftpOptions& opts) {
  if (n < 1) throw PreconditionError("need at least one sample");
  const CftpSampler sampler(mu, opts);
  CoalescenceStats stats;
  stats.samples = n;
  stats.value_counts.assign(static_cast<size_t>(mu.state_count()), 0);

  std::vector<long long> depths;
  depths.reserve(static_cast<size_t>(n));
  double sum = 0;
  for (long long i = 0; i < n; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const CftpResult r = sampler.sample(rng);
    depths.push_back(r.depth);
    sum += static_cast<double>(r.depth);
    ++stats.value_counts[static_cast<size_t>(r.value)];
  }
  std::sort(depths.begin(), depths.end());
  const auto rank = [&](double p) {
    const auto idx = static_cast<size_t>(std::max<long long>(
        0, static_cast<long long>(std::ceil(p * static_cast<double>(n))) - 1));
    return depths[std::min(idx, depths.size() - 1)];
  };
  stats.mean_depth = sum / static_cast<double>(n);
  stats.min_depth = depths.front();
  stats.max_depth = depths.back();
  stats.depth_p50 = rank(0.50);
  stats.depth_p90 = rank(0.90);
  stats.depth_p99 = rank(0.99);
  return stats;
}

}  // namespace syncwalk
