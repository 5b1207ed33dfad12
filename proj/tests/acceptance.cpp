// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
// its runtime; the process exits non-zero if any line fails. Randomized
// criteria run on fixed seeds so the suite is reproducible.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "syncwalk/chain.hpp"
#include "syncwalk/coloring.hpp"
#include "syncwalk/entropy.hpp"
#include "syncwalk/law.hpp"
#include "syncwalk/mapping.hpp"
#include "syncwalk/sampler.hpp"
#include "syncwalk/stats.hpp"

using namespace syncwalk;
using testsupport::law_mu1;
using testsupport::law_mu2;
using testsupport::oracle_is_synchronizing;
using testsupport::sigma1;
using testsupport::sigma2;
using testsupport::sigma3;
using testsupport::sigma4;
using testsupport::three_state_chain;
using testsupport::two_state_chain;

namespace {

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Every law any criterion produces is fed through here; the final criterion
// asserts that no law's entropy dipped below its chain's entropy rate.
struct GapRegistry {
  long long laws = 0;
  long long violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::string worst;

  void record(const MappingLaw& mu, const std::string& tag) {
    ++laws;
    const auto induced = mu.induced_matrix();
    const auto lambda = solve_stationary(induced);
    if (!lambda) {
      ++violations;
      worst = tag + ": no stationary law";
      return;
    }
    const double margin = law_entropy(mu) - chain_entropy(induced, *lambda);
    if (margin < min_margin) {
      min_margin = margin;
      if (margin < -1e-12) {
        ++violations;
        worst = tag;
      }
    }
  }
};

GapRegistry registry;

int rand_between(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random chain with entries k/den, den <= max_den, resampled until mixing.
StochasticMatrix random_mixing_chain(std::mt19937_64& rng, int max_m, int max_den) {
  for (;;) {
    const int m = rand_between(rng, 2, max_m);
    const int den = rand_between(rng, 2, max_den);
    std::vector<std::vector<Rat>> rows(static_cast<size_t>(m));
    for (auto& row : rows) {
      std::vector<int> units(static_cast<size_t>(m), 0);
      for (int u = 0; u < den; ++u) ++units[static_cast<size_t>(rand_between(rng, 0, m - 1))];
      for (int y = 0; y < m; ++y) row.push_back(Rat(units[static_cast<size_t>(y)], den));
    }
    StochasticMatrix q(std::move(rows));
    if (classify(q).kind == ChainClass::Mixing) return q;
  }
}

MappingTable random_map(std::mt19937_64& rng, int m) {
  MappingTable f;
  for (int x = 0; x < m; ++x) f.image.push_back(rand_between(rng, 0, m - 1));
  return f;
}

// Random law (positive rational weights) whose support synchronizes.
MappingLaw random_synchronizing_law(std::mt19937_64& rng) {
  for (;;) {
    const int m = rand_between(rng, 2, 5);
    const int k = rand_between(rng, 2, 4);
    const int den = k + rand_between(rng, 0, 8);
    std::vector<int> units(static_cast<size_t>(k), 1);
    for (int u = k; u < den; ++u) ++units[static_cast<size_t>(rand_between(rng, 0, k - 1))];
    std::vector<std::pair<MappingTable, Rat>> atoms;
    for (int i = 0; i < k; ++i) atoms.emplace_back(random_map(rng, m), Rat(units[static_cast<size_t>(i)], den));
    MappingLaw mu(m, std::move(atoms));
    if (is_synchronizing(mu.support())) return mu;
  }
}

// --- criteria -------------------------------------------------------------

bool crit_named_laws(std::string& detail) {
  const auto fig = three_state_chain();
  bool ok = verify_mapping_law(law_mu1(), fig) && verify_mapping_law(law_mu2(), fig);
  registry.record(law_mu1(), "three-state uniform law");
  registry.record(law_mu2(), "three-state permutation law");

  const std::vector<MappingTable> pair{sigma1(), sigma2()};
  ok = ok && is_synchronizing(pair);
  const Word w = synchronizing_word(pair);
  const auto composed = w.composed();
  ok = ok && w.length() == 2 && composed.is_constant() && composed(0) == 2;
  ok = ok && !is_synchronizing({sigma3(), sigma4()});
  detail = fmt("witness length %zu, image state %d", w.length(), composed(0) + 1);
  return ok;
}

bool crit_synthesis(std::string& detail) {
  std::mt19937_64 rng(20260826);
  int done = 0;
  const auto one = [&](const StochasticMatrix& q, const std::string& tag) {
    const auto res = synchronizing_mapping_law(q);
    if (!verify_mapping_law(res.law, q)) return false;
    if (!is_synchronizing(res.law.support())) return false;
    registry.record(res.law, tag);
    ++done;
    return true;
  };
  if (!one(three_state_chain(), "synthesis on the three-state example")) return false;
  for (int i = 0; i < 50; ++i)
    if (!one(random_mixing_chain(rng, 5, 12), fmt("synthesis on random chain %d", i))) return false;
  detail = fmt("%d chains realized and verified", done);
  return true;
}

bool crit_cftp_exactness(std::string& detail) {
  const auto mu = law_mu1();
  const auto target = stationary(three_state_chain());  // exactly (1/3, 1/3, 1/3)
  double tv0 = -1.0;
  int chi_pass = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto stats = coalescence_stats(mu, 10'000, seed);
    if (seed == 0) tv0 = tv_distance_counts(stats.value_counts, target);
    const double stat = chi_square_stat(stats.value_counts, target);
    if (chi_square_pvalue(stat, 2) >= 0.001) ++chi_pass;
  }
  detail = fmt("tv %.4f, chi-square pass %d/100", tv0, chi_pass);
  return tv0 < 0.02 && chi_pass >= 99;
}

bool crit_cftp_start_independence(std::string& detail) {
  std::mt19937_64 rng(424242);
  for (int j = 0; j < 20; ++j) {
    const auto mu = random_synchronizing_law(rng);
    registry.record(mu, fmt("random synchronizing law %d", j));
    const std::uint64_t seed = 9000 + static_cast<std::uint64_t>(j);
    RngStream base(seed, 0);
    const auto first = cftp_sample(mu, base);
    for (int x = 0; x < mu.state_count(); ++x) {
      RngStream replay(seed, 0);
      const auto again = cftp_sample(mu, replay);
      if (again.value != first.value || again.depth != first.depth ||
          again.word.maps != first.word.maps)
        return false;
      if (first.word.apply(x) != first.value) return false;
    }
  }
  detail = "20 laws, every start state agrees";
  return true;
}

bool crit_two_state_gaps(std::string& detail) {
  const Rat p(7, 10);
  const double h_chain = chain_entropy(two_state_chain(p));
  if (std::abs(h_chain - (phi(0.7) + phi(0.3))) > 1e-12) return false;

  const std::vector<std::pair<Rat, double>> eps = {
      {Rat(3, 10), 0.3}, {Rat(1, 10), 0.1}, {Rat(1, 100), 0.01},
      {Rat(1, 1000), 1e-3}, {Rat(1, 10000), 1e-4}};
  double last_gap = -1.0;
  for (const auto& [e_rat, e] : eps) {
    const auto fam = two_state_family(p, e_rat);
    registry.record(fam.law, fmt("two-state law at eps %g", e));
    const double formula = 2 * phi(e) + phi(0.7 - e) + phi(0.3 - e);
    if (std::abs(fam.law_entropy - formula) > 1e-12) return false;
    if (!(fam.law_entropy > h_chain)) return false;
    last_gap = fam.gap;
  }
  if (!(last_gap < 0.002)) return false;

  const auto balanced = two_state_family(Rat(1, 2), Rat(1, 2));
  registry.record(balanced.law, "balanced two-state law");
  if (std::abs(balanced.gap) > 1e-12) return false;
  detail = fmt("gap %.6f nats at eps 1e-4, balanced gap %.1e", last_gap, balanced.gap);
  return true;
}

bool crit_entropy_family(std::string& detail) {
  const StochasticMatrix chains[] = {two_state_chain(Rat(7, 10)), three_state_chain()};
  double final_gap = 0.0;
  for (const auto& q : chains) {
    double prev = std::numeric_limits<double>::infinity();
    for (const long long n : {10LL, 100LL, 1000LL, 10000LL}) {
      const auto fam = entropy_family(q, n);
      registry.record(fam.law, fmt("entropy family n=%lld on %d states", n, q.size()));
      if (!verify_mapping_law(fam.law, q)) return false;
      if (!is_synchronizing(fam.law.support())) return false;
      if (!(fam.gap < prev)) return false;
      prev = fam.gap;
    }
    if (!(prev < 0.005)) return false;
    final_gap = prev;
  }
  detail = fmt("gaps strictly decreasing, %.5f nats at n=10000", final_gap);
  return true;
}

bool crit_gap_floor(std::string& detail) {
  const StochasticMatrix q({{Rat(1, 2), Rat(1, 2)}, {Rat(1, 3), Rat(2, 3)}});
  const auto coarse = entropy_gap_floor(q, Rat(1, 1000));
  const auto fine = entropy_gap_floor(q, Rat(1, 10000));
  registry.record(coarse.arg_min, "gap floor argmin, coarse grid");
  registry.record(fine.arg_min, "gap floor argmin, fine grid");
  detail = fmt("floor %.6f nats (step 1e-3), %.6f (step 1e-4)", coarse.floor_gap, fine.floor_gap);
  if (!(coarse.floor_gap > 0.0) || !(fine.floor_gap > 0.0)) return false;
  return std::abs(coarse.floor_gap - fine.floor_gap) <= 0.10 * fine.floor_gap;
}

bool crit_coloring_coverage(std::string& detail) {
  long long primitive = 0;
  for (int m = 1; m <= 5; ++m) {
    // Per-vertex multisets {a, b} of out-edge targets enumerate every 2-out
    // multigraph on m labeled vertices exactly once.
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) pairs.emplace_back(a, b);
    std::vector<size_t> pick(static_cast<size_t>(m), 0);
    for (;;) {
      std::vector<std::vector<Int>> entries(static_cast<size_t>(m),
                                            std::vector<Int>(static_cast<size_t>(m), 0));
      for (int x = 0; x < m; ++x) {
        const auto& [a, b] = pairs[pick[static_cast<size_t>(x)]];
        ++entries[static_cast<size_t>(a)][static_cast<size_t>(x)];
        ++entries[static_cast<size_t>(b)][static_cast<size_t>(x)];
      }
      const AdjacencyMatrix graph(m, std::move(entries));
      if (check_graph_primitive(graph).primitive) {
        ++primitive;
        const auto coloring = find_synchronizing_coloring(graph);
        if (!coloring_matches(coloring, graph)) return false;
        if (!oracle_is_synchronizing(coloring.colors)) return false;
        registry.record(law_from_coloring(coloring), fmt("uniform coloring law, m=%d", m));
      }
      size_t i = 0;
      while (i < pick.size() && ++pick[i] == pairs.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  detail = fmt("%lld primitive graphs colored and oracle-checked", primitive);
  return primitive > 0;
}

bool crit_sync_oracle(std::string& detail) {
  std::mt19937_64 rng(31415);
  int positives = 0;
  for (int t = 0; t < 500; ++t) {
    const int m = rand_between(rng, 2, 6);
    const int d = rand_between(rng, 1, 3);
    std::vector<MappingTable> colors;
    for (int i = 0; i < d; ++i) colors.push_back(random_map(rng, m));
    const bool fast = is_synchronizing(colors);
    if (fast != oracle_is_synchronizing(colors)) return false;
    if (fast) ++positives;
  }
  detail = fmt("500 sets, %d synchronizing, zero disagreements", positives);
  return true;
}

bool crit_entropy_inequality(std::string& detail) {
  detail = fmt("%lld laws swept, min entropy margin %.3e nats", registry.laws,
               registry.min_margin);
  if (registry.violations > 0) detail += " — worst: " + registry.worst;
  return registry.violations == 0 && registry.laws > 0;
}

struct Criterion {
  const char* name;
  double time_limit;  // seconds; 0 = untimed
  std::function<bool(std::string&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"named three-state laws verify; synchronization decisions", 1.0, crit_named_laws},
      {"law synthesis on 51 mixing chains", 60.0, crit_synthesis},
      {"cftp matches the exact stationary law", 30.0, crit_cftp_exactness},
      {"cftp is start-state independent", 10.0, crit_cftp_start_independence},
      {"two-state entropy gap shrinks with epsilon", 1.0, crit_two_state_gaps},
      {"entropy family gap shrinks with n", 10.0, crit_entropy_family},
      {"positive entropy gap floor without row symmetry", 60.0, crit_gap_floor},
      {"every primitive 2-out graph on <= 5 vertices gets a coloring", 300.0,
       crit_coloring_coverage},
      {"synchronization test agrees with the subset oracle", 60.0, crit_sync_oracle},
      {"law entropy never beats the chain entropy rate", 0.0, crit_entropy_inequality},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && c.time_limit > 0 && secs >= c.time_limit) {
      ok = false;
      detail += fmt(" [over the %.0f s budget]", c.time_limit);
    }
    std::printf("[%s] %2zu. %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", i + 1, c.name, secs,
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  if (failed == 0) {
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
  }
  std::printf("%d of %zu criteria FAILED\n", failed, criteria.size());
  return 1;
}
