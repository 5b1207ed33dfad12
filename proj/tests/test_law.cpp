#include <doctest.h>

#include <random>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "syncwalk/errors.hpp"
#include "syncwalk/law.hpp"

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

StochasticMatrix random_mixing_chain(std::mt19937_64& rng, int max_m, int max_den) {
  while (true) {
    const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_m));
    std::vector<std::vector<Rat>> rows(static_cast<size_t>(m));
    for (auto& row : rows) {
      const int den = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_den - 1));
      std::vector<int> units(static_cast<size_t>(m), 0);
      for (int u = 0; u < den; ++u) units[rng() % static_cast<unsigned>(m)] += 1;
      row.resize(static_cast<size_t>(m));
      for (int y = 0; y < m; ++y) row[static_cast<size_t>(y)] = Rat(units[static_cast<size_t>(y)], den);
    }
    StochasticMatrix q(std::move(rows));
    if (classify(q).kind == ChainClass::Mixing) return q;
  }
}

}  // namespace

TEST_CASE("mapping law construction and lookups") {
  const auto mu = law_mu1();
  CHECK(mu.state_count() == 3);
  CHECK(mu.atoms().size() == 3);
  CHECK(mu.weight(sigma1()) == Rat(1, 3));
  CHECK(mu.weight(sigma4()) == 0);
  CHECK(mu.support() == std::vector<MappingTable>{sigma2(), sigma3(), sigma1()});

  // Duplicates merge, zero-weight atoms vanish.
  const MappingLaw merged(3, {{sigma1(), Rat(1, 4)},
                              {sigma1(), Rat(1, 4)},
                              {sigma2(), Rat(1, 2)},
                              {sigma3(), Rat(0)}});
  CHECK(merged.atoms().size() == 2);
  CHECK(merged.weight(sigma1()) == Rat(1, 2));

  CHECK_THROWS_AS(MappingLaw(0, {}), PreconditionError);
  CHECK_THROWS_AS(MappingLaw(3, {{sigma1(), Rat(1, 2)}}), PreconditionError);
  CHECK_THROWS_AS(MappingLaw(3, {{sigma1(), Rat(3, 2)}, {sigma2(), Rat(-1, 2)}}), PreconditionError);
  CHECK_THROWS_AS(MappingLaw(2, {{sigma1(), Rat(1)}}), PreconditionError);
  CHECK_THROWS_AS(MappingLaw(2, {{MappingTable{{0, 2}}, Rat(1)}}), PreconditionError);
}

TEST_CASE("law verification against the running chain") {
  const auto q = three_state_chain();
  CHECK(verify_mapping_law(law_mu1(), q));
  CHECK(verify_mapping_law(law_mu2(), q));
  CHECK(law_mu2().induced_matrix() == q);

  const MappingLaw id_law(2, {{identity_map(2), Rat(1)}});
  CHECK(verify_mapping_law(id_law, StochasticMatrix({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}})));
  CHECK(!verify_mapping_law(id_law, two_state_chain(Rat(1, 2))));
  CHECK(!verify_mapping_law(law_mu1(), two_state_chain(Rat(1, 2))));

  // Moving weight between atoms breaks the marginal.
  const MappingLaw tampered(3, {{sigma1(), Rat(1, 2)}, {sigma2(), Rat(1, 6)}, {sigma3(), Rat(1, 3)}});
  CHECK(!verify_mapping_law(tampered, q));
}

TEST_CASE("uniform law of a coloring") {
  const auto mu = law_from_coloring(RoadColoring{{sigma1(), sigma2(), sigma3()}});
  CHECK(mu == law_mu1());

  const auto half = law_from_coloring(RoadColoring{{sigma1(), sigma2()}});
  CHECK(half.weight(sigma1()) == Rat(1, 2));
  CHECK(half.weight(sigma2()) == Rat(1, 2));
  const auto a = RoadColoring{{sigma1(), sigma2()}}.induced_graph();
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK(half.induced_matrix().q(x, y) == Rat(a.count(y, x), 2));

  const auto point = law_from_coloring(RoadColoring{{sigma4(), sigma4()}});
  CHECK(point.atoms().size() == 1);
  CHECK(point.weight(sigma4()) == 1);

  CHECK_THROWS_AS(law_from_coloring(RoadColoring{}), PreconditionError);
}

TEST_CASE("exact law of a rational chain") {
  const auto mu = rational_mapping_law(three_state_chain());
  REQUIRE(mu.atoms().size() == 3);
  CHECK(mu.weight(MappingTable{{1, 0, 0}}) == Rat(1, 3));
  CHECK(mu.weight(MappingTable{{1, 2, 0}}) == Rat(1, 3));
  CHECK(mu.weight(MappingTable{{2, 2, 1}}) == Rat(1, 3));
  CHECK(verify_mapping_law(mu, three_state_chain()));

  // A permutation matrix yields the point mass on that permutation.
  const auto perm = rational_mapping_law(StochasticMatrix({{Rat(0), Rat(1), Rat(0)},
                                                           {Rat(0), Rat(0), Rat(1)},
                                                           {Rat(1), Rat(0), Rat(0)}}));
  CHECK(perm.atoms().size() == 1);
  CHECK(perm.weight(sigma3()) == 1);

  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const auto q = random_mixing_chain(rng, 4, 9);
    const auto law = rational_mapping_law(q);
    CHECK(verify_mapping_law(law, q));
    Int den = 1;
    for (int x = 0; x < q.size(); ++x)
      for (int y = 0; y < q.size(); ++y)
        if (q.q(x, y) != 0) den = lcm_int(den, rat_den(q.q(x, y)));
    CHECK(Int(law.atoms().size()) <= den);
  }
}

TEST_CASE("mixing two laws") {
  const auto a = law_mu1();
  const auto b = law_mu2();
  CHECK(mix(a, b, Rat(0)) == a);
  CHECK(mix(a, b, Rat(1)) == b);

  const auto half = mix(a, b, Rat(1, 2));
  CHECK(half.weight(sigma1()) == Rat(1, 6));
  CHECK(half.weight(sigma2()) == Rat(1, 6));
  CHECK(half.weight(sigma3()) == Rat(1, 6) + Rat(1, 3));
  CHECK(half.weight(sigma4()) == Rat(1, 6));

  // Both constituents verify against the chain, so every mixture does.
  for (const auto& t : {Rat(1, 4), Rat(2, 5), Rat(9, 10)})
    CHECK(verify_mapping_law(mix(a, b, t), three_state_chain()));

  CHECK_THROWS_AS(mix(a, b, Rat(-1, 10)), PreconditionError);
  CHECK_THROWS_AS(mix(a, b, Rat(11, 10)), PreconditionError);
  const MappingLaw id2(2, {{identity_map(2), Rat(1)}});
  CHECK_THROWS_AS(mix(a, id2, Rat(1, 2)), PreconditionError);
}

TEST_CASE("synchronizing law for the symmetric two-state chain") {
  const auto q = two_state_chain(Rat(7, 10));
  const auto res = synchronizing_mapping_law(q);

  CHECK(res.epsilon == Rat(3, 10));
  CHECK(res.coloring.colors == std::vector<MappingTable>{constant_map(2, 0), constant_map(2, 1)});
  CHECK(res.certificate.length() == 1);
  CHECK(res.certificate.composed().is_constant());

  REQUIRE(res.law.atoms().size() == 3);
  CHECK(res.law.weight(constant_map(2, 0)) == Rat(3, 10));
  CHECK(res.law.weight(identity_map(2)) == Rat(2, 5));
  CHECK(res.law.weight(constant_map(2, 1)) == Rat(3, 10));
  CHECK(verify_mapping_law(res.law, q));
  CHECK(is_synchronizing(res.law.support()));
}

TEST_CASE("synchronizing law for the running three-state chain") {
  const auto q = three_state_chain();
  const auto res = synchronizing_mapping_law(q);

  CHECK(res.epsilon == Rat(1, 3));
  CHECK(verify_mapping_law(res.law, q));
  CHECK(is_synchronizing(res.law.support()));
  CHECK(oracle_is_synchronizing(res.law.support()));
  CHECK(coloring_matches(res.coloring, build_support_graph(q)));
  CHECK(image_set(res.certificate.composed()).size() == 1);

  // The one-state chain takes the epsilon = 1 shortcut.
  const auto solo = synchronizing_mapping_law(StochasticMatrix({{Rat(1)}}));
  CHECK(solo.epsilon == 1);
  CHECK(solo.law.weight(identity_map(1)) == 1);
}

TEST_CASE("synchronizing law rejects non-mixing chains") {
  CHECK_THROWS_WITH_AS(synchronizing_mapping_law(StochasticMatrix({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}})),
                       "chain is not mixing: irreducible-periodic", PreconditionError);
  CHECK_THROWS_WITH_AS(synchronizing_mapping_law(StochasticMatrix({{Rat(1), Rat(0)}, {Rat(1, 2), Rat(1, 2)}})),
                       "chain is not mixing: reducible", PreconditionError);
}

TEST_CASE("synchronizing law on random mixing chains") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = random_mixing_chain(rng, 4, 8);
    SynthesisOptions opts;
    if (trial % 2) opts.pref = SitePreference::HighestProbability;
    const auto res = synchronizing_mapping_law(q, opts);
    CHECK(verify_mapping_law(res.law, q));
    CHECK(is_synchronizing(res.law.support()));
    CHECK(oracle_is_synchronizing(res.law.support()));
    CHECK(coloring_matches(res.coloring, build_support_graph(q, opts.pref)));
    CHECK(image_set(res.certificate.composed()).size() == 1);
    CHECK(res.epsilon > 0);
    CHECK(res.epsilon <= 1);
  }
}
