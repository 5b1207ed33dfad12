#pragma once

#include <utility>
#include <vector>

#include "syncwalk/chain.hpp"
#include "syncwalk/coloring.hpp"
#include "syncwalk/mapping.hpp"

namespace syncwalk {

// Probability law on the maps V -> V, stored by its support. Atoms are kept
// deduplicated, zero-free, lexicographically sorted by image table, with
// weights summing to one exactly.
class MappingLaw {
 public:
  MappingLaw(int m, std::vector<std::pair<MappingTable, Rat>> atoms);

  int state_count() const { return m_; }
  const std::vector<std::pair<MappingTable, Rat>>& atoms() const { return atoms_; }
  std::vector<MappingTable> support() const;
  Rat weight(const MappingTable& f) const;

  // Marginal chain: q(x, y) = total weight of {f : f(x) = y}.
  StochasticMatrix induced_matrix() const;

  bool operator==(const MappingLaw& other) const = default;

 private:
  int m_;
  std::vector<std::pair<MappingTable, Rat>> atoms_;
};

// Exact check that mu's one-step marginal is q.
bool verify_mapping_law(const MappingLaw& mu, const StochasticMatrix& q);

// Uniform law on the color slots: each map gets 1/d per slot it occupies.
MappingLaw law_from_coloring(const RoadColoring& coloring);

// Exact mapping law for a rational chain: scale by d = lcm of the entry
// denominators, read the d-out multigraph column-wise with targets sorted
// ascending, and give each of the d slot maps weight 1/d.
MappingLaw rational_mapping_law(const StochasticMatrix& q);

struct SynthesisOptions {
  SitePreference pref = SitePreference::SmallestIndex;
  ColoringSearchOptions search;
};

struct SynthesisResult {
  MappingLaw law;
  RoadColoring coloring;   // synchronizing coloring of the support graph
  Word certificate;        // constant-image word over coloring.colors
  Rat epsilon;             // weight placed on the coloring's uniform law
};

// Mapping law with synchronizing support for a mixing chain:
// eps = min positive entry of q, q_hat = coloring marginal A/d,
// residual chain (q - eps q_hat) / (1 - eps) realized by its rational law,
// result = (1 - eps) residual-law + eps coloring-law (eps = 1 short-circuits
// to the coloring law). Throws PreconditionError when q is not mixing.
SynthesisResult synchronizing_mapping_law(const StochasticMatrix& q,
                                          const SynthesisOptions& opts = {});

// (1 - t) a + t b on a common state space; t in [0, 1].
MappingLaw mix(const MappingLaw& a, const MappingLaw& b, const Rat& t);

}  // namespace syncwalk
