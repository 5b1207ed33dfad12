#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "syncwalk/chain.hpp"
#include "syncwalk/mapping.hpp"

namespace syncwalk {

// Which out-edge of each vertex receives the extra weight when a chain is
// flattened onto a constant-out-degree multigraph.
enum class SitePreference { SmallestIndex, HighestProbability };

// d-out weighting of the support of q, with d = max row support: the
// designated edge x -> s(x) gets multiplicity d - outdeg(x) + 1, every other
// support edge gets 1.
AdjacencyMatrix build_support_graph(const StochasticMatrix& q,
                                    SitePreference pref = SitePreference::SmallestIndex);

struct PrimitivityCheck {
  bool primitive = false;
  // Least r with a(.,.)^r everywhere positive when primitive.
  int positive_power = 0;
  // Diagnostic when not primitive: not strongly connected, or periodic.
  bool strongly_connected = false;
  int period = 0;
};

// Constant out-degree is built into AdjacencyMatrix; this checks the rest of
// the road coloring theorem's hypotheses: strong connectivity + aperiodicity,
// decided by boolean powers up to m^2 - 2m + 2.
PrimitivityCheck check_graph_primitive(const AdjacencyMatrix& a);

// Def: a color set synchronizes when some composition of its maps is constant.
// Decided on the deduplicated color set via the pair automaton: every
// two-element subset must reach a singleton. O(m^2 d) states.
bool is_synchronizing(const std::vector<MappingTable>& colors);

struct ColoringSearchOptions {
  std::uint64_t seed = 0;
  // Upper bound on candidate colorings tested across all phases.
  long long budget = 5'000'000;
  int random_restarts = 4096;
};

// Short constant-image witness word over the color set, built greedily:
// repeatedly merge the current image's hardest pair (largest pairwise merge
// distance) along that pair's shortest merging word. Word length is capped at
// m^3; exceeding the cap throws BudgetError, a non-synchronizing set throws
// PreconditionError. The returned word's composition has a one-point image.
Word synchronizing_word(const std::vector<MappingTable>& colors);

// A synchronizing coloring of `a`. Requires check_graph_primitive to pass
// (throws PreconditionError("road coloring theorem hypotheses not met")
// otherwise); the theorem then guarantees existence. Phased search:
// sink-tree heuristics, seeded random colorings, exhaustive enumeration;
// candidates tested against `budget` (BudgetError on exhaustion). The result
// is always re-verified with is_synchronizing before returning.
RoadColoring find_synchronizing_coloring(const AdjacencyMatrix& a,
                                         const ColoringSearchOptions& opts = {});

}  // namespace syncwalk
