#pragma once

#include <compare>
#include <vector>

#include "syncwalk/rational.hpp"

namespace syncwalk {

// Total map V -> V on states 0..m-1, stored as its image table.
struct MappingTable {
  std::vector<int> image;  // image[x] = sigma(x)

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int x) const { return image[static_cast<size_t>(x)]; }
  bool is_constant() const;

  auto operator<=>(const MappingTable& other) const = default;
};

MappingTable identity_map(int m);
MappingTable constant_map(int m, int target);

// after . before  (apply `before` first).
MappingTable compose(const MappingTable& after, const MappingTable& before);

// Sorted distinct values of the image.
std::vector<int> image_set(const MappingTable& f);

// A finite sequence of maps; maps[0] is applied first, so the composed table
// is maps.back() . ... . maps[0].
struct Word {
  std::vector<MappingTable> maps;

  size_t length() const { return maps.size(); }
  MappingTable composed() const;
  int apply(int x) const;
};

// d-out multigraph on 0..m-1 stored as edge multiplicities. Column x lists
// the out-edges of x: a(y, x) copies of x -> y, with every column summing to
// the common out-degree d.
class AdjacencyMatrix {
 public:
  // entries[y][x] = multiplicity of x -> y. Throws PreconditionError unless
  // all column sums agree and are positive.
  AdjacencyMatrix(int m, std::vector<std::vector<Int>> entries);

  int size() const { return m_; }
  int out_degree() const { return d_; }
  const Int& count(int y, int x) const { return a_[static_cast<size_t>(y) * m_ + x]; }
  bool has_edge(int x, int y) const { return count(y, x) > 0; }

  // Out-neighbors of x with multiplicity, ascending.
  std::vector<int> targets(int x) const;

  bool operator==(const AdjacencyMatrix& other) const = default;

 private:
  int m_;
  int d_;
  std::vector<Int> a_;  // row-major by y
};

// An assignment of the d out-edges of every vertex to d color slots: colors[i]
// is the map "follow your i-th edge". Repeats are allowed (two slots of a
// vertex may use parallel edges).
struct RoadColoring {
  std::vector<MappingTable> colors;

  int size() const { return colors.empty() ? 0 : colors[0].size(); }
  int out_degree() const { return static_cast<int>(colors.size()); }
  AdjacencyMatrix induced_graph() const;
};

// True when the colors sum edge-by-edge to a.
bool coloring_matches(const RoadColoring& coloring, const AdjacencyMatrix& a);

}  // namespace syncwalk
