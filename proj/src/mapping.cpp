#include "syncwalk/mapping.hpp"

#include <algorithm>

#include "syncwalk/errors.hpp"

namespace syncwalk {

bool MappingTable::is_constant() const {
  for (int v : image)
    if (v != image[0]) return false;
  return true;
}

MappingTable identity_map(int m) {
  MappingTable f;
  f.image.resize(static_cast<size_t>(m));
  for (int x = 0; x < m; ++x) f.image[static_cast<size_t>(x)] = x;
  return f;
}

MappingTable constant_map(int m, int target) {
  if (target < 0 || target >= m) throw PreconditionError("constant target out of range");
  MappingTable f;
  f.image.assign(static_cast<size_t>(m), target);
  return f;
}

MappingTable compose(const MappingTable& after, const MappingTable& before) {
  if (after.size() != before.size()) throw PreconditionError("composing maps of different sizes");
  MappingTable out;
  out.image.resize(before.image.size());
  for (size_t x = 0; x < before.image.size(); ++x)
    out.image[x] = after.image[static_cast<size_t>(before.image[x])];
  return out;
}

std::vector<int> image_set(const MappingTable& f) {
  std::vector<int> img = f.image;
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

MappingTable Word::composed() const {
  if (maps.empty()) throw PreconditionError("empty word has no intrinsic size");
  MappingTable cur = identity_map(maps[0].size());
  for (const auto& f : maps) cur = compose(f, cur);
  return cur;
}

int Word::apply(int x) const {
  for (const auto& f : maps) x = f(x);
  return x;
}

AdjacencyMatrix::AdjacencyMatrix(int m, std::vector<std::vector<Int>> entries) : m_(m), d_(0) {
  if (m_ <= 0) throw PreconditionError("graph must be non-empty");
  if (static_cast<int>(entries.size()) != m_) throw PreconditionError("adjacency matrix must be m x m");
  a_.reserve(static_cast<size_t>(m_) * m_);
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != m_) throw PreconditionError("adjacency matrix must be m x m");
    for (const auto& e : row) {
      if (e < 0) throw PreconditionError("negative edge multiplicity");
      a_.push_back(e);
    }
  }
  Int d = 0;
  for (int y = 0; y < m_; ++y) d += count(y, 0);
  for (int x = 1; x < m_; ++x) {
    Int dx = 0;
    for (int y = 0; y < m_; ++y) dx += count(y, x);
    if (dx != d) throw PreconditionError("out-degrees are not constant");
  }
  if (d <= 0) throw PreconditionError("out-degree must be positive");
  if (d > 1'000'000'000) throw PreconditionError("out-degree too large");
  d_ = static_cast<int>(d);
}

std::vector<int> AdjacencyMatrix::targets(int x) const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(d_));
  for (int y = 0; y < m_; ++y) {
    // multiplicities are bounded by d_, so the narrowing is safe
    const auto c = count(y, x).template convert_to<long long>();
    for (long long i = 0; i < c; ++i) out.push_back(y);
  }
  return out;
}

AdjacencyMatrix RoadColoring::induced_graph() const {
  if (colors.empty()) throw PreconditionError("coloring has no colors");
  const int m = colors[0].size();
  std::vector<std::vector<Int>> entries(static_cast<size_t>(m), std::vector<Int>(static_cast<size_t>(m), Int(0)));
  for (const auto& c : colors) {
    if (c.size() != m) throw PreconditionError("coloring maps have mismatched sizes");
    for (int x = 0; x < m; ++x) {
      const int y = c(x);
      if (y < 0 || y >= m) throw PreconditionError("coloring map value out of range");
      entries[static_cast<size_t>(y)][static_cast<size_t>(x)] += 1;
    }
  }
  return AdjacencyMatrix(m, std::move(entries));
}

bool coloring_matches(const RoadColoring& coloring, const AdjacencyMatrix& a) {
  if (coloring.colors.empty()) return false;
  if (coloring.size() != a.size() || coloring.out_degree() != a.out_degree()) return false;
  return coloring.induced_graph() == a;
}

}  // namespace syncwalk
