#include "syncwalk/law.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "syncwalk/errors.hpp"

namespace syncwalk {

MappingLaw::MappingLaw(int m, std::vector<std::pair<MappingTable, Rat>> atoms) : m_(m) {
  if (m_ <= 0) throw PreconditionError("law needs a non-empty state set");
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rat sum = 0;
  for (auto& [f, w] : atoms) {
    if (f.size() != m_) throw PreconditionError("law atom has wrong map size");
    for (int v : f.image)
      if (v < 0 || v >= m_) throw PreconditionError("law atom maps out of range");
    if (w < 0) throw PreconditionError("negative atom weight");
    if (w == 0) continue;
    sum += w;
    if (!atoms_.empty() && atoms_.back().first == f)
      atoms_.back().second += w;
    else
      atoms_.emplace_back(std::move(f), std::move(w));
  }
  if (sum != 1) throw PreconditionError("law weights must sum to one");
}

std::vector<MappingTable> MappingLaw::support() const {
  std::vector<MappingTable> out;
  out.reserve(atoms_.size());
  for (const auto& [f, w] : atoms_) out.push_back(f);
  return out;
}

Rat MappingLaw::weight(const MappingTable& f) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), f,
                                   [](const auto& a, const MappingTable& key) { return a.first < key; });
  if (it == atoms_.end() || !(it->first == f)) return Rat(0);
  return it->second;
}

StochasticMatrix MappingLaw::induced_matrix() const {
  std::vector<std::vector<Rat>> rows(static_cast<size_t>(m_), std::vector<Rat>(static_cast<size_t>(m_), Rat(0)));
  for (const auto& [f, w] : atoms_)
    for (int x = 0; x < m_; ++x) rows[static_cast<size_t>(x)][static_cast<size_t>(f(x))] += w;
  return StochasticMatrix(std::move(rows));
}

bool verify_mapping_law(const MappingLaw& mu, const StochasticMatrix& q) {
  if (mu.state_count() != q.size()) return false;
  return mu.induced_matrix() == q;
}

MappingLaw law_from_coloring(const RoadColoring& coloring) {
  if (coloring.colors.empty()) throw PreconditionError("coloring has no colors");
  const int m = coloring.size();
  const int d = coloring.out_degree();
  std::vector<std::pair<MappingTable, Rat>> atoms;
  atoms.reserve(static_cast<size_t>(d));
  for (const auto& c : coloring.colors) atoms.emplace_back(c, Rat(1, d));
  return MappingLaw(m, std::move(atoms));
}

MappingLaw rational_mapping_law(const StochasticMatrix& q) {
  const int m = q.size();
  Int den = 1;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (q.q(x, y) != 0) den = lcm_int(den, rat_den(q.q(x, y)));

  // Column x of the scaled multigraph, as cumulative slot counts per target
  // in ascending target order: slot i (1-based, i <= den) at x goes to the
  // first y whose cumulative count reaches i.
  std::vector<std::vector<std::pair<Int, int>>> cum(static_cast<size_t>(m));
  std::vector<Int> boundaries{Int(0)};
  for (int x = 0; x < m; ++x) {
    Int c = 0;
    for (int y = 0; y < m; ++y) {
      const Rat& e = q.q(x, y);
      if (e == 0) continue;
      c += rat_num(e) * (den / rat_den(e));
      cum[static_cast<size_t>(x)].emplace_back(c, y);
      boundaries.push_back(c);
    }
  }
  std::sort(boundaries.begin(), boundaries.end());
  boundaries.erase(std::unique(boundaries.begin(), boundaries.end()), boundaries.end());

  std::vector<std::pair<MappingTable, Rat>> atoms;
  for (size_t b = 0; b + 1 < boundaries.size(); ++b) {
    const Int slot = boundaries[b] + 1;  // representative slot of this run
    MappingTable f;
    f.image.resize(static_cast<size_t>(m));
    for (int x = 0; x < m; ++x) {
      const auto& cx = cum[static_cast<size_t>(x)];
      const auto it = std::lower_bound(cx.begin(), cx.end(), slot,
                                       [](const auto& a, const Int& key) { return a.first < key; });
      if (it == cx.end()) throw std::logic_error("slot beyond column total");
      f.image[static_cast<size_t>(x)] = it->second;
    }
    atoms.emplace_back(std::move(f), Rat(boundaries[b + 1] - boundaries[b], den));
  }
  return MappingLaw(m, std::move(atoms));
}

SynthesisResult synchronizing_mapping_law(const StochasticMatrix& q, const SynthesisOptions& opts) {
  const auto cls = classify(q);
  if (cls.kind != ChainClass::Mixing)
    throw PreconditionError(std::string("chain is not mixing: ") + chain_class_name(cls.kind));

  const int m = q.size();
  const AdjacencyMatrix a = build_support_graph(q, opts.pref);
  const RoadColoring coloring = find_synchronizing_coloring(a, opts.search);
  const MappingLaw uniform = law_from_coloring(coloring);
  const Word certificate = synchronizing_word(coloring.colors);

  Rat eps;
  bool have = false;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const Rat& e = q.q(x, y);
      if (e > 0 && (!have || e < eps)) {
        eps = e;
        have = true;
      }
    }

  if (eps == 1) return {uniform, coloring, certificate, eps};

  const int d = a.out_degree();
  std::vector<std::vector<Rat>> residual(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(m), Rat(0)));
  const Rat scale = 1 / (Rat(1) - eps);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const Rat hat = Rat(a.count(y, x), d);
      residual[static_cast<size_t>(x)][static_cast<size_t>(y)] = (q.q(x, y) - eps * hat) * scale;
    }
  const MappingLaw residual_law = rational_mapping_law(StochasticMatrix(std::move(residual)));
  return {mix(residual_law, uniform, eps), coloring, certificate, eps};
}

MappingLaw mix(const MappingLaw& a, const MappingLaw& b, const Rat& t) {
  if (t < 0 || t > 1) throw PreconditionError("mixing weight outside [0, 1]");
  if (a.state_count() != b.state_count()) throw PreconditionError("mixing laws on different state sets");
  std::vector<std::pair<MappingTable, Rat>> atoms;
  atoms.reserve(a.atoms().size() + b.atoms().size());
  const Rat s = Rat(1) - t;
  for (const auto& [f, w] : a.atoms()) atoms.emplace_back(f, w * s);
  for (const auto& [f, w] : b.atoms()) atoms.emplace_back(f, w * t);
  return MappingLaw(a.state_count(), std::move(atoms));
}

}  // namespace syncwalk
