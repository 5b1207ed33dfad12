#include "syncwalk/coloring.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "internal/bitmat.hpp"
#include "syncwalk/errors.hpp"

namespace syncwalk {

namespace {

int pair_index(int m, int u, int v) {
  // u < v; row-major upper triangle
  return u * m - u * (u + 1) / 2 + (v - u - 1);
}

std::vector<MappingTable> canonical_color_set(const std::vector<MappingTable>& colors) {
  if (colors.empty()) throw PreconditionError("empty color set");
  const int m = colors[0].size();
  if (m <= 0) throw PreconditionError("colors must act on a non-empty state set");
  for (const auto& c : colors) {
    if (c.size() != m) throw PreconditionError("colors have mismatched sizes");
    for (int v : c.image)
      if (v < 0 || v >= m) throw PreconditionError("color map value out of range");
  }
  std::vector<MappingTable> cs = colors;
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return cs;
}

// Shortest-merge tables over the pair automaton: dist[p] = length of the
// shortest word collapsing pair p, policy[p] = first color of one such word
// (smallest color index). dist stays -1 for pairs that never merge.
struct PairTables {
  std::vector<long long> dist;
  std::vector<int> policy;
};

PairTables pair_merge_tables(const std::vector<MappingTable>& cs, int m) {
  const int pairs = m * (m - 1) / 2;
  PairTables t{std::vector<long long>(pairs, -1), std::vector<int>(pairs, -1)};

  long long assigned = 0;
  for (long long round = 1; assigned < pairs; ++round) {
    bool changed = false;
    for (int u = 0; u < m; ++u)
      for (int v = u + 1; v < m; ++v) {
        const int p = pair_index(m, u, v);
        if (t.dist[p] >= 0) continue;
        for (size_t c = 0; c < cs.size(); ++c) {
          const int nu = cs[c](u);
          const int nv = cs[c](v);
          long long next_dist;
          if (nu == nv) {
            next_dist = 0;
          } else {
            const int np = pair_index(m, std::min(nu, nv), std::max(nu, nv));
            next_dist = t.dist[np];
          }
          if (next_dist == round - 1) {
            t.dist[p] = round;
            t.policy[p] = static_cast<int>(c);
            ++assigned;
            changed = true;
            break;
          }
        }
      }
    if (!changed) break;
  }
  return t;
}

}  // namespace

AdjacencyMatrix build_support_graph(const StochasticMatrix& q, SitePreference pref) {
  const int m = q.size();
  int d = 0;
  for (int x = 0; x < m; ++x) d = std::max(d, q.row_support(x));

  std::vector<std::vector<Int>> entries(static_cast<size_t>(m), std::vector<Int>(static_cast<size_t>(m), Int(0)));
  for (int x = 0; x < m; ++x) {
    int site = -1;
    if (pref == SitePreference::SmallestIndex) {
      for (int y = 0; y < m && site < 0; ++y)
        if (q.q(x, y) > 0) site = y;
    } else {
      for (int y = 0; y < m; ++y)
        if (q.q(x, y) > 0 && (site < 0 || q.q(x, y) > q.q(x, site))) site = y;
    }
    const int extra = d - q.row_support(x);
    for (int y = 0; y < m; ++y)
      if (q.q(x, y) > 0) entries[static_cast<size_t>(y)][static_cast<size_t>(x)] = (y == site) ? Int(1 + extra) : Int(1);
  }
  return AdjacencyMatrix(m, std::move(entries));
}

PrimitivityCheck check_graph_primitive(const AdjacencyMatrix& a) {
  const int m = a.size();
  internal::BitMat b(m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (a.has_edge(x, y)) b.set(x, y);
  const auto sc = internal::classify_bool_support(b);
  return {sc.primitive, sc.positive_power, sc.strongly_connected, sc.period};
}

bool is_synchronizing(const std::vector<MappingTable>& colors) {
  const auto cs = canonical_color_set(colors);
  const int m = cs[0].size();
  if (m == 1) return true;

  const int pairs = m * (m - 1) / 2;
  // Reverse reachability from directly-merging pairs.
  std::vector<std::vector<int>> rev(static_cast<size_t>(pairs));
  std::vector<char> merged(static_cast<size_t>(pairs), 0);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) {
      const int p = pair_index(m, u, v);
      for (const auto& c : cs) {
        const int nu = c(u);
        const int nv = c(v);
        if (nu == nv) {
          merged[static_cast<size_t>(p)] = 1;
        } else {
          rev[static_cast<size_t>(pair_index(m, std::min(nu, nv), std::max(nu, nv)))].push_back(p);
        }
      }
    }

  std::vector<char> ok(static_cast<size_t>(pairs), 0);
  std::vector<int> stack;
  for (int p = 0; p < pairs; ++p)
    if (merged[static_cast<size_t>(p)]) {
      ok[static_cast<size_t>(p)] = 1;
      stack.push_back(p);
    }
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    for (int pre : rev[static_cast<size_t>(p)])
      if (!ok[static_cast<size_t>(pre)]) {
        ok[static_cast<size_t>(pre)] = 1;
        stack.push_back(pre);
      }
  }
  for (int p = 0; p < pairs; ++p)
    if (!ok[static_cast<size_t>(p)]) return false;
  return true;
}

Word synchronizing_word(const std::vector<MappingTable>& colors) {
  const auto cs = canonical_color_set(colors);
  const int m = cs[0].size();
  if (m == 1) return Word{{cs[0]}};
  if (!is_synchronizing(cs)) throw PreconditionError("color set is not synchronizing");

  const auto tables = pair_merge_tables(cs, m);
  const long long cap = static_cast<long long>(m) * m * m;

  std::vector<int> image(static_cast<size_t>(m));
  for (int x = 0; x < m; ++x) image[static_cast<size_t>(x)] = x;
  Word word;

  while (image.size() > 1) {
    // Hardest pair first: largest merge distance, ties to the smallest pair.
    int bu = -1, bv = -1;
    long long bd = -1;
    for (size_t i = 0; i < image.size(); ++i)
      for (size_t j = i + 1; j < image.size(); ++j) {
        const long long dd = tables.dist[static_cast<size_t>(pair_index(m, image[i], image[j]))];
        if (dd > bd) {
          bd = dd;
          bu = image[i];
          bv = image[j];
        }
      }
    if (bd < 0) throw PreconditionError("color set is not synchronizing");

    int u = bu, v = bv;
    while (u != v) {
      const int c = tables.policy[static_cast<size_t>(pair_index(m, std::min(u, v), std::max(u, v)))];
      const auto& f = cs[static_cast<size_t>(c)];
      word.maps.push_back(f);
      if (static_cast<long long>(word.maps.size()) > cap)
        throw BudgetError("synchronizing word exceeded the length cap");
      for (auto& s : image) s = f(s);
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      u = f(u);
      v = f(v);
    }
  }
  return word;
}

RoadColoring find_synchronizing_coloring(const AdjacencyMatrix& a, const ColoringSearchOptions& opts) {
  const auto pc = check_graph_primitive(a);
  if (!pc.primitive) {
    std::string why = pc.strongly_connected
                          ? "graph is periodic with period " + std::to_string(pc.period)
                          : "graph is not strongly connected";
    throw PreconditionError("road coloring theorem hypotheses not met: " + why);
  }

  const int m = a.size();
  const int d = a.out_degree();

  // All distinct orderings of each vertex's out-edge multiset.
  std::vector<std::vector<std::vector<int>>> arrangements(static_cast<size_t>(m));
  for (int x = 0; x < m; ++x) {
    std::vector<int> tg = a.targets(x);
    do {
      arrangements[static_cast<size_t>(x)].push_back(tg);
    } while (std::next_permutation(tg.begin(), tg.end()));
  }

  long long tested = 0;
  auto try_candidate = [&](const std::vector<size_t>& choice) -> bool {
    if (++tested > opts.budget) throw BudgetError("coloring search budget exhausted");
    std::vector<MappingTable> colors(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) colors[static_cast<size_t>(i)].image.resize(static_cast<size_t>(m));
    for (int x = 0; x < m; ++x) {
      const auto& arr = arrangements[static_cast<size_t>(x)][choice[static_cast<size_t>(x)]];
      for (int i = 0; i < d; ++i) colors[static_cast<size_t>(i)].image[static_cast<size_t>(x)] = arr[static_cast<size_t>(i)];
    }
    return is_synchronizing(colors);
  };
  auto to_coloring = [&](const std::vector<size_t>& choice) {
    RoadColoring out;
    out.colors.assign(static_cast<size_t>(d), MappingTable{std::vector<int>(static_cast<size_t>(m), 0)});
    for (int x = 0; x < m; ++x) {
      const auto& arr = arrangements[static_cast<size_t>(x)][choice[static_cast<size_t>(x)]];
      for (int i = 0; i < d; ++i) out.colors[static_cast<size_t>(i)].image[static_cast<size_t>(x)] = arr[static_cast<size_t>(i)];
    }
    return out;
  };
  auto choice_for_first_color = [&](const std::vector<int>& first) -> std::vector<size_t> {
    // The arrangement starting with first[x] and otherwise ascending.
    std::vector<size_t> choice(static_cast<size_t>(m), 0);
    for (int x = 0; x < m; ++x) {
      std::vector<int> want = a.targets(x);
      const auto it = std::find(want.begin(), want.end(), first[static_cast<size_t>(x)]);
      want.erase(it);
      want.insert(want.begin(), first[static_cast<size_t>(x)]);
      const auto& arrs = arrangements[static_cast<size_t>(x)];
      const auto found = std::find(arrs.begin(), arrs.end(), want);
      if (found == arrs.end()) throw std::logic_error("arrangement table is missing a permutation");
      choice[static_cast<size_t>(x)] = static_cast<size_t>(found - arrs.begin());
    }
    return choice;
  };

  // Phase 1: sink-tree colorings. A root with a self-loop and one in-edge per
  // other vertex pointing toward the root make color 0 an eventually-constant
  // map, which synchronizes on its own.
  for (int root = 0; root < m; ++root) {
    if (!a.has_edge(root, root)) continue;
    std::vector<int> hop(static_cast<size_t>(m), -1);
    hop[static_cast<size_t>(root)] = root;
    std::vector<int> queue{root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      for (int x = 0; x < m; ++x)
        if (hop[static_cast<size_t>(x)] < 0 && a.has_edge(x, u)) {
          hop[static_cast<size_t>(x)] = u;
          queue.push_back(x);
        }
    }
    if (queue.size() != static_cast<size_t>(m)) continue;  // unreachable with a primitive graph
    const auto choice = choice_for_first_color(hop);
    if (try_candidate(choice)) return to_coloring(choice);
  }

  // Phase 2: seeded random colorings.
  std::mt19937_64 rng(opts.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<size_t> choice(static_cast<size_t>(m), 0);
  for (int t = 0; t < opts.random_restarts; ++t) {
    for (int x = 0; x < m; ++x)
      choice[static_cast<size_t>(x)] =
          static_cast<size_t>(rng() % arrangements[static_cast<size_t>(x)].size());
    if (try_candidate(choice)) return to_coloring(choice);
  }

  // Phase 3: exhaustive odometer in lexicographic order.
  std::fill(choice.begin(), choice.end(), 0);
  while (true) {
    if (try_candidate(choice)) return to_coloring(choice);
    int x = m - 1;
    while (x >= 0) {
      if (++choice[static_cast<size_t>(x)] < arrangements[static_cast<size_t>(x)].size()) break;
      choice[static_cast<size_t>(x)] = 0;
      --x;
    }
    if (x < 0) break;
  }
  throw std::logic_error("primitive graph admitted no synchronizing coloring");
}

}  // namespace syncwalk
