#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace syncwalk::internal {

// Square boolean matrix with 64-bit packed rows; row x bit y = edge x -> y.
struct BitMat {
  int m = 0;
  int words = 0;
  std::vector<std::uint64_t> row;

  explicit BitMat(int m_) : m(m_), words((m_ + 63) / 64), row(static_cast<size_t>(m_) * words, 0) {}

  void set(int x, int y) { row[static_cast<size_t>(x) * words + y / 64] |= std::uint64_t(1) << (y % 64); }
  bool get(int x, int y) const {
    return (row[static_cast<size_t>(x) * words + y / 64] >> (y % 64)) & 1u;
  }

  bool operator==(const BitMat& other) const = default;
};

inline BitMat bool_multiply(const BitMat& a, const BitMat& b) {
  BitMat out(a.m);
  for (int x = 0; x < a.m; ++x) {
    const size_t xo = static_cast<size_t>(x) * a.words;
    for (int k = 0; k < a.m; ++k) {
      if (!a.get(x, k)) continue;
      const size_t ko = static_cast<size_t>(k) * a.words;
      for (int w = 0; w < a.words; ++w) out.row[xo + w] |= b.row[ko + w];
    }
  }
  return out;
}

inline bool all_ones(const BitMat& a) {
  for (int x = 0; x < a.m; ++x)
    for (int y = 0; y < a.m; ++y)
      if (!a.get(x, y)) return false;
  return true;
}

struct SupportClass {
  bool primitive = false;
  int positive_power = 0;     // least r with B^r all positive, when primitive
  bool strongly_connected = false;
  int period = 0;             // gcd of cycle lengths, when strongly connected
};

// Primitivity by powers up to the Wielandt bound m^2 - 2m + 2; the remaining
// structure (strong connectivity, period) by BFS.
inline SupportClass classify_bool_support(const BitMat& b) {
  SupportClass out;
  const int m = b.m;
  const long long bound = static_cast<long long>(m) * m - 2LL * m + 2;

  BitMat cur = b;
  for (long long r = 1; r <= bound; ++r) {
    if (r > 1) {
      BitMat next = bool_multiply(cur, b);
      if (next == cur) break;  // power sequence stabilized short of all-ones
      cur = next;
    }
    if (all_ones(cur)) {
      out.primitive = true;
      out.positive_power = static_cast<int>(r);
      out.strongly_connected = true;
      out.period = 1;
      return out;
    }
  }

  auto reach = [&](bool forward) {
    std::vector<char> seen(m, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < m; ++v) {
        const bool edge = forward ? b.get(u, v) : b.get(v, u);
        if (edge && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    for (int v = 0; v < m; ++v)
      if (!seen[v]) return false;
    return true;
  };
  out.strongly_connected = reach(true) && reach(false);
  if (!out.strongly_connected) return out;

  // BFS levels from 0; the period is the gcd of level[u] + 1 - level[v]
  // over edges u -> v.
  std::vector<long long> level(m, -1);
  std::vector<int> queue{0};
  level[0] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    for (int v = 0; v < m; ++v) {
      if (!b.get(u, v)) continue;
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  long long g = 0;
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (b.get(u, v)) g = std::gcd(g, level[u] + 1 - level[v]);
  out.period = static_cast<int>(g < 0 ? -g : g);
  return out;
}

}  // namespace syncwalk::internal
