#pragma once

// Deliberately naive reference implementations used only by the tests.
// They share no code with the library.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace bruteforce {

using Partition = std::vector<int>;  // point -> block, restricted growth

/// All set partitions of n points as restricted growth strings.
inline std::vector<Partition> set_partitions(int n) {
  std::vector<Partition> out;
  Partition p(n, 0);
  auto rec = [&](auto&& self, int i, int maxb) -> void {
    if (i == n) {
      out.push_back(p);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      p[i] = b;
      self(self, i + 1, std::max(maxb, b));
    }
  };
  if (n == 0) return {Partition{}};
  p[0] = 0;
  rec(rec, 1, 0);
  return out;
}

inline bool crosses(const Partition& p) {
  const int n = static_cast<int>(p.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
          if (p[a] == p[c] && p[b] == p[d] && p[a] != p[b]) return true;
  return false;
}

/// Block x is nested when some other block has points on both sides of it.
inline bool nested(const Partition& p, int x) {
  const int n = static_cast<int>(p.size());
  int lo = n, hi = -1;
  for (int i = 0; i < n; ++i)
    if (p[i] == x) lo = std::min(lo, i), hi = std::max(hi, i);
  for (int a = 0; a < lo; ++a)
    for (int b = hi + 1; b < n; ++b)
      if (p[a] == p[b] && p[a] != x) return true;
  return false;
}

/// Non-crossing partitions of n points with exactly `marks` marked blocks,
/// every marked block unnested. Each entry is (labels, bitmask of marked blocks).
inline std::set<std::pair<Partition, std::uint32_t>> marked_states(int n, int marks) {
  std::set<std::pair<Partition, std::uint32_t>> out;
  for (const auto& p : set_partitions(n)) {
    if (crosses(p)) continue;
    int blocks = *std::max_element(p.begin(), p.end()) + 1;
    for (std::uint32_t mask = 0; mask < (1U << blocks); ++mask) {
      if (std::popcount(mask) != marks) continue;
      bool ok = true;
      for (int x = 0; x < blocks && ok; ++x)
        if (mask >> x & 1U) ok = !nested(p, x);
      if (ok) out.insert({p, mask});
    }
  }
  return out;
}

/// Plain union-find: connected components only, no winding.
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  int count() {
    int c = 0;
    for (int x = 0; x < static_cast<int>(parent.size()); ++x) c += find(x) == x;
    return c;
  }
};

/// Coefficient table z[n][b]: number of edge subsets with n clusters and b edges.
inline std::vector<std::vector<std::uint64_t>> cluster_counts(int vertices, const std::vector<std::pair<int, int>>& edges) {
  const int E = static_cast<int>(edges.size());
  std::vector<std::vector<std::uint64_t>> z(vertices + 1, std::vector<std::uint64_t>(E + 1, 0));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << E); ++mask) {
    Components uf(vertices);
    for (int k = 0; k < E; ++k)
      if (mask >> k & 1U) uf.unite(edges[k].first, edges[k].second);
    ++z[uf.count()][std::popcount(mask)];
  }
  return z;
}

/// Edges of the square cyclic strip with vertex (row i, column c) = c*L + i.
inline std::vector<std::pair<int, int>> square_edges(int L, int N) {
  std::vector<std::pair<int, int>> e;
  for (int c = 0; c < N; ++c) {
    for (int i = 0; i + 1 < L; ++i) e.emplace_back(c * L + i, c * L + i + 1);
    for (int i = 0; i < L; ++i) e.emplace_back(c * L + i, ((c + 1) % N) * L + i);
  }
  return e;
}

}  // namespace bruteforce
