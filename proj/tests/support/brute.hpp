#pragma once

// Test-only enumeration oracles.  Nothing here calls into the library's
// algorithms; only the plain data types are shared.

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "bipack/graph.hpp"

namespace bipack::brute {

// Degree sequences (positional) of every labeled simple graph on n vertices.
inline std::set<std::vector<int>> all_graphic_sequences(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::set<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<int> deg(n, 0);
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if (mask >> e & 1) {
        ++deg[pairs[e].first];
        ++deg[pairs[e].second];
      }
    out.insert(deg);
  }
  return out;
}

// Positional degree pairs of every bipartite graph on m x n.
inline std::set<std::pair<std::vector<int>, std::vector<int>>> all_bigraphic_sequences(int m, int n) {
  std::set<std::pair<std::vector<int>, std::vector<int>>> out;
  const int cells = m * n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    std::vector<int> a(m, 0), b(n, 0);
    for (int c = 0; c < cells; ++c)
      if (mask >> c & 1) {
        ++a[c / n];
        ++b[c % n];
      }
    out.insert({a, b});
  }
  return out;
}

// Does some graph realizing s contain a spanning k-regular subgraph?
inline bool brute_has_k_factor_realization(const std::vector<int>& s, int k) {
  const int n = static_cast<int>(s.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  auto degrees = [&](std::uint64_t mask) {
    std::vector<int> deg(n, 0);
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if (mask >> e & 1) {
        ++deg[pairs[e].first];
        ++deg[pairs[e].second];
      }
    return deg;
  };
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << pairs.size()); ++g) {
    if (degrees(g) != s) continue;
    for (std::uint64_t f = g;; f = (f - 1) & g) {
      const auto d = degrees(f);
      if (std::all_of(d.begin(), d.end(), [&](int x) { return x == k; })) return true;
      if (f == 0) break;
    }
  }
  return false;
}

// Is there a subgraph F of host with d_F = demand positionally?
inline bool brute_fixed_order(const BipartiteGraph& host, const BigraphicSequence& demand) {
  const auto edges = host.edges();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    std::vector<int> a(host.m(), 0), b(host.n(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (mask >> e & 1) {
        ++a[edges[e].a];
        ++b[edges[e].b];
      }
    if (a == demand.a_degrees && b == demand.b_degrees) return true;
  }
  return false;
}

// Host on m x n from the low m*n bits of mask (bit a*n + b).
inline BipartiteGraph graph_from_mask(int m, int n, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b)
      if (mask >> (a * n + b) & 1) edges.push_back({a, b});
  return {m, n, edges};
}

inline BipartiteGraph perfect_matching(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, i});
  return {n, n, edges};
}

}  // namespace bipack::brute
