#pragma once

// Realizability of graphic and bigraphic sequences.  All functions take
// their inputs by value or const reference and sort private copies.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bipack/graph.hpp"

namespace bipack {

using GraphicSequence = std::vector<int>;

class NotBigraphic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Havel-Hakimi: repeatedly remove the largest term a and subtract one from
// the next a largest terms.
inline bool is_graphic(GraphicSequence s) {
  if (std::any_of(s.begin(), s.end(), [](int d) { return d < 0; })) return false;
  std::sort(s.begin(), s.end(), std::greater<>());
  while (!s.empty() && s.front() > 0) {
    const int head = s.front();
    s.erase(s.begin());
    if (head > static_cast<int>(s.size())) return false;
    for (int i = 0; i < head; ++i) {
      if (--s[i] < 0) return false;
    }
    std::sort(s.begin(), s.end(), std::greater<>());
  }
  return true;
}

// Gale-Ryser: equal sums, and for the a-side sorted descending every prefix
// sum of length k is at most sum_j min(b_j, k).
inline bool is_bigraphic(const BigraphicSequence& s) {
  if (s.a_sum() != s.b_sum()) return false;
  std::vector<int> a(s.a_degrees);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::int64_t prefix = 0;
  for (int k = 1; k <= s.m(); ++k) {
    prefix += a[k - 1];
    std::int64_t capacity = 0;
    for (int b : s.b_degrees) capacity += std::min(b, k);
    if (prefix > capacity) return false;
  }
  return true;
}

// Ryser's greedy: a-vertices in descending demand each take the b-vertices
// with the largest residual demand (ties to the lower index).
inline BipartiteGraph realize_bigraphic(const BigraphicSequence& s) {
  if (!is_bigraphic(s)) throw NotBigraphic("sequence is not bigraphic");

  std::vector<int> order(s.m());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return s.a_degrees[x] > s.a_degrees[y]; });

  std::vector<int> residual(s.b_degrees);
  std::vector<int> by_residual(s.n());
  std::vector<Edge> edges;
  for (int a : order) {
    std::iota(by_residual.begin(), by_residual.end(), 0);
    std::stable_sort(by_residual.begin(), by_residual.end(),
                     [&](int x, int y) { return residual[x] > residual[y]; });
    for (int i = 0; i < s.a_degrees[a]; ++i) {
      const int b = by_residual[i];
      if (residual[b] == 0) throw std::logic_error("greedy realization ran out of residual demand");
      --residual[b];
      edges.push_back({a, b});
    }
  }
  BipartiteGraph g(s.m(), s.n(), edges);
  if (degree_sequence_of(g) != s) throw std::logic_error("greedy realization does not match the sequence");
  return g;
}

// Kundu: s has a realization containing a k-factor iff s and s - k are both
// graphic.
inline bool kundu_check(const GraphicSequence& s, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (!is_graphic(s)) return false;
  GraphicSequence reduced(s);
  for (int& d : reduced) {
    d -= k;
    if (d < 0) return false;
  }
  return is_graphic(reduced);
}

}  // namespace bipack
