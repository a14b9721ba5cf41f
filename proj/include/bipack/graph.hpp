#pragma once

// Core bipartite types.  Vertices are positional: A-side (or S-side) vertex
// indices run over [0, m), B-side (or T-side) over [0, n).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bipack {

struct Edge {
  int a = 0;
  int b = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Simple bipartite graph between classes of size m and n.  Immutable after
// construction; membership is O(1) through a bit matrix and neighbour lists
// are kept sorted.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  BipartiteGraph(int m, int n, std::span<const Edge> edges = {}) : m_(m), n_(n) {
    if (m < 0 || n < 0) throw std::invalid_argument("negative class size");
    matrix_.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), false);
    a_adj_.resize(m);
    b_adj_.resize(n);
    for (const Edge& e : edges) {
      if (e.a < 0 || e.a >= m || e.b < 0 || e.b >= n)
        throw std::invalid_argument("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                    ") out of range for " + std::to_string(m) + "x" + std::to_string(n));
      auto bit = matrix_[index(e.a, e.b)];
      if (bit) throw std::invalid_argument("duplicate edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")");
      bit = true;
      a_adj_[e.a].push_back(e.b);
      b_adj_[e.b].push_back(e.a);
    }
    for (auto& row : a_adj_) std::sort(row.begin(), row.end());
    for (auto& col : b_adj_) std::sort(col.begin(), col.end());
    edge_count_ = edges.size();
  }

  BipartiteGraph(int m, int n, const std::vector<Edge>& edges)
      : BipartiteGraph(m, n, std::span<const Edge>(edges)) {}

  static BipartiteGraph complete(int m, int n) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m) * n);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < n; ++b) edges.push_back({a, b});
    return {m, n, edges};
  }

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }

  [[nodiscard]] bool has_edge(int a, int b) const {
    if (a < 0 || a >= m_ || b < 0 || b >= n_) return false;
    return matrix_[index(a, b)];
  }

  [[nodiscard]] const std::vector<int>& a_neighbors(int a) const { return a_adj_.at(a); }
  [[nodiscard]] const std::vector<int>& b_neighbors(int b) const { return b_adj_.at(b); }
  [[nodiscard]] int a_degree(int a) const { return static_cast<int>(a_adj_.at(a).size()); }
  [[nodiscard]] int b_degree(int b) const { return static_cast<int>(b_adj_.at(b).size()); }

  // Edges in lexicographic (a, b) order.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int a = 0; a < m_; ++a)
      for (int b : a_adj_[a]) out.push_back({a, b});
    return out;
  }

  // e(X, Y) for X a subset of A and Y a subset of B.
  [[nodiscard]] std::int64_t edges_between(std::span<const int> xs, std::span<const int> ys) const {
    std::int64_t count = 0;
    for (int x : xs)
      for (int y : ys) count += has_edge(x, y) ? 1 : 0;
    return count;
  }

  [[nodiscard]] int max_degree() const {
    int best = 0;
    for (const auto& r : a_adj_) best = std::max(best, static_cast<int>(r.size()));
    for (const auto& c : b_adj_) best = std::max(best, static_cast<int>(c.size()));
    return best;
  }

  [[nodiscard]] int min_degree() const {
    if (m_ + n_ == 0) return 0;
    int best = INT32_MAX;
    for (const auto& r : a_adj_) best = std::min(best, static_cast<int>(r.size()));
    for (const auto& c : b_adj_) best = std::min(best, static_cast<int>(c.size()));
    return best;
  }

  friend bool operator==(const BipartiteGraph& lhs, const BipartiteGraph& rhs) {
    return lhs.m_ == rhs.m_ && lhs.n_ == rhs.n_ && lhs.matrix_ == rhs.matrix_;
  }

 private:
  [[nodiscard]] std::size_t index(int a, int b) const noexcept {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b);
  }

  int m_ = 0;
  int n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<bool> matrix_;
  std::vector<std::vector<int>> a_adj_;
  std::vector<std::vector<int>> b_adj_;
};

// Positional degree lists for the two classes.  Entries exceeding the
// opposite class size are stored as given; fits() reports them.
struct BigraphicSequence {
  std::vector<int> a_degrees;
  std::vector<int> b_degrees;

  BigraphicSequence() = default;
  BigraphicSequence(std::vector<int> a, std::vector<int> b) : a_degrees(std::move(a)), b_degrees(std::move(b)) {
    for (int d : a_degrees)
      if (d < 0) throw std::invalid_argument("negative degree");
    for (int d : b_degrees)
      if (d < 0) throw std::invalid_argument("negative degree");
  }

  [[nodiscard]] int m() const noexcept { return static_cast<int>(a_degrees.size()); }
  [[nodiscard]] int n() const noexcept { return static_cast<int>(b_degrees.size()); }
  [[nodiscard]] std::int64_t a_sum() const { return std::accumulate(a_degrees.begin(), a_degrees.end(), std::int64_t{0}); }
  [[nodiscard]] std::int64_t b_sum() const { return std::accumulate(b_degrees.begin(), b_degrees.end(), std::int64_t{0}); }

  [[nodiscard]] bool fits() const {
    return std::all_of(a_degrees.begin(), a_degrees.end(), [&](int d) { return d <= n(); }) &&
           std::all_of(b_degrees.begin(), b_degrees.end(), [&](int d) { return d <= m(); });
  }

  [[nodiscard]] int max_degree() const {
    int best = 0;
    for (int d : a_degrees) best = std::max(best, d);
    for (int d : b_degrees) best = std::max(best, d);
    return best;
  }

  [[nodiscard]] int min_degree() const {
    if (a_degrees.empty() && b_degrees.empty()) return 0;
    int best = INT32_MAX;
    for (int d : a_degrees) best = std::min(best, d);
    for (int d : b_degrees) best = std::min(best, d);
    return best;
  }

  friend bool operator==(const BigraphicSequence&, const BigraphicSequence&) = default;
};

// Certificate that a target H(S, T) sits inside a host G(A, B).
struct EmbeddingMap {
  std::vector<int> s_to_a;
  std::vector<int> t_to_b;
  std::vector<Edge> edge_image;  // host edges, sorted

  friend bool operator==(const EmbeddingMap&, const EmbeddingMap&) = default;
};

struct PackingWitness {
  int m = 0;
  int n = 0;
  std::vector<Edge> g1_edges;
  std::vector<Edge> g2_edges;
};

inline BigraphicSequence degree_sequence_of(const BipartiteGraph& g) {
  BigraphicSequence seq;
  seq.a_degrees.resize(g.m());
  seq.b_degrees.resize(g.n());
  for (int a = 0; a < g.m(); ++a) seq.a_degrees[a] = g.a_degree(a);
  for (int b = 0; b < g.n(); ++b) seq.b_degrees[b] = g.b_degree(b);
  return seq;
}

inline BipartiteGraph complement_in_biclique(const BipartiteGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(g.m()) * g.n() - g.edge_count());
  for (int a = 0; a < g.m(); ++a)
    for (int b = 0; b < g.n(); ++b)
      if (!g.has_edge(a, b)) edges.push_back({a, b});
  return {g.m(), g.n(), edges};
}

namespace detail {

inline bool injective_into(std::span<const int> map, int range) {
  std::vector<char> seen(static_cast<std::size_t>(range), 0);
  for (int v : map) {
    if (v < 0 || v >= range || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline bool valid_edge_set(std::span<const Edge> edges, int m, int n) {
  std::vector<Edge> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return std::all_of(sorted.begin(), sorted.end(),
                     [&](const Edge& e) { return e.a >= 0 && e.a < m && e.b >= 0 && e.b < n; });
}

inline std::vector<int> sorted_degrees(std::span<const Edge> edges, int m, int n, bool a_side) {
  std::vector<int> deg(a_side ? m : n, 0);
  for (const Edge& e : edges) ++deg[a_side ? e.a : e.b];
  std::sort(deg.begin(), deg.end());
  return deg;
}

}  // namespace detail

// Checks every EmbeddingMap invariant against host and target.  A map whose
// vector lengths disagree with the target, or a target larger than the host,
// is a caller error and throws DimensionMismatch.
inline bool verify_embedding(const BipartiteGraph& host, const BipartiteGraph& target, const EmbeddingMap& map) {
  if (static_cast<int>(map.s_to_a.size()) != target.m() || static_cast<int>(map.t_to_b.size()) != target.n())
    throw DimensionMismatch("embedding map sizes do not match the target classes");
  if (target.m() > host.m() || target.n() > host.n())
    throw DimensionMismatch("target classes exceed host classes");

  if (!detail::injective_into(map.s_to_a, host.m())) return false;
  if (!detail::injective_into(map.t_to_b, host.n())) return false;
  if (map.edge_image.size() != target.edge_count()) return false;
  if (!detail::valid_edge_set(map.edge_image, host.m(), host.n())) return false;

  std::vector<Edge> image(map.edge_image);
  std::sort(image.begin(), image.end());
  for (const Edge& e : image)
    if (!host.has_edge(e.a, e.b)) return false;
  for (const Edge& e : target.edges()) {
    const Edge mapped{map.s_to_a[e.a], map.t_to_b[e.b]};
    if (!std::binary_search(image.begin(), image.end(), mapped)) return false;
  }
  return true;
}

// Unordered packing semantics: each edge set must realize its sequence up
// to relabeling inside each class, so degree multisets are compared.
inline bool verify_packing(const PackingWitness& w, const BigraphicSequence& seq1, const BigraphicSequence& seq2) {
  if (seq1.m() != w.m || seq2.m() != w.m || seq1.n() != w.n || seq2.n() != w.n)
    throw DimensionMismatch("packing witness and sequences disagree on class sizes");
  if (!detail::valid_edge_set(w.g1_edges, w.m, w.n) || !detail::valid_edge_set(w.g2_edges, w.m, w.n)) return false;

  std::vector<Edge> g1(w.g1_edges);
  std::sort(g1.begin(), g1.end());
  for (const Edge& e : w.g2_edges)
    if (std::binary_search(g1.begin(), g1.end(), e)) return false;

  auto matches = [&](std::span<const Edge> edges, const BigraphicSequence& seq) {
    std::vector<int> a(seq.a_degrees), b(seq.b_degrees);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return detail::sorted_degrees(edges, w.m, w.n, true) == a && detail::sorted_degrees(edges, w.m, w.n, false) == b;
  };
  return matches(w.g1_edges, seq1) && matches(w.g2_edges, seq2);
}

}  // namespace bipack
