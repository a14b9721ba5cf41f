#pragma once

// Fixed-order embeddability of a degree demand into a host graph.
//
// lemma4_check_exhaustive evaluates the cut condition
//     pi(X) <= e(X, Y) + pi(B \ Y)   for all X in A, Y in B
// by brute enumeration.  fixed_order_embed decides the same question
// constructively with a max-flow on
//     source -> a (cap pi(a)),  a -> b (cap 1, host edges),  b -> sink (cap pi(b)).
// For demands with equal side sums the two agree (max-flow/min-cut).

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bipack/flow.hpp"
#include "bipack/graph.hpp"

namespace bipack {

class SizeTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Lemma4Violation {
  std::vector<int> x;  // A-indices, ascending
  std::vector<int> y;  // B-indices, ascending
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;

  [[nodiscard]] std::int64_t deficiency() const noexcept { return lhs - rhs; }
};

namespace detail {

inline std::vector<int> mask_members(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace detail

// Returns the violation of largest lhs - rhs; ties go to the smallest X
// bitmask (bit i = A-vertex i), then the smallest Y bitmask.
inline std::optional<Lemma4Violation> lemma4_check_exhaustive(const BipartiteGraph& host,
                                                              const BigraphicSequence& demand,
                                                              int max_vertices = 24) {
  if (demand.m() != host.m() || demand.n() != host.n())
    throw DimensionMismatch("demand and host class sizes differ");
  if (max_vertices > 40) max_vertices = 40;
  if (host.m() + host.n() > max_vertices)
    throw SizeTooLarge("exhaustive cut check limited to m + n <= " + std::to_string(max_vertices));

  const int m = host.m();
  const int n = host.n();
  std::vector<std::uint64_t> b_mask(n, 0);  // A-neighbourhood of each b
  for (int b = 0; b < n; ++b)
    for (int a : host.b_neighbors(b)) b_mask[b] |= std::uint64_t{1} << a;

  std::int64_t pi_b_total = 0;
  for (int d : demand.b_degrees) pi_b_total += d;

  const std::uint64_t x_end = std::uint64_t{1} << m;
  const std::uint64_t y_end = std::uint64_t{1} << n;
  std::vector<std::int64_t> rhs(y_end);
  std::vector<std::int64_t> e_x(n);

  std::optional<Lemma4Violation> best;
  std::int64_t best_def = 0;
  std::uint64_t best_x = 0, best_y = 0;

  for (std::uint64_t x = 0; x < x_end; ++x) {
    std::int64_t pi_x = 0;
    for (std::uint64_t r = x; r; r &= r - 1) pi_x += demand.a_degrees[std::countr_zero(r)];
    for (int b = 0; b < n; ++b) e_x[b] = std::popcount(b_mask[b] & x);

    // rhs[Y] = sum_{y in Y} e(X, y) + sum_{y not in Y} pi(y), built from Y minus its lowest bit.
    rhs[0] = pi_b_total;
    for (std::uint64_t y = 1; y < y_end; ++y) {
      const int low = std::countr_zero(y);
      rhs[y] = rhs[y & (y - 1)] + e_x[low] - demand.b_degrees[low];
    }
    for (std::uint64_t y = 0; y < y_end; ++y) {
      const std::int64_t def = pi_x - rhs[y];
      if (def > 0 && (!best || def > best_def)) {
        best = Lemma4Violation{{}, {}, pi_x, rhs[y]};
        best_def = def;
        best_x = x;
        best_y = y;
      }
    }
  }
  if (best) {
    best->x = detail::mask_members(best_x);
    best->y = detail::mask_members(best_y);
  }
  return best;
}

struct FixedOrderResult {
  bool feasible = false;
  std::vector<Edge> edges;     // sorted; the subgraph F with d_F = demand
  std::int64_t deficit = 0;    // sum pi(A) - max flow, or |sum pi(A) - sum pi(B)|

  explicit operator bool() const noexcept { return feasible; }
};

inline FixedOrderResult fixed_order_embed(const BipartiteGraph& host, const BigraphicSequence& demand) {
  if (demand.m() != host.m() || demand.n() != host.n())
    throw DimensionMismatch("demand and host class sizes differ");

  FixedOrderResult result;
  const std::int64_t a_sum = demand.a_sum();
  const std::int64_t b_sum = demand.b_sum();
  if (a_sum != b_sum) {
    result.deficit = a_sum > b_sum ? a_sum - b_sum : b_sum - a_sum;
    return result;
  }

  const int m = host.m();
  const int n = host.n();
  const int source = m + n;
  const int sink = m + n + 1;
  FlowNetwork<std::int64_t> net(m + n + 2, source, sink);
  net.arcs.reserve(static_cast<std::size_t>(m) + n + host.edge_count());
  for (int a = 0; a < m; ++a) net.add_arc(source, a, demand.a_degrees[a]);
  const int first_middle = static_cast<int>(net.arcs.size());
  for (int a = 0; a < m; ++a)
    for (int b : host.a_neighbors(a)) net.add_arc(a, m + b, 1);
  const int end_middle = static_cast<int>(net.arcs.size());
  for (int b = 0; b < n; ++b) net.add_arc(m + b, sink, demand.b_degrees[b]);

  const auto flow = max_flow(net);
  result.deficit = a_sum - flow.value;
  if (result.deficit != 0) return result;

  result.feasible = true;
  result.edges.reserve(static_cast<std::size_t>(a_sum));
  for (int i = first_middle; i < end_middle; ++i)
    if (flow.arc_flow[i] > 0) result.edges.push_back({net.arcs[i].from, net.arcs[i].to - m});
  return result;
}

}  // namespace bipack
