#pragma once

// Host and target generators, including the two families showing that the
// dense-host degree bound and the star degree cap cannot be dropped.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bipack/graph.hpp"
#include "bipack/numeric.hpp"
#include "bipack/random.hpp"

namespace bipack {

class ParameterOverflow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// G(n, n, p): every one of the n^2 pairs independently, row-major order.
inline BipartiteGraph gen_random_bipartite(int n, double p, Rng& rng) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(static_cast<double>(n) * n * p) + 16);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rng.bernoulli(p)) edges.push_back({a, b});
  return {n, n, edges};
}

// S-vertex i is the centre of a star with hub_degrees[i] leaves; leaves are
// assigned to T in consecutive blocks.
inline BipartiteGraph gen_star_forest(int n, const std::vector<int>& hub_degrees) {
  if (static_cast<int>(hub_degrees.size()) > n) throw ParameterOverflow("more hubs than S-vertices");
  std::int64_t total = 0;
  for (int d : hub_degrees) {
    if (d < 0) throw std::invalid_argument("negative hub degree");
    total += d;
  }
  if (total > n) throw ParameterOverflow("hub degrees sum to " + std::to_string(total) + " > n = " + std::to_string(n));
  std::vector<Edge> edges;
  int leaf = 0;
  for (std::size_t s = 0; s < hub_degrees.size(); ++s)
    for (int j = 0; j < hub_degrees[s]; ++j) edges.push_back({static_cast<int>(s), leaf++});
  return {n, n, edges};
}

// Star forest with `leaves` leaves spread over hubs of degree hub_degree
// (the last hub takes the remainder).
inline BipartiteGraph gen_uniform_star_forest(int n, int hub_degree, int leaves) {
  if (hub_degree < 1) throw std::invalid_argument("hub degree must be positive");
  std::vector<int> hubs(static_cast<std::size_t>(leaves / hub_degree), hub_degree);
  if (leaves % hub_degree) hubs.push_back(leaves % hub_degree);
  return gen_star_forest(n, hubs);
}

// K_{n/2+1, n/2-1} disjoint union K_{n/2-1, n/2+1} on n + n vertices.  Every
// degree is n/2 - 1 or n/2 + 1 and there is no perfect matching.
inline BipartiteGraph gen_condition1_counterexample(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("n must be even and at least 4");
  const int h = n / 2;
  std::vector<Edge> edges;
  for (int a = 0; a <= h; ++a)
    for (int b = 0; b < h - 1; ++b) edges.push_back({a, b});
  for (int a = h + 1; a < n; ++a)
    for (int b = h - 1; b < n; ++b) edges.push_back({a, b});
  return {n, n, edges};
}

struct HubParameters {
  std::int64_t hubs = 0;
  std::int64_t degree = 0;
};

// ceil(log n / c) hubs of degree ceil(c n / log n).
inline HubParameters condition2_hub_parameters(int n, double c, const LogBase& base = std::nullopt) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  const double log_n = log_of(n, base).convert_to<double>();
  HubParameters hp{static_cast<std::int64_t>(std::ceil(log_n / c)),
                   static_cast<std::int64_t>(std::ceil(c * n / log_n))};
  if (hp.hubs > n || hp.hubs * hp.degree > n)
    throw ParameterOverflow(std::to_string(hp.hubs) + " hubs of degree " + std::to_string(hp.degree) +
                            " need more than n = " + std::to_string(n) + " leaves");
  return hp;
}

// Random dense host G(n, n, p) with p > 1/2 plus the few-large-hubs target.
// The target has exactly the hub edges; other T-vertices stay isolated.
inline std::pair<BipartiteGraph, BipartiteGraph> gen_condition2_counterexample(int n, double c, Rng& rng,
                                                                             double p = 0.55,
                                                                             const LogBase& base = std::nullopt) {
  if (!(p > 0.5 && p <= 1.0)) throw std::invalid_argument("p must lie in (1/2, 1]");
  const auto hp = condition2_hub_parameters(n, c, base);
  std::vector<int> hubs(static_cast<std::size_t>(hp.hubs), static_cast<int>(hp.degree));
  auto target = gen_star_forest(n, hubs);
  auto host = gen_random_bipartite(n, p, rng);
  return {std::move(host), std::move(target)};
}

}  // namespace bipack
