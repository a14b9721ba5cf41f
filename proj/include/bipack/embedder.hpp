#pragma once

// Randomized embedding of a star forest H(S, T) into a dense host G(A, B).
//
// Pipeline, per attempt:
//   1. S is split into degree bands C_0..C_k, where C_0 holds the isolated
//      vertices and for i >= 1
//          cap / (1+delta)^i  <  d_H(u)  <=  cap / (1+delta)^(i-1),  delta = eps/10.
//   2. A is permuted at random and cut into contiguous blocks, one per band
//      in band order, with C_0 taking the last |C_0| vertices.
//   3. Vertices of small bands pick d_H(u) random unused neighbours greedily.
//   4. Remaining B is split at random into E_i, |E_i| = sum of d_H over the
//      large band D_i, and each (D_i, E_i) pair is solved exactly by flow.
// A failed attempt is rerandomized up to cfg.retries times.  Only verified
// embeddings are returned.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "bipack/conditions.hpp"
#include "bipack/feasibility.hpp"
#include "bipack/graph.hpp"
#include "bipack/numeric.hpp"
#include "bipack/random.hpp"

namespace bipack {

enum class EmbedMode { Strict, Relaxed };

inline const char* to_string(EmbedMode mode) { return mode == EmbedMode::Strict ? "strict" : "relaxed"; }

struct EmbedConfig {
  Rational eps{1, 10};
  EmbedMode mode = EmbedMode::Relaxed;
  std::optional<Rational> cap_override;  // relaxed only; defaults to the largest S-degree
  int retries = 5;
  std::uint64_t seed = 0;
  LogBase log_base;
  // Relaxed only: bands of at most this many vertices are small, in place
  // of the (16/eps^2) log n rule.
  std::optional<std::int64_t> small_class_limit;

  void validate() const {
    detail::require_eps(eps);
    if (retries < 0) throw std::invalid_argument("retries must be non-negative");
    if (mode == EmbedMode::Strict && (cap_override || small_class_limit))
      throw std::invalid_argument("strict mode does not accept a cap or small-class override");
    if (cap_override && *cap_override <= Rational(0)) throw std::invalid_argument("cap must be positive");
  }
};

class CapViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BadTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientB : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Band boundaries b_i = cap / growth^i.  Band i >= 1 holds the degrees in
// (b_i, b_(i-1)]; class_count() is the first i with b_i < 1.  Boundaries are
// never stored: a degree's band is estimated in double precision and then
// settled by exact comparisons against b_i.
template <class Scalar>
class DegreeBands {
 public:
  DegreeBands(Scalar cap, Scalar growth) : cap_(std::move(cap)), growth_(std::move(growth)) {
    if (!(growth_ > 1)) throw std::invalid_argument("band growth must exceed 1");
    if constexpr (std::is_same_v<Scalar, ExactRational>) {
      cap_num_ = numerator(cap_);
      cap_den_ = denominator(cap_);
      g_num_ = numerator(growth_);
      g_den_ = denominator(growth_);
    }
    log_growth_ = std::log(growth_.template convert_to<double>());
    count_ = cap_ < 1 ? 0 : band_of(1);
  }

  [[nodiscard]] int class_count() const noexcept { return count_; }
  [[nodiscard]] const Scalar& cap() const { return cap_; }

  // 0 for degree 0, -1 above the cap, else the band index.
  [[nodiscard]] int class_of(int degree) const {
    if (degree == 0) return 0;
    if (Scalar(degree) > cap_) return -1;
    return band_of(degree);
  }

  [[nodiscard]] bool in_band(int degree, int cls) const {
    if (cls == 0) return degree == 0;
    if (cls < 1 || cls > class_count()) return false;
    return below(cls, degree) && !below(cls - 1, degree);
  }

 private:
  // b_i < d
  [[nodiscard]] bool below(int i, int d) const {
    if constexpr (std::is_same_v<Scalar, ExactRational>) {
      using boost::multiprecision::pow;
      return cap_num_ * pow(g_den_, static_cast<unsigned>(i)) < cap_den_ * d * pow(g_num_, static_cast<unsigned>(i));
    } else {
      return cap_ / pow(growth_, i) < d;
    }
  }

  // Smallest i >= 1 with b_i < d, for 1 <= d <= cap.
  [[nodiscard]] int band_of(int d) const {
    const double ratio = (cap_ / d).template convert_to<double>();
    int i = std::max(1, static_cast<int>(std::floor(std::log(ratio) / log_growth_)) + 1);
    while (i > 1 && below(i - 1, d)) --i;
    while (!below(i, d)) ++i;
    return i;
  }

  Scalar cap_;
  Scalar growth_;
  boost::multiprecision::cpp_int cap_num_, cap_den_, g_num_, g_den_;
  double log_growth_ = 0;
  int count_ = 0;
};

using BandTable = std::variant<DegreeBands<ExactRational>, DegreeBands<Real>>;

struct PartitionPlan {
  Rational eps;
  Rational delta;  // eps / 10
  double cap = 0;
  BandTable bands{DegreeBands<ExactRational>(ExactRational(0), ExactRational(2))};
  std::vector<std::vector<int>> classes;  // classes[0] = C_0, classes[i] = C_i

  [[nodiscard]] int class_count() const { return static_cast<int>(classes.size()) - 1; }
  [[nodiscard]] bool in_band(int degree, int cls) const {
    return std::visit([&](const auto& b) { return b.in_band(degree, cls); }, bands);
  }
};

inline PartitionPlan partition_degree_classes(const BipartiteGraph& target, const EmbedConfig& cfg) {
  cfg.validate();
  for (int t = 0; t < target.n(); ++t) {
    const int d = target.b_degree(t);
    if (d > 1) throw BadTarget("T-vertex " + std::to_string(t) + " has degree " + std::to_string(d));
    if (cfg.mode == EmbedMode::Strict && d != 1)
      throw BadTarget("strict mode requires every T-vertex to have degree 1");
  }

  PartitionPlan plan;
  plan.eps = cfg.eps;
  plan.delta = cfg.eps / 10;
  int max_s = 0;
  for (int s = 0; s < target.m(); ++s) max_s = std::max(max_s, target.a_degree(s));

  if (cfg.mode == EmbedMode::Strict) {
    const Real cap = theorem1_degree_cap(target.n(), cfg.eps, cfg.log_base);
    if (!(Real(max_s) < cap))
      throw CapViolation("S-degree " + std::to_string(max_s) + " is not below the cap " + cap.str(8));
    plan.cap = cap.convert_to<double>();
    plan.bands = DegreeBands<Real>(cap, Real(1) + plan.delta.to_real());
  } else {
    const Rational cap = cfg.cap_override.value_or(Rational(std::max(max_s, 1)));
    plan.cap = cap.to_double();
    plan.bands = DegreeBands<ExactRational>(cap.to_exact(), ExactRational(1) + plan.delta.to_exact());
  }

  const int k = std::visit([](const auto& b) { return b.class_count(); }, plan.bands);
  plan.classes.assign(k + 1, {});
  for (int s = 0; s < target.m(); ++s) {
    const int d = target.a_degree(s);
    const int cls = std::visit([&](const auto& b) { return b.class_of(d); }, plan.bands);
    if (cls < 0) throw CapViolation("S-degree " + std::to_string(d) + " exceeds the cap " + std::to_string(plan.cap));
    plan.classes[cls].push_back(s);
  }
  return plan;
}

// Exhaustive check of the band and partition invariants of a plan.
inline bool partition_is_valid(const PartitionPlan& plan, const BipartiteGraph& target) {
  std::vector<int> seen(target.m(), 0);
  for (int i = 0; i <= plan.class_count(); ++i) {
    for (int s : plan.classes[i]) {
      if (s < 0 || s >= target.m()) return false;
      ++seen[s];
      if (!plan.in_band(target.a_degree(s), i)) return false;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

// |C| <= (16 / eps^2) log n.
inline bool is_small_class(std::int64_t size, const Rational& eps, std::int64_t n, const LogBase& base = std::nullopt) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  const Real eps_r = eps.to_real();
  return Real(size) <= Real(16) / (eps_r * eps_r) * log_of(n, base);
}

// Per-vertex bad-event bound exp(-eps^2 z / 8).
inline double azuma_bound(double eps, std::int64_t z) {
  if (z < 1) throw std::invalid_argument("z must be at least 1");
  if (!(eps > 0.0 && eps <= 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2]");
  return std::exp(-eps * eps * static_cast<double>(z) / 8.0);
}

struct PairBlock {
  int class_index = 0;
  std::vector<int> d;  // S-vertices
  std::vector<int> e;  // B-vertices
};

struct PairAssignment {
  std::vector<int> a_order;                 // random permutation of A
  std::vector<std::vector<int>> a_blocks;   // a_blocks[i] = A-block of C_i
  std::vector<int> s_to_a;
  std::vector<bool> small;                  // per class index
  std::vector<PairBlock> pairs;             // large classes D_1..D_l with E_i
  std::vector<int> used_by_greedy;          // sorted B-vertices
};

inline std::vector<bool> small_classes(const PartitionPlan& plan, const EmbedConfig& cfg, std::int64_t n) {
  std::vector<bool> small(plan.classes.size(), false);
  for (std::size_t i = 1; i < plan.classes.size(); ++i) {
    const auto size = static_cast<std::int64_t>(plan.classes[i].size());
    small[i] = cfg.small_class_limit ? size <= *cfg.small_class_limit : is_small_class(size, cfg.eps, n, cfg.log_base);
  }
  return small;
}

inline PairAssignment assign_blocks(const PartitionPlan& plan, int host_m, std::vector<bool> small, Rng& rng) {
  std::size_t total = 0;
  for (const auto& c : plan.classes) total += c.size();
  if (total > static_cast<std::size_t>(host_m)) throw DimensionMismatch("more S-vertices than A-vertices");

  PairAssignment out;
  out.small = std::move(small);
  out.a_order.resize(host_m);
  std::iota(out.a_order.begin(), out.a_order.end(), 0);
  rng.shuffle(std::span<int>(out.a_order));

  out.a_blocks.assign(plan.classes.size(), {});
  out.s_to_a.assign(total, -1);
  std::size_t pos = 0;
  auto place = [&](std::size_t cls, std::size_t start) {
    const auto& members = plan.classes[cls];
    out.a_blocks[cls].assign(out.a_order.begin() + static_cast<std::ptrdiff_t>(start),
                             out.a_order.begin() + static_cast<std::ptrdiff_t>(start + members.size()));
    for (std::size_t j = 0; j < members.size(); ++j) out.s_to_a[members[j]] = out.a_blocks[cls][j];
  };
  for (std::size_t i = 1; i < plan.classes.size(); ++i) {
    place(i, pos);
    pos += plan.classes[i].size();
  }
  place(0, static_cast<std::size_t>(host_m) - plan.classes[0].size());
  return out;
}

// Splits the B-vertices not used by the greedy phase into the E_i.
inline void draw_pairs(PairAssignment& assignment, const BipartiteGraph& target, const PartitionPlan& plan, int host_n,
                       Rng& rng) {
  std::vector<char> used(host_n, 0);
  for (int b : assignment.used_by_greedy) used[b] = 1;
  std::vector<int> unused;
  for (int b = 0; b < host_n; ++b)
    if (!used[b]) unused.push_back(b);
  rng.shuffle(std::span<int>(unused));

  assignment.pairs.clear();
  std::size_t pos = 0;
  for (std::size_t i = 1; i < plan.classes.size(); ++i) {
    if (assignment.small[i] || plan.classes[i].empty()) continue;
    PairBlock block;
    block.class_index = static_cast<int>(i);
    block.d = plan.classes[i];
    std::size_t need = 0;
    for (int s : block.d) need += static_cast<std::size_t>(target.a_degree(s));
    if (pos + need > unused.size()) throw InsufficientB("large classes demand more B-vertices than remain");
    block.e.assign(unused.begin() + static_cast<std::ptrdiff_t>(pos),
                   unused.begin() + static_cast<std::ptrdiff_t>(pos + need));
    std::sort(block.e.begin(), block.e.end());
    pos += need;
    assignment.pairs.push_back(std::move(block));
  }
}

// Blocks and pairs with no greedy phase in between.
inline PairAssignment assign_blocks_and_pairs(const BipartiteGraph& host, const BipartiteGraph& target,
                                              const PartitionPlan& plan, const EmbedConfig& cfg, Rng& rng) {
  auto assignment = assign_blocks(plan, host.m(), small_classes(plan, cfg, host.n()), rng);
  draw_pairs(assignment, target, plan, host.n(), rng);
  return assignment;
}

struct GreedyOutcome {
  bool ok = true;
  std::int64_t consumed = 0;
  int stuck_vertex = -1;  // S-vertex
  int available = 0;
  int demand = 0;
};

// Small-class vertices take d_H(u) random unused neighbours of their image.
// leaf_images[u] receives the chosen B-vertices, sorted.
inline GreedyOutcome greedy_embed_small(const BipartiteGraph& host, const BipartiteGraph& target,
                                        const PartitionPlan& plan, PairAssignment& assignment,
                                        std::vector<std::vector<int>>& leaf_images, Rng& rng) {
  GreedyOutcome out;
  std::vector<char> used(host.n(), 0);
  for (int b : assignment.used_by_greedy) used[b] = 1;
  std::vector<int> candidates;
  for (std::size_t i = 1; i < plan.classes.size(); ++i) {
    if (!assignment.small[i]) continue;
    for (int s : plan.classes[i]) {
      const int demand = target.a_degree(s);
      candidates.clear();
      for (int b : host.a_neighbors(assignment.s_to_a[s]))
        if (!used[b]) candidates.push_back(b);
      if (static_cast<int>(candidates.size()) < demand) {
        out.ok = false;
        out.stuck_vertex = s;
        out.available = static_cast<int>(candidates.size());
        out.demand = demand;
        return out;
      }
      rng.sample_prefix(std::span<int>(candidates), static_cast<std::size_t>(demand));
      auto& chosen = leaf_images[s];
      chosen.assign(candidates.begin(), candidates.begin() + demand);
      std::sort(chosen.begin(), chosen.end());
      for (int b : chosen) {
        used[b] = 1;
        assignment.used_by_greedy.push_back(b);
      }
      out.consumed += demand;
    }
  }
  std::sort(assignment.used_by_greedy.begin(), assignment.used_by_greedy.end());
  return out;
}

struct PairOutcome {
  bool feasible = false;
  std::int64_t deficit = 0;
  std::vector<std::vector<int>> leaves;  // per D-vertex, chosen B-vertices (host indices)
};

// Solves one (D, E) pair exactly: every D-vertex image gets d_H(u) neighbours
// in E and every E-vertex is used once.
inline PairOutcome embed_pair(const BipartiteGraph& host, std::span<const int> d_images, std::span<const int> demands,
                              std::span<const int> e) {
  if (d_images.size() != demands.size()) throw std::invalid_argument("one demand per D-vertex required");
  const int rows = static_cast<int>(d_images.size());
  const int cols = static_cast<int>(e.size());
  std::vector<Edge> induced;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (host.has_edge(d_images[r], e[c])) induced.push_back({r, c});
  const BipartiteGraph sub(rows, cols, induced);
  const BigraphicSequence demand(std::vector<int>(demands.begin(), demands.end()), std::vector<int>(cols, 1));

  PairOutcome out;
  const auto flow = fixed_order_embed(sub, demand);
  out.deficit = flow.deficit;
  if (!flow) return out;
  out.feasible = true;
  out.leaves.assign(rows, {});
  for (const Edge& edge : flow.edges) out.leaves[edge.a].push_back(e[edge.b]);
  for (auto& l : out.leaves) std::sort(l.begin(), l.end());
  return out;
}

struct EmbedFailure {
  std::string phase;  // conditions | partition | greedy | pair
  int pair_index = -1;
  std::int64_t deficit = 0;
  bool conditions_unmet = false;
  int attempts = 0;
  std::string reason;

  friend bool operator==(const EmbedFailure&, const EmbedFailure&) = default;
};

struct PairDiagnostic {
  int attempt = 0;
  int pair_index = 0;
  int z = 0;
  int e_size = 0;
  bool lemma5_premises = false;
  bool embedded = false;
  std::int64_t deficit = 0;
};

struct EmbedOutcome {
  std::optional<EmbeddingMap> embedding;
  std::optional<EmbedFailure> failure;
  int attempts = 0;
  std::int64_t small_class_consumption = 0;  // from the final attempt
  std::vector<PairDiagnostic> pairs;
  std::vector<std::string> notes;

  [[nodiscard]] bool ok() const noexcept { return embedding.has_value(); }
};

namespace detail {

// Premises of the per-block embedding lemma for one pair with eps/2 and delta = eps/20, recorded for
// diagnostics only.
inline bool pair_lemma5_premises(const BipartiteGraph& host, const BipartiteGraph& target, std::span<const int> d,
                                 std::span<const int> d_images, std::span<const int> e, const Rational& eps) {
  std::vector<Edge> induced;
  std::vector<Edge> star;
  int min_demand = INT32_MAX;
  int next_leaf = 0;
  for (std::size_t r = 0; r < d.size(); ++r) {
    for (std::size_t c = 0; c < e.size(); ++c)
      if (host.has_edge(d_images[r], e[c])) induced.push_back({static_cast<int>(r), static_cast<int>(c)});
    const int demand = target.a_degree(d[r]);
    min_demand = std::min(min_demand, demand);
    for (int j = 0; j < demand; ++j) star.push_back({static_cast<int>(r), next_leaf++});
  }
  const int rows = static_cast<int>(d.size());
  const int cols = static_cast<int>(e.size());
  const BipartiteGraph sub(rows, cols, induced);
  const BipartiteGraph pair_target(rows, cols, star);
  return lemma5_conditions(sub, pair_target, eps / 2, rows ? min_demand : 0, eps / 20).applies();
}

inline EmbedOutcome fail(EmbedOutcome out, std::string phase, std::string reason, bool conditions_unmet) {
  EmbedFailure f;
  f.phase = std::move(phase);
  f.reason = std::move(reason);
  f.conditions_unmet = conditions_unmet;
  f.attempts = out.attempts;
  out.failure = std::move(f);
  return out;
}

}  // namespace detail

inline EmbedOutcome embed(const BipartiteGraph& host, const BipartiteGraph& target, const EmbedConfig& cfg) {
  cfg.validate();
  const int n = host.m();
  if (host.n() != n || target.m() != n || target.n() != n)
    throw DimensionMismatch("host and target must both be n x n with the same n");

  EmbedOutcome out;
  if (cfg.mode == EmbedMode::Strict) {
    const auto report = theorem1_conditions(host, target, cfg.eps, cfg.log_base);
    out.notes = report.notes;
    if (!report.applies()) return detail::fail(std::move(out), "conditions", "dense-host conditions 1-3 do not hold", true);
  } else {
    std::int64_t total = 0;
    for (int s = 0; s < n; ++s) total += target.a_degree(s);
    for (int t = 0; t < n; ++t)
      if (target.b_degree(t) > 1) return detail::fail(std::move(out), "conditions", "a T-vertex has degree above 1", true);
    if (total > n) return detail::fail(std::move(out), "conditions", "S-degrees sum to more than n", true);
  }

  PartitionPlan plan;
  try {
    plan = partition_degree_classes(target, cfg);
  } catch (const CapViolation& e) {
    return detail::fail(std::move(out), "partition", e.what(), true);
  } catch (const BadTarget& e) {
    return detail::fail(std::move(out), "partition", e.what(), true);
  }
  if (!partition_is_valid(plan, target)) throw std::logic_error("degree partition violates its band invariants");

  const auto small = small_classes(plan, cfg, n);
  const Rational budget_frac = cfg.eps / 4;  // eps n / 4
  Rng rng(cfg.seed);
  EmbedFailure last;

  for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
    out.attempts = attempt + 1;
    auto assignment = assign_blocks(plan, n, small, rng);
    std::vector<std::vector<int>> leaf_images(n);

    const auto greedy = greedy_embed_small(host, target, plan, assignment, leaf_images, rng);
    out.small_class_consumption = greedy.consumed;
    if (!greedy.ok) {
      last = EmbedFailure{"greedy", -1, greedy.demand - greedy.available, false, 0,
                          "S-vertex " + std::to_string(greedy.stuck_vertex) + " image has " +
                              std::to_string(greedy.available) + " unused neighbours, needs " +
                              std::to_string(greedy.demand)};
      continue;
    }
    if (Wide{greedy.consumed} * budget_frac.den() > Wide{budget_frac.num()} * n) {
      if (cfg.mode == EmbedMode::Strict) {
        last = EmbedFailure{"greedy", -1, 0, false, 0, "small classes consumed more than eps n / 4 B-vertices"};
        continue;
      }
      out.notes.push_back("attempt " + std::to_string(attempt + 1) + ": small classes consumed " +
                          std::to_string(greedy.consumed) + " B-vertices, above eps n / 4");
    }

    draw_pairs(assignment, target, plan, n, rng);
    bool pairs_ok = true;
    for (std::size_t p = 0; p < assignment.pairs.size(); ++p) {
      const auto& block = assignment.pairs[p];
      std::vector<int> images, demands;
      for (int s : block.d) {
        images.push_back(assignment.s_to_a[s]);
        demands.push_back(target.a_degree(s));
      }
      const auto result = embed_pair(host, images, demands, block.e);
      out.pairs.push_back({attempt, static_cast<int>(p), static_cast<int>(block.d.size()),
                           static_cast<int>(block.e.size()),
                           detail::pair_lemma5_premises(host, target, block.d, images, block.e, cfg.eps),
                           result.feasible, result.deficit});
      if (!result.feasible) {
        last = EmbedFailure{"pair", static_cast<int>(p), result.deficit, false, 0,
                            "flow deficit in pair " + std::to_string(p)};
        pairs_ok = false;
        break;
      }
      for (std::size_t r = 0; r < block.d.size(); ++r) leaf_images[block.d[r]] = result.leaves[r];
    }
    if (!pairs_ok) continue;

    EmbeddingMap map;
    map.s_to_a = assignment.s_to_a;
    map.t_to_b.assign(n, -1);
    std::vector<char> b_used(n, 0);
    for (int s = 0; s < n; ++s) {
      const auto& leaves = target.a_neighbors(s);
      const auto& images = leaf_images[s];
      if (images.size() != leaves.size()) throw std::logic_error("leaf count mismatch during assembly");
      for (std::size_t j = 0; j < leaves.size(); ++j) {
        map.t_to_b[leaves[j]] = images[j];
        b_used[images[j]] = 1;
        map.edge_image.push_back({map.s_to_a[s], images[j]});
      }
    }
    int free_b = 0;
    for (int t = 0; t < n; ++t) {
      if (map.t_to_b[t] >= 0) continue;
      while (b_used[free_b]) ++free_b;
      map.t_to_b[t] = free_b;
      b_used[free_b] = 1;
    }
    std::sort(map.edge_image.begin(), map.edge_image.end());
    if (!verify_embedding(host, target, map)) throw std::logic_error("pipeline produced an invalid embedding");
    out.embedding = std::move(map);
    return out;
  }

  last.attempts = out.attempts;
  out.failure = std::move(last);
  return out;
}

}  // namespace bipack
