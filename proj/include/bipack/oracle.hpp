#pragma once

// Exponential-time ground truth for small instances.  The embedding search
// deliberately shares no code with the flow-based embedder: S-images are
// enumerated by backtracking and the T-side is solved with Kuhn's
// augmenting-path matching (star-forest targets) or by backtracking.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bipack/feasibility.hpp"
#include "bipack/graph.hpp"

namespace bipack {

struct OracleBudget {
  int max_nodes = 20;                  // cap on host m + n
  std::int64_t max_edges_target = 100;
  std::int64_t node_limit = 50'000'000;
  bool symmetry_pruning = false;       // star forests only: equal-degree hubs get increasing images
};

enum class OracleStatus { Found, None, BudgetExceeded };

inline const char* to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::Found: return "found";
    case OracleStatus::None: return "none";
    case OracleStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct OracleEmbedResult {
  OracleStatus status = OracleStatus::None;
  std::optional<EmbeddingMap> witness;
  std::int64_t nodes = 0;
};

struct OraclePackResult {
  OracleStatus status = OracleStatus::None;
  std::optional<PackingWitness> witness;
  std::int64_t nodes = 0;
};

namespace detail {

class EmbedSearch {
 public:
  EmbedSearch(const BipartiteGraph& host, const BipartiteGraph& target, const OracleBudget& budget)
      : host_(host), target_(target), budget_(budget), s_to_a_(target.m(), -1), t_to_b_(target.n(), -1),
        a_used_(host.m(), 0), b_used_(host.n(), 0) {
    star_forest_ = true;
    for (int t = 0; t < target.n(); ++t) star_forest_ = star_forest_ && target.b_degree(t) <= 1;
    s_order_.resize(target.m());
    std::iota(s_order_.begin(), s_order_.end(), 0);
    std::stable_sort(s_order_.begin(), s_order_.end(),
                     [&](int x, int y) { return target.a_degree(x) > target.a_degree(y); });
    t_order_.resize(target.n());
    std::iota(t_order_.begin(), t_order_.end(), 0);
    std::stable_sort(t_order_.begin(), t_order_.end(),
                     [&](int x, int y) { return target.b_degree(x) > target.b_degree(y); });
  }

  OracleEmbedResult run() {
    OracleEmbedResult result;
    const bool found = assign_s(0);
    result.nodes = nodes_;
    if (exhausted_) {
      result.status = OracleStatus::BudgetExceeded;
    } else if (found) {
      result.status = OracleStatus::Found;
      EmbeddingMap map{s_to_a_, t_to_b_, {}};
      for (const Edge& e : target_.edges()) map.edge_image.push_back({s_to_a_[e.a], t_to_b_[e.b]});
      std::sort(map.edge_image.begin(), map.edge_image.end());
      result.witness = std::move(map);
    }
    return result;
  }

 private:
  bool tick() {
    if (++nodes_ > budget_.node_limit) exhausted_ = true;
    return !exhausted_;
  }

  bool assign_s(std::size_t depth) {
    if (depth == s_order_.size()) return star_forest_ ? match_leaves() : assign_t(0);
    const int s = s_order_[depth];
    int lower = 0;
    if (budget_.symmetry_pruning && star_forest_ && depth > 0) {
      const int prev = s_order_[depth - 1];
      if (target_.a_degree(prev) == target_.a_degree(s)) lower = s_to_a_[prev] + 1;
    }
    for (int a = lower; a < host_.m(); ++a) {
      if (a_used_[a] || host_.a_degree(a) < target_.a_degree(s)) continue;
      if (!tick()) return false;
      a_used_[a] = 1;
      s_to_a_[s] = a;
      if (assign_s(depth + 1)) return true;
      if (exhausted_) return false;
      a_used_[a] = 0;
      s_to_a_[s] = -1;
    }
    return false;
  }

  bool assign_t(std::size_t depth) {
    if (depth == t_order_.size()) return true;
    const int t = t_order_[depth];
    for (int b = 0; b < host_.n(); ++b) {
      if (b_used_[b]) continue;
      bool fits = true;
      for (int s : target_.b_neighbors(t)) fits = fits && host_.has_edge(s_to_a_[s], b);
      if (!fits) continue;
      if (!tick()) return false;
      b_used_[b] = 1;
      t_to_b_[t] = b;
      if (assign_t(depth + 1)) return true;
      if (exhausted_) return false;
      b_used_[b] = 0;
      t_to_b_[t] = -1;
    }
    return false;
  }

  // Degree-one T-vertices must be matched into the host neighbourhood of
  // their hub's image; isolated T-vertices take whatever B is left.
  bool match_leaves() {
    if (!tick()) return false;
    std::vector<int> b_owner(host_.n(), -1);
    std::vector<int> leaves;
    for (int t = 0; t < target_.n(); ++t)
      if (target_.b_degree(t) == 1) leaves.push_back(t);
    std::vector<char> visited;
    for (int t : leaves) {
      visited.assign(host_.n(), 0);
      if (!augment(t, b_owner, visited)) return false;
    }
    std::fill(t_to_b_.begin(), t_to_b_.end(), -1);
    std::vector<char> taken(host_.n(), 0);
    for (int b = 0; b < host_.n(); ++b)
      if (b_owner[b] >= 0) {
        t_to_b_[b_owner[b]] = b;
        taken[b] = 1;
      }
    int next = 0;
    for (int t = 0; t < target_.n(); ++t) {
      if (t_to_b_[t] >= 0) continue;
      while (taken[next]) ++next;
      t_to_b_[t] = next;
      taken[next] = 1;
    }
    return true;
  }

  bool augment(int t, std::vector<int>& b_owner, std::vector<char>& visited) {
    const int a = s_to_a_[target_.b_neighbors(t).front()];
    for (int b : host_.a_neighbors(a)) {
      if (visited[b]) continue;
      visited[b] = 1;
      if (b_owner[b] < 0 || augment(b_owner[b], b_owner, visited)) {
        b_owner[b] = t;
        return true;
      }
    }
    return false;
  }

  const BipartiteGraph& host_;
  const BipartiteGraph& target_;
  const OracleBudget& budget_;
  bool star_forest_ = true;
  bool exhausted_ = false;
  std::int64_t nodes_ = 0;
  std::vector<int> s_order_, t_order_;
  std::vector<int> s_to_a_, t_to_b_;
  std::vector<char> a_used_, b_used_;
};

}  // namespace detail

inline OracleEmbedResult brute_force_embed(const BipartiteGraph& host, const BipartiteGraph& target,
                                           const OracleBudget& budget = {}) {
  OracleEmbedResult result;
  if (target.m() > host.m() || target.n() > host.n()) return result;
  if (target.edge_count() > host.edge_count()) return result;
  if (host.m() + host.n() > budget.max_nodes ||
      static_cast<std::int64_t>(target.edge_count()) > budget.max_edges_target) {
    result.status = OracleStatus::BudgetExceeded;
    return result;
  }
  return detail::EmbedSearch(host, target, budget).run();
}

namespace detail {

// Enumerates every 0/1 matrix with the given row and column sums.
template <class Visit>
bool for_each_realization(const BigraphicSequence& seq, std::int64_t& nodes, std::int64_t limit, Visit&& visit) {
  const int m = seq.m();
  const int n = seq.n();
  std::vector<int> col_left(seq.b_degrees);
  std::vector<Edge> edges;
  bool stop = false;
  bool exhausted = false;

  auto fill_row = [&](auto&& self, int a, int b, int left) -> void {
    if (stop || exhausted) return;
    if (left == 0) {
      if (a + 1 == m) {
        if (std::all_of(col_left.begin(), col_left.end(), [](int c) { return c == 0; }) && visit(edges)) stop = true;
        return;
      }
      self(self, a + 1, 0, seq.a_degrees[a + 1]);
      return;
    }
    if (n - b < left) return;
    if (++nodes > limit) {
      exhausted = true;
      return;
    }
    if (col_left[b] > 0) {
      --col_left[b];
      edges.push_back({a, b});
      self(self, a, b + 1, left - 1);
      edges.pop_back();
      ++col_left[b];
    }
    self(self, a, b + 1, left);
  };

  if (m == 0) {
    if (std::all_of(col_left.begin(), col_left.end(), [](int c) { return c == 0; })) stop = visit(edges);
  } else {
    fill_row(fill_row, 0, 0, seq.a_degrees[0]);
  }
  if (exhausted) throw SizeTooLarge("realization enumeration exceeded node budget");
  return stop;
}

}  // namespace detail

// Unordered packing: seq1 is fixed positionally (relabeling makes this
// general) and seq2 is tried under every distinct permutation of each class
// against the complement of each realization of seq1.
inline OraclePackResult brute_force_pack(const BigraphicSequence& seq1, const BigraphicSequence& seq2,
                                         const OracleBudget& budget = {}) {
  if (seq1.m() != seq2.m() || seq1.n() != seq2.n()) throw DimensionMismatch("sequences differ in shape");
  OraclePackResult result;
  if (seq1.a_sum() != seq1.b_sum() || seq2.a_sum() != seq2.b_sum()) return result;
  if (seq1.m() + seq1.n() > budget.max_nodes) {
    result.status = OracleStatus::BudgetExceeded;
    return result;
  }
  const int m = seq1.m();
  const int n = seq1.n();
  std::vector<int> a2(seq2.a_degrees), b2(seq2.b_degrees);
  std::sort(a2.begin(), a2.end());
  std::sort(b2.begin(), b2.end());

  try {
    detail::for_each_realization(seq1, result.nodes, budget.node_limit, [&](const std::vector<Edge>& g1) {
      std::vector<Edge> free_edges;
      BipartiteGraph g1_graph(m, n, g1);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < n; ++b)
          if (!g1_graph.has_edge(a, b)) free_edges.push_back({a, b});
      const BipartiteGraph complement(m, n, free_edges);

      std::vector<int> pa(a2);
      do {
        std::vector<int> pb(b2);
        do {
          if (++result.nodes > budget.node_limit) throw SizeTooLarge("packing search exceeded node budget");
          const auto fit = fixed_order_embed(complement, BigraphicSequence(pa, pb));
          if (fit) {
            result.witness = PackingWitness{m, n, g1, fit.edges};
            return true;
          }
        } while (std::next_permutation(pb.begin(), pb.end()));
      } while (std::next_permutation(pa.begin(), pa.end()));
      return false;
    });
  } catch (const SizeTooLarge&) {
    result.status = OracleStatus::BudgetExceeded;
    result.witness.reset();
    return result;
  }
  result.status = result.witness ? OracleStatus::Found : OracleStatus::None;
  return result;
}

}  // namespace bipack
