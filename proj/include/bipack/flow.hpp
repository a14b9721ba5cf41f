#pragma once

// Dinic's blocking-flow maximum flow on integer capacities.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bipack {

template <std::integral Cap = std::int64_t>
struct FlowNetwork {
  struct Arc {
    int from = 0;
    int to = 0;
    Cap capacity = 0;
  };

  int node_count = 0;
  int source = 0;
  int sink = 1;
  std::vector<Arc> arcs;

  FlowNetwork() = default;
  FlowNetwork(int nodes, int s, int t) : node_count(nodes), source(s), sink(t) {}

  int add_arc(int from, int to, Cap capacity) {
    arcs.push_back({from, to, capacity});
    return static_cast<int>(arcs.size()) - 1;
  }
};

template <std::integral Cap>
struct FlowResult {
  Cap value = 0;
  std::vector<Cap> arc_flow;  // parallel to FlowNetwork::arcs
};

namespace detail {

template <std::integral Cap>
class Dinic {
 public:
  explicit Dinic(const FlowNetwork<Cap>& net) : net_(net), head_(net.node_count, -1), level_(net.node_count), it_(net.node_count) {
    residual_.reserve(net.arcs.size() * 2);
    for (const auto& arc : net.arcs) {
      push(arc.from, arc.to, arc.capacity);
      push(arc.to, arc.from, 0);
    }
  }

  FlowResult<Cap> run() {
    FlowResult<Cap> result;
    while (bfs()) {
      for (int v = 0; v < net_.node_count; ++v) it_[v] = head_[v];
      while (Cap pushed = dfs(net_.source, std::numeric_limits<Cap>::max())) result.value += pushed;
    }
    result.arc_flow.resize(net_.arcs.size());
    for (std::size_t i = 0; i < net_.arcs.size(); ++i) result.arc_flow[i] = residual_[2 * i + 1].cap;
    return result;
  }

 private:
  struct ResidualArc {
    int to;
    int next;
    Cap cap;
  };

  void push(int from, int to, Cap cap) {
    residual_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(residual_.size()) - 1;
  }

  bool bfs() {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> queue{net_.source};
    level_[net_.source] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      for (int e = head_[v]; e != -1; e = residual_[e].next) {
        const auto& r = residual_[e];
        if (r.cap > 0 && level_[r.to] < 0) {
          level_[r.to] = level_[v] + 1;
          queue.push_back(r.to);
        }
      }
    }
    return level_[net_.sink] >= 0;
  }

  Cap dfs(int v, Cap limit) {
    if (v == net_.sink) return limit;
    for (int& e = it_[v]; e != -1; e = residual_[e].next) {
      auto& r = residual_[e];
      if (r.cap <= 0 || level_[r.to] != level_[v] + 1) continue;
      if (Cap got = dfs(r.to, std::min(limit, r.cap)); got > 0) {
        r.cap -= got;
        residual_[e ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  const FlowNetwork<Cap>& net_;
  std::vector<ResidualArc> residual_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace detail

template <std::integral Cap>
FlowResult<Cap> max_flow(const FlowNetwork<Cap>& net) {
  if (net.node_count <= 0) throw std::invalid_argument("flow network has no nodes");
  if (net.source < 0 || net.source >= net.node_count || net.sink < 0 || net.sink >= net.node_count)
    throw std::invalid_argument("source or sink out of range");
  if (net.source == net.sink) throw std::invalid_argument("source equals sink");
  for (const auto& arc : net.arcs) {
    if (arc.capacity < 0) throw std::invalid_argument("negative arc capacity");
    if (arc.from < 0 || arc.from >= net.node_count || arc.to < 0 || arc.to >= net.node_count)
      throw std::invalid_argument("arc endpoint out of range");
  }
  return detail::Dinic<Cap>(net).run();
}

}  // namespace bipack
