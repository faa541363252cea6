#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace diskdense::detail {

// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  using Cap = std::int64_t;
  static constexpr Cap kInfinite = std::numeric_limits<Cap>::max() / 4;

  explicit MaxFlow(std::size_t n) : head_(n, -1), level_(n), iter_(n) {}

  void add_edge(std::size_t from, std::size_t to, Cap cap, Cap reverse_cap = 0) {
    arcs_.push_back({static_cast<std::int32_t>(to), head_[from], cap});
    head_[from] = static_cast<std::int32_t>(arcs_.size() - 1);
    arcs_.push_back({static_cast<std::int32_t>(from), head_[to], reverse_cap});
    head_[to] = static_cast<std::int32_t>(arcs_.size() - 1);
  }

  Cap solve(std::size_t s, std::size_t t) {
    Cap flow = 0;
    while (bfs(s, t)) {
      for (std::size_t v = 0; v < head_.size(); ++v) iter_[v] = head_[v];
      while (Cap f = dfs(s, t, kInfinite)) flow += f;
    }
    return flow;
  }

  // Vertices reachable from s in the residual graph: the inclusion-minimal
  // source side of a minimum cut.
  std::vector<char> source_side(std::size_t s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::int32_t a = head_[v]; a >= 0; a = arcs_[a].next) {
        const auto w = static_cast<std::size_t>(arcs_[a].to);
        if (arcs_[a].cap > 0 && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return seen;
  }

  // Complement of the vertices that reach t in the residual graph: the
  // inclusion-maximal source side of a minimum cut.
  std::vector<char> maximal_source_side(std::size_t t) const {
    std::vector<char> reaches(head_.size(), 0);
    std::vector<std::size_t> stack{t};
    reaches[t] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      // An arc u->v with residual capacity lets u reach v; scan v's arcs and
      // look at the paired arc u->v.
      for (std::int32_t a = head_[v]; a >= 0; a = arcs_[a].next) {
        const auto u = static_cast<std::size_t>(arcs_[a].to);
        if (arcs_[a ^ 1].cap > 0 && !reaches[u]) {
          reaches[u] = 1;
          stack.push_back(u);
        }
      }
    }
    for (auto& r : reaches) r = !r;
    return reaches;
  }

 private:
  struct Arc {
    std::int32_t to;
    std::int32_t next;
    Cap cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::int32_t a = head_[v]; a >= 0; a = arcs_[a].next) {
        const auto w = static_cast<std::size_t>(arcs_[a].to);
        if (arcs_[a].cap > 0 && level_[w] < 0) {
          level_[w] = level_[v] + 1;
          q.push(w);
        }
      }
    }
    return level_[t] >= 0;
  }

  Cap dfs(std::size_t v, std::size_t t, Cap pushed) {
    if (v == t) return pushed;
    for (std::int32_t& a = iter_[v]; a >= 0; a = arcs_[a].next) {
      const auto w = static_cast<std::size_t>(arcs_[a].to);
      if (arcs_[a].cap <= 0 || level_[w] != level_[v] + 1) continue;
      const Cap got = dfs(w, t, std::min(pushed, arcs_[a].cap));
      if (got > 0) {
        arcs_[a].cap -= got;
        arcs_[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::int32_t> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::int32_t> iter_;
};

}  // namespace diskdense::detail
