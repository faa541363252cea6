#include "diskdense/density.hpp"

#include <algorithm>
#include <bit>
#include <queue>

#include "maxflow.hpp"

namespace diskdense {
namespace {

Rational ratio(std::uint64_t edges, std::size_t vertices) {
  return Rational(static_cast<std::int64_t>(edges),
                  static_cast<std::int64_t>(vertices));
}

// Lex comparison on subsets encoded as bit masks (bit i <=> vertex i).
bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  const int bit = std::countr_zero(diff);
  const std::uint64_t above = bit >= 63 ? 0 : ~((std::uint64_t{2} << bit) - 1);
  if ((a >> bit) & 1) return (b & above) != 0;
  return (a & above) == 0;
}

std::vector<std::uint32_t> mask_to_set(std::uint64_t mask) {
  std::vector<std::uint32_t> out;
  while (mask) {
    out.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

// Maximizes h(S) = q*E(S) - p*|S| over S with forced <= S <= allowed via one
// min cut on the Goldberg network.
class CutOracle {
 public:
  explicit CutOracle(const ExplicitGraph& g)
      : n_(g.num_vertices()), edges_(g.weighted_edges()) {}

  struct Outcome {
    __int128 best_gain = 0;            // max h(S)
    std::vector<std::uint32_t> minimal;  // inclusion-minimal maximizer
    std::vector<std::uint32_t> maximal;  // inclusion-maximal maximizer
  };

  Outcome solve(std::int64_t p, std::int64_t q, const std::vector<char>& allowed,
                const std::vector<char>& forced) const {
    std::vector<std::int32_t> local(n_, -1);
    std::vector<std::uint32_t> global;
    for (std::size_t v = 0; v < n_; ++v) {
      if (allowed[v]) {
        local[v] = static_cast<std::int32_t>(global.size());
        global.push_back(static_cast<std::uint32_t>(v));
      }
    }
    const std::size_t k = global.size();
    std::vector<__int128> deg(k, 0);
    for (const auto& e : edges_) {
      if (local[e.u] >= 0 && local[e.v] >= 0) {
        deg[local[e.u]] += e.weight;
        deg[local[e.v]] += e.weight;
      }
    }
    __int128 max_deg = 0;
    for (auto d : deg) max_deg = std::max(max_deg, d);
    const __int128 big = static_cast<__int128>(q) * max_deg;
    check(big * static_cast<__int128>(k + 1) + 2 * static_cast<__int128>(p) *
                                                 static_cast<__int128>(k + 1));

    const std::size_t s = k;
    const std::size_t t = k + 1;
    detail::MaxFlow flow(k + 2);
    for (std::size_t i = 0; i < k; ++i) {
      const bool pinned = forced[global[i]] != 0;
      flow.add_edge(s, i,
                    pinned ? detail::MaxFlow::kInfinite
                           : static_cast<detail::MaxFlow::Cap>(big));
      flow.add_edge(i, t,
                    static_cast<detail::MaxFlow::Cap>(big + 2 * static_cast<__int128>(p) -
                                                      static_cast<__int128>(q) * deg[i]));
    }
    for (const auto& e : edges_) {
      if (local[e.u] >= 0 && local[e.v] >= 0) {
        const auto c = static_cast<detail::MaxFlow::Cap>(
            static_cast<__int128>(q) * e.weight);
        flow.add_edge(static_cast<std::size_t>(local[e.u]),
                      static_cast<std::size_t>(local[e.v]), c, c);
      }
    }
    const __int128 cut = flow.solve(s, t);
    Outcome out;
    out.best_gain = (big * static_cast<__int128>(k) - cut) / 2;
    const auto min_side = flow.source_side(s);
    const auto max_side = flow.maximal_source_side(t);
    for (std::size_t i = 0; i < k; ++i) {
      if (min_side[i]) out.minimal.push_back(global[i]);
      if (max_side[i]) out.maximal.push_back(global[i]);
    }
    return out;
  }

 private:
  static void check(__int128 magnitude) {
    if (magnitude > static_cast<__int128>(detail::MaxFlow::kInfinite / 4)) {
      fail(ErrorCode::kRuntime, "flow capacities exceed 64-bit range");
    }
  }

  std::size_t n_;
  std::vector<ExplicitGraph::WeightedEdge> edges_;
};

std::vector<std::uint32_t> lex_min_optimal(const ExplicitGraph& g,
                                           const CutOracle& oracle,
                                           const Rational& best) {
  const std::size_t n = g.num_vertices();
  const std::int64_t p = best.num();
  const std::int64_t q = best.den();
  std::vector<char> allowed(n, 1);
  std::vector<char> forced(n, 0);

  // Every optimal set lies inside the maximal maximizer.
  const auto top = oracle.solve(p, q, allowed, forced);
  std::fill(allowed.begin(), allowed.end(), 0);
  for (auto v : top.maximal) allowed[v] = 1;

  // Pick elements greedily in increasing order.
  // `hull` is the smallest optimal set containing `chosen`; every optimal
  // extension of `chosen` contains it.
  std::vector<std::uint32_t> chosen{top.maximal.front()};
  forced[chosen.front()] = 1;
  std::vector<std::uint32_t> hull = oracle.solve(p, q, allowed, forced).minimal;
  while (chosen.size() < hull.size()) {
    std::uint32_t next = 0;
    bool next_in_hull = false;
    for (std::uint32_t v = chosen.back() + 1; v < n; ++v) {
      if (!allowed[v]) continue;
      if (std::binary_search(hull.begin(), hull.end(), v)) {
        next = v;
        next_in_hull = true;
        break;
      }
      forced[v] = 1;
      auto trial = oracle.solve(p, q, allowed, forced);
      if (trial.best_gain == 0) {
        next = v;
        hull = std::move(trial.minimal);
        break;
      }
      forced[v] = 0;
      allowed[v] = 0;
    }
    forced[next] = 1;
    chosen.push_back(next);
    (void)next_in_hull;
  }
  return hull;
}

}  // namespace

ExplicitGraph::ExplicitGraph(std::size_t n,
                             std::span<const std::pair<Vertex, Vertex>> edges)
    : adjacency_(n) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      fail(ErrorCode::kOutOfRange, "edge endpoint outside vertex range");
    }
    if (u == v) fail(ErrorCode::kInvalidArgument, "self-loops are not allowed");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  m_ = edges.size();
}

std::vector<ExplicitGraph::WeightedEdge> ExplicitGraph::weighted_edges() const {
  std::vector<WeightedEdge> out;
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    const auto& list = adjacency_[u];
    for (std::size_t i = 0; i < list.size();) {
      std::size_t j = i;
      while (j < list.size() && list[j] == list[i]) ++j;
      if (list[i] > u) {
        out.push_back({static_cast<Vertex>(u), list[i], j - i});
      }
      i = j;
    }
  }
  return out;
}

Rational density_of(const ExplicitGraph& g, std::span<const Vertex> subset) {
  if (subset.empty()) fail(ErrorCode::kInvalidArgument, "empty subset");
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : subset) {
    if (v >= g.num_vertices()) {
      fail(ErrorCode::kOutOfRange, "subset vertex outside graph");
    }
    if (in[v]) fail(ErrorCode::kInvalidArgument, "subset has duplicates");
    in[v] = 1;
  }
  std::uint64_t twice = 0;
  for (Vertex v : subset) {
    for (Vertex w : g.neighbors(v)) twice += in[w];
  }
  return ratio(twice / 2, subset.size());
}

bool DensityResult::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

nlohmann::json to_json(const DensityResult& r, bool include_timings) {
  nlohmann::json j;
  j["algorithm"] = r.algorithm;
  j["subset"] = r.subset;
  j["size"] = r.subset.size();
  j["density"] = r.density ? nlohmann::json(r.density->to_string())
                           : nlohmann::json(nullptr);
  j["density_value"] = r.density_value();
  j["density_estimated"] = !r.density.has_value();
  j["parameters"] = r.parameters;
  j["diagnostics"] = r.diagnostics;
  j["flags"] = r.flags;
  if (include_timings) {
    nlohmann::json t = nlohmann::json::object();
    for (const Timing& phase : r.timings) t[phase.phase] = phase.seconds;
    j["timings"] = t;
    j["wall_seconds"] = r.wall_seconds;
  }
  return j;
}

bool lex_less(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

DensityResult brute_densest(const ExplicitGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) fail(ErrorCode::kInvalidArgument, "graph has no vertices");
  if (n > kBruteMaxVertices) {
    fail(ErrorCode::kInvalidArgument,
         "brute force limited to " + std::to_string(kBruteMaxVertices) +
             " vertices");
  }
  std::vector<std::vector<std::uint64_t>> w(n, std::vector<std::uint64_t>(n, 0));
  for (const auto& e : g.weighted_edges()) {
    w[e.u][e.v] = e.weight;
    w[e.v][e.u] = e.weight;
  }
  const std::uint64_t full = (std::uint64_t{1} << n);
  std::vector<std::uint64_t> edges(full, 0);
  std::uint64_t best_mask = 1;
  std::uint64_t best_edges = 0;
  std::uint64_t best_size = 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    std::uint64_t e = edges[rest];
    for (std::uint64_t r = rest; r; r &= r - 1) e += w[low][std::countr_zero(r)];
    edges[mask] = e;
    const std::uint64_t size = static_cast<std::uint64_t>(std::popcount(mask));
    const unsigned __int128 lhs = static_cast<unsigned __int128>(e) * best_size;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(best_edges) * size;
    if (lhs > rhs || (lhs == rhs && mask_lex_less(mask, best_mask))) {
      best_mask = mask;
      best_edges = e;
      best_size = size;
    }
  }
  DensityResult r;
  r.algorithm = "brute";
  r.subset = mask_to_set(best_mask);
  r.density = ratio(best_edges, best_size);
  return r;
}

DensityResult charikar_peel(const ExplicitGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) fail(ErrorCode::kInvalidArgument, "graph has no vertices");
  std::vector<std::uint64_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(static_cast<Vertex>(v));
  std::vector<char> alive(n, 1);
  using Entry = std::pair<std::uint64_t, Vertex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t v = 0; v < n; ++v) heap.emplace(deg[v], static_cast<Vertex>(v));

  std::uint64_t edges = g.num_edges();
  std::size_t size = n;
  Rational best = ratio(edges, size);
  std::size_t best_removed = 0;
  std::vector<Vertex> order;
  order.reserve(n);
  while (size > 1) {
    auto [d, v] = heap.top();
    heap.pop();
    if (!alive[v] || d != deg[v]) continue;
    alive[v] = 0;
    order.push_back(v);
    edges -= deg[v];
    --size;
    for (Vertex w : g.neighbors(v)) {
      if (alive[w]) {
        --deg[w];
        heap.emplace(deg[w], w);
      }
    }
    const Rational current = ratio(edges, size);
    if (current > best) {
      best = current;
      best_removed = order.size();
    }
  }
  std::vector<char> removed(n, 0);
  for (std::size_t i = 0; i < best_removed; ++i) removed[order[i]] = 1;
  DensityResult r;
  r.algorithm = "peel";
  for (std::size_t v = 0; v < n; ++v) {
    if (!removed[v]) r.subset.push_back(static_cast<std::uint32_t>(v));
  }
  r.density = best;
  return r;
}

DensityResult exact_densest(const ExplicitGraph& g, TieBreak tie_break) {
  const std::size_t n = g.num_vertices();
  if (n == 0) fail(ErrorCode::kInvalidArgument, "graph has no vertices");
  DensityResult r;
  r.algorithm = "exact";
  if (g.num_edges() == 0) {
    r.subset = {0};
    r.density = Rational(0);
    r.diagnostics["cut_rounds"] = 0;
    return r;
  }

  const CutOracle oracle(g);
  const std::vector<char> everything(n, 1);
  const std::vector<char> nothing(n, 0);

  // Start from the peeling answer; each round re-solves at the density of
  // the best set so far and stops once no set beats it.
  DensityResult start = charikar_peel(g);
  std::vector<std::uint32_t> best_set = std::move(start.subset);
  Rational best = *start.density;
  std::size_t rounds = 0;
  for (;;) {
    ++rounds;
    auto cut = oracle.solve(best.num(), best.den(), everything, nothing);
    if (cut.best_gain <= 0) break;
    best_set = std::move(cut.minimal);
    best = density_of(g, best_set);
  }
  if (tie_break == TieBreak::kLexMin) {
    best_set = lex_min_optimal(g, oracle, best);
  }
  r.subset = std::move(best_set);
  r.density = best;
  r.diagnostics["cut_rounds"] = rounds;
  return r;
}

DensityResult subsolver_densest(const ExplicitGraph& g, double quality_eps) {
  if (!(quality_eps > 0.0 && quality_eps < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "quality_eps must lie in (0, 1)");
  }
  DensityResult r = exact_densest(g, TieBreak::kAny);
  r.algorithm = "subsolver-exact";
  r.parameters["quality_eps"] = quality_eps;
  return r;
}

}  // namespace diskdense
