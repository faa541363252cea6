#include "diskdense/approx1.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "diskdense/error.hpp"

namespace diskdense {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double tree_error(double eps, double c) {
  const double e = eps / c;
  if (!(e > 0.0 && e < 0.5)) {
    fail(ErrorCode::kInvalidArgument,
         "sampler error eps / c must lie in (0, 1/2)");
  }
  return e;
}

void check_params(const Approx1Params& p) {
  if (!(p.eps > 0.0 && p.eps < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "eps must lie in (0, 1)");
  }
  if (!(p.c > 0.0)) fail(ErrorCode::kInvalidArgument, "c must be > 0");
  if (!(p.c_prime > 0.0)) fail(ErrorCode::kInvalidArgument, "c' must be > 0");
  if (!(p.sparse_threshold > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "sparse threshold must be > 0");
  }
  tree_error(p.eps, p.c);
}

ExplicitGraph graph_of(std::size_t n, const PairList& pairs) {
  std::vector<std::pair<Vertex, Vertex>> edges(pairs.begin(), pairs.end());
  return ExplicitGraph(n, edges);
}

}  // namespace

DegreeTable::DegreeTable(std::vector<std::uint64_t> weights, std::vector<char> small,
                         std::vector<std::vector<DiskId>> neighbors)
    : weights_(std::move(weights)),
      small_(std::move(small)),
      neighbors_(std::move(neighbors)) {
  if (small_.size() != weights_.size() || neighbors_.size() != weights_.size()) {
    fail(ErrorCode::kInvalidArgument, "degree table columns differ in length");
  }
  prefix_.resize(weights_.size());
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    running += weights_[i];
    prefix_[i] = running;
  }
}

std::size_t DegreeTable::small_count() const noexcept {
  return static_cast<std::size_t>(std::count(small_.begin(), small_.end(), 1));
}

DiskId DegreeTable::draw(Rng& rng) const {
  if (total() == 0) fail(ErrorCode::kInvalidArgument, "degree table is empty");
  const std::uint64_t x = uniform_below(rng, total());
  const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), x);
  return static_cast<DiskId>(it - prefix_.begin());
}

DegreeTable estimate_degrees(const Instance& inst, const SampleTree& tree,
                             double eps, double c, double c_prime, Rng& rng) {
  const double err = tree_error(eps, c);
  const double cutoff = c_prime / eps;
  const std::size_t n = inst.size();
  std::vector<std::uint64_t> weights(n, 0);
  std::vector<char> small(n, 0);
  std::vector<std::vector<DiskId>> neighbors(n);
  for (const Disk& o : inst.disks()) {
    const EstimateSample est = tree.approx_count(o, err, rng);
    const auto estimate = static_cast<double>(est.estimate);
    if (estimate < cutoff) {
      const ReportOutcome hits = tree.root_index().report(o);
      auto& list = neighbors[o.id];
      for (DiskId id : hits.ids()) {
        if (id != o.id) list.push_back(id);
      }
      weights[o.id] = list.size();
      small[o.id] = 1;
    } else if (est.exact) {
      weights[o.id] = est.estimate - 1;
    } else {
      weights[o.id] = est.estimate;
    }
  }
  return DegreeTable(std::move(weights), std::move(small), std::move(neighbors));
}

DegreeTable estimate_degrees(const Instance& inst, double eps, double c,
                             double c_prime, std::uint64_t seed) {
  const SampleTree tree(inst.disks(), c, derive_seed(seed, streams::kTreeBuild));
  Rng rng = make_rng(seed, streams::kQueries);
  return estimate_degrees(inst, tree, eps, c, c_prime, rng);
}

EdgeSample sample_edges(const Instance& inst, const DegreeTable& table,
                        const SampleTree& tree, std::size_t r, double eps,
                        double c, std::uint64_t seed) {
  if (table.total() == 0) {
    fail(ErrorCode::kInvalidArgument,
         "no edges to sample (estimated edge count is zero)");
  }
  const double err = tree_error(eps, c);
  Rng vertex_rng = make_rng(seed, streams::kVertexDraws);
  Rng neighbor_rng = make_rng(seed, streams::kNeighborDraws);
  EdgeSample out;
  out.requested = r;
  out.edges.reserve(r);
  while (out.edges.size() < r) {
    const DiskId o = table.draw(vertex_rng);
    std::optional<DiskId> other;
    if (table.is_small(o)) {
      const auto& list = table.neighbors(o);
      other = list[uniform_below(neighbor_rng, list.size())];
    } else {
      other = tree.sample_excluding(inst[o], o, err, neighbor_rng);
    }
    if (!other) continue;
    out.edges.emplace_back(std::min(o, *other), std::max(o, *other));
  }
  return out;
}

DensityResult densest_disks_1eps(const Instance& inst, const Approx1Params& p) {
  const auto t0 = Clock::now();
  check_params(p);
  const std::size_t n = inst.size();
  if (n < 2) fail(ErrorCode::kInvalidArgument, "approx1 needs at least 2 disks");

  DensityResult result;
  result.algorithm = "approx1";
  result.parameters = {{"eps", p.eps},
                       {"c", p.c},
                       {"c_prime", p.c_prime},
                       {"c_double_prime", 4.0 * p.c_prime / (p.c_prime - 2.0)},
                       {"sparse_threshold", p.sparse_threshold},
                       {"seed", p.seed}};

  auto tb = Clock::now();
  const SampleTree tree(inst.disks(), p.c, derive_seed(p.seed, streams::kTreeBuild));
  result.timings.push_back({"tree_build", seconds_since(tb)});

  auto td = Clock::now();
  Rng query_rng = make_rng(p.seed, streams::kQueries);
  const DegreeTable table = estimate_degrees(inst, tree, p.eps, p.c, p.c_prime, query_rng);
  result.timings.push_back({"degree_estimation", seconds_since(td)});

  const double m_bar = table.m_bar();
  const double log_n = std::log(static_cast<double>(n));
  const double threshold =
      p.sparse_threshold * static_cast<double>(n) * log_n / (p.eps * p.eps);
  result.diagnostics = {{"m_bar", m_bar},
                        {"sparse_cutoff_edges", threshold},
                        {"small_degree_disks", table.small_count()}};

  if (m_bar <= threshold) {
    result.diagnostics["path"] = "sparse";
    auto tp = Clock::now();
    const PairList pairs = all_pairs(inst);
    result.timings.push_back({"pairs", seconds_since(tp)});
    result.diagnostics["edges"] = pairs.size();
    auto ts = Clock::now();
    const DensityResult solved = subsolver_densest(graph_of(n, pairs), p.eps);
    result.timings.push_back({"subsolve", seconds_since(ts)});
    result.subset = solved.subset;
    result.density = solved.density;
    if (pairs.empty()) result.flags.push_back("edgeless");
    result.wall_seconds = seconds_since(t0);
    return result;
  }

  const double theta = p.eps / 10.0;
  const double psi = p.c * (static_cast<double>(n) / m_bar) * log_n / (theta * theta);
  const auto r = static_cast<std::size_t>(std::ceil(psi * m_bar));
  result.diagnostics["path"] = "sampled";
  result.diagnostics["theta"] = theta;
  result.diagnostics["psi"] = psi;
  result.diagnostics["r"] = r;

  auto tsm = Clock::now();
  const EdgeSample sample = sample_edges(inst, table, tree, r, p.eps, p.c, p.seed);
  result.timings.push_back({"edge_sampling", seconds_since(tsm)});

  auto ts = Clock::now();
  std::vector<std::pair<Vertex, Vertex>> edges(sample.edges.begin(), sample.edges.end());
  const ExplicitGraph h(n, edges);
  const DensityResult on_h = subsolver_densest(h, p.eps / 6.0);
  result.timings.push_back({"subsolve", seconds_since(ts)});
  result.diagnostics["sampled_density"] = on_h.density->to_string();

  auto te = Clock::now();
  result.subset = on_h.subset;
  const PairList inside = all_pairs(inst.select(result.subset));
  result.density = Rational(static_cast<std::int64_t>(inside.size()),
                            static_cast<std::int64_t>(result.subset.size()));
  result.timings.push_back({"exact_density", seconds_since(te)});
  result.wall_seconds = seconds_since(t0);
  return result;
}

}  // namespace diskdense
