#include "diskdense/approx2.hpp"

#include <chrono>
#include <cmath>

#include "diskdense/pairs.hpp"
#include "diskdense/rng.hpp"
#include "diskdense/sampletree.hpp"

namespace diskdense {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<DiskId> all_ids(const Instance& inst) {
  std::vector<DiskId> ids(inst.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<DiskId>(i);
  return ids;
}

Rational exact_density(const Instance& inst, const std::vector<DiskId>& subset) {
  const auto disks = inst.select(subset);
  const auto pairs = all_pairs(disks);
  return Rational(static_cast<std::int64_t>(pairs.size()),
                  static_cast<std::int64_t>(subset.size()));
}

}  // namespace

DensityResult densest_disks_2eps(const Instance& inst, const Approx2Params& params,
                                 Approx2Trace* trace) {
  const auto t0 = Clock::now();
  const std::size_t n = inst.size();
  if (n < 2) fail(ErrorCode::kInvalidArgument, "approx2 needs at least 2 disks");
  if (!(params.eps > 0.0 && params.eps < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "eps must lie in (0, 1)");
  }
  if (!(params.c > 0.0)) fail(ErrorCode::kInvalidArgument, "c must be > 0");

  const double theta = params.eps / 15.0;
  const double log_n = std::log(static_cast<double>(n));
  const double psi_theta = params.c * log_n / (theta * theta);

  DensityResult result;
  result.algorithm = "approx2";
  result.parameters = {{"eps", params.eps},
                       {"c", params.c},
                       {"seed", params.seed},
                       {"theta", theta},
                       {"report_exact", params.report_exact}};

  std::size_t build_counter = 0;
  std::size_t clamped = 0;
  std::size_t max_inner = 0;
  double build_seconds = 0.0;
  double query_seconds = 0.0;

  std::vector<DiskId> answer;
  std::size_t answer_high = 0;
  double answer_beta = 0.0;
  std::size_t round = params.first_round;
  bool returned = false;

  for (;; ++round) {
    const double beta = static_cast<double>(n) * std::pow(1.0 - theta, round);
    std::vector<DiskId> live = all_ids(inst);
    std::size_t inner = 0;
    bool failed = false;
    while (!returned && !failed) {
      ++inner;
      ++build_counter;
      const auto disks = inst.select(live);
      auto tb = Clock::now();
      const SampleTree tree(
          disks, params.c,
          derive_seed(params.seed, streams::kTreeBuild, build_counter));
      build_seconds += seconds_since(tb);

      auto tq = Clock::now();
      Rng rng = make_rng(params.seed, streams::kQueries, build_counter);
      std::vector<DiskId> low, high;
      for (const Disk& o : disks) {
        const EstimateSample est = tree.approx_count(o, theta, rng);
        std::uint64_t count = est.estimate;
        if (!est.exact && static_cast<double>(count) < 2.0 * psi_theta) {
          count = tree.root_index().count(o);
          ++clamped;
        }
        const double degree = count > 0 ? static_cast<double>(count - 1) : 0.0;
        (degree < (1.0 + theta) * beta ? low : high).push_back(o.id);
      }
      query_seconds += seconds_since(tq);

      if (trace) {
        trace->iterations.push_back({round, beta, live.size(), low.size(), high});
      }
      if (high.empty()) {
        failed = true;
      } else if (static_cast<double>(low.size()) <
                 theta * static_cast<double>(live.size())) {
        answer = std::move(live);
        answer_high = high.size();
        answer_beta = beta;
        returned = true;
      } else {
        live = std::move(high);
      }
    }
    max_inner = std::max(max_inner, inner);
    if (returned) break;
    // Once (1 + theta) beta <= 1 a failed round means no disk had a
    // neighbor.
    if ((1.0 + theta) * beta <= 1.0) break;
  }

  result.diagnostics = {{"rounds", round + 1 - params.first_round},
                        {"iterations", build_counter},
                        {"max_inner_iterations", max_inner},
                        {"round_bound", std::ceil(log_n / theta)},
                        {"psi_theta", psi_theta},
                        {"clamped_estimates", clamped},
                        {"final_beta", returned ? answer_beta
                                                : static_cast<double>(n) *
                                                      std::pow(1.0 - theta, round)}};
  if (clamped > 0) result.flags.push_back("clamped_estimates");
  result.timings.push_back({"tree_build", build_seconds});
  result.timings.push_back({"degree_queries", query_seconds});

  if (!returned) {
    // Floor of the threshold schedule: settle with exact degrees.
    const auto pairs = all_pairs(inst);
    if (pairs.empty()) {
      result.subset = all_ids(inst);
      result.density = Rational(0);
      result.flags.push_back("edgeless");
    } else {
      std::vector<std::pair<Vertex, Vertex>> edges(pairs.begin(), pairs.end());
      const ExplicitGraph g(n, edges);
      DensityResult peel = charikar_peel(g);
      result.subset = std::move(peel.subset);
      result.density = peel.density;
      result.flags.push_back("floor_fallback");
    }
    result.wall_seconds = seconds_since(t0);
    return result;
  }

  result.subset = std::move(answer);
  if (params.report_exact) {
    auto te = Clock::now();
    result.density = exact_density(inst, result.subset);
    result.timings.push_back({"exact_density", seconds_since(te)});
  } else {
    result.density_estimate = (1.0 - theta) * answer_beta *
                              static_cast<double>(answer_high) /
                              (2.0 * static_cast<double>(result.subset.size()));
    result.flags.push_back("estimated");
  }
  result.wall_seconds = seconds_since(t0);
  return result;
}

}  // namespace diskdense
