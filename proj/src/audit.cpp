#include "diskdense/audit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "diskdense/error.hpp"
#include "diskdense/rng.hpp"
#include "diskdense/sampletree.hpp"

namespace diskdense {
namespace {

constexpr std::array<double, 6> kErrorBins = {0.01, 0.05, 0.1, 0.25, 0.5, 1.0};

std::vector<DiskId> default_queries(std::size_t n, std::size_t max_queries) {
  std::vector<DiskId> out;
  const std::size_t k = std::min(n, std::max<std::size_t>(max_queries, 1));
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(static_cast<DiskId>(i * n / k));
  }
  return out;
}

}  // namespace

nlohmann::json audit_sampler(const Instance& inst, const AuditParams& p) {
  if (inst.empty()) fail(ErrorCode::kInvalidArgument, "instance is empty");
  if (p.draws < kMinAuditDraws) {
    fail(ErrorCode::kInvalidArgument,
         "audit needs at least " + std::to_string(kMinAuditDraws) + " draws");
  }
  if (!(p.eps > 0.0 && p.eps < 0.5)) {
    fail(ErrorCode::kInvalidArgument, "eps must lie in (0, 1/2)");
  }
  const std::vector<DiskId> queries =
      p.queries.empty() ? default_queries(inst.size(), p.max_queries) : p.queries;
  for (DiskId id : queries) {
    if (id >= inst.size()) {
      fail(ErrorCode::kOutOfRange, "query id " + std::to_string(id) +
                                       " not in instance");
    }
  }

  const SampleTree tree(inst.disks(), p.c, derive_seed(p.seed, streams::kTreeBuild));
  Rng rng = make_rng(p.seed, streams::kQueries);
  const auto draws = static_cast<double>(p.draws);

  nlohmann::json reports = nlohmann::json::array();
  bool all_pass = true;
  for (DiskId id : queries) {
    const Disk& o = inst[id];
    const ReportOutcome hits = tree.root_index().report(o);
    const std::size_t beta = hits.ids().size();
    std::vector<DiskId> support;
    for (DiskId h : hits.ids()) {
      if (h != id) support.push_back(h);
    }
    nlohmann::json q;
    q["query"] = id;
    q["beta"] = beta;
    q["support"] = support.size();
    if (support.empty()) {
      q["empty_support"] = true;
      q["tv_distance"] = 0.0;
      q["pass"] = true;
      reports.push_back(std::move(q));
      continue;
    }

    std::vector<std::size_t> counts(support.size(), 0);
    std::size_t missing = 0;
    for (std::size_t i = 0; i < p.draws; ++i) {
      const auto s = tree.sample_excluding(o, id, p.eps, rng);
      if (!s) {
        ++missing;
        continue;
      }
      const auto it = std::lower_bound(support.begin(), support.end(), *s);
      if (it == support.end() || *it != *s) {
        fail(ErrorCode::kRuntime, "sampler returned a non-neighbor");
      }
      ++counts[static_cast<std::size_t>(it - support.begin())];
    }
    const double uniform = 1.0 / static_cast<double>(support.size());
    double tv = 0.0;
    for (std::size_t c : counts) tv += std::abs(static_cast<double>(c) / draws - uniform);
    tv = 0.5 * (tv + static_cast<double>(missing) / draws);
    const double tv_bound =
        p.eps + 3.0 * std::sqrt(std::log(std::max<double>(beta, 2.0)) / draws);

    std::vector<std::size_t> histogram(kErrorBins.size() + 1, 0);
    std::size_t outside = 0;
    std::size_t exact_answers = 0;
    for (std::size_t i = 0; i < p.draws; ++i) {
      const EstimateSample est = tree.approx_count(o, p.eps, rng);
      exact_answers += est.exact ? 1 : 0;
      const double rel = std::abs(static_cast<double>(est.estimate) -
                                  static_cast<double>(beta)) /
                         static_cast<double>(beta);
      if (rel >= p.eps) ++outside;
      const auto bin = static_cast<std::size_t>(
          std::upper_bound(kErrorBins.begin(), kErrorBins.end(), rel) -
          kErrorBins.begin());
      ++histogram[bin];
    }
    const double miss_rate = static_cast<double>(outside) / draws;

    nlohmann::json freq = nlohmann::json::array();
    for (std::size_t i = 0; i < support.size(); ++i) {
      freq.push_back({support[i], counts[i]});
    }
    nlohmann::json hist = nlohmann::json::array();
    for (std::size_t b = 0; b < histogram.size(); ++b) {
      hist.push_back({{"upper", b < kErrorBins.size() ? nlohmann::json(kErrorBins[b])
                                                      : nlohmann::json(nullptr)},
                      {"count", histogram[b]}});
    }
    const bool pass = tv <= tv_bound && miss_rate <= kMaxEstimateMissRate;
    all_pass = all_pass && pass;
    q["frequencies"] = std::move(freq);
    q["tv_distance"] = tv;
    q["tv_bound"] = tv_bound;
    q["estimate_error_histogram"] = std::move(hist);
    q["estimate_miss_rate"] = miss_rate;
    q["exact_fraction"] = static_cast<double>(exact_answers) / draws;
    q["pass"] = pass;
    reports.push_back(std::move(q));
  }

  return {{"eps", p.eps},
          {"c", p.c},
          {"draws", p.draws},
          {"seed", p.seed},
          {"psi_eps", tree.psi_eps(p.eps)},
          {"queries", std::move(reports)},
          {"pass", all_pass}};
}

}  // namespace diskdense
