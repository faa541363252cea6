#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "diskdense/geom.hpp"

namespace diskdense {

struct AuditParams {
  double eps = 0.25;
  double c = 2.0;
  std::size_t draws = 10000;  // >= kMinAuditDraws
  std::uint64_t seed = 0;
  std::vector<DiskId> queries;  // empty: evenly spaced ids
  std::size_t max_queries = 8;
};

inline constexpr std::size_t kMinAuditDraws = 1000;
/// Largest tolerated fraction of estimates outside (1 +- eps) beta.
inline constexpr double kMaxEstimateMissRate = 0.05;

/// Empirical check of one SampleTree: for each query disk o, the neighbor
/// distribution of sample_excluding(o) against uniform (total variation,
/// bound eps + 3 sqrt(ln(beta) / draws)) and the relative error of
/// approx_count(o). Machine-readable pass/fail per query and overall.
nlohmann::json audit_sampler(const Instance& inst, const AuditParams& params);

}  // namespace diskdense
