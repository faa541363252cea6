#pragma once

#include <cstdint>
#include <vector>

#include "diskdense/density.hpp"
#include "diskdense/geom.hpp"

namespace diskdense {

struct Approx2Params {
  double eps = 0.5;  // in (0, 1)
  double c = 2.0;
  std::uint64_t seed = 0;
  bool report_exact = true;
  // The schedule starts at round first_round, i.e. beta = n (1 - theta)^first_round.
  std::size_t first_round = 0;
};

/// Per-iteration record of the threshold peeling, for tests and audits.
struct Approx2Trace {
  struct Iteration {
    std::size_t round = 0;
    double beta = 0.0;
    std::size_t live = 0;
    std::size_t low = 0;
    std::vector<DiskId> high_ids;  // L_>= (sorted)
  };
  std::vector<Iteration> iterations;
};

/// (2 + eps)-approximate densest subset of the disks' intersection graph.
///
/// Round i tries the degree threshold beta = n (1 - theta)^i with
/// theta = eps / 15. Within a round, starting from all disks, it rebuilds a
/// SampleTree on the live set, estimates each live disk's degree, and
/// splits the live set into L_< (estimated degree < (1 + theta) beta) and
/// L_>=. An empty L_>= ends the round; |L_<| < theta |L| returns the live
/// set; otherwise L_< is dropped and the round continues.
///
/// Estimated degrees subtract the disk itself. Estimates that are not exact
/// and fall below 2 psi_theta are replaced by exact counts.
DensityResult densest_disks_2eps(const Instance& inst, const Approx2Params& params,
                                 Approx2Trace* trace = nullptr);

}  // namespace diskdense
