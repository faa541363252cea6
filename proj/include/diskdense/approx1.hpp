#pragma once

#include <cstdint>
#include <vector>

#include "diskdense/density.hpp"
#include "diskdense/geom.hpp"
#include "diskdense/pairs.hpp"
#include "diskdense/rng.hpp"
#include "diskdense/sampletree.hpp"

namespace diskdense {

struct Approx1Params {
  double eps = 0.5;      // in (0, 1)
  double c = 2.0;        // sampler confidence constant; tree error is eps / c
  double c_prime = 32.0; // small-degree cutoff is c_prime / eps
  double sparse_threshold = 4.0;  // sparse path when m <= this * eps^-2 n ln n
  std::uint64_t seed = 0;
};

/// Per-disk degree weights for edge sampling. Indexed by disk id.
class DegreeTable {
 public:
  DegreeTable() = default;
  DegreeTable(std::vector<std::uint64_t> weights, std::vector<char> small,
              std::vector<std::vector<DiskId>> neighbors);

  std::size_t size() const noexcept { return weights_.size(); }
  std::uint64_t weight(DiskId id) const { return weights_.at(id); }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  /// Inclusive prefix sums; prefix().back() == total().
  const std::vector<std::uint64_t>& prefix() const noexcept { return prefix_; }
  std::uint64_t total() const noexcept { return prefix_.empty() ? 0 : prefix_.back(); }
  /// Estimated edge count, total() / 2.
  double m_bar() const noexcept { return static_cast<double>(total()) / 2.0; }
  bool is_small(DiskId id) const { return small_.at(id) != 0; }
  /// Exact neighbors (self excluded), cached for small-degree disks only.
  const std::vector<DiskId>& neighbors(DiskId id) const { return neighbors_.at(id); }
  std::size_t small_count() const noexcept;

  /// Draws a disk with probability weight / total. Requires total() > 0.
  DiskId draw(Rng& rng) const;

 private:
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> prefix_;
  std::vector<char> small_;
  std::vector<std::vector<DiskId>> neighbors_;
};

/// Queries every disk against `tree` with error eps / c. Disks whose
/// estimate is below c_prime / eps get their exact degree and a cached
/// neighbor list; the rest keep the estimate (exact counts minus self when
/// the tree answered exactly).
DegreeTable estimate_degrees(const Instance& inst, const SampleTree& tree,
                             double eps, double c, double c_prime, Rng& rng);
/// Convenience overload building its own tree from `seed`.
DegreeTable estimate_degrees(const Instance& inst, double eps, double c,
                             double c_prime, std::uint64_t seed);

struct EdgeSample {
  std::vector<Pair> edges;  // multiset, u < v
  std::size_t requested = 0;
};

/// r independent draws: pick a disk by weight, then a neighbor (exactly
/// uniformly from the cache for small-degree disks, via
/// SampleTree::sample_excluding otherwise). Throws when total() == 0.
EdgeSample sample_edges(const Instance& inst, const DegreeTable& table,
                        const SampleTree& tree, std::size_t r, double eps,
                        double c, std::uint64_t seed);

/// (1 + eps)-approximate densest subset. Sparse intersection graphs are
/// solved exactly on the explicit pair list; dense ones through a sampled
/// graph H of ceil(psi * m_bar) edges, psi = c (n / m_bar) theta^-2 ln n with
/// theta = eps / 10. The returned density is always exact for the subset.
DensityResult densest_disks_1eps(const Instance& inst, const Approx1Params& params);

}  // namespace diskdense
