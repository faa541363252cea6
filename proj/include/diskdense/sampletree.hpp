#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "diskdense/geom.hpp"
#include "diskdense/report.hpp"
#include "diskdense/rng.hpp"

namespace diskdense {

/// Outcome of one approximate counting/sampling query.
struct EstimateSample {
  std::uint64_t estimate = 0;         // 2^level * |S|
  std::optional<DiskId> sample;       // uniform element of S
  unsigned level = 0;                 // depth j the answer was taken from
  bool exact = false;                 // estimate equals |q n D| exactly
  bool fallback = false;              // every slot draw was empty; root used
};

/// Random binary hierarchy of ReportIndex instances answering
/// (1 +- eps)-approximate counts of |q n D| and (1 +- eps)-uniform samples
/// from q n D.
///
/// Every object draws one fair bit per level; its node at depth i is the
/// i-bit prefix of its bit string. The tree has full depth D = ceil(log2 n)
/// so the nonempty nodes of each level partition D. Only nonempty nodes
/// carry a ReportIndex.
///
/// A query walks the all-zeros root-to-leaf path. It binary-searches for the
/// deepest node holding more than psi = c ln n hits (each probe aborts after
/// psi), walks up to the deepest node holding more than
/// psi_eps = c eps^-2 ln n hits (level j, or 0), then reports against a
/// uniformly drawn node of level j and scales its hit count by 2^j. A drawn
/// slot that is empty, or whose node has no hit, is redrawn; after
/// kMaxSlotDraws failures the root is queried exactly.
class SampleTree {
 public:
  static constexpr unsigned kMaxSlotDraws = 64;
  static constexpr unsigned kDefaultExcludeRetries = 64;

  struct Node {
    unsigned level = 0;
    std::uint64_t prefix = 0;  // low `level` bits of the members' bit strings
    std::vector<DiskId> members;  // sorted
    ReportIndex index;
  };

  /// Requires at least one disk and c > 0.
  SampleTree(std::span<const Disk> disks, double c, std::uint64_t seed);

  std::size_t size() const noexcept { return n_; }
  unsigned depth() const noexcept { return depth_; }
  double c() const noexcept { return c_; }
  double psi() const noexcept;
  double psi_eps(double eps) const;

  /// eps must lie in (0, 1/2).
  EstimateSample query(const Disk& q, double eps, Rng& rng) const;

  /// Same walk as query() but no element is drawn from S.
  EstimateSample approx_count(const Disk& q, double eps, Rng& rng) const;

  /// Repeats query() until the sample differs from self_id, at most
  /// max_retries times, then draws exactly from report(q) minus self_id.
  /// Empty when q meets nothing but self_id.
  std::optional<DiskId> sample_excluding(
      const Disk& q, DiskId self_id, double eps, Rng& rng,
      unsigned max_retries = kDefaultExcludeRetries) const;

  // Introspection.
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  /// Nonempty nodes at depth `level` (indices into nodes()).
  const std::vector<std::uint32_t>& level_nodes(unsigned level) const {
    return levels_.at(level);
  }
  /// Node at depth `level` whose prefix is `slot`, if nonempty.
  std::optional<std::uint32_t> slot_node(unsigned level, std::uint64_t slot) const;
  /// Node on the all-zeros path at `level`, if nonempty.
  std::optional<std::uint32_t> path_node(unsigned level) const {
    return slot_node(level, 0);
  }
  /// The recorded bit string of an object (bit i-1 is its level-i bit).
  std::uint64_t bits_of(DiskId id) const;
  const ReportIndex& root_index() const { return nodes_.at(0).index; }

 private:
  EstimateSample run(const Disk& q, double eps, Rng& rng, bool draw) const;
  std::size_t path_count(unsigned level, const Disk& q, std::size_t limit) const;
  EstimateSample exact_root(const Disk& q, Rng& rng, bool draw,
                            bool fallback) const;

  std::size_t n_ = 0;
  unsigned depth_ = 0;
  double c_ = 2.0;
  double log_n_ = 1.0;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::uint32_t>> levels_;
  std::vector<std::vector<std::int32_t>> slots_;  // per level, 2^level entries
  std::vector<std::pair<DiskId, std::uint64_t>> bits_;  // sorted by id
};

}  // namespace diskdense
