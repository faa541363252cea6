#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "diskdense/geom.hpp"

namespace diskdense {

/// Result of a reporting query: either the full list of intersecting ids,
/// or the fact that more than `limit` disks intersect the query.
class ReportOutcome {
 public:
  static ReportOutcome full(std::vector<DiskId> ids) {
    ReportOutcome o;
    o.ids_ = std::move(ids);
    return o;
  }
  static ReportOutcome overflow(std::size_t count_seen) {
    ReportOutcome o;
    o.overflow_ = true;
    o.count_seen_ = count_seen;
    return o;
  }

  bool is_overflow() const noexcept { return overflow_; }
  bool is_full() const noexcept { return !overflow_; }
  /// Valid only when is_full().
  const std::vector<DiskId>& ids() const noexcept { return ids_; }
  /// Number reported before the query aborted (limit + 1).
  std::size_t count_seen() const noexcept {
    return overflow_ ? count_seen_ : ids_.size();
  }

 private:
  bool overflow_ = false;
  std::size_t count_seen_ = 0;
  std::vector<DiskId> ids_;
};

/// Static range-reporting index over a set of disks: "which indexed disks
/// intersect this query disk?", with an optional early abort.
///
/// Disks are bucketed by radius class ceil(log2 r). Each class keeps a
/// uniform grid over the centers whose cell side is the largest radius in
/// the class; occupied cells are stored sorted by (column, row) so a query
/// walks only the columns its inflated bounding box touches. Very small
/// indexes skip the grid and are scanned linearly. Bucketing only affects
/// cost, never the result set.
class ReportIndex {
 public:
  static constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

  ReportIndex() = default;
  explicit ReportIndex(std::span<const Disk> disks);

  std::size_t size() const noexcept { return disks_.size(); }
  bool contains(DiskId id) const noexcept;

  /// All indexed disks intersecting q; Overflow once more than `limit`
  /// would be reported.
  ReportOutcome report(const Disk& q, std::size_t limit = kNoLimit) const;

  /// min(|q n X|, limit + 1), without materializing ids.
  std::size_t count(const Disk& q, std::size_t limit = kNoLimit) const;

  /// |o n X| - 1. Throws if o is not indexed.
  std::size_t degree(const Disk& o) const;

  struct QueryStats {
    std::size_t cells_visited = 0;
    std::size_t candidates = 0;
  };
  /// Cost instrumentation for the last-called-with-stats query.
  std::size_t count_with_stats(const Disk& q, QueryStats& stats,
                               std::size_t limit = kNoLimit) const;

  struct ClassInfo {
    int radius_class = 0;
    double cell_side = 0.0;
    std::size_t cells = 0;
    std::size_t members = 0;
  };
  std::vector<ClassInfo> classes() const;

 private:
  struct Cell {
    std::int64_t col = 0;
    std::int64_t row = 0;
    std::uint32_t begin = 0;  // range into disks_
    std::uint32_t end = 0;
  };
  struct RadiusClass {
    int radius_class = 0;
    double side = 0.0;
    std::vector<Cell> cells;  // sorted by (col, row)
  };

  template <typename Visit>
  void visit(const Disk& q, Visit&& visit, QueryStats* stats) const;

  std::vector<Disk> disks_;  // grouped by class, then cell
  std::vector<RadiusClass> classes_;
  std::vector<DiskId> sorted_ids_;
  bool flat_ = true;
};

}  // namespace diskdense
