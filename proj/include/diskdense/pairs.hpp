#pragma once

#include <span>
#include <utility>
#include <vector>

#include "diskdense/geom.hpp"

namespace diskdense {

/// (u, v) with u < v.
using Pair = std::pair<DiskId, DiskId>;

/// Sorted lexicographically, duplicate-free, every pair intersecting.
using PairList = std::vector<Pair>;

/// Every intersecting pair exactly once. Plane sweep over x-extents with the
/// active disks kept per radius class in an ordered map keyed by the lower
/// end of the y-extent; bounding-box candidates are confirmed with
/// intersects(). Ids are taken from the disks, so any subset works.
PairList all_pairs(std::span<const Disk> disks);
inline PairList all_pairs(const Instance& inst) {
  return all_pairs(std::span<const Disk>(inst.disks()));
}

/// O(n^2) reference scan.
PairList all_pairs_naive(std::span<const Disk> disks);
inline PairList all_pairs_naive(const Instance& inst) {
  return all_pairs_naive(std::span<const Disk>(inst.disks()));
}

}  // namespace diskdense
