#include "diskdense/report.hpp"

#include <algorithm>
#include <cmath>

#include "diskdense/error.hpp"
#include "radius_class.hpp"

namespace diskdense {
namespace {

constexpr std::size_t kFlatThreshold = 24;
constexpr double kCellClamp = 4.0e18;
constexpr double kReachSlack = 1e-9;

std::int64_t cell_of(double coord, double side) {
  const double c = std::floor(coord / side);
  return static_cast<std::int64_t>(std::clamp(c, -kCellClamp, kCellClamp));
}

}  // namespace

ReportIndex::ReportIndex(std::span<const Disk> disks)
    : disks_(disks.begin(), disks.end()) {
  sorted_ids_.reserve(disks_.size());
  for (const Disk& d : disks_) sorted_ids_.push_back(d.id);
  std::sort(sorted_ids_.begin(), sorted_ids_.end());

  flat_ = disks_.size() <= kFlatThreshold;
  if (flat_) return;

  struct Keyed {
    int cls;
    std::int64_t col, row;
    Disk disk;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(disks_.size());
  std::vector<std::pair<int, double>> class_side;  // (class, max radius)
  for (const Disk& d : disks_) {
    const int k = radius_class(d.r);
    auto it = std::find_if(class_side.begin(), class_side.end(),
                           [k](const auto& cs) { return cs.first == k; });
    if (it == class_side.end()) {
      class_side.emplace_back(k, d.r);
    } else {
      it->second = std::max(it->second, d.r);
    }
  }
  std::sort(class_side.begin(), class_side.end());
  for (const Disk& d : disks_) {
    const int k = radius_class(d.r);
    const double side = std::lower_bound(class_side.begin(), class_side.end(),
                                         std::make_pair(k, -1.0))
                            ->second;
    keyed.push_back({k, cell_of(d.cx, side), cell_of(d.cy, side), d});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.col != b.col) return a.col < b.col;
    if (a.row != b.row) return a.row < b.row;
    return a.disk.id < b.disk.id;
  });

  for (std::size_t i = 0; i < keyed.size(); ++i) {
    const Keyed& k = keyed[i];
    disks_[i] = k.disk;
    if (classes_.empty() || classes_.back().radius_class != k.cls) {
      const double side = std::lower_bound(class_side.begin(), class_side.end(),
                                           std::make_pair(k.cls, -1.0))
                              ->second;
      classes_.push_back({k.cls, side, {}});
    }
    auto& cells = classes_.back().cells;
    if (cells.empty() || cells.back().col != k.col || cells.back().row != k.row) {
      const auto at = static_cast<std::uint32_t>(i);
      cells.push_back({k.col, k.row, at, at});
    }
    cells.back().end = static_cast<std::uint32_t>(i + 1);
  }
}

bool ReportIndex::contains(DiskId id) const noexcept {
  return std::binary_search(sorted_ids_.begin(), sorted_ids_.end(), id);
}

template <typename Visit>
void ReportIndex::visit(const Disk& q, Visit&& on_hit, QueryStats* stats) const {
  auto scan = [&](std::uint32_t begin, std::uint32_t end) {
    for (std::uint32_t i = begin; i < end; ++i) {
      if (stats) ++stats->candidates;
      if (intersects(q, disks_[i]) && !on_hit(disks_[i].id)) return false;
    }
    return true;
  };

  if (flat_) {
    if (stats) ++stats->cells_visited;
    scan(0, static_cast<std::uint32_t>(disks_.size()));
    return;
  }

  for (const RadiusClass& rc : classes_) {
    const double reach = (q.r + rc.side) * (1.0 + kReachSlack);
    const std::int64_t c0 = cell_of(q.cx - reach, rc.side);
    const std::int64_t c1 = cell_of(q.cx + reach, rc.side);
    const std::int64_t r0 = cell_of(q.cy - reach, rc.side);
    const std::int64_t r1 = cell_of(q.cy + reach, rc.side);
    const auto& cells = rc.cells;
    const double columns = static_cast<double>(c1) - static_cast<double>(c0) + 1.0;

    if (columns * std::log2(static_cast<double>(cells.size()) + 2.0) >=
        static_cast<double>(cells.size())) {
      for (const Cell& cell : cells) {
        if (cell.col < c0 || cell.col > c1 || cell.row < r0 || cell.row > r1) {
          continue;
        }
        if (stats) ++stats->cells_visited;
        if (!scan(cell.begin, cell.end)) return;
      }
      continue;
    }

    for (std::int64_t col = c0; col <= c1; ++col) {
      auto it = std::lower_bound(
          cells.begin(), cells.end(), std::make_pair(col, r0),
          [](const Cell& c, const std::pair<std::int64_t, std::int64_t>& key) {
            return c.col < key.first || (c.col == key.first && c.row < key.second);
          });
      for (; it != cells.end() && it->col == col && it->row <= r1; ++it) {
        if (stats) ++stats->cells_visited;
        if (!scan(it->begin, it->end)) return;
      }
    }
  }
}

ReportOutcome ReportIndex::report(const Disk& q, std::size_t limit) const {
  std::vector<DiskId> ids;
  bool overflow = false;
  visit(
      q,
      [&](DiskId id) {
        if (ids.size() == limit) {
          overflow = true;
          return false;
        }
        ids.push_back(id);
        return true;
      },
      nullptr);
  if (overflow) return ReportOutcome::overflow(limit + 1);
  std::sort(ids.begin(), ids.end());
  return ReportOutcome::full(std::move(ids));
}

std::size_t ReportIndex::count(const Disk& q, std::size_t limit) const {
  std::size_t seen = 0;
  visit(
      q,
      [&](DiskId) {
        ++seen;
        return seen <= limit;
      },
      nullptr);
  return seen;
}

std::size_t ReportIndex::count_with_stats(const Disk& q, QueryStats& stats,
                                          std::size_t limit) const {
  std::size_t seen = 0;
  visit(
      q,
      [&](DiskId) {
        ++seen;
        return seen <= limit;
      },
      &stats);
  return seen;
}

std::size_t ReportIndex::degree(const Disk& o) const {
  if (!contains(o.id)) {
    fail(ErrorCode::kInvalidArgument,
         "disk " + std::to_string(o.id) + " is not indexed");
  }
  return count(o) - 1;
}

std::vector<ReportIndex::ClassInfo> ReportIndex::classes() const {
  std::vector<ClassInfo> out;
  for (const RadiusClass& rc : classes_) {
    std::size_t members = 0;
    for (const Cell& c : rc.cells) members += c.end - c.begin;
    out.push_back({rc.radius_class, rc.side, rc.cells.size(), members});
  }
  return out;
}

}  // namespace diskdense
