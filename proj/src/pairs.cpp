#include "diskdense/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "radius_class.hpp"

namespace diskdense {
namespace {

// Bounding boxes are widened by a relative hair so that exactly tangent
// disks survive rounding in cx +- r; intersects() makes the final call.
constexpr double kBoxSlack = 1e-12;

struct Extent {
  double xmin, xmax, ymin, ymax;
};

Extent extent_of(const Disk& d) {
  const double sx = kBoxSlack * (std::abs(d.cx) + d.r);
  const double sy = kBoxSlack * (std::abs(d.cy) + d.r);
  return {d.cx - d.r - sx, d.cx + d.r + sx, d.cy - d.r - sy, d.cy + d.r + sy};
}

void add_pair(PairList& out, DiskId a, DiskId b) {
  out.emplace_back(std::min(a, b), std::max(a, b));
}

}  // namespace

PairList all_pairs(std::span<const Disk> disks) {
  PairList out;
  const std::size_t n = disks.size();
  if (n < 2) return out;

  std::vector<Extent> ext(n);
  std::vector<int> cls(n);
  int lo_class = radius_class(disks[0].r);
  int hi_class = lo_class;
  for (std::size_t i = 0; i < n; ++i) {
    ext[i] = extent_of(disks[i]);
    cls[i] = radius_class(disks[i].r);
    lo_class = std::min(lo_class, cls[i]);
    hi_class = std::max(hi_class, cls[i]);
  }
  const std::size_t num_classes = static_cast<std::size_t>(hi_class - lo_class) + 1;

  // Tallest y-extent per class bounds how far below a query's ymin an
  // overlapping active disk can start.
  std::vector<double> height(num_classes, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& h = height[static_cast<std::size_t>(cls[i] - lo_class)];
    h = std::max(h, ext[i].ymax - ext[i].ymin);
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ext[a].xmin < ext[b].xmin;
  });

  using ActiveMap = std::multimap<double, std::size_t>;
  std::vector<ActiveMap> active(num_classes);
  std::vector<ActiveMap::iterator> handle(n);
  using Expiry = std::pair<double, std::size_t>;
  std::priority_queue<Expiry, std::vector<Expiry>, std::greater<>> expiry;

  for (std::size_t idx : order) {
    const Extent& e = ext[idx];
    while (!expiry.empty() && expiry.top().first < e.xmin) {
      const std::size_t gone = expiry.top().second;
      expiry.pop();
      active[static_cast<std::size_t>(cls[gone] - lo_class)].erase(handle[gone]);
    }
    for (std::size_t k = 0; k < num_classes; ++k) {
      ActiveMap& m = active[k];
      if (m.empty()) continue;
      auto it = m.lower_bound(e.ymin - height[k]);
      const auto end = m.upper_bound(e.ymax);
      for (; it != end; ++it) {
        const std::size_t other = it->second;
        if (ext[other].ymax < e.ymin) continue;
        if (intersects(disks[idx], disks[other])) {
          add_pair(out, disks[idx].id, disks[other].id);
        }
      }
    }
    const std::size_t k = static_cast<std::size_t>(cls[idx] - lo_class);
    handle[idx] = active[k].emplace(e.ymin, idx);
    expiry.emplace(e.xmax, idx);
  }

  std::sort(out.begin(), out.end());
  return out;
}

PairList all_pairs_naive(std::span<const Disk> disks) {
  PairList out;
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      if (intersects(disks[i], disks[j])) {
        add_pair(out, disks[i].id, disks[j].id);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace diskdense
