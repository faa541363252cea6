#include "diskdense/sampletree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "diskdense/error.hpp"

namespace diskdense {
namespace {

unsigned ceil_log2(std::size_t n) {
  return n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
}

// count > threshold  <=>  count > floor(threshold) for integer counts.
std::size_t limit_for(double threshold) {
  return threshold <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(threshold));
}

}  // namespace

SampleTree::SampleTree(std::span<const Disk> disks, double c, std::uint64_t seed)
    : n_(disks.size()), depth_(ceil_log2(disks.size())), c_(c) {
  if (disks.empty()) {
    fail(ErrorCode::kInvalidArgument, "sample tree needs at least one disk");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    fail(ErrorCode::kInvalidArgument, "confidence constant c must be > 0");
  }
  log_n_ = std::log(static_cast<double>(std::max<std::size_t>(n_, 2)));

  Rng rng(seed);
  const std::uint64_t mask =
      depth_ == 0 ? 0 : (depth_ >= 64 ? ~0ULL : ((1ULL << depth_) - 1));
  std::vector<std::uint64_t> bits(n_);
  for (std::size_t i = 0; i < n_; ++i) bits[i] = rng() & mask;

  bits_.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) bits_.emplace_back(disks[i].id, bits[i]);
  std::sort(bits_.begin(), bits_.end());

  levels_.resize(depth_ + 1);
  slots_.resize(depth_ + 1);
  std::vector<std::size_t> order(n_);
  for (unsigned level = 0; level <= depth_; ++level) {
    const std::uint64_t level_mask = level == 0 ? 0 : ((1ULL << level) - 1);
    slots_[level].assign(std::size_t{1} << level, -1);
    for (std::size_t i = 0; i < n_; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto pa = bits[a] & level_mask;
      const auto pb = bits[b] & level_mask;
      return pa != pb ? pa < pb : disks[a].id < disks[b].id;
    });
    std::size_t start = 0;
    while (start < n_) {
      const std::uint64_t prefix = bits[order[start]] & level_mask;
      std::size_t stop = start;
      std::vector<Disk> members;
      while (stop < n_ && (bits[order[stop]] & level_mask) == prefix) {
        members.push_back(disks[order[stop]]);
        ++stop;
      }
      Node node;
      node.level = level;
      node.prefix = prefix;
      node.members.reserve(members.size());
      for (const Disk& d : members) node.members.push_back(d.id);
      node.index = ReportIndex(members);
      const auto idx = static_cast<std::uint32_t>(nodes_.size());
      nodes_.push_back(std::move(node));
      levels_[level].push_back(idx);
      slots_[level][prefix] = static_cast<std::int32_t>(idx);
      start = stop;
    }
  }
}

double SampleTree::psi() const noexcept { return c_ * log_n_; }

double SampleTree::psi_eps(double eps) const {
  return c_ * log_n_ / (eps * eps);
}

std::optional<std::uint32_t> SampleTree::slot_node(unsigned level,
                                                   std::uint64_t slot) const {
  if (level > depth_ || slot >= slots_[level].size()) return std::nullopt;
  const std::int32_t idx = slots_[level][slot];
  if (idx < 0) return std::nullopt;
  return static_cast<std::uint32_t>(idx);
}

std::uint64_t SampleTree::bits_of(DiskId id) const {
  auto it = std::lower_bound(bits_.begin(), bits_.end(),
                             std::make_pair(id, std::uint64_t{0}));
  if (it == bits_.end() || it->first != id) {
    fail(ErrorCode::kInvalidArgument,
         "disk " + std::to_string(id) + " is not in the tree");
  }
  return it->second;
}

std::size_t SampleTree::path_count(unsigned level, const Disk& q,
                                   std::size_t limit) const {
  const auto node = path_node(level);
  return node ? nodes_[*node].index.count(q, limit) : 0;
}

EstimateSample SampleTree::exact_root(const Disk& q, Rng& rng, bool draw,
                                      bool fallback) const {
  EstimateSample out;
  out.exact = true;
  out.fallback = fallback;
  out.level = 0;
  if (!draw) {
    out.estimate = nodes_[0].index.count(q);
    return out;
  }
  const ReportOutcome s = nodes_[0].index.report(q);
  out.estimate = s.ids().size();
  if (!s.ids().empty()) out.sample = s.ids()[uniform_below(rng, s.ids().size())];
  return out;
}

EstimateSample SampleTree::run(const Disk& q, double eps, Rng& rng,
                               bool draw) const {
  if (!(eps > 0.0 && eps < 0.5)) {
    fail(ErrorCode::kInvalidArgument, "eps must lie in (0, 1/2)");
  }
  const std::size_t psi_limit = limit_for(psi());
  const std::size_t psi_eps_limit = limit_for(psi_eps(eps));

  auto exceeds = [&](unsigned level, std::size_t limit) {
    return path_count(level, q, limit) > limit;
  };

  // Deepest i on the path with |q n D(u_i)| > psi.
  unsigned j = 0;
  if (exceeds(0, psi_limit)) {
    unsigned lo = 0;
    unsigned hi = depth_;
    while (lo < hi) {
      const unsigned mid = (lo + hi + 1) / 2;
      if (exceeds(mid, psi_limit)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    // Walk up to the deepest j <= i with |q n D(u_j)| > psi_eps.
    for (unsigned t = lo + 1; t-- > 0;) {
      if (exceeds(t, psi_eps_limit)) {
        j = t;
        break;
      }
    }
  }
  if (j == 0) return exact_root(q, rng, draw, false);

  const std::uint64_t slots = std::uint64_t{1} << j;
  for (unsigned attempt = 0; attempt < kMaxSlotDraws; ++attempt) {
    const auto node = slot_node(j, uniform_below(rng, slots));
    if (!node) continue;
    const ReportIndex& index = nodes_[*node].index;
    EstimateSample out;
    out.level = j;
    if (draw) {
      const ReportOutcome s = index.report(q);
      if (s.ids().empty()) continue;
      out.estimate = slots * s.ids().size();
      out.sample = s.ids()[uniform_below(rng, s.ids().size())];
    } else {
      const std::size_t k = index.count(q);
      if (k == 0) continue;
      out.estimate = slots * k;
    }
    return out;
  }
  return exact_root(q, rng, draw, true);
}

EstimateSample SampleTree::query(const Disk& q, double eps, Rng& rng) const {
  return run(q, eps, rng, true);
}

EstimateSample SampleTree::approx_count(const Disk& q, double eps,
                                        Rng& rng) const {
  return run(q, eps, rng, false);
}

std::optional<DiskId> SampleTree::sample_excluding(const Disk& q, DiskId self_id,
                                                   double eps, Rng& rng,
                                                   unsigned max_retries) const {
  for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
    const EstimateSample s = query(q, eps, rng);
    if (!s.sample) return std::nullopt;
    if (*s.sample != self_id) return s.sample;
    if (s.exact && s.estimate == 1) return std::nullopt;
  }
  const ReportOutcome all = nodes_[0].index.report(q);
  std::vector<DiskId> others;
  others.reserve(all.ids().size());
  for (DiskId id : all.ids()) {
    if (id != self_id) others.push_back(id);
  }
  if (others.empty()) return std::nullopt;
  return others[uniform_below(rng, others.size())];
}

}  // namespace diskdense
