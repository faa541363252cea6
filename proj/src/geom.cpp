#include "diskdense/geom.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>

#include "diskdense/error.hpp"

namespace diskdense {
namespace {

constexpr double kTieRelativeMargin = 1e-12;

// RAII holder for a GMP rational.
class Mpq {
 public:
  Mpq() { mpq_init(v_); }
  explicit Mpq(double d) : Mpq() { mpq_set_d(v_, d); }
  ~Mpq() { mpq_clear(v_); }
  Mpq(const Mpq&) = delete;
  Mpq& operator=(const Mpq&) = delete;

  mpq_ptr get() noexcept { return v_; }

 private:
  mpq_t v_;
};

bool intersects_exact(const Disk& a, const Disk& b) {
  Mpq dx(a.cx), dy(a.cy), rs(a.r), t;
  mpq_set_d(t.get(), b.cx);
  mpq_sub(dx.get(), dx.get(), t.get());
  mpq_set_d(t.get(), b.cy);
  mpq_sub(dy.get(), dy.get(), t.get());
  mpq_set_d(t.get(), b.r);
  mpq_add(rs.get(), rs.get(), t.get());

  Mpq lhs, sq;
  mpq_mul(lhs.get(), dx.get(), dx.get());
  mpq_mul(sq.get(), dy.get(), dy.get());
  mpq_add(lhs.get(), lhs.get(), sq.get());
  mpq_mul(sq.get(), rs.get(), rs.get());
  return mpq_cmp(lhs.get(), sq.get()) <= 0;
}

}  // namespace

bool intersects(const Disk& a, const Disk& b) noexcept {
  const double dx = a.cx - b.cx;
  const double dy = a.cy - b.cy;
  const double rs = a.r + b.r;
  const double lhs = dx * dx + dy * dy;
  const double rhs = rs * rs;
  if (std::abs(lhs - rhs) > kTieRelativeMargin * std::max(lhs, rhs)) {
    return lhs < rhs;
  }
  return intersects_exact(a, b);
}

void validate_disk(const Disk& d) {
  if (!std::isfinite(d.cx) || !std::isfinite(d.cy) || !std::isfinite(d.r)) {
    fail(ErrorCode::kInvalidArgument,
         "disk " + std::to_string(d.id) + ": non-finite value");
  }
  if (!(d.r > 0.0)) {
    fail(ErrorCode::kInvalidArgument,
         "disk " + std::to_string(d.id) + ": radius must be positive");
  }
}

Instance::Instance(std::string name, std::vector<Disk> disks)
    : name_(std::move(name)), disks_(std::move(disks)) {
  std::sort(disks_.begin(), disks_.end(),
            [](const Disk& a, const Disk& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < disks_.size(); ++i) {
    validate_disk(disks_[i]);
    if (i > 0 && disks_[i].id == disks_[i - 1].id) {
      fail(ErrorCode::kInvalidArgument,
           "duplicate disk id " + std::to_string(disks_[i].id));
    }
    if (disks_[i].id != i) {
      fail(ErrorCode::kInvalidArgument,
           "disk ids must be 0..n-1; missing id " + std::to_string(i));
    }
  }
}

std::vector<Disk> Instance::select(std::span<const DiskId> ids) const {
  std::vector<Disk> out;
  out.reserve(ids.size());
  for (DiskId id : ids) {
    if (id >= disks_.size()) {
      fail(ErrorCode::kOutOfRange, "disk id " + std::to_string(id) +
                                       " not in instance");
    }
    out.push_back(disks_[id]);
  }
  return out;
}

}  // namespace diskdense
