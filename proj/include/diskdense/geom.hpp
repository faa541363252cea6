#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace diskdense {

using DiskId = std::uint32_t;

/// A closed disk in the plane. Two disks intersect when they share at least
/// one point, so tangency and containment both count.
struct Disk {
  DiskId id = 0;
  double cx = 0.0;
  double cy = 0.0;
  double r = 1.0;

  friend bool operator==(const Disk&, const Disk&) = default;
};

/// True iff |c_a - c_b|^2 <= (r_a + r_b)^2. Near-tangent inputs, where the
/// floating-point margin is below a relative 1e-12, are decided exactly.
bool intersects(const Disk& a, const Disk& b) noexcept;

/// An ordered set of disks with ids 0..n-1 (disk i has id i).
class Instance {
 public:
  Instance() = default;

  /// Accepts disks in any order; they are sorted by id. Throws on duplicate
  /// or non-dense ids, non-finite coordinates, or r <= 0.
  Instance(std::string name, std::vector<Disk> disks);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Disk>& disks() const noexcept { return disks_; }
  std::size_t size() const noexcept { return disks_.size(); }
  bool empty() const noexcept { return disks_.empty(); }
  const Disk& operator[](std::size_t i) const { return disks_[i]; }

  /// Disks whose ids are listed, keeping their original ids.
  std::vector<Disk> select(std::span<const DiskId> ids) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::string name_;
  std::vector<Disk> disks_;
};

void validate_disk(const Disk& d);

enum class GeneratorKind { kUniform, kClustered, kClique };

struct GenerateParams {
  GeneratorKind kind = GeneratorKind::kUniform;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  // uniform / clustered: centers in [0, side]^2, radii in [rmin, rmax].
  double side = 10.0;
  double rmin = 0.5;
  double rmax = 1.0;
  // clustered: number of cluster centers and gaussian spread around them.
  std::size_t clusters = 4;
  double spread = 1.0;
  // clique: every disk has radius `radius` and contains the origin.
  double radius = 1.0;
};

/// Deterministic for a fixed seed.
Instance generate(const GenerateParams& params);

GeneratorKind parse_generator_kind(const std::string& s);
std::string to_string(GeneratorKind kind);

// Text format: one "id,cx,cy,r" per line, '#' lines are comments. The
// writer emits a "# name: <label>" comment that the reader picks up.
Instance read_instance(const std::filesystem::path& path);
Instance parse_instance(const std::string& text, std::string name);
void write_instance(const Instance& inst, const std::filesystem::path& path);
std::string format_instance(const Instance& inst);

}  // namespace diskdense
