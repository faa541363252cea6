#include <cmath>
#include <numbers>
#include <random>

#include "diskdense/error.hpp"
#include "diskdense/geom.hpp"
#include "diskdense/rng.hpp"

namespace diskdense {
namespace {

void check_radii(const GenerateParams& p) {
  if (!(p.rmin > 0.0)) fail(ErrorCode::kInvalidArgument, "rmin must be > 0");
  if (!(p.rmax >= p.rmin)) {
    fail(ErrorCode::kInvalidArgument, "rmax must be >= rmin");
  }
  if (!std::isfinite(p.rmax)) {
    fail(ErrorCode::kInvalidArgument, "rmax must be finite");
  }
}

double draw_radius(Rng& rng, const GenerateParams& p) {
  if (p.rmax == p.rmin) return p.rmin;
  return std::uniform_real_distribution<double>(p.rmin, p.rmax)(rng);
}

}  // namespace

Instance generate(const GenerateParams& p) {
  if (p.n < 1) fail(ErrorCode::kInvalidArgument, "n must be >= 1");
  Rng rng = make_rng(p.seed, streams::kGenerate);
  std::vector<Disk> disks;
  disks.reserve(p.n);

  switch (p.kind) {
    case GeneratorKind::kUniform: {
      check_radii(p);
      if (!(p.side > 0.0) || !std::isfinite(p.side)) {
        fail(ErrorCode::kInvalidArgument, "side must be positive and finite");
      }
      std::uniform_real_distribution<double> pos(0.0, p.side);
      for (std::size_t i = 0; i < p.n; ++i) {
        const double x = pos(rng);
        const double y = pos(rng);
        disks.push_back({static_cast<DiskId>(i), x, y, draw_radius(rng, p)});
      }
      break;
    }
    case GeneratorKind::kClustered: {
      check_radii(p);
      if (!(p.side > 0.0) || !std::isfinite(p.side)) {
        fail(ErrorCode::kInvalidArgument, "side must be positive and finite");
      }
      if (p.clusters < 1) {
        fail(ErrorCode::kInvalidArgument, "clusters must be >= 1");
      }
      if (!(p.spread > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "spread must be > 0");
      }
      std::uniform_real_distribution<double> pos(0.0, p.side);
      std::vector<std::pair<double, double>> centers(p.clusters);
      for (auto& c : centers) c = {pos(rng), pos(rng)};
      std::normal_distribution<double> jitter(0.0, p.spread);
      for (std::size_t i = 0; i < p.n; ++i) {
        const auto& c = centers[uniform_below(rng, centers.size())];
        const double x = c.first + jitter(rng);
        const double y = c.second + jitter(rng);
        disks.push_back({static_cast<DiskId>(i), x, y, draw_radius(rng, p)});
      }
      break;
    }
    case GeneratorKind::kClique: {
      if (!(p.radius > 0.0) || !std::isfinite(p.radius)) {
        fail(ErrorCode::kInvalidArgument, "radius must be positive and finite");
      }
      // Centers strictly inside the radius-r disk around the origin, so every
      // disk contains the origin.
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::size_t i = 0; i < p.n; ++i) {
        const double rho = 0.9 * p.radius * std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        disks.push_back({static_cast<DiskId>(i), rho * std::cos(theta),
                         rho * std::sin(theta), p.radius});
      }
      break;
    }
  }
  return Instance(to_string(p.kind) + "-" + std::to_string(p.n) + "-s" +
                      std::to_string(p.seed),
                  std::move(disks));
}

GeneratorKind parse_generator_kind(const std::string& s) {
  if (s == "uniform") return GeneratorKind::kUniform;
  if (s == "clustered") return GeneratorKind::kClustered;
  if (s == "clique") return GeneratorKind::kClique;
  fail(ErrorCode::kInvalidArgument, "unknown generator kind '" + s + "'");
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kUniform:
      return "uniform";
    case GeneratorKind::kClustered:
      return "clustered";
    case GeneratorKind::kClique:
      return "clique";
  }
  return "unknown";
}

}  // namespace diskdense
