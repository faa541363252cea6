#include <doctest.h>

#include <cmath>
#include <random>

#include "diskdense/error.hpp"
#include "diskdense/report.hpp"
#include "oracles.hpp"

using namespace diskdense;

namespace {

Instance uniform(std::size_t n, std::uint64_t seed, double rmax = 1.0, double side = 10.0) {
  GenerateParams g;
  g.n = n;
  g.seed = seed;
  g.side = side;
  g.rmin = 0.05;
  g.rmax = rmax;
  return generate(g);
}

Instance clique(std::size_t n) {
  GenerateParams g;
  g.kind = GeneratorKind::kClique;
  g.n = n;
  return generate(g);
}

}  // namespace

TEST_CASE("trivial indexes") {
  const Instance one("one", {{0, 3, 4, 1}});
  const ReportIndex idx(one.disks());
  const ReportOutcome r = idx.report(one[0]);
  REQUIRE(r.is_full());
  CHECK(r.ids() == std::vector<DiskId>{0});
  CHECK(idx.degree(one[0]) == 0);
  CHECK(idx.report({9, 100, 100, 1}).ids().empty());
  CHECK_THROWS_AS(idx.degree({5, 0, 0, 1}), Error);

  const Instance k = clique(10);
  const ReportIndex kidx(k.disks());
  CHECK(kidx.report(k[3]).ids().size() == 10);
  CHECK(kidx.report(k[3], 4).is_overflow());
  CHECK(kidx.report(k[3], 4).count_seen() == 5);
  CHECK(kidx.report(k[3], 10).is_full());
  CHECK(kidx.degree(k[0]) == 9);
}

TEST_CASE("reports equal the exact filter") {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Instance inst = uniform(300, seed, seed % 2 ? 4.0 : 1.0);
    const ReportIndex idx(inst.disks());
    std::uniform_real_distribution<double> pos(-2, 12), rad(0.01, 5);
    for (int i = 0; i < 50; ++i) {
      const Disk q = i % 2 ? inst[rng() % inst.size()] : Disk{999, pos(rng), pos(rng), rad(rng)};
      const auto expected = oracle::hits(inst.disks(), q);
      const ReportOutcome full = idx.report(q);
      REQUIRE(full.is_full());
      CHECK(full.ids() == expected);
      CHECK(idx.count(q) == expected.size());
      // Abort only when strictly exceeding the limit.
      CHECK(idx.report(q, expected.size()).is_full());
      CHECK(idx.report(q, expected.size()).ids() == expected);
      if (!expected.empty()) {
        CHECK(idx.report(q, expected.size() - 1).is_overflow());
        CHECK(idx.count(q, expected.size() - 1) == expected.size());
      }
    }
    const auto deg = oracle::degrees(inst.disks());
    for (const Disk& d : inst.disks()) CHECK(idx.degree(d) == deg[d.id]);
  }
}

TEST_CASE("bucketing does not change results") {
  // Wildly mixed radii hit several radius classes; subsets hit the flat path.
  std::mt19937_64 rng(3);
  std::vector<Disk> disks;
  std::uniform_real_distribution<double> pos(0, 50), expo(-6, 5);
  for (DiskId i = 0; i < 800; ++i) disks.push_back({i, pos(rng), pos(rng), std::exp2(expo(rng))});
  const Instance inst("mixed", disks);
  const ReportIndex big(inst.disks());
  CHECK(big.classes().size() >= 8);
  std::size_t members = 0;
  for (const auto& c : big.classes()) members += c.members;
  CHECK(members == inst.size());
  for (std::size_t size : {1u, 5u, 24u, 25u, 200u}) {
    std::vector<Disk> sub(disks.begin(), disks.begin() + size);
    const ReportIndex idx(sub);
    for (int i = 0; i < 40; ++i) {
      const Disk q{0, pos(rng), pos(rng), std::exp2(expo(rng))};
      CHECK(idx.report(q).ids() == oracle::hits(sub, q));
    }
  }
  for (int i = 0; i < 200; ++i) {
    const Disk q{0, pos(rng), pos(rng), std::exp2(expo(rng))};
    CHECK(big.report(q).ids() == oracle::hits(disks, q));
  }
}

TEST_CASE("coincident centers collapse to one cell") {
  std::vector<Disk> disks;
  for (DiskId i = 0; i < 40; ++i) disks.push_back({i, 1.0, 1.0, 0.5});
  const ReportIndex idx(disks);
  CHECK(idx.report({0, 1.0, 1.0, 0.1}).ids().size() == 40);
  CHECK(idx.report({0, 5.0, 1.0, 0.1}).ids().empty());
}

TEST_CASE("cells inspected per class stay within the grid bound") {
  const Instance inst = uniform(5000, 1, 1.0, 100.0);
  const ReportIndex idx(inst.disks());
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> pos(0, 100), rad(0.01, 3);
  for (int i = 0; i < 200; ++i) {
    const Disk q{0, pos(rng), pos(rng), rad(rng)};
    ReportIndex::QueryStats stats;
    idx.count_with_stats(q, stats);
    double bound = 0.0;
    for (const auto& c : idx.classes()) {
      const double s = c.cell_side;
      bound += std::pow((q.r + s + s) / s + 2.0, 2.0) + 4.0;
    }
    CHECK(static_cast<double>(stats.cells_visited) <= bound);
  }
}
