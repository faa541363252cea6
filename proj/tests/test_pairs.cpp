#include <doctest.h>

#include <random>

#include "diskdense/pairs.hpp"
#include "diskdense/report.hpp"
#include "oracles.hpp"

using namespace diskdense;

namespace {

Instance mixed(std::size_t n, std::uint64_t seed) {
  GenerateParams g;
  g.n = n;
  g.seed = seed;
  g.kind = static_cast<GeneratorKind>(seed % 3);
  g.side = 2.0 * std::sqrt(static_cast<double>(n));
  g.rmin = 0.05;
  g.rmax = seed % 2 == 0 ? 1.0 : 6.0;
  g.radius = 0.5;
  return generate(g);
}

}  // namespace

TEST_CASE("small fixed cases") {
  CHECK(all_pairs(std::span<const Disk>()).empty());
  CHECK(all_pairs_naive(Instance("one", {{0, 1, 1, 1}})).empty());
  // Unit disks at mutual distance 2.
  const double h = std::sqrt(3.0);
  const Instance tri("tri", {{0, 0, 0, 1}, {1, 2, 0, 1}, {2, 1, h, 1}});
  const PairList expected_tri = oracle::pairs(tri.disks());
  CHECK(all_pairs(tri) == expected_tri);
  CHECK(all_pairs(tri).size() == 3);

  GenerateParams g;
  g.kind = GeneratorKind::kClique;
  g.n = 6;
  CHECK(all_pairs_naive(generate(g)).size() == 15);
  CHECK(all_pairs(generate(g)).size() == 15);

  const Instance containment("nest", {{0, 0, 0, 10}, {1, 1, 1, 0.5}, {2, -2, 3, 1}});
  CHECK(all_pairs(containment) == PairList{{0, 1}, {0, 2}});
}

TEST_CASE("exact tangency between unit disks on a lattice") {
  std::vector<Disk> disks;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      disks.push_back({static_cast<DiskId>(disks.size()), 2.0 * i, 2.0 * j, 1.0});
    }
  }
  const Instance lattice("lattice", disks);
  // 4-neighborhood on a 10x10 grid; diagonals are at distance 2 sqrt 2.
  CHECK(all_pairs(lattice).size() == 2 * 10 * 9);
  CHECK(all_pairs(lattice) == oracle::pairs(disks));
}

TEST_CASE("five-disk realization") {
  const Instance fig("five_disk", oracle::five_disk());
  const PairList p = all_pairs(fig);
  CHECK(p == oracle::pairs(fig.disks()));
  CHECK(p.size() == 6);
  std::size_t inside = 0;
  for (const auto& [u, v] : p) inside += (u < 4 && v < 4) ? 1 : 0;
  CHECK(inside == 5);
}

TEST_CASE("sweep equals naive scan on randomized instances") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + rng() % 600;
    const Instance inst = mixed(n, seed);
    const PairList got = all_pairs(inst);
    CHECK(got == all_pairs_naive(inst));
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
    for (const auto& [u, v] : got) CHECK(u < v);
  }
  // First few also against the exact-arithmetic oracle.
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Instance inst = mixed(300, 100 + seed);
    CHECK(all_pairs(inst) == oracle::pairs(inst.disks()));
  }
}

TEST_CASE("sweep works on subsets with sparse ids") {
  const Instance inst = mixed(400, 2);
  std::vector<DiskId> even;
  for (DiskId i = 0; i < 400; i += 2) even.push_back(i);
  const auto sub = inst.select(even);
  CHECK(all_pairs(sub) == all_pairs_naive(sub));
}

TEST_CASE("pair count is half the degree sum") {
  const Instance inst = mixed(500, 7);
  const ReportIndex index(inst.disks());
  std::size_t sum = 0;
  for (const Disk& d : inst.disks()) sum += index.degree(d);
  CHECK(sum == 2 * all_pairs(inst).size());
}
