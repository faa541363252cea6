// Acceptance suite: one PASS/FAIL line per criterion. Exit status is
// nonzero when any blocking criterion fails; the scaling check (10) is
// informational only.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "diskdense/approx1.hpp"
#include "diskdense/approx2.hpp"
#include "diskdense/audit.hpp"
#include "diskdense/density.hpp"
#include "diskdense/pairs.hpp"
#include "diskdense/sampletree.hpp"
#include "oracles.hpp"

using namespace diskdense;

namespace {

using Clock = std::chrono::steady_clock;
using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

// Pinned tolerances and budgets.
constexpr double kC1Seconds = 60.0;
constexpr double kC2Seconds = 60.0;
constexpr double kC4Seconds = 300.0;
constexpr double kC4MinInside = 0.95;
constexpr double kC5Seconds = 60.0;
constexpr double kC6Seconds = 300.0;
constexpr double kC6MinGood = 0.95;
constexpr double kC7Seconds = 600.0;
constexpr double kC7MinGood = 0.90;
constexpr double kC8Seconds = 120.0;
constexpr double kC8Sigmas = 4.0;
constexpr double kC9Seconds = 120.0;
constexpr double kC9MinGood = 0.95;
constexpr double kC10MaxGrowth = 2.6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  bool blocking;
  std::function<Outcome()> run;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExplicitGraph graph_of(const Instance& inst) {
  const PairList p = all_pairs(inst);
  const EdgeList e(p.begin(), p.end());
  return ExplicitGraph(inst.size(), e);
}

Instance uniform(std::size_t n, std::uint64_t seed, double side, double rmin, double rmax) {
  GenerateParams g;
  g.n = n;
  g.seed = seed;
  g.side = side;
  g.rmin = rmin;
  g.rmax = rmax;
  return generate(g);
}

Instance clique(std::size_t n, std::uint64_t seed = 0) {
  GenerateParams g;
  g.kind = GeneratorKind::kClique;
  g.n = n;
  g.seed = seed;
  return generate(g);
}

Outcome oracle_agreement() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240101);
  int agree = 0;
  const int graphs = 200;
  for (int i = 0; i < graphs; ++i) {
    const std::size_t n = 1 + rng() % 16;
    const double p = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const auto raw = oracle::random_graph(n, p, rng);
    const EdgeList e(raw.begin(), raw.end());
    const ExplicitGraph g(n, e);
    const DensityResult exact = exact_densest(g, TieBreak::kLexMin);
    const DensityResult brute = brute_densest(g);
    agree += (exact.density == brute.density && exact.subset == brute.subset) ? 1 : 0;
  }
  const double secs = seconds_since(t0);
  return {agree == graphs && secs < kC1Seconds,
          fmt("%d/%d graphs agree on density and subset, %.1f s (limit %.0f s)", agree,
              graphs, secs, kC1Seconds)};
}

Outcome pair_enumeration() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  int agree = 0;
  const int instances = 100;
  std::size_t total_pairs = 0;
  for (int i = 0; i < instances; ++i) {
    GenerateParams g;
    g.n = 1 + rng() % 2000;
    g.seed = rng();
    g.kind = static_cast<GeneratorKind>(i % 3);
    g.side = std::uniform_real_distribution<double>(5, 80)(rng);
    g.rmin = std::uniform_real_distribution<double>(0.01, 0.5)(rng);
    g.rmax = g.rmin * std::uniform_real_distribution<double>(1, 40)(rng);
    g.radius = std::uniform_real_distribution<double>(0.1, 3)(rng);
    g.spread = std::uniform_real_distribution<double>(0.5, 5)(rng);
    const Instance inst = generate(g);
    const PairList fast = all_pairs(inst);
    total_pairs += fast.size();
    agree += fast == all_pairs_naive(inst) ? 1 : 0;
  }
  const double secs = seconds_since(t0);
  return {agree == instances && secs < kC2Seconds,
          fmt("%d/%d instances identical (%zu pairs total), %.1f s (limit %.0f s)", agree,
              instances, total_pairs, secs, kC2Seconds)};
}

Outcome five_disk_regression() {
  const Instance inst("five_disk", oracle::five_disk());
  const DensityResult r = exact_densest(graph_of(inst));
  const bool ok = r.density == Rational(5, 4) &&
                  r.subset == std::vector<std::uint32_t>{0, 1, 2, 3};
  std::string ids;
  for (auto v : r.subset) ids += std::string(1, static_cast<char>('a' + v));
  return {ok, fmt("density %s, subset {%s} (expected 5/4, {abcd})",
                  r.density->to_string().c_str(), ids.c_str())};
}

Outcome sampler_accuracy() {
  const auto t0 = Clock::now();
  const Instance k = clique(4096);
  const Instance u = uniform(4096, 3, 10, 0.5, 1.0);
  const auto u_hits = [&] {
    std::vector<std::size_t> beta(u.size());
    const auto deg = oracle::degrees(u.disks());
    for (std::size_t i = 0; i < u.size(); ++i) beta[i] = deg[i] + 1;
    return beta;
  }();
  bool ok = true;
  std::string detail;
  // The tree accepts eps in the open interval (0, 1/2); the upper trial uses
  // the largest admissible value, whose window is marginally tighter.
  for (double eps : {0.25, std::nextafter(0.5, 0.0)}) {
    const int trials = 1000;
    int inside = 0;
    int used = 0;
    int sampled = 0;
    Rng pick(static_cast<std::uint64_t>(eps * 1000 + 0.5));
    for (int t = 0; t < trials; ++t) {
      const bool on_clique = t % 2 == 0;
      const Instance& inst = on_clique ? k : u;
      const SampleTree tree(inst.disks(), 2.0, derive_seed(t, "acceptance-tree", static_cast<std::uint64_t>(eps * 100 + 0.5)));
      DiskId q = 0;
      std::size_t beta = 0;
      for (int attempt = 0; attempt < 10000; ++attempt) {
        q = static_cast<DiskId>(uniform_below(pick, inst.size()));
        beta = on_clique ? inst.size() : u_hits[q];
        if (static_cast<double>(beta) >= tree.psi_eps(eps)) break;
        beta = 0;
      }
      if (beta == 0) continue;
      ++used;
      Rng rng = make_rng(t, streams::kQueries, static_cast<std::uint64_t>(eps * 100 + 0.5));
      const EstimateSample a = tree.approx_count(inst[q], eps, rng);
      sampled += a.level > 0 ? 1 : 0;
      const double est = static_cast<double>(a.estimate);
      inside += (est >= (1 - eps) * beta && est <= (1 + eps) * beta) ? 1 : 0;
    }
    const double frac = used ? static_cast<double>(inside) / used : 0.0;
    ok = ok && used >= 1000 && frac >= kC4MinInside;
    detail += fmt("eps=%.17g: %d/%d trials inside (%.3f, need %.2f; %d answered below the "
                  "root); ",
                  eps, inside, used, frac, kC4MinInside, sampled);
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < kC4Seconds;
  return {ok, detail + fmt("%.1f s (limit %.0f s)", secs, kC4Seconds)};
}

Outcome sampler_uniformity() {
  const auto t0 = Clock::now();
  AuditParams p;
  p.eps = 0.25;
  p.c = 2.0;
  p.draws = 10000;
  p.seed = 5;
  p.queries = {0};
  const nlohmann::json report = audit_sampler(clique(64), p);
  const auto& q = report["queries"][0];
  const double tv = q["tv_distance"].get<double>();
  const double bound = 0.25 + 3.0 * std::sqrt(std::log(64.0) / 1e4);
  const double secs = seconds_since(t0);
  return {tv <= bound && secs < kC5Seconds,
          fmt("TV %.4f vs bound %.4f over %d draws, %.1f s (limit %.0f s)", tv, bound, 10000,
              secs, kC5Seconds)};
}

Outcome ratio_2eps() {
  const auto t0 = Clock::now();
  const int runs = 50;
  int good = 0;
  double worst = 1e9;
  for (int i = 0; i < runs; ++i) {
    const Instance inst = uniform(100, 6000 + i, 10, 0.5, 1.0);
    Approx2Params p;
    p.eps = 0.5;
    p.seed = i;
    const DensityResult r = densest_disks_2eps(inst, p);
    const DensityResult opt = exact_densest(graph_of(inst), TieBreak::kAny);
    const double ratio = r.density->to_double() / opt.density->to_double();
    worst = std::min(worst, ratio);
    good += ratio >= 1.0 / 2.5 ? 1 : 0;
  }
  const double secs = seconds_since(t0);
  return {good >= kC6MinGood * runs && secs < kC6Seconds,
          fmt("%d/%d runs >= opt/2.5 (need %.0f%%), worst ratio %.3f, %.1f s (limit %.0f s)",
              good, runs, kC6MinGood * 100, worst, secs, kC6Seconds)};
}

Outcome ratio_1eps() {
  const auto t0 = Clock::now();
  const int runs = 50;
  int good = 0;
  int sparse = 0;
  int sparse_exact = 0;
  double worst = 1e9;
  for (int i = 0; i < runs; ++i) {
    const Instance inst = uniform(200, 7000 + i, 10, 5.0, 7.0);
    Approx1Params p;
    p.eps = 0.5;
    p.seed = i;
    const DensityResult r = densest_disks_1eps(inst, p);
    const Rational opt = *exact_densest(graph_of(inst), TieBreak::kAny).density;
    const double ratio = r.density->to_double() / opt.to_double();
    worst = std::min(worst, ratio);
    good += ratio >= 1.0 - p.eps ? 1 : 0;
    if (r.diagnostics["path"] == "sparse") {
      ++sparse;
      sparse_exact += *r.density == opt ? 1 : 0;
    }
  }
  const double secs = seconds_since(t0);
  return {good >= kC7MinGood * runs && sparse_exact == sparse && secs < kC7Seconds,
          fmt("%d/%d runs >= (1-eps) opt (need %.0f%%), worst ratio %.3f, %d sampled / %d "
              "sparse (%d sparse exact), %.1f s (limit %.0f s)",
              good, runs, kC7MinGood * 100, worst, runs - sparse, sparse, sparse_exact, secs,
              kC7Seconds)};
}

Outcome edge_calibration() {
  const auto t0 = Clock::now();
  const Instance inst("star", oracle::star(20));
  const double eps = 0.25;
  const std::size_t draws = 100000;
  const double p = 1.0 / 20;
  const double sigma = std::sqrt(draws * p * (1 - p));
  const double lo = (1 - eps) * p * draws - kC8Sigmas * sigma;
  const double hi = (1 + eps) * p * draws + kC8Sigmas * sigma;
  bool ok = true;
  std::string detail;
  // Default cutoff (every disk small, exact neighbor lists) and a low cutoff
  // that sends the hub through the tree.
  for (double c_prime : {32.0, 2.0}) {
    const SampleTree tree(inst.disks(), 2.0, derive_seed(1, streams::kTreeBuild));
    Rng rng = make_rng(1, streams::kQueries);
    const DegreeTable t = estimate_degrees(inst, tree, eps, 2.0, c_prime, rng);
    const EdgeSample s = sample_edges(inst, t, tree, draws, eps, 2.0, 1);
    std::map<Pair, std::size_t> counts;
    for (const auto& e : s.edges) ++counts[e];
    std::size_t mn = draws, mx = 0;
    for (DiskId leaf = 1; leaf <= 20; ++leaf) {
      const std::size_t c = counts[{0, leaf}];
      mn = std::min(mn, c);
      mx = std::max(mx, c);
    }
    const bool this_ok = counts.size() == 20 && mn >= lo && mx <= hi;
    ok = ok && this_ok;
    detail += fmt("c'=%g (hub %s): counts in [%zu, %zu]; ", c_prime,
                  t.is_small(0) ? "exact" : "tree", mn, mx);
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < kC8Seconds;
  return {ok, detail + fmt("allowed [%.0f, %.0f], %.1f s (limit %.0f s)", lo, hi, secs,
                           kC8Seconds)};
}

Outcome degree_accuracy() {
  const auto t0 = Clock::now();
  const Instance inst = uniform(2000, 1, 10, 0.5, 1.0);
  const auto deg = oracle::degrees(inst.disks());
  const double eps = 0.25;
  const int runs = 20;
  int good = 0;
  double worst_overall = 0.0;
  std::size_t small = 0;
  for (int seed = 0; seed < runs; ++seed) {
    const DegreeTable t = estimate_degrees(inst, eps, 2.0, 32.0, seed);
    double worst = 0.0;
    for (DiskId i = 0; i < inst.size(); ++i) {
      if (deg[i] == 0) continue;
      worst = std::max(worst, std::abs(static_cast<double>(t.weight(i)) - deg[i]) / deg[i]);
    }
    small += t.small_count();
    worst_overall = std::max(worst_overall, worst);
    good += worst <= eps / 4 ? 1 : 0;
  }
  const double secs = seconds_since(t0);
  return {good >= kC9MinGood * runs && secs < kC9Seconds,
          fmt("%d/%d runs with max relative error <= %.4f (worst %.4f; %.0f%% of disks on "
              "the exact small-degree branch), %.1f s (limit %.0f s)",
              good, runs, eps / 4, worst_overall,
              100.0 * small / (runs * inst.size()), secs, kC9Seconds)};
}

Outcome soft_scaling() {
  std::vector<double> times;
  std::string detail;
  for (std::size_t n : {10000u, 20000u, 40000u}) {
    const Instance inst = uniform(n, 1, std::sqrt(static_cast<double>(n)) * 1.5, 0.5, 1.0);
    Approx1Params p;
    p.eps = 0.5;
    std::vector<double> reps;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = Clock::now();
      densest_disks_1eps(inst, p);
      reps.push_back(seconds_since(t0));
    }
    std::sort(reps.begin(), reps.end());
    times.push_back(reps[2]);
    detail += fmt("n=%zu %.3f s; ", n, reps[2]);
  }
  const double g1 = times[1] / times[0];
  const double g2 = times[2] / times[1];
  return {g1 <= kC10MaxGrowth && g2 <= kC10MaxGrowth,
          detail + fmt("growth %.2f, %.2f per doubling (target <= %.1f)", g1, g2,
                       kC10MaxGrowth)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "oracle agreement", true, oracle_agreement},
      {2, "pair enumeration", true, pair_enumeration},
      {3, "five-disk regression", true, five_disk_regression},
      {4, "sampler estimate accuracy", true, sampler_accuracy},
      {5, "sampler uniformity", true, sampler_uniformity},
      {6, "(2+eps) ratio", true, ratio_2eps},
      {7, "(1+eps) ratio", true, ratio_1eps},
      {8, "edge-sample calibration", true, edge_calibration},
      {9, "degree-estimation accuracy", true, degree_accuracy},
      {10, "soft scaling (informational)", false, soft_scaling},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  int blocking_failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const char* tag = o.pass ? "PASS" : (c.blocking ? "FAIL" : "WARN");
    std::printf("[%s] criterion %d, %s: %s\n", tag, c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && c.blocking) ++blocking_failures;
  }
  return blocking_failures == 0 ? 0 : 1;
}
