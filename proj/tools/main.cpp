// diskdense command-line front end. Talks to the library only through the
// C interface in diskdense/diskdense.h.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskdense/diskdense.h"

namespace {

using nlohmann::json;

constexpr const char* kSchema = "disk-dense/1";
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int exit_code;
  std::string message;
};

void check(dd_status s) {
  if (s == DD_OK) return;
  throw Failure{s == DD_ERR_RUNTIME ? kExitRuntime : kExitUsage,
                std::string(dd_status_name(s)) + ": " + dd_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw Failure{kExitUsage, msg}; }

struct InstanceDeleter {
  void operator()(dd_instance* p) const { dd_instance_destroy(p); }
};
struct ResultDeleter {
  void operator()(dd_result* p) const { dd_result_destroy(p); }
};
struct PairsDeleter {
  void operator()(dd_pairs* p) const { dd_pairs_destroy(p); }
};
struct TreeDeleter {
  void operator()(dd_tree* p) const { dd_tree_destroy(p); }
};
using InstancePtr = std::unique_ptr<dd_instance, InstanceDeleter>;
using ResultPtr = std::unique_ptr<dd_result, ResultDeleter>;
using PairsPtr = std::unique_ptr<dd_pairs, PairsDeleter>;
using TreePtr = std::unique_ptr<dd_tree, TreeDeleter>;

std::string take_string(char* s) {
  std::string out(s);
  dd_string_free(s);
  return out;
}

InstancePtr load(const std::string& path) {
  dd_instance* raw = nullptr;
  check(dd_instance_read(path.c_str(), &raw));
  return InstancePtr(raw);
}

struct Common {
  std::string out;
  bool timings = false;
};

void write_text(const Common& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(common.out, std::ios::binary);
  if (!f) throw Failure{kExitUsage, "cannot open output file " + common.out};
  f << text;
  if (!f) throw Failure{kExitRuntime, "write failed for " + common.out};
}

json record(const std::string& command, const dd_instance* inst) {
  json r;
  r["schema"] = kSchema;
  r["command"] = command;
  if (inst) {
    r["instance"] = {{"name", dd_instance_name(inst)}, {"n", dd_instance_size(inst)}};
  } else {
    r["instance"] = nullptr;
  }
  return r;
}

void emit(const Common& common, const json& rec) { write_text(common, rec.dump(2) + "\n"); }

// Wraps a DensityResult into a RunRecord.
json result_record(const std::string& command, const dd_instance* inst,
                   const dd_result* res, bool timings) {
  char* text = nullptr;
  check(dd_result_json(res, timings ? 1 : 0, &text));
  json result = json::parse(take_string(text));
  json rec = record(command, inst);
  rec["parameters"] = result.value("parameters", json::object());
  rec["diagnostics"] = result.value("diagnostics", json::object());
  if (timings && result.contains("timings")) rec["timings"] = result["timings"];
  rec["result"] = std::move(result);
  return rec;
}

dd_disk parse_disk(const std::string& text) {
  dd_disk d{0, 0.0, 0.0, 0.0};
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &d.cx, &d.cy, &d.r, &tail) != 3) {
    usage("query must be \"cx,cy,r\", got \"" + text + "\"");
  }
  return d;
}

dd_disk resolve_query(const dd_instance* inst, const std::string& query,
                      const std::optional<std::uint32_t>& query_id) {
  if (query_id) {
    dd_disk d;
    check(dd_instance_get_disk(inst, *query_id, &d));
    return d;
  }
  if (query.empty()) usage("pass --query cx,cy,r or --query-id ID");
  return parse_disk(query);
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      usage("bad size \"" + item + "\"");
    }
    if (used != item.size() || !(v >= 2.0) || v != std::floor(v)) {
      usage("sizes must be integers >= 2, got \"" + item + "\"");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) usage("--n needs at least one size");
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densest subsets of disk intersection graphs"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Write output to this file instead of stdout");
    sub->add_flag("--timings", common.timings, "Include per-phase wall times");
  };

  std::string instance_path;
  double eps = 0.5;
  double sampler_eps = 0.25;  // estimate and audit-sampler need eps < 1/2
  double c = 2.0;
  double c_prime = 32.0;
  double sparse_threshold = 4.0;
  std::uint64_t seed = 0;
  bool exact_density = false;

  // gen
  dd_generate_params gen;
  dd_generate_params_init(&gen);
  std::string kind = "uniform";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--kind", kind, "uniform | clustered | clique");
  gen_cmd->add_option("--n", gen.n, "Number of disks")->required();
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--side", gen.side, "Square side for centers");
  gen_cmd->add_option("--rmin", gen.rmin, "Smallest radius");
  gen_cmd->add_option("--rmax", gen.rmax, "Largest radius");
  gen_cmd->add_option("--clusters", gen.clusters, "Cluster count (clustered)");
  gen_cmd->add_option("--spread", gen.spread, "Cluster spread (clustered)");
  gen_cmd->add_option("--radius", gen.radius, "Common radius (clique)");
  add_common(gen_cmd);

  // pairs
  std::string pairs_format = "lines";
  bool naive = false;
  auto* pairs_cmd = app.add_subcommand("pairs", "List every intersecting pair");
  pairs_cmd->add_option("instance", instance_path)->required();
  pairs_cmd->add_option("--format", pairs_format, "lines | json")
      ->check(CLI::IsMember({"lines", "json"}));
  pairs_cmd->add_flag("--naive", naive, "Use the quadratic reference scan");
  add_common(pairs_cmd);

  // exact / peel
  std::size_t max_n = 20000;
  auto* exact_cmd = app.add_subcommand("exact", "Exact densest subset (min cut)");
  exact_cmd->add_option("instance", instance_path)->required();
  exact_cmd->add_option("--max-n", max_n, "Refuse instances larger than this");
  add_common(exact_cmd);

  auto* peel_cmd = app.add_subcommand("peel", "Min-degree peeling (2-approximation)");
  peel_cmd->add_option("instance", instance_path)->required();
  add_common(peel_cmd);

  // approx2
  auto* a2_cmd = app.add_subcommand("approx2", "(2+eps)-approximate densest subset");
  a2_cmd->add_option("instance", instance_path)->required();
  a2_cmd->add_option("--eps", eps, "Error parameter in (0,1)");
  a2_cmd->add_option("--c", c, "Sampler constant");
  a2_cmd->add_option("--seed", seed, "Master seed");
  a2_cmd->add_flag("--exact-density", exact_density,
                   "Report the exact density of the output instead of the estimate");
  add_common(a2_cmd);

  // approx1
  auto* a1_cmd = app.add_subcommand("approx1", "(1+eps)-approximate densest subset");
  a1_cmd->add_option("instance", instance_path)->required();
  a1_cmd->add_option("--eps", eps, "Error parameter in (0,1)");
  a1_cmd->add_option("--c", c, "Sampler constant");
  a1_cmd->add_option("--c-prime", c_prime, "Small-degree cutoff constant");
  a1_cmd->add_option("--sparse-threshold", sparse_threshold,
                     "Sparse path when m <= this * eps^-2 n ln n");
  a1_cmd->add_option("--seed", seed, "Master seed");
  add_common(a1_cmd);

  // estimate / probe
  std::string query;
  std::optional<std::uint32_t> query_id;
  auto* est_cmd = app.add_subcommand("estimate", "Approximate count and sample for one query");
  est_cmd->add_option("instance", instance_path)->required();
  est_cmd->add_option("--query", query, "Query disk cx,cy,r");
  est_cmd->add_option("--query-id", query_id, "Use this instance disk as the query");
  est_cmd->add_option("--eps", sampler_eps, "Error parameter in (0,1/2)");
  est_cmd->add_option("--c", c, "Sampler constant");
  est_cmd->add_option("--seed", seed, "Master seed");
  add_common(est_cmd);

  std::size_t limit = SIZE_MAX;
  auto* probe_cmd = app.add_subcommand("probe", "Raw reporting query (debugging)");
  probe_cmd->add_option("instance", instance_path)->required();
  probe_cmd->add_option("--query", query, "Query disk cx,cy,r");
  probe_cmd->add_option("--query-id", query_id, "Use this instance disk as the query");
  probe_cmd->add_option("--limit", limit, "Abort after this many hits");
  add_common(probe_cmd);

  // audit-sampler
  std::size_t draws = 10000;
  std::vector<std::uint32_t> audit_queries;
  auto* audit_cmd = app.add_subcommand("audit-sampler", "Empirical sampler audit");
  audit_cmd->add_option("instance", instance_path)->required();
  audit_cmd->add_option("--eps", sampler_eps, "Error parameter in (0,1/2)");
  audit_cmd->add_option("--c", c, "Sampler constant");
  audit_cmd->add_option("--draws", draws, "Draws per query (>= 1000)");
  audit_cmd->add_option("--seed", seed, "Master seed");
  audit_cmd->add_option("--query-ids", audit_queries, "Query disk ids")->delimiter(',');
  add_common(audit_cmd);

  // bench
  std::string bench_sizes = "1e4,2e4,4e4";
  double spacing = 1.5;
  double max_growth = 2.6;
  auto* bench_cmd = app.add_subcommand("bench", "approx1 scaling sweep");
  bench_cmd->add_option("--kind", kind, "uniform | clustered | clique");
  bench_cmd->add_option("--n", bench_sizes, "Comma-separated sizes");
  bench_cmd->add_option("--eps", eps, "Error parameter in (0,1)");
  bench_cmd->add_option("--c", c, "Sampler constant");
  bench_cmd->add_option("--c-prime", c_prime, "Small-degree cutoff constant");
  bench_cmd->add_option("--sparse-threshold", sparse_threshold, "Sparse dispatch constant");
  bench_cmd->add_option("--seed", seed, "Master seed");
  bench_cmd->add_option("--spacing", spacing,
                        "Square side is sqrt(n) * spacing, keeping degrees flat");
  bench_cmd->add_option("--max-growth", max_growth, "Growth factor per doubling to report against");
  add_common(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      dd_generator_kind k;
      check(dd_generator_kind_parse(kind.c_str(), &k));
      gen.kind = k;
      dd_instance* raw = nullptr;
      check(dd_instance_generate(&gen, &raw));
      InstancePtr inst(raw);
      if (common.out.empty()) {
        char* text = nullptr;
        check(dd_instance_format(inst.get(), &text));
        std::cout << take_string(text);
      } else {
        check(dd_instance_write(inst.get(), common.out.c_str()));
        json rec = record("gen", inst.get());
        rec["parameters"] = {{"kind", kind}, {"n", gen.n}, {"seed", gen.seed},
                             {"side", gen.side}, {"rmin", gen.rmin}, {"rmax", gen.rmax},
                             {"clusters", gen.clusters}, {"spread", gen.spread},
                             {"radius", gen.radius}};
        rec["result"] = {{"path", common.out}};
        std::cout << rec.dump(2) << "\n";
      }
      return 0;
    }

    if (bench_cmd->parsed()) {
      dd_generator_kind k;
      check(dd_generator_kind_parse(kind.c_str(), &k));
      const std::vector<std::size_t> sizes = parse_sizes(bench_sizes);
      json runs = json::array();
      double previous = 0.0;
      std::size_t previous_n = 0;
      bool within = true;
      for (std::size_t n : sizes) {
        dd_generate_params g;
        dd_generate_params_init(&g);
        g.kind = k;
        g.n = n;
        g.seed = seed;
        g.side = std::sqrt(static_cast<double>(n)) * spacing;
        dd_instance* raw = nullptr;
        check(dd_instance_generate(&g, &raw));
        InstancePtr inst(raw);
        dd_approx1_params p;
        dd_approx1_params_init(&p);
        p.eps = eps;
        p.c = c;
        p.c_prime = c_prime;
        p.sparse_threshold = sparse_threshold;
        p.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        dd_result* rres = nullptr;
        check(dd_approx1(inst.get(), &p, &rres));
        const double secs = seconds_since(t0);
        ResultPtr res(rres);
        char* text = nullptr;
        check(dd_result_json(res.get(), 1, &text));
        const json result = json::parse(take_string(text));
        json run = {{"n", n},
                    {"seconds", secs},
                    {"density", result["density"]},
                    {"path", result["diagnostics"].value("path", "")},
                    {"m_bar", result["diagnostics"].value("m_bar", 0.0)}};
        if (previous > 0.0) {
          const double doublings =
              std::log2(static_cast<double>(n) / static_cast<double>(previous_n));
          const double growth = doublings > 0.0 ? std::pow(secs / previous, 1.0 / doublings)
                                                : 0.0;
          run["growth_per_doubling"] = growth;
          within = within && growth <= max_growth;
        }
        previous = secs;
        previous_n = n;
        runs.push_back(std::move(run));
      }
      json rec = record("bench", nullptr);
      rec["parameters"] = {{"kind", kind}, {"eps", eps}, {"c", c}, {"c_prime", c_prime},
                           {"sparse_threshold", sparse_threshold}, {"seed", seed},
                           {"spacing", spacing}, {"max_growth", max_growth}};
      rec["result"] = {{"runs", runs}, {"within_growth_bound", within}};
      rec["diagnostics"] = json::object();
      emit(common, rec);
      return 0;
    }

    InstancePtr inst = load(instance_path);

    if (pairs_cmd->parsed()) {
      dd_pairs* raw = nullptr;
      check(dd_pairs_compute(inst.get(), naive ? 1 : 0, &raw));
      PairsPtr pairs(raw);
      const std::size_t k = dd_pairs_size(pairs.get());
      std::vector<std::pair<std::uint32_t, std::uint32_t>> list(k);
      for (std::size_t i = 0; i < k; ++i) {
        check(dd_pairs_get(pairs.get(), i, &list[i].first, &list[i].second));
      }
      if (pairs_format == "lines") {
        std::string text;
        for (const auto& [u, v] : list) {
          text += std::to_string(u) + " " + std::to_string(v) + "\n";
        }
        write_text(common, text);
      } else {
        json rec = record("pairs", inst.get());
        rec["parameters"] = {{"naive", naive}};
        json arr = json::array();
        for (const auto& [u, v] : list) arr.push_back({u, v});
        rec["result"] = {{"count", k}, {"pairs", std::move(arr)}};
        rec["diagnostics"] = json::object();
        emit(common, rec);
      }
      return 0;
    }

    if (exact_cmd->parsed() || peel_cmd->parsed()) {
      dd_result* raw = nullptr;
      const bool exact = exact_cmd->parsed();
      check(exact ? dd_exact(inst.get(), max_n, &raw) : dd_peel(inst.get(), &raw));
      ResultPtr res(raw);
      emit(common, result_record(exact ? "exact" : "peel", inst.get(), res.get(),
                                 common.timings));
      return 0;
    }

    if (a2_cmd->parsed()) {
      dd_approx2_params p;
      dd_approx2_params_init(&p);
      p.eps = eps;
      p.c = c;
      p.seed = seed;
      p.report_exact = exact_density ? 1 : 0;
      dd_result* raw = nullptr;
      check(dd_approx2(inst.get(), &p, &raw));
      ResultPtr res(raw);
      emit(common, result_record("approx2", inst.get(), res.get(), common.timings));
      return 0;
    }

    if (a1_cmd->parsed()) {
      dd_approx1_params p;
      dd_approx1_params_init(&p);
      p.eps = eps;
      p.c = c;
      p.c_prime = c_prime;
      p.sparse_threshold = sparse_threshold;
      p.seed = seed;
      dd_result* raw = nullptr;
      check(dd_approx1(inst.get(), &p, &raw));
      ResultPtr res(raw);
      emit(common, result_record("approx1", inst.get(), res.get(), common.timings));
      return 0;
    }

    if (est_cmd->parsed()) {
      const dd_disk q = resolve_query(inst.get(), query, query_id);
      dd_tree* raw = nullptr;
      check(dd_tree_build(inst.get(), c, seed, &raw));
      TreePtr tree(raw);
      dd_estimate est;
      check(dd_tree_query(tree.get(), &q, sampler_eps, &est));
      double psi_eps = 0.0;
      check(dd_tree_psi_eps(tree.get(), sampler_eps, &psi_eps));
      json rec = record("estimate", inst.get());
      rec["parameters"] = {{"eps", sampler_eps}, {"c", c}, {"seed", seed}};
      rec["result"] = {{"estimate", est.estimate},
                       {"exact", est.exact != 0},
                       {"j", est.level},
                       {"sample_id", est.has_sample ? json(est.sample) : json(nullptr)}};
      rec["diagnostics"] = {{"psi_eps", psi_eps}, {"fallback", est.fallback != 0}};
      emit(common, rec);
      return 0;
    }

    if (probe_cmd->parsed()) {
      const dd_disk q = resolve_query(inst.get(), query, query_id);
      char* text = nullptr;
      check(dd_probe(inst.get(), &q, limit, &text));
      json rec = record("probe", inst.get());
      rec["parameters"] = {{"query", {q.cx, q.cy, q.r}},
                           {"limit", limit == SIZE_MAX ? json(nullptr) : json(limit)}};
      rec["result"] = json::parse(take_string(text));
      rec["diagnostics"] = json::object();
      emit(common, rec);
      return 0;
    }

    if (audit_cmd->parsed()) {
      dd_audit_params p;
      dd_audit_params_init(&p);
      p.eps = sampler_eps;
      p.c = c;
      p.draws = draws;
      p.seed = seed;
      p.queries = audit_queries.empty() ? nullptr : audit_queries.data();
      p.num_queries = audit_queries.size();
      char* text = nullptr;
      check(dd_audit_sampler(inst.get(), &p, &text));
      json report = json::parse(take_string(text));
      json rec = record("audit-sampler", inst.get());
      rec["parameters"] = {{"eps", sampler_eps}, {"c", c}, {"draws", draws}, {"seed", seed}};
      rec["diagnostics"] = json::object();
      rec["result"] = std::move(report);
      emit(common, rec);
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << "diskdense: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "diskdense: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
