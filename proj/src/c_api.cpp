#include "diskdense/diskdense.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "diskdense/approx1.hpp"
#include "diskdense/approx2.hpp"
#include "diskdense/audit.hpp"
#include "diskdense/density.hpp"
#include "diskdense/error.hpp"
#include "diskdense/geom.hpp"
#include "diskdense/pairs.hpp"
#include "diskdense/report.hpp"
#include "diskdense/sampletree.hpp"

struct dd_instance {
  diskdense::Instance inst;
};

struct dd_pairs {
  diskdense::PairList pairs;
};

struct dd_result {
  diskdense::DensityResult result;
};

struct dd_tree {
  diskdense::SampleTree tree;
  diskdense::Rng rng;
};

namespace {

using namespace diskdense;

thread_local std::string g_last_error;

dd_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return DD_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return DD_ERR_IO;
    case ErrorCode::kParse: return DD_ERR_PARSE;
    case ErrorCode::kOutOfRange: return DD_ERR_OUT_OF_RANGE;
    case ErrorCode::kRuntime: return DD_ERR_RUNTIME;
  }
  return DD_ERR_RUNTIME;
}

template <typename F>
dd_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return DD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DD_ERR_RUNTIME;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DD_ERR_RUNTIME;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Disk to_disk(const dd_disk& d) { return Disk{d.id, d.cx, d.cy, d.r}; }

dd_disk from_disk(const Disk& d) { return dd_disk{d.id, d.cx, d.cy, d.r}; }

ExplicitGraph graph_of(const Instance& inst) {
  const PairList pairs = all_pairs(inst);
  std::vector<std::pair<Vertex, Vertex>> edges(pairs.begin(), pairs.end());
  return ExplicitGraph(inst.size(), edges);
}

void emit_result(DensityResult r, dd_result** out) {
  *out = new dd_result{std::move(r)};
}

}  // namespace

extern "C" {

const char* dd_version(void) { return "0.1.0"; }

const char* dd_last_error(void) { return g_last_error.c_str(); }

const char* dd_status_name(dd_status status) {
  switch (status) {
    case DD_OK: return "ok";
    case DD_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case DD_ERR_IO: return "io";
    case DD_ERR_PARSE: return "parse";
    case DD_ERR_OUT_OF_RANGE: return "out_of_range";
    case DD_ERR_RUNTIME: return "runtime";
  }
  return "unknown";
}

void dd_string_free(char* s) { std::free(s); }

dd_status dd_intersects(const dd_disk* a, const dd_disk* b, int* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = intersects(to_disk(*a), to_disk(*b)) ? 1 : 0;
  });
}

dd_status dd_instance_from_disks(const char* name, const dd_disk* disks, size_t n,
                                 dd_instance** out) {
  return guarded([&] {
    require(out, "out");
    if (n > 0) require(disks, "disks");
    std::vector<Disk> v;
    v.reserve(n);
    for (size_t i = 0; i < n; ++i) v.push_back(to_disk(disks[i]));
    *out = new dd_instance{Instance(name ? name : "", std::move(v))};
  });
}

dd_status dd_instance_read(const char* path, dd_instance** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new dd_instance{read_instance(path)};
  });
}

dd_status dd_instance_parse(const char* text, const char* name, dd_instance** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new dd_instance{parse_instance(text, name ? name : "")};
  });
}

dd_status dd_instance_write(const dd_instance* inst, const char* path) {
  return guarded([&] {
    require(inst, "instance");
    require(path, "path");
    write_instance(inst->inst, path);
  });
}

dd_status dd_instance_format(const dd_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = dup_string(format_instance(inst->inst));
  });
}

size_t dd_instance_size(const dd_instance* inst) {
  return inst ? inst->inst.size() : 0;
}

const char* dd_instance_name(const dd_instance* inst) {
  return inst ? inst->inst.name().c_str() : "";
}

dd_status dd_instance_get_disk(const dd_instance* inst, size_t i, dd_disk* out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    if (i >= inst->inst.size()) fail(ErrorCode::kOutOfRange, "disk index past the end");
    *out = from_disk(inst->inst[i]);
  });
}

void dd_instance_destroy(dd_instance* inst) { delete inst; }

void dd_generate_params_init(dd_generate_params* p) {
  if (p == nullptr) return;
  const GenerateParams d;
  *p = dd_generate_params{DD_GEN_UNIFORM, d.n,      d.seed,   d.side,  d.rmin,
                          d.rmax,         d.clusters, d.spread, d.radius};
}

dd_status dd_generator_kind_parse(const char* name, dd_generator_kind* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = static_cast<dd_generator_kind>(parse_generator_kind(name));
  });
}

dd_status dd_instance_generate(const dd_generate_params* p, dd_instance** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "out");
    if (p->kind < DD_GEN_UNIFORM || p->kind > DD_GEN_CLIQUE) {
      fail(ErrorCode::kInvalidArgument, "unknown generator kind");
    }
    GenerateParams g;
    g.kind = static_cast<GeneratorKind>(p->kind);
    g.n = p->n;
    g.seed = p->seed;
    g.side = p->side;
    g.rmin = p->rmin;
    g.rmax = p->rmax;
    g.clusters = p->clusters;
    g.spread = p->spread;
    g.radius = p->radius;
    *out = new dd_instance{generate(g)};
  });
}

dd_status dd_pairs_compute(const dd_instance* inst, int naive, dd_pairs** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = new dd_pairs{naive ? all_pairs_naive(inst->inst) : all_pairs(inst->inst)};
  });
}

size_t dd_pairs_size(const dd_pairs* pairs) { return pairs ? pairs->pairs.size() : 0; }

dd_status dd_pairs_get(const dd_pairs* pairs, size_t i, uint32_t* u, uint32_t* v) {
  return guarded([&] {
    require(pairs, "pairs");
    require(u, "u");
    require(v, "v");
    if (i >= pairs->pairs.size()) fail(ErrorCode::kOutOfRange, "pair index past the end");
    *u = pairs->pairs[i].first;
    *v = pairs->pairs[i].second;
  });
}

void dd_pairs_destroy(dd_pairs* pairs) { delete pairs; }

dd_status dd_exact(const dd_instance* inst, size_t max_n, dd_result** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    if (inst->inst.empty()) fail(ErrorCode::kInvalidArgument, "instance is empty");
    if (inst->inst.size() > max_n) {
      fail(ErrorCode::kInvalidArgument,
           "instance has " + std::to_string(inst->inst.size()) +
               " disks, above the exact-solver cap of " + std::to_string(max_n));
    }
    emit_result(exact_densest(graph_of(inst->inst)), out);
  });
}

dd_status dd_brute(const dd_instance* inst, dd_result** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    emit_result(brute_densest(graph_of(inst->inst)), out);
  });
}

dd_status dd_peel(const dd_instance* inst, dd_result** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    if (inst->inst.empty()) fail(ErrorCode::kInvalidArgument, "instance is empty");
    emit_result(charikar_peel(graph_of(inst->inst)), out);
  });
}

void dd_approx2_params_init(dd_approx2_params* p) {
  if (p == nullptr) return;
  const Approx2Params d;
  *p = dd_approx2_params{d.eps, d.c, d.seed, d.report_exact ? 1 : 0};
}

dd_status dd_approx2(const dd_instance* inst, const dd_approx2_params* p,
                     dd_result** out) {
  return guarded([&] {
    require(inst, "instance");
    require(p, "params");
    require(out, "out");
    Approx2Params params;
    params.eps = p->eps;
    params.c = p->c;
    params.seed = p->seed;
    params.report_exact = p->report_exact != 0;
    emit_result(densest_disks_2eps(inst->inst, params), out);
  });
}

void dd_approx1_params_init(dd_approx1_params* p) {
  if (p == nullptr) return;
  const Approx1Params d;
  *p = dd_approx1_params{d.eps, d.c, d.c_prime, d.sparse_threshold, d.seed};
}

dd_status dd_approx1(const dd_instance* inst, const dd_approx1_params* p,
                     dd_result** out) {
  return guarded([&] {
    require(inst, "instance");
    require(p, "params");
    require(out, "out");
    Approx1Params params;
    params.eps = p->eps;
    params.c = p->c;
    params.c_prime = p->c_prime;
    params.sparse_threshold = p->sparse_threshold;
    params.seed = p->seed;
    emit_result(densest_disks_1eps(inst->inst, params), out);
  });
}

size_t dd_result_size(const dd_result* res) {
  return res ? res->result.subset.size() : 0;
}

dd_status dd_result_subset(const dd_result* res, uint32_t* buf, size_t cap) {
  return guarded([&] {
    require(res, "result");
    const auto& s = res->result.subset;
    const size_t k = std::min(cap, s.size());
    if (k > 0) require(buf, "buf");
    std::copy(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), buf);
  });
}

dd_status dd_result_density(const dd_result* res, int64_t* num, int64_t* den,
                            int* exact) {
  return guarded([&] {
    require(res, "result");
    require(exact, "exact");
    const auto& d = res->result.density;
    *exact = d ? 1 : 0;
    if (d) {
      if (num) *num = d->num();
      if (den) *den = d->den();
    }
  });
}

double dd_result_density_value(const dd_result* res) {
  return res ? res->result.density_value() : 0.0;
}

dd_status dd_result_json(const dd_result* res, int include_timings, char** out) {
  return guarded([&] {
    require(res, "result");
    require(out, "out");
    *out = dup_string(to_json(res->result, include_timings != 0).dump());
  });
}

void dd_result_destroy(dd_result* res) { delete res; }

dd_status dd_tree_build(const dd_instance* inst, double c, uint64_t seed,
                        dd_tree** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    if (inst->inst.empty()) fail(ErrorCode::kInvalidArgument, "instance is empty");
    if (!(c > 0.0)) fail(ErrorCode::kInvalidArgument, "c must be > 0");
    *out = new dd_tree{
        SampleTree(inst->inst.disks(), c, derive_seed(seed, streams::kTreeBuild)),
        make_rng(seed, streams::kQueries)};
  });
}

dd_status dd_tree_query(dd_tree* tree, const dd_disk* q, double eps, dd_estimate* out) {
  return guarded([&] {
    require(tree, "tree");
    require(q, "query");
    require(out, "out");
    const Disk query = to_disk(*q);
    validate_disk(query);
    const EstimateSample s = tree->tree.query(query, eps, tree->rng);
    out->estimate = s.estimate;
    out->has_sample = s.sample ? 1 : 0;
    out->sample = s.sample.value_or(0);
    out->level = s.level;
    out->exact = s.exact ? 1 : 0;
    out->fallback = s.fallback ? 1 : 0;
  });
}

dd_status dd_tree_psi_eps(const dd_tree* tree, double eps, double* out) {
  return guarded([&] {
    require(tree, "tree");
    require(out, "out");
    *out = tree->tree.psi_eps(eps);
  });
}

void dd_tree_destroy(dd_tree* tree) { delete tree; }

void dd_audit_params_init(dd_audit_params* p) {
  if (p == nullptr) return;
  const AuditParams d;
  *p = dd_audit_params{d.eps, d.c, d.draws, d.seed, nullptr, 0};
}

dd_status dd_audit_sampler(const dd_instance* inst, const dd_audit_params* p,
                           char** json_out) {
  return guarded([&] {
    require(inst, "instance");
    require(p, "params");
    require(json_out, "out");
    AuditParams a;
    a.eps = p->eps;
    a.c = p->c;
    a.draws = p->draws;
    a.seed = p->seed;
    if (p->num_queries > 0) {
      require(p->queries, "queries");
      a.queries.assign(p->queries, p->queries + p->num_queries);
    }
    *json_out = dup_string(audit_sampler(inst->inst, a).dump());
  });
}

dd_status dd_probe(const dd_instance* inst, const dd_disk* q, size_t limit,
                   char** json_out) {
  return guarded([&] {
    require(inst, "instance");
    require(q, "query");
    require(json_out, "out");
    const Disk query = to_disk(*q);
    validate_disk(query);
    const ReportIndex index(inst->inst.disks());
    const ReportOutcome r = index.report(query, limit);
    nlohmann::json j = {{"overflow", r.is_overflow()}, {"count", r.count_seen()}};
    j["ids"] = r.is_overflow() ? nlohmann::json(nullptr) : nlohmann::json(r.ids());
    *json_out = dup_string(j.dump());
  });
}

}  // extern "C"
