#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "diskdense/rational.hpp"

namespace diskdense {

using Vertex = std::uint32_t;

/// Undirected multigraph on vertices 0..n-1. Repeated edges are kept with
/// multiplicity (sampled graphs repeat edges); self-loops are rejected.
class ExplicitGraph {
 public:
  struct WeightedEdge {
    Vertex u = 0;
    Vertex v = 0;
    std::uint64_t weight = 0;
  };

  ExplicitGraph() = default;
  ExplicitGraph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  /// Edges counted with multiplicity.
  std::uint64_t num_edges() const noexcept { return m_; }
  /// Sorted, repeats included.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::uint64_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  /// Distinct edges (u < v) with their multiplicities.
  std::vector<WeightedEdge> weighted_edges() const;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::uint64_t m_ = 0;
};

/// |E_S| / |S| with multiplicity. Throws on empty S or out-of-range ids.
Rational density_of(const ExplicitGraph& g, std::span<const Vertex> subset);

struct Timing {
  std::string phase;
  double seconds = 0.0;
};

/// A subset together with its density and how it was obtained.
struct DensityResult {
  std::vector<std::uint32_t> subset;  // sorted ids
  std::optional<Rational> density;    // exact, when known
  double density_estimate = 0.0;      // set when density is not exact
  std::string algorithm;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json diagnostics = nlohmann::json::object();
  std::vector<std::string> flags;
  std::vector<Timing> timings;
  double wall_seconds = 0.0;

  double density_value() const {
    return density ? density->to_double() : density_estimate;
  }
  bool has_flag(const std::string& f) const;
};

/// Serialized form used by the CLI and the C API. Timings are included only
/// on request so that repeated seeded runs serialize byte-identically.
nlohmann::json to_json(const DensityResult& r, bool include_timings);

/// True iff a is lexicographically smaller than b as sorted id sequences
/// (a proper prefix is smaller).
bool lex_less(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

enum class TieBreak {
  kAny,     // whichever optimal subset the solver meets first
  kLexMin,  // lexicographically smallest optimal subset
};

/// Exhaustive search over all nonempty subsets, ties toward the
/// lexicographically smallest set. n <= kBruteMaxVertices.
inline constexpr std::size_t kBruteMaxVertices = 22;
DensityResult brute_densest(const ExplicitGraph& g);

/// Optimal density through s-t min cuts on the standard network
/// (s->v capacity U, v->t capacity U + 2g - deg(v), unit arcs per edge
/// scaled by multiplicity). Candidate densities are improved by re-solving
/// at the density of the last cut's source side until no denser set exists.
DensityResult exact_densest(const ExplicitGraph& g,
                            TieBreak tie_break = TieBreak::kLexMin);

/// Min-degree peeling; returns the densest prefix of the peeling order.
/// Always at least half the optimum.
DensityResult charikar_peel(const ExplicitGraph& g);

/// A subset of density >= (1 - quality_eps) * optimum. Backed by
/// exact_densest, which meets any quality requirement.
DensityResult subsolver_densest(const ExplicitGraph& g, double quality_eps);

}  // namespace diskdense
