#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace diskdense {

using Rng = std::mt19937_64;

/// Derives the seed of a named sub-stream from a master seed. The same
/// (master, label, index) triple always yields the same stream, so a single
/// seed on the command line fans out into replayable component streams.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index = 0) noexcept;

inline Rng make_rng(std::uint64_t master, std::string_view label,
                    std::uint64_t index = 0) {
  return Rng(derive_seed(master, label, index));
}

// Uniform integer in [0, bound). bound must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

namespace streams {
inline constexpr std::string_view kGenerate = "generate";
inline constexpr std::string_view kTreeBuild = "tree-build";
inline constexpr std::string_view kQueries = "queries";
inline constexpr std::string_view kVertexDraws = "vertex-draws";
inline constexpr std::string_view kNeighborDraws = "neighbor-draws";
}  // namespace streams

}  // namespace diskdense
