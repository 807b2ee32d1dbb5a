#pragma once

#include "fast/graph.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace fast {

/// Parameters for a random labeled data graph. Exactly one of edge_probability
/// (G(n, p)) or power_law_exponent (Chung-Lu with that degree exponent) is used;
/// edge_probability wins when both are set.
struct GenParams {
    std::size_t vertices = 0;
    std::optional<double> edge_probability;
    std::optional<double> power_law_exponent;
    double average_degree = 10;  ///< power-law mode only
    std::size_t labels = 1;
    std::uint64_t seed = 0;
};

/// Deterministic for a fixed seed on every platform: only the raw
/// std::mt19937_64 stream is used, never the library distributions.
Graph generate_graph(const GenParams& params);

/// Portable helpers over the raw engine output.
double uniform01(std::mt19937_64& rng);
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace fast
