#include "fast/generate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace fast {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

Graph generate_graph(const GenParams& params) {
    if (params.labels == 0) throw std::invalid_argument("need at least one label");
    if (!params.edge_probability && !params.power_law_exponent)
        throw std::invalid_argument("set an edge probability or a power-law exponent");

    std::mt19937_64 rng(params.seed);
    const std::size_t n = params.vertices;
    std::vector<Label> labels(n);
    for (auto& l : labels) l = static_cast<Label>(uniform_below(rng, params.labels));

    std::vector<std::pair<VertexId, VertexId>> edges;
    if (params.edge_probability) {
        const double p = *params.edge_probability;
        if (p < 0 || p > 1) throw std::invalid_argument("edge probability must lie in [0, 1]");
        for (VertexId a = 0; a < n; ++a)
            for (VertexId b = a + 1; b < n; ++b)
                if (uniform01(rng) < p) edges.emplace_back(a, b);
        return Graph(std::move(labels), edges);
    }

    const double gamma = *params.power_law_exponent;
    if (gamma <= 1) throw std::invalid_argument("power-law exponent must exceed 1");
    if (n < 2) return Graph(std::move(labels), edges);

    // Chung-Lu: endpoint i drawn with weight (i + 1)^(-1 / (gamma - 1)).
    std::vector<double> cumulative(n);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total += std::pow(static_cast<double>(i + 1), -1.0 / (gamma - 1));
        cumulative[i] = total;
    }
    auto draw = [&]() {
        const double x = uniform01(rng) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        return static_cast<VertexId>(std::min<std::size_t>(it - cumulative.begin(), n - 1));
    };
    const std::size_t max_edges = n * (n - 1) / 2;
    const auto target = std::min<std::size_t>(
        max_edges, static_cast<std::size_t>(std::llround(params.average_degree * static_cast<double>(n) / 2)));
    std::set<std::pair<VertexId, VertexId>> seen;
    for (std::size_t attempts = 0; seen.size() < target && attempts < 50 * target + 100; ++attempts) {
        VertexId a = draw();
        VertexId b = draw();
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        seen.emplace(a, b);
    }
    edges.assign(seen.begin(), seen.end());
    return Graph(std::move(labels), edges);
}

}  // namespace fast
