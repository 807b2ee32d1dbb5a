#pragma once

#include "fast/cst.hpp"
#include "fast/generate.hpp"
#include "fast/graph.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fast::test_support {

inline std::string fixture(const std::string& name) { return std::string(FAST_FIXTURE_DIR) + "/" + name; }

inline Graph make_graph(std::vector<Label> labels, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    return Graph(std::move(labels), edges);
}

struct Instance {
    Graph query;
    Graph data;
};

/// Random G(n, p) data graph plus a connected query. Half the queries are
/// sampled out of the data graph so they have at least one match.
inline Instance random_instance(std::mt19937_64& rng, std::size_t q_min = 3, std::size_t q_max = 7,
                                std::size_t d_min = 10, std::size_t d_max = 60) {
    static constexpr double kDensities[] = {0.08, 0.15, 0.25, 0.4};
    GenParams gp;
    gp.vertices = d_min + uniform_below(rng, d_max - d_min + 1);
    gp.labels = 2 + uniform_below(rng, 4);
    gp.edge_probability = kDensities[uniform_below(rng, 4)];
    gp.seed = rng();
    Graph data = generate_graph(gp);

    const std::size_t nq = q_min + uniform_below(rng, q_max - q_min + 1);
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<Label> labels;

    if (uniform01(rng) < 0.5) {
        // Grow a connected vertex set inside the data graph.
        std::vector<VertexId> picked{static_cast<VertexId>(uniform_below(rng, data.vertex_count()))};
        for (int attempt = 0; picked.size() < nq && attempt < 200; ++attempt) {
            const VertexId from = picked[uniform_below(rng, picked.size())];
            auto nb = data.neighbors(from);
            if (nb.empty()) continue;
            const VertexId to = nb[uniform_below(rng, nb.size())];
            if (std::find(picked.begin(), picked.end(), to) == picked.end()) {
                edges.emplace_back(static_cast<VertexId>(std::find(picked.begin(), picked.end(), from) - picked.begin()),
                                   static_cast<VertexId>(picked.size()));
                picked.push_back(to);
            }
        }
        if (picked.size() >= q_min) {
            for (VertexId a = 0; a < picked.size(); ++a)
                for (VertexId b = a + 1; b < picked.size(); ++b)
                    if (data.has_edge(picked[a], picked[b]) && uniform01(rng) < 0.5 &&
                        std::find(edges.begin(), edges.end(), std::pair{a, b}) == edges.end())
                        edges.emplace_back(a, b);
            for (VertexId v : picked) labels.push_back(data.label(v));
            return {Graph(std::move(labels), edges), std::move(data)};
        }
        edges.clear();
    }

    // Random spanning tree plus extra edges.
    for (VertexId v = 0; v < nq; ++v) labels.push_back(static_cast<Label>(uniform_below(rng, gp.labels)));
    for (VertexId v = 1; v < nq; ++v) edges.emplace_back(static_cast<VertexId>(uniform_below(rng, v)), v);
    const double extra = uniform01(rng) * 0.6;
    for (VertexId a = 0; a < nq; ++a)
        for (VertexId b = a + 1; b < nq; ++b)
            if (uniform01(rng) < extra && std::find(edges.begin(), edges.end(), std::pair{a, b}) == edges.end())
                edges.emplace_back(a, b);
    return {Graph(std::move(labels), edges), std::move(data)};
}

/// Applies a vertex permutation to a graph: vertex v becomes perm[v].
inline Graph relabel(const Graph& g, const std::vector<VertexId>& perm) {
    std::vector<Label> labels(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) labels[perm[v]] = g.label(v);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (auto [a, b] : g.edge_list()) edges.emplace_back(perm[a], perm[b]);
    return Graph(std::move(labels), edges);
}

inline std::vector<VertexId> random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<VertexId> perm(n);
    for (VertexId i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    return perm;
}

}  // namespace fast::test_support
