#include "fast/oracle.hpp"

#include <algorithm>

namespace fast::oracle {

namespace {

void guard(const Graph& query, const Graph& data, std::span<const VertexId> order) {
    if (query.vertex_count() > kMaxQueryVertices)
        throw GuardError("oracle refuses queries with more than " + std::to_string(kMaxQueryVertices) + " vertices");
    if (data.vertex_count() > kMaxDataVertices)
        throw GuardError("oracle refuses data graphs with more than " + std::to_string(kMaxDataVertices) +
                         " vertices");
    if (order.size() != query.vertex_count()) throw GuardError("order must list every query vertex");
    std::vector<bool> seen(query.vertex_count(), false);
    for (VertexId u : order) {
        if (u >= query.vertex_count() || seen[u]) throw GuardError("order is not a permutation");
        seen[u] = true;
    }
}

struct Search {
    const Graph& query;
    const Graph& data;
    std::span<const VertexId> order;
    std::vector<VertexId> image;  // indexed by query vertex
    std::vector<bool> used;
    std::vector<bool> assigned;
    std::vector<Embedding> out;

    void step(std::size_t depth) {
        if (depth == order.size()) {
            Embedding e;
            for (VertexId u : order) e.push_back(image[u]);
            out.push_back(std::move(e));
            return;
        }
        const VertexId u = order[depth];
        for (VertexId v = 0; v < data.vertex_count(); ++v) {
            if (used[v] || data.label(v) != query.label(u)) continue;
            bool edges_ok = true;
            for (VertexId w : query.neighbors(u)) {
                if (assigned[w] && !data.has_edge(v, image[w])) {
                    edges_ok = false;
                    break;
                }
            }
            if (!edges_ok) continue;
            image[u] = v;
            used[v] = true;
            assigned[u] = true;
            step(depth + 1);
            used[v] = false;
            assigned[u] = false;
        }
    }
};

}  // namespace

std::vector<Embedding> brute_force_embeddings(const Graph& query, const Graph& data, std::span<const VertexId> order) {
    guard(query, data, order);
    Search s{query, data, order, std::vector<VertexId>(query.vertex_count()),
             std::vector<bool>(data.vertex_count(), false), std::vector<bool>(query.vertex_count(), false), {}};
    if (query.vertex_count() <= data.vertex_count()) s.step(0);
    std::sort(s.out.begin(), s.out.end());
    return s.out;
}

std::vector<Embedding> enumerate_then_filter(const Graph& query, const Graph& data, std::span<const VertexId> order) {
    guard(query, data, order);
    const std::size_t n = order.size();
    std::vector<Embedding> out;
    std::vector<std::vector<VertexId>> pools(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (VertexId v = 0; v < data.vertex_count(); ++v)
            if (data.label(v) == query.label(order[i])) pools[i].push_back(v);
        if (pools[i].empty()) return out;
    }

    std::vector<std::size_t> digit(n, 0);
    Embedding tuple(n);
    std::vector<VertexId> image(query.vertex_count());
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) tuple[i] = pools[i][digit[i]];
        Embedding sorted = tuple;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
            for (std::size_t i = 0; i < n; ++i) image[order[i]] = tuple[i];
            bool ok = true;
            for (auto [a, b] : query.edge_list()) {
                if (!data.has_edge(image[a], image[b])) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.push_back(tuple);
        }
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++digit[i] < pools[i].size()) break;
            digit[i] = 0;
            if (i == 0) {
                std::sort(out.begin(), out.end());
                return out;
            }
        }
    }
}

std::uint64_t brute_force_tree_walks(const Cst& cst, const QueryPlan& plan) {
    const std::size_t n = plan.size();
    if (n > kMaxQueryVertices)
        throw GuardError("oracle refuses queries with more than " + std::to_string(kMaxQueryVertices) + " vertices");

    // Explicit stack of partial walks over the order; each frame remembers
    // which option of its own option list is being tried.
    struct Frame {
        std::vector<VertexId> options;
        std::size_t next = 0;
    };
    std::vector<VertexId> chosen(cst.query_size());
    std::vector<Frame> stack;
    stack.push_back({cst.candidates[plan.order[0]], 0});
    std::uint64_t count = 0;
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next == top.options.size()) {
            stack.pop_back();
            continue;
        }
        const std::size_t depth = stack.size() - 1;
        const VertexId u = plan.order[depth];
        chosen[u] = top.options[top.next++];
        if (depth + 1 == n) {
            ++count;
            continue;
        }
        const VertexId child = plan.order[depth + 1];
        const VertexId parent = plan.parent[child];
        const auto& pc = cst.candidates[parent];
        const auto pos = std::lower_bound(pc.begin(), pc.end(), chosen[parent]) - pc.begin();
        stack.push_back({cst.tree_adj[child][static_cast<std::size_t>(pos)], 0});
    }
    return count;
}

}  // namespace fast::oracle
