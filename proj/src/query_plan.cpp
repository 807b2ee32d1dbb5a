#include "fast/cst.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace fast {

namespace {

/// BFS from root visiting neighbors in ascending id order; the first
/// discoverer becomes the parent.
QueryPlan bfs_tree(const Graph& query, VertexId root) {
    const std::size_t n = query.vertex_count();
    if (n < 2) throw QueryError("query needs at least two vertices");
    if (root >= n) throw QueryError("root " + std::to_string(root) + " is not a query vertex");

    QueryPlan plan;
    plan.root = root;
    plan.parent.assign(n, kNoParent);
    plan.children.assign(n, {});
    plan.non_tree_neighbors.assign(n, {});

    std::vector<bool> seen(n, false);
    std::queue<VertexId> frontier;
    frontier.push(root);
    seen[root] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        VertexId u = frontier.front();
        frontier.pop();
        for (VertexId w : query.neighbors(u)) {
            if (seen[w]) continue;
            seen[w] = true;
            ++reached;
            plan.parent[w] = u;
            plan.children[u].push_back(w);
            frontier.push(w);
        }
    }
    if (reached != n) throw QueryError("query graph is disconnected");

    for (VertexId u = 0; u < n; ++u) {
        for (VertexId w : query.neighbors(u)) {
            if (plan.parent[u] == w || plan.parent[w] == u) continue;
            plan.non_tree_neighbors[u].push_back(w);
        }
    }
    return plan;
}

void attach_order(QueryPlan& plan, std::vector<VertexId> order) {
    const std::size_t n = plan.parent.size();
    if (order.size() != n) throw QueryError("matching order must list every query vertex once");
    plan.position.assign(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < n; ++i) {
        VertexId u = order[i];
        if (u >= n || plan.position[u] != std::numeric_limits<std::size_t>::max())
            throw QueryError("matching order is not a permutation of the query vertices");
        plan.position[u] = i;
    }
    if (order.front() != plan.root) throw QueryError("matching order must start at the root");
    for (VertexId u = 0; u < n; ++u) {
        if (!plan.is_root(u) && plan.position[plan.parent[u]] > plan.position[u])
            throw QueryError("vertex " + std::to_string(u) + " precedes its tree parent in the matching order");
    }
    plan.order = std::move(order);
    plan.earlier_non_tree.assign(n, {});
    for (VertexId u = 0; u < n; ++u) {
        const auto& nt = plan.non_tree_neighbors[u];
        for (std::size_t j = 0; j < nt.size(); ++j)
            if (plan.position[nt[j]] < plan.position[u]) plan.earlier_non_tree[u].push_back(j);
    }
}

}  // namespace

std::vector<VertexId> path_based_order(const QueryPlan& tree, std::span<const std::size_t> weights) {
    struct Path {
        std::vector<VertexId> vertices;
        long double cost = 1;
    };
    std::vector<Path> paths;
    std::vector<std::pair<VertexId, Path>> stack{{tree.root, Path{{tree.root}, static_cast<long double>(weights[tree.root])}}};
    while (!stack.empty()) {
        auto [u, path] = std::move(stack.back());
        stack.pop_back();
        if (tree.is_leaf(u)) {
            paths.push_back(std::move(path));
            continue;
        }
        for (VertexId c : tree.children[u]) {
            Path next = path;
            next.vertices.push_back(c);
            next.cost *= static_cast<long double>(weights[c]);
            stack.emplace_back(c, std::move(next));
        }
    }
    std::sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.vertices < b.vertices;
    });

    std::vector<VertexId> order;
    std::vector<bool> placed(tree.parent.size(), false);
    for (const auto& path : paths) {
        for (VertexId u : path.vertices) {
            if (placed[u]) continue;
            placed[u] = true;
            order.push_back(u);
        }
    }
    return order;
}

QueryPlan make_query_plan(const Graph& query, VertexId root, std::vector<VertexId> order) {
    QueryPlan plan = bfs_tree(query, root);
    attach_order(plan, std::move(order));
    return plan;
}

QueryPlan build_query_plan(const Graph& query, const Graph& data) {
    const std::size_t n = query.vertex_count();
    if (n < 2) throw QueryError("query needs at least two vertices");
    if (!query.connected()) throw QueryError("query graph is disconnected");

    std::vector<std::size_t> counts(n);
    for (VertexId u = 0; u < n; ++u) counts[u] = candidates_by_local_features(data, query, u).size();

    // Compare |C(u)| / d(u) by cross-multiplication; connected queries have d(u) >= 1.
    VertexId root = 0;
    for (VertexId u = 1; u < n; ++u) {
        if (counts[u] * query.degree(root) < counts[root] * query.degree(u)) root = u;
    }

    QueryPlan plan = bfs_tree(query, root);
    attach_order(plan, path_based_order(plan, counts));
    return plan;
}

}  // namespace fast
