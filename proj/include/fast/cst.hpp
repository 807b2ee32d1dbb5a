#pragma once

#include "fast/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace fast {

inline constexpr VertexId kNoParent = static_cast<VertexId>(-1);

class QueryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// BFS spanning tree of the query plus a connected matching order.
///
/// Every query edge is either a tree edge (parent/children) or listed in both
/// endpoints' non_tree_neighbors. The order starts at the root and places each
/// vertex after its tree parent.
struct QueryPlan {
    VertexId root = 0;
    std::vector<VertexId> parent;
    std::vector<std::vector<VertexId>> children;
    std::vector<std::vector<VertexId>> non_tree_neighbors;
    std::vector<VertexId> order;
    std::vector<std::size_t> position;

    /// Slots j into non_tree_neighbors[u] whose neighbor precedes u in order.
    std::vector<std::vector<std::size_t>> earlier_non_tree;

    std::size_t size() const noexcept { return order.size(); }
    bool is_root(VertexId u) const { return parent[u] == kNoParent; }
    bool is_leaf(VertexId u) const { return children[u].empty(); }
};

/// Root = argmin |local candidates| / degree (ties by id), BFS tree from it,
/// path-based order. Throws QueryError for disconnected or single-vertex queries.
QueryPlan build_query_plan(const Graph& query, const Graph& data);

/// BFS tree from the given root with an explicit matching order. Throws
/// QueryError unless the order is a permutation that places every vertex
/// after its tree parent.
QueryPlan make_query_plan(const Graph& query, VertexId root, std::vector<VertexId> order);

/// Path-based order for a BFS tree: root-to-leaf paths sorted by ascending
/// product of per-vertex weights (ties: lexicographic vertex ids),
/// concatenated with already placed vertices skipped.
std::vector<VertexId> path_based_order(const QueryPlan& tree, std::span<const std::size_t> weights);

/// One list per candidate of the owning query vertex, aligned with C(u).
using AdjacencyLists = std::vector<std::vector<VertexId>>;

/// Candidate search tree. Sorted candidate sets per query vertex plus
/// candidate-level adjacency for every tree and non-tree query edge.
struct Cst {
    std::vector<std::vector<VertexId>> candidates;

    /// tree_adj[u][i] = N^{parent(u)}_u(candidates[parent(u)][i]); empty for the root.
    std::vector<AdjacencyLists> tree_adj;

    /// non_tree_adj[u][j][i] = N^u_{u_n}(candidates[u][i]) with u_n = non_tree_neighbors[u][j].
    std::vector<std::vector<AdjacencyLists>> non_tree_adj;

    std::size_t size_bytes = 0;
    std::size_t max_degree = 0;

    std::size_t query_size() const noexcept { return candidates.size(); }

    /// Position of v in C(u), if present.
    std::optional<std::size_t> index_of(VertexId u, VertexId v) const;

    /// True iff some C(u) is empty (the CST holds no embedding).
    bool has_empty_candidates() const;

    /// Recomputes size_bytes and max_degree.
    void refresh_metrics();

    friend bool operator==(const Cst&, const Cst&) = default;
};

/// Fixed bytes charged to every CST regardless of content.
inline constexpr std::size_t kCstHeaderBytes = 16;
inline constexpr std::size_t kListHeaderBytes = 8;
inline constexpr std::size_t kIdBytes = 4;

struct CstMetrics {
    std::size_t size_bytes = 0;
    std::size_t max_degree = 0;
    friend bool operator==(const CstMetrics&, const CstMetrics&) = default;
};

CstMetrics cst_metrics(const Cst& cst);

/// Top-down construction, bottom-up refinement, then non-tree candidate edges.
Cst construct_cst(const Graph& data, const Graph& query, const QueryPlan& plan);

/// Keeps only the listed candidates (each a sorted subset of the current
/// C(u)) and drops every adjacency entry that points at a removed candidate.
Cst restrict_cst(const Cst& cst, const QueryPlan& plan, std::vector<std::vector<VertexId>> keep);

/// Removes candidates with an empty child list (bottom-up), then candidates no
/// surviving parent candidate lists (top-down). Returns the refined CST.
Cst refine_cst(const Cst& cst, const QueryPlan& plan);

struct WorkloadTable {
    /// counts[u][i] = c_u(candidates[u][i]).
    std::vector<std::vector<std::uint64_t>> counts;
    std::uint64_t total = 0;
};

/// Bottom-up count of tree-only candidate walks. Saturates at UINT64_MAX.
WorkloadTable estimate_workload(const Cst& cst, const QueryPlan& plan);

void dump_cst(std::ostream& out, const Cst& cst, const QueryPlan& plan);

}  // namespace fast
