#pragma once

// Definition-level ground truth for tests and the hidden `oracle` subcommand.
// Nothing here touches CST construction or the kernel.

#include "fast/cst.hpp"
#include "fast/graph.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fast::oracle {

inline constexpr std::size_t kMaxQueryVertices = 8;
inline constexpr std::size_t kMaxDataVertices = 200;

class GuardError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every injective, label- and edge-preserving mapping, as tuples in the
/// given order, sorted. Recursive extension with per-step edge checks.
std::vector<Embedding> brute_force_embeddings(const Graph& query, const Graph& data, std::span<const VertexId> order);

/// Same set, built without recursion: odometer over all injective
/// label-respecting tuples, then an edge filter. Exponential; keep inputs tiny.
std::vector<Embedding> enumerate_then_filter(const Graph& query, const Graph& data, std::span<const VertexId> order);

/// Assignments picking one candidate per query vertex such that every tree
/// edge is a CST tree edge; non-tree edges and injectivity are ignored.
std::uint64_t brute_force_tree_walks(const Cst& cst, const QueryPlan& plan);

}  // namespace fast::oracle
