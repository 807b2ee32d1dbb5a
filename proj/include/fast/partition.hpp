#pragma once

#include "fast/cst.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace fast {

/// Budgets a CST must meet before it is handed to a matcher.
struct PartitionConfig {
    std::size_t delta_s = 256 * 1024;  ///< |CST| byte budget
    std::size_t delta_d = 16;          ///< D_CST budget
    std::size_t port_max = 16;         ///< hard cap on delta_d
    std::optional<std::size_t> fixed_k; ///< overrides the ratio rule when set

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

/// Raised when budgets are still violated after every vertex of the order has
/// been reduced to a single candidate.
class UnsplittableError : public std::runtime_error {
public:
    UnsplittableError(VertexId vertex, const std::string& what) : std::runtime_error(what), vertex_(vertex) {}
    VertexId vertex() const noexcept { return vertex_; }

private:
    VertexId vertex_;
};

bool within_budget(const Cst& cst, const PartitionConfig& cfg);

/// k = min(ceil(max(|CST| / delta_s, D_CST / delta_d)), |C(u)|), at least 1.
/// A configured fixed_k replaces the ratio term.
std::size_t compute_partition_factor(const Cst& cst, const PartitionConfig& cfg, VertexId u);

/// Splits the sorted list into k contiguous chunks whose sizes differ by at most one.
std::vector<std::vector<VertexId>> split_evenly(const std::vector<VertexId>& sorted, std::size_t k);

/// Restricts C(u) to part. Vertices before u in the order keep their sets;
/// vertices after u keep only candidates adjacent to a retained candidate of
/// every earlier query neighbor. All lists are re-restricted. A part equal
/// to C(u) returns the input unchanged.
Cst project_cst(const Cst& cst, const QueryPlan& plan, VertexId u, const std::vector<VertexId>& part);

using CstSink = std::function<void(Cst&&)>;

/// Recursively splits cst starting at order position index until every piece
/// meets the budgets; each piece is passed to sink. Returns the piece count.
std::size_t partition_cst(const Cst& cst, const QueryPlan& plan, std::size_t index, const PartitionConfig& cfg,
                          const CstSink& sink);

}  // namespace fast
