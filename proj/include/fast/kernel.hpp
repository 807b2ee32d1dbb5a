#pragma once

#include "fast/cst.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace fast {

/// Pipeline organisation being costed. serial is the unpipelined reference.
enum class Variant { serial, basic, task, sep };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

/// Per-procedure average cycle constants plus the run counters.
///
/// l[0..5] hold L_1..L_6: read from P, generate p_o and t_v, process t_v,
/// collect p_o, generate t_n, process t_n.
struct CycleModel {
    std::array<double, 6> l{2, 2, 1, 1, 1, 1};
    std::uint64_t n_total = 0;  ///< N, every generated p_o
    std::uint64_t m_total = 0;  ///< M, every generated t_n

    double l_f() const { return l[0] + l[1] + l[2] + l[3]; }
    double l_t() const { return l[4] + l[5]; }

    /// Same counters, every constant multiplied by ratio (DRAM-resident CST).
    CycleModel scaled(double ratio) const;
};

/// Closed-form cycle estimate for the finalized counters.
double cycle_estimate(const CycleModel& model, Variant variant, std::size_t n_o);

/// Mapped prefix of the matching order.
struct PartialResult {
    std::vector<VertexId> vertices;
    std::size_t depth() const noexcept { return vertices.size(); }
    friend bool operator==(const PartialResult&, const PartialResult&) = default;
};

/// Buffered partial result; resume > 0 marks a continuation whose first
/// resume candidates were already expanded.
struct BufferEntry {
    PartialResult partial;
    std::size_t resume = 0;
};

/// Intermediate result buffer P: one FIFO per depth 1..|O|-1, each bounded by N_o.
class ResultBuffer {
public:
    ResultBuffer(std::size_t order_size, std::size_t n_o);

    /// Appends at the back of the level. Throws std::logic_error on overflow.
    void push(BufferEntry entry);
    /// Returns an entry to the front of its level (same bound applies).
    void push_front(BufferEntry entry);

    std::deque<BufferEntry>& level(std::size_t depth) { return levels_.at(depth - 1); }
    const std::deque<BufferEntry>& level(std::size_t depth) const { return levels_.at(depth - 1); }

    /// Deepest non-empty depth, or 0 when empty.
    std::size_t deepest() const;
    bool empty() const { return deepest() == 0; }

    std::size_t capacity() const noexcept { return levels_.size() * n_o_; }
    std::size_t n_o() const noexcept { return n_o_; }
    /// Largest occupancy any single level ever reached.
    std::size_t high_water() const noexcept { return high_water_; }

private:
    void check(std::size_t depth);

    std::vector<std::deque<BufferEntry>> levels_;
    std::size_t n_o_;
    std::size_t high_water_ = 0;
};

struct VisitedTask {
    VertexId candidate;
    std::size_t source;  ///< index into TaskBatch::inputs
};

struct EdgeTask {
    VertexId mapped;     ///< M(u), the new candidate
    VertexId neighbor;   ///< M(u_n), the earlier non-tree neighbor's image
    std::size_t output;  ///< index into TaskBatch::outputs
    std::size_t slot;    ///< j with u_n = non_tree_neighbors[u][j]
};

/// One Generator round: P_o, T_v, T_n and, once validated, B_v and B_n.
struct TaskBatch {
    VertexId vertex = 0;  ///< u, the query vertex being mapped
    std::vector<PartialResult> inputs;
    std::vector<PartialResult> outputs;
    std::vector<VisitedTask> visited_tasks;
    std::vector<EdgeTask> edge_tasks;
    std::vector<std::uint8_t> visited_bits;
    std::vector<std::uint8_t> edge_bits;
};

/// Pops inputs from the front of level (all of depth d, u = O[d]) and expands
/// them through the parent's candidate list until N_o outputs would be
/// exceeded. Unconsumed inputs go back to the front of level; a lone input
/// with more than N_o candidates is expanded N_o at a time via a continuation.
TaskBatch generate(std::deque<BufferEntry>& level, const Cst& cst, const QueryPlan& plan, std::size_t n_o);

std::vector<std::uint8_t> validate_visited(const std::vector<VisitedTask>& tasks,
                                           const std::vector<PartialResult>& sources);

std::vector<std::uint8_t> validate_edges(const Cst& cst, VertexId u, const std::vector<EdgeTask>& tasks,
                                         std::size_t batch_size);

/// Moves accepted outputs to embeddings (complete) or buffer (partial).
/// Returns the number accepted.
std::size_t synchronize(const TaskBatch& batch, ResultBuffer& buffer, std::vector<Embedding>& embeddings,
                        std::size_t order_size);

struct RoundTrace {
    std::size_t round = 0;
    std::size_t depth = 0;  ///< depth of the inputs expanded in this round
    std::size_t outputs = 0;
    std::size_t visited_tasks = 0;
    std::size_t edge_tasks = 0;
    std::size_t accepted = 0;
};

struct KernelResult {
    std::vector<Embedding> embeddings;  ///< sorted, in matching-order positions
    CycleModel model;                   ///< input constants with final counters
    std::vector<RoundTrace> rounds;
    std::size_t buffer_high_water = 0;
    double cycles = 0;  ///< cycle_estimate for the requested variant
};

/// Batched Generator / Validator / Synchronizer loop over one CST.
/// Throws std::invalid_argument if n_o is 0.
KernelResult fast_enumerate(const Cst& cst, const QueryPlan& plan, Variant variant, std::size_t n_o,
                            const CycleModel& model);

}  // namespace fast
