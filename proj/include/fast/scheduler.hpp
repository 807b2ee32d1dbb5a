#pragma once

#include "fast/cst.hpp"
#include "fast/kernel.hpp"
#include "fast/partition.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fast {

enum class Side { host, kernel };

/// Host/kernel workload split. Only the routing thread mutates it.
struct SchedulerState {
    double delta = 0.1;
    std::uint64_t w_c = 0;
    std::uint64_t w_f = 0;
    std::vector<Cst> host_queue;  ///< cached until partitioning finishes

    struct Decision {
        std::uint64_t workload;
        Side side;
    };
    std::vector<Decision> decisions;
};

/// Host iff W_C + w < delta * (W_C + W_F + w); updates the matching accumulator.
Side route_cst(SchedulerState& state, std::uint64_t w);

/// Depth-first backtracking over the CST alone; sorted embeddings in
/// matching-order positions.
std::vector<Embedding> host_match(const Cst& cst, const QueryPlan& plan);

struct JobOptions {
    Variant variant = Variant::sep;
    std::size_t n_o = 1024;
    CycleModel model;
    double dram_ratio = 7;
    bool keep_trace = false;
};

struct JobStats {
    std::size_t embeddings = 0;
    std::size_t partitions = 0;
    std::size_t host_csts = 0;
    std::size_t kernel_csts = 0;
    std::size_t host_embeddings = 0;
    std::size_t kernel_embeddings = 0;
    std::uint64_t w_c = 0;
    std::uint64_t w_f = 0;
    std::uint64_t n_total = 0;
    std::uint64_t m_total = 0;
    std::size_t rounds = 0;
    std::size_t buffer_high_water = 0;
    /// Closed-form estimates summed over kernel CSTs (each CST runs to completion).
    double cycles_serial = 0;
    double cycles_basic = 0;
    double cycles_task = 0;
    double cycles_sep = 0;
    double cycles_dram = 0;  ///< BASIC with every L constant scaled by dram_ratio
    double wall_ms = 0;
};

struct JobResult {
    std::vector<Embedding> embeddings;  ///< sorted, in matching-order positions
    QueryPlan plan;
    JobStats stats;
    std::vector<RoundTrace> trace;  ///< kernel rounds across all CSTs when keep_trace
};

/// Plan, construct, partition, route, run both sides and merge.
JobResult run_job(const Graph& data, const Graph& query, const PartitionConfig& cfg, SchedulerState& state,
                  const JobOptions& options);

double selected_cycles(const JobStats& stats, Variant variant);

nlohmann::json to_json(const JobStats& stats);

}  // namespace fast
