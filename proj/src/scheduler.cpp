#include "fast/scheduler.hpp"

#include <algorithm>
#include <chrono>

namespace fast {

Side route_cst(SchedulerState& state, std::uint64_t w) {
    const auto wc = static_cast<double>(state.w_c);
    const auto total = static_cast<double>(state.w_c) + static_cast<double>(state.w_f) + static_cast<double>(w);
    const Side side = wc + static_cast<double>(w) < state.delta * total ? Side::host : Side::kernel;
    if (side == Side::host)
        state.w_c += w;
    else
        state.w_f += w;
    state.decisions.push_back({w, side});
    return side;
}

namespace {

class Backtracker {
public:
    Backtracker(const Cst& cst, const QueryPlan& plan, std::vector<Embedding>& out)
        : cst_(cst), plan_(plan), out_(out), mapping_(plan.size()) {}

    void run() {
        for (VertexId v : cst_.candidates[plan_.root]) {
            mapping_[0] = v;
            extend(1);
        }
    }

private:
    void extend(std::size_t depth) {
        if (depth == plan_.size()) {
            out_.push_back(mapping_);
            return;
        }
        const VertexId u = plan_.order[depth];
        const VertexId up = plan_.parent[u];
        const VertexId vp = mapping_[plan_.position[up]];
        for (VertexId v : cst_.tree_adj[u][*cst_.index_of(up, vp)]) {
            if (std::find(mapping_.begin(), mapping_.begin() + static_cast<std::ptrdiff_t>(depth), v) !=
                mapping_.begin() + static_cast<std::ptrdiff_t>(depth))
                continue;
            if (!non_tree_ok(u, v)) continue;
            mapping_[depth] = v;
            extend(depth + 1);
        }
    }

    bool non_tree_ok(VertexId u, VertexId v) const {
        if (plan_.earlier_non_tree[u].empty()) return true;
        const std::size_t i = *cst_.index_of(u, v);
        for (std::size_t j : plan_.earlier_non_tree[u]) {
            const VertexId target = mapping_[plan_.position[plan_.non_tree_neighbors[u][j]]];
            const auto& list = cst_.non_tree_adj[u][j][i];
            if (!std::binary_search(list.begin(), list.end(), target)) return false;
        }
        return true;
    }

    const Cst& cst_;
    const QueryPlan& plan_;
    std::vector<Embedding>& out_;
    Embedding mapping_;
};

}  // namespace

std::vector<Embedding> host_match(const Cst& cst, const QueryPlan& plan) {
    std::vector<Embedding> out;
    if (cst.has_empty_candidates()) return out;
    Backtracker(cst, plan, out).run();
    std::sort(out.begin(), out.end());
    return out;
}

JobResult run_job(const Graph& data, const Graph& query, const PartitionConfig& cfg, SchedulerState& state,
                  const JobOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    cfg.validate();
    if (options.n_o == 0) throw std::invalid_argument("N_o must be at least 1");
    if (options.dram_ratio < 1) throw std::invalid_argument("dram ratio must be at least 1");

    JobResult result;
    result.plan = build_query_plan(query, data);
    const QueryPlan& plan = result.plan;
    const Cst cst = construct_cst(data, query, plan);
    JobStats& stats = result.stats;

    std::vector<Embedding> kernel_out;
    const CycleModel dram_model = options.model.scaled(options.dram_ratio);
    auto run_kernel = [&](const Cst& piece) {
        KernelResult k = fast_enumerate(piece, plan, options.variant, options.n_o, options.model);
        ++stats.kernel_csts;
        stats.kernel_embeddings += k.embeddings.size();
        stats.n_total += k.model.n_total;
        stats.m_total += k.model.m_total;
        stats.rounds += k.rounds.size();
        stats.buffer_high_water = std::max(stats.buffer_high_water, k.buffer_high_water);
        stats.cycles_serial += cycle_estimate(k.model, Variant::serial, options.n_o);
        stats.cycles_basic += cycle_estimate(k.model, Variant::basic, options.n_o);
        stats.cycles_task += cycle_estimate(k.model, Variant::task, options.n_o);
        stats.cycles_sep += cycle_estimate(k.model, Variant::sep, options.n_o);
        CycleModel scaled = dram_model;
        scaled.n_total = k.model.n_total;
        scaled.m_total = k.model.m_total;
        stats.cycles_dram += cycle_estimate(scaled, Variant::basic, options.n_o);
        if (options.keep_trace) {
            for (auto r : k.rounds) {
                r.round = result.trace.size();
                result.trace.push_back(r);
            }
        }
        kernel_out.insert(kernel_out.end(), std::make_move_iterator(k.embeddings.begin()),
                          std::make_move_iterator(k.embeddings.end()));
    };

    stats.partitions = partition_cst(cst, plan, 0, cfg, [&](Cst&& piece) {
        const std::uint64_t w = estimate_workload(piece, plan).total;
        if (route_cst(state, w) == Side::host)
            state.host_queue.push_back(std::move(piece));
        else
            run_kernel(piece);
    });

    std::vector<Embedding> host_out;
    for (const Cst& piece : state.host_queue) {
        auto found = host_match(piece, plan);
        ++stats.host_csts;
        stats.host_embeddings += found.size();
        host_out.insert(host_out.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
    }
    state.host_queue.clear();

    result.embeddings = std::move(kernel_out);
    result.embeddings.insert(result.embeddings.end(), std::make_move_iterator(host_out.begin()),
                             std::make_move_iterator(host_out.end()));
    std::sort(result.embeddings.begin(), result.embeddings.end());

    stats.embeddings = result.embeddings.size();
    stats.w_c = state.w_c;
    stats.w_f = state.w_f;
    stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return result;
}

double selected_cycles(const JobStats& stats, Variant variant) {
    switch (variant) {
        case Variant::serial: return stats.cycles_serial;
        case Variant::basic: return stats.cycles_basic;
        case Variant::task: return stats.cycles_task;
        case Variant::sep: return stats.cycles_sep;
    }
    return 0;
}

nlohmann::json to_json(const JobStats& stats) {
    return nlohmann::json{
        {"embeddings", stats.embeddings},
        {"partitions", stats.partitions},
        {"w_c", stats.w_c},
        {"w_f", stats.w_f},
        {"cycles_basic", stats.cycles_basic},
        {"cycles_task", stats.cycles_task},
        {"cycles_sep", stats.cycles_sep},
        {"cycles_serial", stats.cycles_serial},
        {"cycles_dram", stats.cycles_dram},
        {"host_csts", stats.host_csts},
        {"kernel_csts", stats.kernel_csts},
        {"host_embeddings", stats.host_embeddings},
        {"kernel_embeddings", stats.kernel_embeddings},
        {"n_total", stats.n_total},
        {"m_total", stats.m_total},
        {"rounds", stats.rounds},
        {"buffer_high_water", stats.buffer_high_water},
        {"wall_ms", stats.wall_ms},
    };
}

}  // namespace fast
