#include "fast/partition.hpp"

#include <algorithm>

namespace fast {

void PartitionConfig::validate() const {
    if (delta_s <= kCstHeaderBytes)
        throw std::invalid_argument("delta_s must exceed the " + std::to_string(kCstHeaderBytes) +
                                    "-byte CST header");
    if (delta_d < 1) throw std::invalid_argument("delta_d must be at least 1");
    if (delta_d > port_max) throw std::invalid_argument("delta_d may not exceed port_max");
    if (fixed_k && *fixed_k < 2) throw std::invalid_argument("fixed k must be at least 2");
}

bool within_budget(const Cst& cst, const PartitionConfig& cfg) {
    return cst.size_bytes <= cfg.delta_s && cst.max_degree <= cfg.delta_d;
}

std::size_t compute_partition_factor(const Cst& cst, const PartitionConfig& cfg, VertexId u) {
    std::size_t k = 0;
    if (cfg.fixed_k) {
        k = *cfg.fixed_k;
    } else {
        auto ceil_div = [](std::size_t a, std::size_t b) { return (a + b - 1) / b; };
        k = std::max(ceil_div(cst.size_bytes, cfg.delta_s), ceil_div(cst.max_degree, cfg.delta_d));
    }
    k = std::min(k, cst.candidates[u].size());
    return std::max<std::size_t>(k, 1);
}

std::vector<std::vector<VertexId>> split_evenly(const std::vector<VertexId>& sorted, std::size_t k) {
    std::vector<std::vector<VertexId>> parts;
    if (k == 0) return parts;
    const std::size_t base = sorted.size() / k;
    const std::size_t extra = sorted.size() % k;
    auto it = sorted.begin();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t len = base + (i < extra ? 1 : 0);
        parts.emplace_back(it, it + static_cast<std::ptrdiff_t>(len));
        it += static_cast<std::ptrdiff_t>(len);
    }
    return parts;
}

Cst project_cst(const Cst& cst, const QueryPlan& plan, VertexId u, const std::vector<VertexId>& part) {
    if (part == cst.candidates[u]) return cst;
    const std::size_t n = cst.query_size();
    std::vector<std::vector<VertexId>> keep(n);
    const std::size_t split_at = plan.position[u];
    for (std::size_t pos = 0; pos < split_at; ++pos) keep[plan.order[pos]] = cst.candidates[plan.order[pos]];
    keep[u] = part;

    std::vector<bool> ok;
    for (std::size_t pos = split_at + 1; pos < n; ++pos) {
        const VertexId w = plan.order[pos];
        const auto& c = cst.candidates[w];
        ok.assign(c.size(), false);

        // Tree parent always precedes w; mark what the retained parent candidates reach.
        const VertexId p = plan.parent[w];
        for (VertexId vp : keep[p]) {
            for (VertexId v : cst.tree_adj[w][*cst.index_of(p, vp)]) ok[*cst.index_of(w, v)] = true;
        }
        for (std::size_t j : plan.earlier_non_tree[w]) {
            const VertexId un = plan.non_tree_neighbors[w][j];
            const auto& alive = keep[un];
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (!ok[i]) continue;
                const auto& list = cst.non_tree_adj[w][j][i];
                ok[i] = std::any_of(list.begin(), list.end(),
                                    [&](VertexId x) { return std::binary_search(alive.begin(), alive.end(), x); });
            }
        }
        for (std::size_t i = 0; i < c.size(); ++i)
            if (ok[i]) keep[w].push_back(c[i]);
    }
    return restrict_cst(cst, plan, std::move(keep));
}

namespace {

std::size_t partition_from(const Cst& cst, const QueryPlan& plan, std::size_t index, const PartitionConfig& cfg,
                           const CstSink& sink) {
    const VertexId u = plan.order[index];
    const auto& c = cst.candidates[u];
    if (c.empty()) return 0;
    if (c.size() == 1) {
        if (index + 1 >= plan.size())
            throw UnsplittableError(u, "CST cannot be split below budgets (size " + std::to_string(cst.size_bytes) +
                                           " bytes, max degree " + std::to_string(cst.max_degree) +
                                           ") at query vertex " + std::to_string(u));
        return partition_from(cst, plan, index + 1, cfg, sink);
    }

    std::size_t emitted = 0;
    const std::size_t k = compute_partition_factor(cst, cfg, u);
    for (auto& part : split_evenly(c, k)) {
        Cst piece = project_cst(cst, plan, u, part);
        if (within_budget(piece, cfg)) {
            sink(std::move(piece));
            ++emitted;
        } else if (piece.candidates[u].size() == 1) {
            if (index + 1 >= plan.size())
                throw UnsplittableError(u, "CST cannot be split below budgets (size " +
                                               std::to_string(piece.size_bytes) + " bytes, max degree " +
                                               std::to_string(piece.max_degree) + ") at query vertex " +
                                               std::to_string(u));
            emitted += partition_from(piece, plan, index + 1, cfg, sink);
        } else {
            emitted += partition_from(piece, plan, index, cfg, sink);
        }
    }
    return emitted;
}

}  // namespace

std::size_t partition_cst(const Cst& cst, const QueryPlan& plan, std::size_t index, const PartitionConfig& cfg,
                          const CstSink& sink) {
    cfg.validate();
    if (index >= plan.size()) throw std::out_of_range("partition index past the end of the matching order");
    if (within_budget(cst, cfg)) {
        sink(Cst(cst));
        return 1;
    }
    return partition_from(cst, plan, index, cfg, sink);
}

}  // namespace fast
