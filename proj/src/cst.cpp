#include "fast/cst.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace fast {

namespace {

bool contains(const std::vector<VertexId>& sorted, VertexId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::vector<VertexId> filter_sorted(const std::vector<VertexId>& list, const std::vector<VertexId>& keep) {
    std::vector<VertexId> out;
    std::set_intersection(list.begin(), list.end(), keep.begin(), keep.end(), std::back_inserter(out));
    return out;
}

/// Neighbors of v in the data graph that are members of the marked set.
std::vector<VertexId> marked_neighbors(const Graph& data, VertexId v, const std::vector<bool>& marked) {
    std::vector<VertexId> out;
    for (VertexId w : data.neighbors(v))
        if (marked[w]) out.push_back(w);
    return out;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > std::numeric_limits<std::uint64_t>::max() / b ? std::numeric_limits<std::uint64_t>::max() : a * b;
}

}  // namespace

std::optional<std::size_t> Cst::index_of(VertexId u, VertexId v) const {
    const auto& c = candidates[u];
    auto it = std::lower_bound(c.begin(), c.end(), v);
    if (it == c.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - c.begin());
}

bool Cst::has_empty_candidates() const {
    return std::any_of(candidates.begin(), candidates.end(), [](const auto& c) { return c.empty(); });
}

CstMetrics cst_metrics(const Cst& cst) {
    CstMetrics m;
    m.size_bytes = kCstHeaderBytes;
    auto charge = [&m](const std::vector<VertexId>& list) {
        m.size_bytes += kListHeaderBytes + kIdBytes * list.size();
    };
    for (const auto& c : cst.candidates) charge(c);
    for (const auto& lists : cst.tree_adj) {
        for (const auto& list : lists) {
            charge(list);
            m.max_degree = std::max(m.max_degree, list.size());
        }
    }
    for (const auto& slots : cst.non_tree_adj) {
        for (const auto& lists : slots) {
            for (const auto& list : lists) {
                charge(list);
                m.max_degree = std::max(m.max_degree, list.size());
            }
        }
    }
    return m;
}

void Cst::refresh_metrics() {
    auto m = cst_metrics(*this);
    size_bytes = m.size_bytes;
    max_degree = m.max_degree;
}

Cst restrict_cst(const Cst& cst, const QueryPlan& plan, std::vector<std::vector<VertexId>> keep) {
    const std::size_t n = cst.query_size();
    Cst out;
    out.candidates = std::move(keep);
    out.tree_adj.assign(n, {});
    out.non_tree_adj.assign(n, {});

    for (VertexId u = 0; u < n; ++u) {
        if (plan.is_root(u)) continue;
        const VertexId p = plan.parent[u];
        auto& lists = out.tree_adj[u];
        lists.reserve(out.candidates[p].size());
        for (VertexId vp : out.candidates[p]) {
            auto i = cst.index_of(p, vp);
            lists.push_back(filter_sorted(cst.tree_adj[u][*i], out.candidates[u]));
        }
    }
    for (VertexId u = 0; u < n; ++u) {
        const auto& nt = plan.non_tree_neighbors[u];
        if (cst.non_tree_adj[u].empty()) continue;
        out.non_tree_adj[u].resize(nt.size());
        for (std::size_t j = 0; j < nt.size(); ++j) {
            auto& lists = out.non_tree_adj[u][j];
            lists.reserve(out.candidates[u].size());
            for (VertexId v : out.candidates[u]) {
                auto i = cst.index_of(u, v);
                lists.push_back(filter_sorted(cst.non_tree_adj[u][j][*i], out.candidates[nt[j]]));
            }
        }
    }
    out.refresh_metrics();
    return out;
}

Cst refine_cst(const Cst& cst, const QueryPlan& plan) {
    const std::size_t n = cst.query_size();
    std::vector<std::vector<VertexId>> keep(n);

    // Bottom-up: a candidate survives only if every child list still holds a
    // surviving child candidate.
    for (auto it = plan.order.rbegin(); it != plan.order.rend(); ++it) {
        const VertexId u = *it;
        const auto& c = cst.candidates[u];
        for (std::size_t i = 0; i < c.size(); ++i) {
            bool valid = true;
            for (VertexId child : plan.children[u]) {
                const auto& list = cst.tree_adj[child][i];
                const auto& alive = keep[child];
                bool any = std::any_of(list.begin(), list.end(), [&](VertexId w) { return contains(alive, w); });
                if (!any) {
                    valid = false;
                    break;
                }
            }
            if (valid) keep[u].push_back(c[i]);
        }
    }

    // Top-down: drop candidates that no surviving parent candidate reaches.
    for (VertexId u : plan.order) {
        if (plan.is_root(u)) continue;
        const VertexId p = plan.parent[u];
        std::vector<VertexId> reached;
        for (VertexId vp : keep[p]) {
            const auto& list = cst.tree_adj[u][*cst.index_of(p, vp)];
            reached.insert(reached.end(), list.begin(), list.end());
        }
        std::sort(reached.begin(), reached.end());
        reached.erase(std::unique(reached.begin(), reached.end()), reached.end());
        keep[u] = filter_sorted(keep[u], reached);
    }
    return restrict_cst(cst, plan, std::move(keep));
}

Cst construct_cst(const Graph& data, const Graph& query, const QueryPlan& plan) {
    const std::size_t n = query.vertex_count();
    Cst cst;
    cst.candidates.resize(n);
    cst.tree_adj.assign(n, {});
    cst.non_tree_adj.assign(n, {});
    for (VertexId u = 0; u < n; ++u) cst.candidates[u] = candidates_by_local_features(data, query, u);

    std::vector<bool> marked(data.vertex_count(), false);
    auto mark = [&marked](const std::vector<VertexId>& set, bool value) {
        for (VertexId v : set) marked[v] = value;
    };

    // Top-down construction of the tree edges.
    for (VertexId u : plan.order) {
        if (plan.is_root(u)) continue;
        const VertexId p = plan.parent[u];
        mark(cst.candidates[u], true);
        auto& lists = cst.tree_adj[u];
        lists.reserve(cst.candidates[p].size());
        for (VertexId vp : cst.candidates[p]) lists.push_back(marked_neighbors(data, vp, marked));
        mark(cst.candidates[u], false);
    }

    cst = refine_cst(cst, plan);

    // Edges between non-tree candidate neighbors, on the refined sets.
    for (VertexId u = 0; u < n; ++u) {
        const auto& nt = plan.non_tree_neighbors[u];
        cst.non_tree_adj[u].resize(nt.size());
        for (std::size_t j = 0; j < nt.size(); ++j) {
            mark(cst.candidates[nt[j]], true);
            auto& lists = cst.non_tree_adj[u][j];
            lists.reserve(cst.candidates[u].size());
            for (VertexId v : cst.candidates[u]) lists.push_back(marked_neighbors(data, v, marked));
            mark(cst.candidates[nt[j]], false);
        }
    }
    cst.refresh_metrics();
    return cst;
}

WorkloadTable estimate_workload(const Cst& cst, const QueryPlan& plan) {
    const std::size_t n = cst.query_size();
    WorkloadTable table;
    table.counts.resize(n);
    for (auto it = plan.order.rbegin(); it != plan.order.rend(); ++it) {
        const VertexId u = *it;
        auto& counts = table.counts[u];
        counts.assign(cst.candidates[u].size(), 1);
        for (VertexId child : plan.children[u]) {
            for (std::size_t i = 0; i < counts.size(); ++i) {
                std::uint64_t sum = 0;
                for (VertexId w : cst.tree_adj[child][i])
                    sum = saturating_add(sum, table.counts[child][*cst.index_of(child, w)]);
                counts[i] = saturating_mul(counts[i], sum);
            }
        }
    }
    for (std::uint64_t c : table.counts[plan.root]) table.total = saturating_add(table.total, c);
    return table;
}

void dump_cst(std::ostream& out, const Cst& cst, const QueryPlan& plan) {
    auto write_list = [&out](const std::vector<VertexId>& list) {
        for (VertexId v : list) out << ' ' << v;
        out << '\n';
    };
    for (VertexId u : plan.order) {
        out << "C(" << u << "):";
        write_list(cst.candidates[u]);
    }
    for (VertexId u : plan.order) {
        if (plan.is_root(u)) continue;
        const VertexId p = plan.parent[u];
        for (std::size_t i = 0; i < cst.candidates[p].size(); ++i) {
            out << "N[" << p << "->" << u << "][" << cst.candidates[p][i] << "]:";
            write_list(cst.tree_adj[u][i]);
        }
    }
    for (VertexId u : plan.order) {
        const auto& nt = plan.non_tree_neighbors[u];
        for (std::size_t j = 0; j < nt.size() && j < cst.non_tree_adj[u].size(); ++j) {
            for (std::size_t i = 0; i < cst.candidates[u].size(); ++i) {
                out << "N[" << u << "->" << nt[j] << "][" << cst.candidates[u][i] << "]:";
                write_list(cst.non_tree_adj[u][j][i]);
            }
        }
    }
}

}  // namespace fast
