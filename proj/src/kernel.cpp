#include "fast/kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace fast {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::serial: return "serial";
        case Variant::basic: return "basic";
        case Variant::task: return "task";
        case Variant::sep: return "sep";
    }
    return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
    if (name == "serial") return Variant::serial;
    if (name == "basic") return Variant::basic;
    if (name == "task") return Variant::task;
    if (name == "sep") return Variant::sep;
    return std::nullopt;
}

CycleModel CycleModel::scaled(double ratio) const {
    CycleModel out = *this;
    for (double& c : out.l) c *= ratio;
    return out;
}

double cycle_estimate(const CycleModel& model, Variant variant, std::size_t n_o) {
    const auto n = static_cast<double>(model.n_total);
    const auto m = static_cast<double>(model.m_total);
    const double serial = n * model.l_f() + m * model.l_t();
    switch (variant) {
        case Variant::serial: return serial;
        case Variant::basic: return serial / static_cast<double>(n_o) + 4 * n + 2 * m;
        case Variant::task: return 2 * n + std::max(n, m);
        case Variant::sep: return n + std::max(n, m);
    }
    return 0;
}

ResultBuffer::ResultBuffer(std::size_t order_size, std::size_t n_o) : levels_(order_size - 1), n_o_(n_o) {
    if (order_size < 2) throw std::invalid_argument("result buffer needs at least two query vertices");
    if (n_o == 0) throw std::invalid_argument("N_o must be at least 1");
}

void ResultBuffer::check(std::size_t depth) {
    auto& q = level(depth);
    if (q.size() > n_o_)
        throw std::logic_error("result buffer overflow at depth " + std::to_string(depth) + " (" +
                               std::to_string(q.size()) + " > N_o=" + std::to_string(n_o_) + ")");
    high_water_ = std::max(high_water_, q.size());
}

void ResultBuffer::push(BufferEntry entry) {
    const std::size_t d = entry.partial.depth();
    level(d).push_back(std::move(entry));
    check(d);
}

void ResultBuffer::push_front(BufferEntry entry) {
    const std::size_t d = entry.partial.depth();
    level(d).push_front(std::move(entry));
    check(d);
}

std::size_t ResultBuffer::deepest() const {
    for (std::size_t d = levels_.size(); d > 0; --d)
        if (!levels_[d - 1].empty()) return d;
    return 0;
}

TaskBatch generate(std::deque<BufferEntry>& level, const Cst& cst, const QueryPlan& plan, std::size_t n_o) {
    TaskBatch batch;
    if (level.empty()) return batch;
    const std::size_t depth = level.front().partial.depth();
    const VertexId u = plan.order[depth];
    const VertexId up = plan.parent[u];
    const std::size_t up_pos = plan.position[up];
    batch.vertex = u;

    auto expand = [&](const PartialResult& source, const std::vector<VertexId>& list, std::size_t from,
                      std::size_t to) {
        const std::size_t src = batch.inputs.size();
        batch.inputs.push_back(source);
        for (std::size_t k = from; k < to; ++k) {
            PartialResult out = source;
            out.vertices.push_back(list[k]);
            batch.outputs.push_back(std::move(out));
            batch.visited_tasks.push_back({list[k], src});
        }
    };

    while (batch.outputs.size() < n_o && !level.empty()) {
        BufferEntry entry = std::move(level.front());
        level.pop_front();
        const VertexId vp = entry.partial.vertices[up_pos];
        const auto& list = cst.tree_adj[u][*cst.index_of(up, vp)];
        const std::size_t remaining = list.size() - entry.resume;
        if (batch.outputs.size() + remaining > n_o) {
            if (batch.outputs.empty()) {
                // Oversized list: map N_o candidates now, requeue the rest.
                expand(entry.partial, list, entry.resume, entry.resume + n_o);
                entry.resume += n_o;
            }
            level.push_front(std::move(entry));
            break;
        }
        expand(entry.partial, list, entry.resume, list.size());
    }

    const auto& nt = plan.non_tree_neighbors[u];
    for (std::size_t j : plan.earlier_non_tree[u]) {
        const std::size_t nb_pos = plan.position[nt[j]];
        for (std::size_t i = 0; i < batch.outputs.size(); ++i) {
            const auto& po = batch.outputs[i].vertices;
            batch.edge_tasks.push_back({po.back(), po[nb_pos], i, j});
        }
    }
    return batch;
}

std::vector<std::uint8_t> validate_visited(const std::vector<VisitedTask>& tasks,
                                           const std::vector<PartialResult>& sources) {
    std::vector<std::uint8_t> bits;
    bits.reserve(tasks.size());
    for (const auto& t : tasks) {
        const auto& mapped = sources[t.source].vertices;
        std::uint8_t b = 1;
        for (VertexId v : mapped) b &= static_cast<std::uint8_t>(v != t.candidate);
        bits.push_back(b);
    }
    return bits;
}

std::vector<std::uint8_t> validate_edges(const Cst& cst, VertexId u, const std::vector<EdgeTask>& tasks,
                                         std::size_t batch_size) {
    std::vector<std::uint8_t> bits(batch_size, 1);
    for (const auto& t : tasks) {
        const auto i = cst.index_of(u, t.mapped);
        std::uint8_t b = 0;
        if (i) {
            const auto& list = cst.non_tree_adj[u][t.slot][*i];
            b = std::binary_search(list.begin(), list.end(), t.neighbor) ? 1 : 0;
        }
        bits[t.output] &= b;
    }
    return bits;
}

std::size_t synchronize(const TaskBatch& batch, ResultBuffer& buffer, std::vector<Embedding>& embeddings,
                        std::size_t order_size) {
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < batch.outputs.size(); ++i) {
        if (!batch.visited_bits[i] || !batch.edge_bits[i]) continue;
        ++accepted;
        const auto& po = batch.outputs[i];
        if (po.depth() == order_size)
            embeddings.push_back(po.vertices);
        else
            buffer.push(BufferEntry{po, 0});
    }
    return accepted;
}

KernelResult fast_enumerate(const Cst& cst, const QueryPlan& plan, Variant variant, std::size_t n_o,
                            const CycleModel& model) {
    if (n_o == 0) throw std::invalid_argument("N_o must be at least 1");
    KernelResult result;
    result.model = model;
    result.model.n_total = 0;
    result.model.m_total = 0;

    const std::size_t order_size = plan.size();
    ResultBuffer buffer(order_size, n_o);
    const auto& roots = cst.candidates[plan.root];
    std::size_t root_cursor = 0;

    for (;;) {
        if (buffer.empty()) {
            if (root_cursor >= roots.size()) break;
            const std::size_t end = std::min(roots.size(), root_cursor + n_o);
            for (; root_cursor < end; ++root_cursor) buffer.push(BufferEntry{PartialResult{{roots[root_cursor]}}, 0});
        }
        const std::size_t depth = buffer.deepest();
        TaskBatch batch = generate(buffer.level(depth), cst, plan, n_o);
        batch.visited_bits = validate_visited(batch.visited_tasks, batch.inputs);
        batch.edge_bits = validate_edges(cst, batch.vertex, batch.edge_tasks, batch.outputs.size());
        const std::size_t accepted = synchronize(batch, buffer, result.embeddings, order_size);

        result.model.n_total += batch.outputs.size();
        result.model.m_total += batch.edge_tasks.size();
        result.rounds.push_back(RoundTrace{result.rounds.size(), depth, batch.outputs.size(),
                                           batch.visited_tasks.size(), batch.edge_tasks.size(), accepted});
    }

    std::sort(result.embeddings.begin(), result.embeddings.end());
    result.buffer_high_water = buffer.high_water();
    result.cycles = cycle_estimate(result.model, variant, n_o);
    return result;
}

}  // namespace fast
