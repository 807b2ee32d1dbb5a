#include "fast/kernel.hpp"
#include "fast/oracle.hpp"
#include "fast/partition.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace fast;
using fast::test_support::fixture;
namespace ts = fast::test_support;

namespace {

constexpr Variant kVariants[] = {Variant::basic, Variant::task, Variant::sep};

struct Example6 {
    Graph data = load_graph(fixture("fig4_data.graph"));
    Graph query = load_graph(fixture("fig4_query.graph"));
    QueryPlan plan = make_query_plan(query, 0, {0, 1, 2, 3});
    Cst cst = project_cst(construct_cst(data, query, plan), plan, 0, {1});

    TaskBatch run_generate(std::size_t n_o = 1024) {
        std::deque<BufferEntry> level{{PartialResult{{1, 3}}, 0}, {PartialResult{{1, 5}}, 0}};
        return generate(level, cst, plan, n_o);
    }
};

std::vector<PartialResult> partials(std::initializer_list<std::vector<VertexId>> rows) {
    std::vector<PartialResult> out;
    for (const auto& r : rows) out.push_back(PartialResult{r});
    return out;
}

/// Reference acceptance: injective prefix plus every earlier non-tree data edge.
bool direct_predicate(const Graph& data, const QueryPlan& plan, const PartialResult& p) {
    const std::size_t last = p.depth() - 1;
    for (std::size_t i = 0; i < last; ++i)
        if (p.vertices[i] == p.vertices[last]) return false;
    const VertexId u = plan.order[last];
    for (std::size_t j : plan.earlier_non_tree[u])
        if (!data.has_edge(p.vertices[last], p.vertices[plan.position[plan.non_tree_neighbors[u][j]]])) return false;
    return true;
}

}  // namespace

TEST(CycleEstimate, EmptyWorkloadIsZero) {
    CycleModel m;
    for (auto v : {Variant::serial, Variant::basic, Variant::task, Variant::sep})
        EXPECT_EQ(cycle_estimate(m, v, 1024), 0.0);
}

TEST(CycleEstimate, WorkedNumbers) {
    CycleModel m;
    m.l = {5, 5, 5, 5, 5, 5};  // L_f = 20, L_t = 10
    m.n_total = 100;
    m.m_total = 100;
    EXPECT_DOUBLE_EQ(cycle_estimate(m, Variant::serial, 1000), 3000);
    EXPECT_DOUBLE_EQ(cycle_estimate(m, Variant::basic, 1000), 603);
    EXPECT_DOUBLE_EQ(cycle_estimate(m, Variant::task, 1000), 300);
    EXPECT_DOUBLE_EQ(cycle_estimate(m, Variant::sep, 1000), 200);
}

TEST(CycleEstimate, AgreesWithIndependentFormulaAndOrdering) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 5000; ++trial) {
        CycleModel m;
        for (auto& l : m.l) l = 1 + uniform01(rng) * 9;
        m.n_total = uniform_below(rng, 1'000'000);
        m.m_total = uniform_below(rng, 1'000'000);
        const std::size_t n_o = 1 + uniform_below(rng, 4096);
        const long double n = m.n_total, mm = m.m_total;
        const long double lf = m.l[0] + m.l[1] + m.l[2] + m.l[3], lt = m.l[4] + m.l[5];
        const long double serial = n * lf + mm * lt;
        const long double basic = serial / n_o + 4 * n + 2 * mm;
        const long double task = 2 * n + (n > mm ? n : mm);
        const long double sep = n + (n > mm ? n : mm);
        const double b = cycle_estimate(m, Variant::basic, n_o);
        const double t = cycle_estimate(m, Variant::task, n_o);
        const double s = cycle_estimate(m, Variant::sep, n_o);
        EXPECT_NEAR(b, static_cast<double>(basic), 1e-9 * static_cast<double>(basic) + 1e-9);
        EXPECT_DOUBLE_EQ(t, static_cast<double>(task));
        EXPECT_DOUBLE_EQ(s, static_cast<double>(sep));
        EXPECT_LE(s, t);
        EXPECT_LE(t, b);
        // Task-over-basic reaches 50% exactly once the serial / N_o term is
        // negligible; with finite N_o it overshoots by at most half that term's share.
        const double pipelined = 4.0 * static_cast<double>(m.n_total) + 2.0 * static_cast<double>(m.m_total);
        if (pipelined > 0) {
            EXPECT_LE(1 - t / pipelined, 0.5 + 1e-9);
        }
        if (b > 0) {
            EXPECT_LE(1 - t / b, 0.5 + 0.5 * (b - pipelined) / b + 1e-9);
        }
        if (t > 0) {
            EXPECT_LE(1 - s / t, 1.0 / 3 + 1e-9);
        }
    }
}

TEST(CycleEstimate, ScaledMultipliesEveryConstant) {
    CycleModel m;
    auto s = m.scaled(7);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(s.l[i], m.l[i] * 7);
}

TEST(ResultBuffer, OverflowIsFatal) {
    ResultBuffer b(3, 2);
    b.push({PartialResult{{1}}, 0});
    b.push({PartialResult{{2}}, 0});
    EXPECT_THROW(b.push({PartialResult{{3}}, 0}), std::logic_error);
    EXPECT_EQ(b.capacity(), 4u);
    EXPECT_EQ(b.deepest(), 1u);
    EXPECT_THROW(ResultBuffer(3, 0), std::invalid_argument);
}

TEST(Generate, ExampleSixBatch) {
    Example6 ex;
    auto batch = ex.run_generate();
    EXPECT_EQ(batch.vertex, 2u);
    EXPECT_EQ(batch.outputs, partials({{1, 3, 6}, {1, 3, 8}, {1, 5, 6}, {1, 5, 8}}));
    ASSERT_EQ(batch.visited_tasks.size(), 4u);
    ASSERT_EQ(batch.edge_tasks.size(), 4u);
    const std::pair<VertexId, VertexId> expected_tn[] = {{3, 6}, {3, 8}, {5, 6}, {5, 8}};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(batch.edge_tasks[i].neighbor, expected_tn[i].first);
        EXPECT_EQ(batch.edge_tasks[i].mapped, expected_tn[i].second);
        EXPECT_EQ(batch.edge_tasks[i].output, i);
    }
}

TEST(Validate, ExampleSixBits) {
    Example6 ex;
    auto batch = ex.run_generate();
    EXPECT_EQ(validate_visited(batch.visited_tasks, batch.inputs), (std::vector<std::uint8_t>{1, 1, 1, 1}));
    EXPECT_EQ(validate_edges(ex.cst, batch.vertex, batch.edge_tasks, 4), (std::vector<std::uint8_t>{1, 0, 0, 1}));
}

TEST(Synchronize, ExampleSixAcceptsTwo) {
    Example6 ex;
    auto batch = ex.run_generate();
    batch.visited_bits = validate_visited(batch.visited_tasks, batch.inputs);
    batch.edge_bits = validate_edges(ex.cst, batch.vertex, batch.edge_tasks, 4);
    ResultBuffer buffer(4, 1024);
    std::vector<Embedding> done;
    EXPECT_EQ(synchronize(batch, buffer, done, 4), 2u);
    EXPECT_TRUE(done.empty());
    ASSERT_EQ(buffer.level(3).size(), 2u);
    EXPECT_EQ(buffer.level(3)[0].partial.vertices, (std::vector<VertexId>{1, 3, 6}));
    EXPECT_EQ(buffer.level(3)[1].partial.vertices, (std::vector<VertexId>{1, 5, 8}));
}

TEST(Synchronize, AllBitsZeroChangesNothing) {
    Example6 ex;
    auto batch = ex.run_generate();
    batch.visited_bits.assign(4, 0);
    batch.edge_bits.assign(4, 1);
    ResultBuffer buffer(4, 1024);
    std::vector<Embedding> done;
    EXPECT_EQ(synchronize(batch, buffer, done, 4), 0u);
    EXPECT_TRUE(buffer.empty());
    EXPECT_TRUE(done.empty());
}

TEST(Validate, RevisitAndVacuousEdges) {
    std::vector<PartialResult> src = partials({{4, 7}});
    EXPECT_EQ(validate_visited({{4, 0}, {9, 0}}, src), (std::vector<std::uint8_t>{0, 1}));
    Cst empty;
    EXPECT_EQ(validate_edges(empty, 0, {}, 3), (std::vector<std::uint8_t>{1, 1, 1}));
}

TEST(Generate, BatchBoundAndContinuation) {
    // Root with 5 children; N_o = 2 forces a continuation.
    Graph q = ts::make_graph({0, 1}, {{0, 1}});
    Graph data = ts::make_graph({0, 1, 1, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    auto plan = make_query_plan(q, 0, {0, 1});
    auto cst = construct_cst(data, q, plan);
    std::deque<BufferEntry> level{{PartialResult{{0}}, 0}};
    std::vector<VertexId> seen;
    for (int round = 0; round < 3; ++round) {
        auto batch = generate(level, cst, plan, 2);
        EXPECT_LE(batch.outputs.size(), 2u);
        for (const auto& o : batch.outputs) seen.push_back(o.vertices[1]);
    }
    EXPECT_TRUE(level.empty());
    EXPECT_EQ(seen, (std::vector<VertexId>{1, 2, 3, 4, 5}));
}

TEST(Generate, RandomBatchesRecount) {
    std::mt19937_64 rng(67);
    int batches = 0;
    for (int trial = 0; trial < 80; ++trial) {
        auto inst = ts::random_instance(rng);
        auto plan = build_query_plan(inst.query, inst.data);
        auto cst = construct_cst(inst.data, inst.query, plan);
        if (cst.has_empty_candidates()) continue;
        const std::size_t n_o = 1 + uniform_below(rng, 16);
        // Drive a real run and check every round's batch.
        ResultBuffer buffer(plan.size(), n_o);
        std::vector<Embedding> done;
        std::size_t cursor = 0;
        const auto& roots = cst.candidates[plan.root];
        for (int round = 0; round < 400; ++round) {
            if (buffer.empty()) {
                if (cursor >= roots.size()) break;
                for (std::size_t end = std::min(roots.size(), cursor + n_o); cursor < end; ++cursor)
                    buffer.push({PartialResult{{roots[cursor]}}, 0});
            }
            auto batch = generate(buffer.level(buffer.deepest()), cst, plan, n_o);
            ++batches;
            const VertexId u = batch.vertex;
            EXPECT_LE(batch.outputs.size(), n_o);
            EXPECT_EQ(batch.visited_tasks.size(), batch.outputs.size());
            EXPECT_EQ(batch.edge_tasks.size(), batch.outputs.size() * plan.earlier_non_tree[u].size());
            for (const auto& t : batch.edge_tasks) EXPECT_LT(t.output, batch.outputs.size());

            batch.visited_bits = validate_visited(batch.visited_tasks, batch.inputs);
            batch.edge_bits = validate_edges(cst, u, batch.edge_tasks, batch.outputs.size());
            std::size_t popcount = 0;
            for (std::size_t i = 0; i < batch.outputs.size(); ++i) {
                const auto& src = batch.inputs[batch.visited_tasks[i].source].vertices;
                const bool fresh = std::find(src.begin(), src.end(), batch.visited_tasks[i].candidate) == src.end();
                EXPECT_EQ(batch.visited_bits[i], fresh ? 1 : 0);
                const bool valid = batch.visited_bits[i] && batch.edge_bits[i];
                EXPECT_EQ(valid, direct_predicate(inst.data, plan, batch.outputs[i]));
                popcount += valid;
            }
            EXPECT_EQ(synchronize(batch, buffer, done, plan.size()), popcount);
        }
    }
    EXPECT_GT(batches, 200);
}

TEST(FastEnumerate, FigureOneTwoEmbeddings) {
    Graph data = load_graph(fixture("fig1_data.graph"));
    Graph query = load_graph(fixture("fig1_query.graph"));
    auto plan = build_query_plan(query, data);
    auto cst = construct_cst(data, query, plan);
    for (auto v : kVariants) {
        auto r = fast_enumerate(cst, plan, v, 1024, CycleModel{});
        EXPECT_EQ(r.embeddings, (std::vector<Embedding>{{1, 4, 3, 9}, {2, 6, 5, 10}}));
    }
}

TEST(FastEnumerate, StraightChainHasNoEdgeTasks) {
    Graph q = ts::make_graph({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}});
    Graph data = ts::make_graph({0, 1, 2, 3, 2}, {{0, 1}, {1, 2}, {2, 3}, {1, 4}});
    auto plan = make_query_plan(q, 0, {0, 1, 2, 3});
    auto cst = construct_cst(data, q, plan);
    auto r = fast_enumerate(cst, plan, Variant::sep, 4, CycleModel{});
    EXPECT_EQ(r.embeddings.size(), 1u);
    EXPECT_EQ(r.model.m_total, 0u);
}

TEST(FastEnumerate, RejectsZeroBatchBound) {
    Graph data = load_graph(fixture("fig1_data.graph"));
    Graph query = load_graph(fixture("fig1_query.graph"));
    auto plan = build_query_plan(query, data);
    EXPECT_THROW(fast_enumerate(construct_cst(data, query, plan), plan, Variant::sep, 0, CycleModel{}),
                 std::invalid_argument);
}

TEST(FastEnumerate, MatchesOracleAcrossVariantsAndBatchBounds) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = ts::random_instance(rng);
        auto plan = build_query_plan(inst.query, inst.data);
        auto cst = construct_cst(inst.data, inst.query, plan);
        const auto expect = oracle::brute_force_embeddings(inst.query, inst.data, plan.order);
        if (expect.size() > 20000) continue;
        for (std::size_t n_o : {1u, 3u, 1024u}) {
            for (auto v : kVariants) {
                auto r = fast_enumerate(cst, plan, v, n_o, CycleModel{});
                ASSERT_EQ(r.embeddings, expect) << "trial " << trial << " N_o " << n_o;
                EXPECT_LE(r.buffer_high_water, n_o);
                std::uint64_t n = 0, m = 0;
                for (const auto& round : r.rounds) {
                    n += round.outputs;
                    m += round.edge_tasks;
                    EXPECT_EQ(round.visited_tasks, round.outputs);
                }
                EXPECT_EQ(r.model.n_total, n);
                EXPECT_EQ(r.model.m_total, m);
                EXPECT_DOUBLE_EQ(r.cycles, cycle_estimate(r.model, v, n_o));
            }
        }
    }
}
