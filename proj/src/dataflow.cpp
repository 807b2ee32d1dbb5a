#include "fast/dataflow.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>

namespace fast {

namespace {

constexpr std::size_t kNoItem = static_cast<std::size_t>(-1);

struct Event {
    double time;
    std::size_t seq;
    std::size_t stage;
    std::size_t item;
    bool operator>(const Event& o) const { return time != o.time ? time > o.time : seq > o.seq; }
};

}  // namespace

std::vector<StageTiming> schedule_stages(std::span<const Stage> stages, double origin) {
    const std::size_t count = stages.size();
    for (std::size_t s = 0; s < count; ++s)
        for (const auto& d : stages[s].deps)
            if (d.producer >= s) throw std::invalid_argument("stage " + stages[s].name + " depends on a later stage");

    std::vector<std::vector<double>> done(count);
    std::vector<std::size_t> completed(count, 0);
    std::vector<std::size_t> next(count, 0);
    std::vector<double> last_issue(count, origin - 1);
    std::vector<StageTiming> timing(count, StageTiming{origin, origin});
    std::vector<bool> finished(count, false);
    for (std::size_t s = 0; s < count; ++s) done[s].assign(stages[s].items, -1);

    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    std::size_t seq = 0;

    // Earliest issue time of stage s's next item, or nullopt while blocked.
    auto ready_time = [&](std::size_t s) -> std::optional<double> {
        const Stage& st = stages[s];
        const std::size_t k = next[s];
        double t = std::max(origin, last_issue[s] + 1);
        for (const auto& d : st.deps) {
            const Stage& prod = stages[d.producer];
            std::size_t need = 0;
            bool whole = d.kind == StageDep::Kind::barrier || prod.items == 0;
            if (!whole) {
                switch (d.kind) {
                    case StageDep::Kind::same_index: need = k; break;
                    case StageDep::Kind::modulo: need = k % std::max<std::size_t>(d.param, 1); break;
                    case StageDep::Kind::last_slot: need = (d.param == 0 ? 0 : (d.param - 1) * st.items) + k; break;
                    case StageDep::Kind::barrier: break;
                }
                if (need >= prod.items) whole = true;
            }
            if (whole) {
                if (!finished[d.producer]) return std::nullopt;
                t = std::max(t, timing[d.producer].finish);
            } else {
                if (done[d.producer][need] < 0) return std::nullopt;
                t = std::max(t, done[d.producer][need]);
            }
        }
        return t;
    };

    // Issues as many items of stage s as its dependencies currently allow;
    // consecutive issues are at least one cycle apart.
    auto try_issue = [&](std::size_t s) {
        if (finished[s]) return;
        if (stages[s].items == 0) {
            auto t = ready_time(s);
            if (!t) return;
            timing[s] = {*t, *t};
            finished[s] = true;
            events.push({*t, seq++, s, kNoItem});
            return;
        }
        while (next[s] < stages[s].items) {
            auto t = ready_time(s);
            if (!t) return;
            if (next[s] == 0) timing[s].start = *t;
            last_issue[s] = *t;
            events.push({*t + stages[s].latency, seq++, s, next[s]});
            ++next[s];
        }
    };

    for (std::size_t s = 0; s < count; ++s) try_issue(s);

    while (!events.empty()) {
        Event e = events.top();
        events.pop();
        const std::size_t s = e.stage;
        if (e.item != kNoItem) {
            done[s][e.item] = e.time;
            ++completed[s];
            if (completed[s] == stages[s].items) {
                finished[s] = true;
                timing[s].finish = e.time;
            }
        }
        try_issue(s);
        for (std::size_t c = s + 1; c < count; ++c) try_issue(c);
    }

    for (std::size_t s = 0; s < count; ++s)
        if (!finished[s]) throw std::logic_error("stage " + stages[s].name + " never completed");
    return timing;
}

std::vector<Stage> round_stages(const RoundTrace& round, Variant variant, const CycleModel& model) {
    using K = StageDep::Kind;
    const std::size_t n = round.outputs;
    const std::size_t m = round.edge_tasks;
    const std::size_t slots = n == 0 ? 0 : m / n;
    const auto& l = model.l;
    enum : std::size_t { read, gen_po, visited, gen_tn, edge, sync };

    std::vector<Stage> st{
        {"read", l[0], n, {}},
        {"gen_po_tv", l[1], n, {}},
        {"visited", l[2], round.visited_tasks, {}},
        {"gen_tn", l[4], m, {}},
        {"edge", l[5], m, {}},
        {"sync", l[3], n, {}},
    };

    switch (variant) {
        case Variant::serial:
            throw std::invalid_argument("the unpipelined reference has no stage schedule");
        case Variant::basic:
            st[gen_po].deps = {{read, K::barrier, 0}};
            st[visited].deps = {{gen_po, K::barrier, 0}};
            st[gen_tn].deps = {{visited, K::barrier, 0}};
            st[edge].deps = {{gen_tn, K::barrier, 0}};
            st[sync].deps = {{edge, K::barrier, 0}};
            break;
        case Variant::task:
            st[gen_po].deps = {{read, K::barrier, 0}};
            st[visited].deps = {{gen_po, K::same_index, 0}};
            st[gen_tn].deps = {{gen_po, K::barrier, 0}, {visited, K::barrier, 0}};
            st[edge].deps = {{gen_tn, K::same_index, 0}};
            st[sync].deps = {{gen_po, K::barrier, 0}, {visited, K::barrier, 0}};
            if (slots > 0) st[sync].deps.push_back({edge, K::last_slot, slots});
            break;
        case Variant::sep:
            st[gen_po].deps = {{read, K::barrier, 0}};
            st[visited].deps = {{gen_po, K::same_index, 0}};
            st[gen_tn].deps = {{gen_po, K::modulo, n}};
            st[edge].deps = {{gen_tn, K::same_index, 0}};
            st[sync].deps = {{visited, K::same_index, 0}};
            if (slots > 0) st[sync].deps.push_back({edge, K::last_slot, slots});
            break;
    }
    return st;
}

double fill_slack(std::size_t rounds, const CycleModel& model) {
    const double max_l = *std::max_element(model.l.begin(), model.l.end());
    return static_cast<double>(rounds) * static_cast<double>(kPipelineStages) * max_l;
}

double simulate_dataflow_schedule(std::span<const RoundTrace> trace, Variant variant, const CycleModel& model) {
    double clock = 0;
    for (const auto& round : trace) {
        auto stages = round_stages(round, variant, model);
        auto timing = schedule_stages(stages, clock);
        for (const auto& t : timing) clock = std::max(clock, t.finish);
    }
    return clock;
}

}  // namespace fast
