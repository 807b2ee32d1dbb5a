#pragma once

#include "fast/kernel.hpp"

#include <span>
#include <string>
#include <vector>

namespace fast {

/// Dependency of a pipeline stage on a producer stage in the same round.
struct StageDep {
    enum class Kind {
        barrier,     ///< wait for every producer item
        same_index,  ///< item k waits for producer item k
        modulo,      ///< item k waits for producer item k % param
        last_slot,   ///< item k waits for producer item (param - 1) * items + k
    };
    std::size_t producer = 0;
    Kind kind = Kind::barrier;
    std::size_t param = 0;
};

/// A fully pipelined loop: one item issued per cycle, each finishing
/// latency cycles after issue.
struct Stage {
    std::string name;
    double latency = 1;
    std::size_t items = 0;
    std::vector<StageDep> deps;
};

struct StageTiming {
    double start = 0;   ///< issue time of the first item
    double finish = 0;  ///< completion time of the last item
};

/// Event-driven schedule of one round's stage graph starting at time origin.
/// Stages must be listed after all of their producers.
std::vector<StageTiming> schedule_stages(std::span<const Stage> stages, double origin = 0);

/// Stage graph of one round for the given variant: read P, generate p_o/t_v,
/// visited validate, generate t_n, edge validate, synchronize.
std::vector<Stage> round_stages(const RoundTrace& round, Variant variant, const CycleModel& model);

inline constexpr std::size_t kPipelineStages = 6;

/// Pipeline-fill allowance: stages x max L_i per round.
double fill_slack(std::size_t rounds, const CycleModel& model);

/// Makespan of the whole trace; rounds execute back to back because each
/// round reads what the previous one synchronized.
double simulate_dataflow_schedule(std::span<const RoundTrace> trace, Variant variant, const CycleModel& model);

}  // namespace fast
