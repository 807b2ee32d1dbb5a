// Command-line driver: run, compare, gen, and the hidden oracle subcommand.

#include "fast/dataflow.hpp"
#include "fast/generate.hpp"
#include "fast/graph.hpp"
#include "fast/oracle.hpp"
#include "fast/scheduler.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace {

using nlohmann::json;

struct RunConfig {
    std::string data_path;
    std::string query_path;
    std::string variant = "sep";
    std::size_t delta_s = 256 * 1024;
    std::size_t delta_d = 16;
    std::size_t port_max = 16;
    std::size_t n_o = 1024;
    std::optional<double> delta;
    std::optional<std::size_t> fixed_k;
    std::string l_consts = "2,2,1,1,1,1";
    double dram_ratio = 7;
    std::string trace_path;
    bool json_output = false;
};

/// Failure carrying the error-object kind and process exit status.
struct CliError : std::runtime_error {
    CliError(std::string kind, int status, const std::string& what)
        : std::runtime_error(what), kind(std::move(kind)), status(status) {}
    std::string kind;
    int status;
};

fast::CycleModel parse_l_consts(const std::string& text) {
    fast::CycleModel model;
    std::stringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= model.l.size()) throw CliError("config", 2, "--l-consts takes exactly six values");
        try {
            std::size_t used = 0;
            model.l[i] = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CliError("config", 2, "--l-consts: '" + item + "' is not a number");
        }
        if (!(model.l[i] >= 1) || !std::isfinite(model.l[i]))
            throw CliError("config", 2, "--l-consts values must be finite and at least 1");
        ++i;
    }
    if (i != model.l.size()) throw CliError("config", 2, "--l-consts takes exactly six values");
    return model;
}

/// Kernel variant and host share implied by a variant name; share is SEP
/// with the host taking up to delta of the workload.
std::pair<fast::Variant, double> resolve_variant(const std::string& name, std::optional<double> delta) {
    if (name == "share") {
        const double d = delta.value_or(0.1);
        if (d <= 0) throw CliError("config", 2, "variant share needs --delta > 0");
        return {fast::Variant::sep, d};
    }
    auto v = fast::parse_variant(name);
    if (!v || *v == fast::Variant::serial)
        throw CliError("config", 2, "unknown variant '" + name + "' (basic, task, sep, share)");
    return {*v, delta.value_or(0.0)};
}

fast::PartitionConfig partition_config(const RunConfig& cfg) {
    fast::PartitionConfig pc{cfg.delta_s, cfg.delta_d, cfg.port_max, cfg.fixed_k};
    try {
        pc.validate();
    } catch (const std::invalid_argument& e) {
        throw CliError("config", 2, e.what());
    }
    return pc;
}

struct Inputs {
    fast::Graph data;
    fast::Graph query;
};

Inputs load_inputs(const RunConfig& cfg) {
    auto load = [](const std::string& path, const char* role) {
        try {
            return fast::load_graph(path);
        } catch (const fast::GraphParseError& e) {
            throw CliError("parse", 3, std::string(role) + " " + path + ": " + e.what());
        } catch (const std::runtime_error& e) {
            throw CliError("io", 3, e.what());
        }
    };
    return {load(cfg.data_path, "data"), load(cfg.query_path, "query")};
}

json run_once(const Inputs& in, const RunConfig& cfg, const std::string& variant_name, std::optional<double> delta,
              std::vector<fast::RoundTrace>* trace) {
    auto [variant, share] = resolve_variant(variant_name, delta);
    if (share < 0 || share > 1) throw CliError("config", 2, "--delta must lie in [0, 1]");
    if (cfg.n_o == 0) throw CliError("config", 2, "--no must be at least 1");
    if (!(cfg.dram_ratio >= 1)) throw CliError("config", 2, "--dram-ratio must be at least 1");

    fast::JobOptions opts;
    opts.variant = variant;
    opts.n_o = cfg.n_o;
    opts.model = parse_l_consts(cfg.l_consts);
    opts.dram_ratio = cfg.dram_ratio;
    opts.keep_trace = trace != nullptr;

    fast::SchedulerState state;
    state.delta = share;
    fast::JobResult result;
    try {
        result = fast::run_job(in.data, in.query, partition_config(cfg), state, opts);
    } catch (const fast::QueryError& e) {
        throw CliError("query", 2, e.what());
    } catch (const fast::UnsplittableError& e) {
        throw CliError("unsplittable", 4, e.what());
    }
    if (trace) *trace = std::move(result.trace);

    json report = fast::to_json(result.stats);
    for (const char* key : {"cycles_basic", "cycles_task", "cycles_sep", "cycles_serial", "cycles_dram"})
        report[key] = std::round(report[key].get<double>());
    report["variant"] = variant_name;
    report["delta"] = share;
    report["cycles"] = std::round(fast::selected_cycles(result.stats, variant));
    report["n_o"] = cfg.n_o;
    if (cfg.fixed_k) report["k"] = *cfg.fixed_k;
    return report;
}

void write_trace(const std::string& path, const std::vector<fast::RoundTrace>& trace) {
    std::ofstream out(path);
    if (!out) throw CliError("io", 1, "cannot write trace file " + path);
    out << "round,depth,outputs,visited_tasks,edge_tasks,accepted\n";
    for (const auto& r : trace)
        out << r.round << ',' << r.depth << ',' << r.outputs << ',' << r.visited_tasks << ',' << r.edge_tasks << ','
            << r.accepted << '\n';
}

int cmd_run(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg);
    std::vector<fast::RoundTrace> trace;
    json report = run_once(in, cfg, cfg.variant, cfg.delta, cfg.trace_path.empty() ? nullptr : &trace);
    if (!cfg.trace_path.empty()) write_trace(cfg.trace_path, trace);
    std::cout << report.dump(2) << '\n';
    return 0;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::stringstream one(item);
        T value{};
        if (!(one >> value) || !one.eof()) throw CliError("config", 2, std::string(flag) + ": bad value '" + item + "'");
        out.push_back(value);
    }
    return out;
}

int cmd_compare(RunConfig cfg, const std::string& variants, const std::string& deltas, const std::string& ks) {
    Inputs in = load_inputs(cfg);
    std::vector<std::string> names;
    {
        std::stringstream ss(variants);
        std::string item;
        while (std::getline(ss, item, ',')) names.push_back(item);
    }
    std::vector<std::optional<double>> delta_rows;
    if (deltas.empty())
        delta_rows.push_back(cfg.delta);
    else
        for (double d : parse_list<double>(deltas, "--deltas")) delta_rows.emplace_back(d);
    std::vector<std::optional<std::size_t>> k_rows{cfg.fixed_k};
    if (!ks.empty()) {
        k_rows = {std::nullopt};
        for (std::size_t k : parse_list<std::size_t>(ks, "--ks")) k_rows.emplace_back(k);
    }

    json rows = json::array();
    for (const auto& name : names) {
        for (const auto& delta : delta_rows) {
            for (const auto& k : k_rows) {
                cfg.fixed_k = k;
                json r = run_once(in, cfg, name, delta, nullptr);
                rows.push_back({{"variant", name},
                                {"delta", r["delta"]},
                                {"k", k ? json(*k) : json("auto")},
                                {"cycles", r["cycles"]},
                                {"wall_ms", r["wall_ms"]},
                                {"embeddings", r["embeddings"]},
                                {"partitions", r["partitions"]}});
            }
        }
    }
    if (cfg.json_output) {
        std::cout << rows.dump(2) << '\n';
        return 0;
    }
    std::cout << "variant,delta,k,cycles,wall_ms,embeddings,partitions\n";
    for (const auto& r : rows) {
        std::cout << r["variant"].get<std::string>() << ',' << r["delta"].get<double>() << ','
                  << (r["k"].is_string() ? r["k"].get<std::string>() : std::to_string(r["k"].get<std::size_t>()))
                  << ',' << r["cycles"].get<double>() << ',' << r["wall_ms"].get<double>() << ','
                  << r["embeddings"].get<std::size_t>() << ',' << r["partitions"].get<std::size_t>() << '\n';
    }
    return 0;
}

int cmd_gen(fast::GenParams params, const std::string& out_path) {
    fast::Graph g;
    try {
        g = fast::generate_graph(params);
    } catch (const std::invalid_argument& e) {
        throw CliError("config", 2, e.what());
    }
    if (out_path.empty()) {
        fast::write_graph(std::cout, g);
        return 0;
    }
    try {
        fast::save_graph(out_path, g);
    } catch (const std::runtime_error& e) {
        throw CliError("io", 1, e.what());
    }
    return 0;
}

int cmd_oracle(const RunConfig& cfg) {
    Inputs in = load_inputs(cfg);
    std::vector<fast::VertexId> order(in.query.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::vector<fast::Embedding> found;
    try {
        found = fast::oracle::brute_force_embeddings(in.query, in.data, order);
    } catch (const fast::oracle::GuardError& e) {
        throw CliError("config", 2, e.what());
    }
    std::cout << json{{"embeddings", found.size()}, {"mappings", found}}.dump(2) << '\n';
    return 0;
}

void add_job_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--data", cfg.data_path, "data graph file")->required();
    cmd->add_option("--query", cfg.query_path, "query graph file")->required();
    cmd->add_option("--delta-s", cfg.delta_s, "CST byte budget");
    cmd->add_option("--delta-d", cfg.delta_d, "CST max-degree budget");
    cmd->add_option("--port-max", cfg.port_max, "array port limit (caps --delta-d)");
    cmd->add_option("--no", cfg.n_o, "per-round output bound N_o");
    cmd->add_option("--delta", cfg.delta, "host workload share in [0, 1]");
    cmd->add_option("--k", cfg.fixed_k, "fixed partition factor (>= 2)");
    cmd->add_option("--l-consts", cfg.l_consts, "cycle constants L1..L6, comma separated");
    cmd->add_option("--dram-ratio", cfg.dram_ratio, "DRAM/BRAM read latency ratio");
    cmd->add_flag("--json", cfg.json_output, "JSON output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CST-partitioned subgraph matching with a modeled FPGA pipeline"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto* run = app.add_subcommand("run", "match one query and print a JSON report");
    add_job_flags(run, cfg);
    run->add_option("--variant", cfg.variant, "basic, task, sep or share");
    run->add_option("--trace", cfg.trace_path, "write per-round CSV trace here");

    std::string variants = "basic,task,sep";
    std::string deltas;
    std::string ks;
    auto* compare = app.add_subcommand("compare", "sweep variants, delta and k; print CSV");
    add_job_flags(compare, cfg);
    compare->add_option("--variants", variants, "comma-separated variants");
    compare->add_option("--deltas", deltas, "comma-separated delta values");
    compare->add_option("--ks", ks, "comma-separated fixed k values (an automatic row is added)");

    fast::GenParams gen_params;
    double p = -1;
    double gamma = -1;
    std::string out_path;
    auto* gen = app.add_subcommand("gen", "write a random labeled graph");
    gen->add_option("--n", gen_params.vertices, "vertex count")->required();
    auto* p_opt = gen->add_option("--p", p, "edge probability (G(n,p))");
    auto* g_opt = gen->add_option("--gamma", gamma, "power-law exponent (Chung-Lu)");
    p_opt->excludes(g_opt);
    gen->add_option("--avg-degree", gen_params.average_degree, "target average degree (power-law mode)");
    gen->add_option("--labels", gen_params.labels, "label alphabet size")->required();
    gen->add_option("--seed", gen_params.seed, "RNG seed");
    gen->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* oracle = app.add_subcommand("oracle", "");
    oracle->group("");
    oracle->add_option("--data", cfg.data_path)->required();
    oracle->add_option("--query", cfg.query_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) return cmd_run(cfg);
        if (*compare) return cmd_compare(cfg, variants, deltas, ks);
        if (*gen) {
            if (p_opt->count() > 0) gen_params.edge_probability = p;
            if (g_opt->count() > 0) gen_params.power_law_exponent = gamma;
            if (!gen_params.edge_probability && !gen_params.power_law_exponent) gen_params.edge_probability = 0.1;
            return cmd_gen(gen_params, out_path);
        }
        if (*oracle) return cmd_oracle(cfg);
    } catch (const CliError& e) {
        std::cout << json{{"error", {{"kind", e.kind}, {"message", e.what()}}}}.dump() << '\n';
        return e.status;
    } catch (const std::exception& e) {
        std::cout << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << '\n';
        return 1;
    }
    return 0;
}
