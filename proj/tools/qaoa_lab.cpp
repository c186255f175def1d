#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qaoa/classical.hpp"
#include "qaoa/errors.hpp"
#include "qaoa/graph.hpp"
#include "qaoa/harness.hpp"
#include "qaoa/metrics.hpp"
#include "qaoa/optimize.hpp"
#include "qaoa/seeding.hpp"
#include "qaoa/sim.hpp"

namespace {

std::string format_cut_value(const qaoa::Graph& g, double value) {
    char buf[40];
    if (g.integral_weights() && value == static_cast<double>(std::llround(value))) {
        std::snprintf(buf, sizeof buf, "%.1f", value);
    } else {
        std::snprintf(buf, sizeof buf, "%.10g", value);
    }
    return buf;
}

void cmd_gen(int n, int count, int degree, std::uint64_t seed, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
        // Same derivation the sweep harness uses, so gen reproduces its graphs.
        qaoa::Graph g = qaoa::generate_regular(n, degree, qaoa::graph_seed(seed, n, i));
        std::string path = out_dir + "/n" + std::to_string(n) + "_g" + std::to_string(i) + ".txt";
        qaoa::write_graph_file(g, path);
        std::cout << path << "\n";
    }
}

void cmd_cuts(const std::string& graph_path, const std::string& source, int count,
              std::uint64_t seed) {
    qaoa::Graph g = qaoa::read_graph_file(graph_path);
    qaoa::CutSource src = qaoa::parse_cut_source(source);
    std::cout << "bitstring,value\n";
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = qaoa::child_seed(seed, qaoa::seed_stream::cut, i);
        qaoa::CutAssignment cut = src == qaoa::CutSource::random_lo
                                      ? qaoa::random_lo_cut(g, s)
                                      : qaoa::gw_local_search_cut(g, s);
        std::cout << qaoa::format_bits(cut.bits) << ',' << format_cut_value(g, cut.value) << "\n";
    }
}

void cmd_oracle(const std::string& graph_path) {
    qaoa::Graph g = qaoa::read_graph_file(graph_path);
    qaoa::MaxCutResult mc = qaoa::max_cut_brute_force(g);
    std::cout << "max_cut " << format_cut_value(g, mc.value) << "\n";
    std::cout << "optima " << mc.optima.size() << "\n";
    for (std::uint64_t x : mc.optima) {
        std::cout << qaoa::format_bits(qaoa::index_to_bits(x, g.n)) << "\n";
    }
}

struct OptimizeArgs {
    std::string graph_path;
    std::string bits;
    std::string source = "random_lo";
    double theta = 60.0;
    std::string mixer = "aligned";
    std::string objective = "expectation";
    std::string strategy = "grid_then_refine";
    int depth = 1;
    std::uint64_t seed = 12345;
    int iterations = 0;
    double refine_tolerance = 1e-8;
    int refine_max_evals = 2000;
    int grid_gamma = 40;
    int grid_beta = 40;
};

void cmd_optimize(const OptimizeArgs& a) {
    qaoa::Graph g = qaoa::read_graph_file(a.graph_path);
    qaoa::CutAssignment cut;
    if (!a.bits.empty()) {
        qaoa::Bits b = qaoa::parse_bits(a.bits);
        if (static_cast<int>(b.size()) != g.n)
            throw qaoa::Error("bitstring length does not match graph order");
        cut = qaoa::make_cut_assignment(g, std::move(b));
    } else {
        std::uint64_t s = qaoa::child_seed(a.seed, qaoa::seed_stream::cut, 0);
        cut = qaoa::parse_cut_source(a.source) == qaoa::CutSource::random_lo
                  ? qaoa::random_lo_cut(g, s)
                  : qaoa::gw_local_search_cut(g, s);
    }

    qaoa::CutTable table = qaoa::build_cut_table(g);
    qaoa::MaxCutResult mc = qaoa::max_cut_brute_force(g);

    qaoa::Objective obj;
    obj.table = &table;
    obj.warm = qaoa::WarmStart{cut.bits, a.theta};
    obj.mixer = qaoa::parse_mixer(a.mixer);
    obj.depth = a.depth;
    obj.kind = qaoa::parse_objective(a.objective);
    obj.reference_cut = cut.value;

    qaoa::OptimizerConfig ocfg;
    ocfg.strategy = qaoa::parse_strategy(a.strategy);
    ocfg.iterations = a.iterations > 0
                          ? a.iterations
                          : (obj.kind == qaoa::ObjectiveKind::bsp ? 200 : 50);
    ocfg.grid_gamma = a.grid_gamma;
    ocfg.grid_beta = a.grid_beta;
    ocfg.refine_tolerance = a.refine_tolerance;
    ocfg.refine_max_evals = a.refine_max_evals;
    ocfg.seed = a.seed;

    qaoa::OptResult best = qaoa::optimize(obj, ocfg);
    qaoa::CircuitParams params = obj.unpack(best.params);
    qaoa::Statevector sv = qaoa::qaoa_state(table, obj.warm, params, obj.mixer);
    qaoa::MetricReport rep =
        qaoa::score_state(sv, table, cut.value, mc.value, &mc.optima);

    nlohmann::json out{
        {"bitstring", qaoa::format_bits(cut.bits)},
        {"theta", a.theta},
        {"mixer", qaoa::to_string(obj.mixer)},
        {"objective", qaoa::to_string(obj.kind)},
        {"strategy", qaoa::to_string(ocfg.strategy)},
        {"gammas", params.gammas},
        {"betas", params.betas},
        {"value", best.value},
        {"evals", best.evals},
        {"expectation", rep.expectation},
        {"approx_ratio", rep.approximation_ratio.value_or(0.0)},
        {"gsp", rep.gsp.value_or(0.0)},
        {"bsp", rep.bsp},
        {"cut_b", cut.value},
        {"max_cut", mc.value},
    };
    std::cout << out.dump(2) << "\n";
}

void cmd_report(const std::string& records_path, const std::string& group_by,
                const std::string& out_path) {
    auto records = qaoa::read_records_file(records_path);
    std::string table = qaoa::aggregate_csv(records, qaoa::parse_group_by(group_by));
    if (out_path.empty()) {
        std::cout << table;
    } else {
        std::ofstream out(out_path);
        if (!out) throw qaoa::Error("cannot open output: " + out_path);
        out << table;
        std::cout << "wrote " << out_path << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"warm-start QAOA Max-Cut statevector lab"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate random regular graphs to files");
    int gen_n = 8, gen_count = 1, gen_degree = 3;
    std::uint64_t gen_seed = 12345;
    std::string gen_out = ".";
    gen->add_option("-n,--vertices", gen_n, "vertex count")->required();
    gen->add_option("-c,--count", gen_count, "number of graphs");
    gen->add_option("-d,--degree", gen_degree, "regular degree");
    gen->add_option("-s,--seed", gen_seed, "master seed");
    gen->add_option("-o,--out-dir", gen_out, "output directory");
    gen->callback([&] { cmd_gen(gen_n, gen_count, gen_degree, gen_seed, gen_out); });

    auto* cuts = app.add_subcommand("cuts", "classical warm-start cuts for a graph");
    std::string cuts_graph, cuts_source = "random_lo";
    int cuts_count = 1;
    std::uint64_t cuts_seed = 12345;
    cuts->add_option("graph", cuts_graph, "graph file")->required();
    cuts->add_option("--source", cuts_source, "random_lo or gw_lo");
    cuts->add_option("-c,--count", cuts_count, "number of cuts");
    cuts->add_option("-s,--seed", cuts_seed, "seed");
    cuts->callback([&] { cmd_cuts(cuts_graph, cuts_source, cuts_count, cuts_seed); });

    auto* sweep = app.add_subcommand("sweep", "run a full experiment from a JSON config");
    std::string sweep_config, sweep_out;
    std::uint64_t sweep_seed = 0;
    int sweep_workers = 0;
    sweep->add_option("config", sweep_config, "JSON config file")->required();
    sweep->add_option("--seed", sweep_seed, "override master_seed");
    sweep->add_option("--out", sweep_out, "override records_csv");
    sweep->add_option("--workers", sweep_workers, "worker threads (0 = auto)");
    sweep->callback([&] {
        qaoa::ExperimentConfig cfg = qaoa::load_config(sweep_config);
        if (sweep->count("--seed")) cfg.master_seed = sweep_seed;
        if (!sweep_out.empty()) cfg.records_csv = sweep_out;
        qaoa::run_sweep_to_file(cfg, sweep_workers);
        std::cout << "wrote " << cfg.records_csv << "\n";
    });

    auto* opt = app.add_subcommand("optimize", "optimize one (graph, bitstring, theta) instance");
    OptimizeArgs oa;
    opt->add_option("graph", oa.graph_path, "graph file")->required();
    opt->add_option("--bits", oa.bits, "warm-start bitstring (default: draw from --source)");
    opt->add_option("--source", oa.source, "random_lo or gw_lo");
    opt->add_option("--theta", oa.theta, "tilt angle in degrees");
    opt->add_option("--mixer", oa.mixer, "aligned or pauli_x");
    opt->add_option("--objective", oa.objective, "expectation or bsp");
    opt->add_option("--strategy", oa.strategy,
                    "basin_hop, grid, grid_then_refine, region_seeds_then_refine");
    opt->add_option("--depth", oa.depth, "QAOA rounds");
    opt->add_option("-s,--seed", oa.seed, "seed");
    opt->add_option("--iterations", oa.iterations, "basin hop rounds (0 = default)");
    opt->add_option("--refine-tolerance", oa.refine_tolerance, "simplex stop tolerance");
    opt->add_option("--refine-max-evals", oa.refine_max_evals, "refinement eval budget");
    opt->add_option("--grid-gamma", oa.grid_gamma, "grid cells along gamma");
    opt->add_option("--grid-beta", oa.grid_beta, "grid cells along beta");
    opt->callback([&] { cmd_optimize(oa); });

    auto* report = app.add_subcommand("report", "aggregate a records CSV into plot data");
    std::string report_records, report_group = "theta", report_out;
    report->add_option("records", report_records, "records CSV from sweep")->required();
    report->add_option("--group-by", report_group, "theta or n");
    report->add_option("--out", report_out, "output CSV (default stdout)");
    report->callback([&] { cmd_report(report_records, report_group, report_out); });

    auto* oracle = app.add_subcommand("oracle", "brute-force Max-Cut of a graph file");
    std::string oracle_graph;
    oracle->add_option("graph", oracle_graph, "graph file")->required();
    oracle->callback([&] { cmd_oracle(oracle_graph); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
