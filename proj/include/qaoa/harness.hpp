#ifndef QAOA_HARNESS_HPP
#define QAOA_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qaoa/classical.hpp"
#include "qaoa/graph.hpp"
#include "qaoa/optimize.hpp"

namespace qaoa {

enum class CutSource { random_lo, gw_lo };

std::string to_string(CutSource s);
CutSource parse_cut_source(const std::string& text);

struct EnsembleCounts {
    int graphs = 0;
    int bitstrings = 0;
};

// Default ensemble sizes by problem size: (30,10) up to n=18, (10,10) for
// n=20..24, (6,3) for n=26..28.
EnsembleCounts counts_for(int n);

// Default tilt grid: 0..90 degrees, 1-degree steps; 5-degree steps from n=28.
std::vector<double> theta_grid_for(int n);

struct OptimizerSettings {
    int iterations = 0; // 0 -> 50 for expectation, 200 for bsp
    int grid_gamma = 40;
    int grid_beta = 40;
    double refine_tolerance = 1e-8;
    int refine_max_evals = 2000;
};

struct ExperimentConfig {
    std::vector<int> n_list;
    int num_graphs = 0;            // 0 -> counts_for(n)
    int num_bitstrings = 0;        // 0 -> counts_for(n)
    std::vector<double> theta_grid; // empty -> theta_grid_for(n)
    int depth = 1;
    MixerKind mixer = MixerKind::aligned;
    // gw_lo by default: hyperplane-rounded cuts polished to local optimality
    // dominate anything a depth-1 circuit reaches, so default sweeps keep the
    // classical value as a ceiling; random_lo cuts only carry the 2/3 floor
    // and a weak draw can be edged out near theta = 90.
    CutSource cut_source = CutSource::gw_lo;
    ObjectiveKind objective = ObjectiveKind::expectation;
    Strategy strategy = Strategy::region_seeds_then_refine;
    OptimizerSettings optimizer;
    std::uint64_t master_seed = 12345;
    std::string records_csv = "records.csv";
    bool allow_large = false;   // required to run n >= 22
    bool record_timings = false; // off by default so reruns are byte-identical

    int resolved_iterations() const;
};

ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Seed hierarchy: master -> per-n -> per-graph -> per-bitstring -> per-theta,
// so any record can be regenerated in isolation.
std::uint64_t per_n_seed(std::uint64_t master, int n);
std::uint64_t graph_seed(std::uint64_t master, int n, int graph_id);
std::uint64_t cut_seed(std::uint64_t master, int n, int graph_id, int bitstring_id);
std::uint64_t task_seed(std::uint64_t master, int n, int graph_id, int bitstring_id,
                        int theta_index);

struct EnsembleEntry {
    int n = 0;
    int graph_id = 0;
    int bitstring_id = 0;
    Graph graph; // shared across the bitstring_ids of one graph_id
    CutAssignment cut;
};

std::vector<EnsembleEntry> build_ensemble(const ExperimentConfig& cfg);

struct SweepRecord {
    int n = 0;
    int graph_id = 0;
    int bitstring_id = 0;
    double theta = 0.0;
    ObjectiveKind objective = ObjectiveKind::expectation;
    Strategy strategy = Strategy::region_seeds_then_refine;
    double expectation = 0.0;
    double approx_ratio = 0.0;
    double gsp = 0.0;
    double bsp = 0.0;
    double cut_b = 0.0;
    double max_cut = 0.0;
    std::vector<double> gammas;
    std::vector<double> betas;
    long long evals = 0;
    double wall_ms = 0.0;
    std::string error; // nonempty marks a failed record; other fields unset
};

std::string records_csv_header();
std::string to_csv_row(const SweepRecord& rec);
SweepRecord parse_csv_row(const std::string& line);

std::vector<SweepRecord> read_records_csv(std::istream& in);
std::vector<SweepRecord> read_records_file(const std::string& path);

// Runs the full sweep, streaming one CSV row per (graph, bitstring, theta)
// task in deterministic task order regardless of `workers` (0 -> automatic).
// Per-task failures fill the record's error column and the sweep continues.
void run_sweep(const ExperimentConfig& cfg, std::ostream& out, int workers = 0);
void run_sweep_to_file(const ExperimentConfig& cfg, int workers = 0);

enum class GroupBy { theta, n };

GroupBy parse_group_by(const std::string& text);

// Plot-ready means (and sample std-dev) per group. group_by=theta keys rows
// by tilt angle; group_by=n keys by (n, theta) restricted to the reference
// angles {0,45,60,90} when any are present. Records with errors are skipped.
std::string aggregate_csv(const std::vector<SweepRecord>& records, GroupBy group);

// QAOA_LAB_THREADS overrides the hardware default.
int default_worker_count();

} // namespace qaoa

#endif
