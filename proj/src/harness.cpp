#include "qaoa/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "qaoa/errors.hpp"
#include "qaoa/metrics.hpp"
#include "qaoa/seeding.hpp"

namespace qaoa {

std::string to_string(CutSource s) {
    return s == CutSource::random_lo ? "random_lo" : "gw_lo";
}

CutSource parse_cut_source(const std::string& text) {
    if (text == "random_lo") return CutSource::random_lo;
    if (text == "gw_lo") return CutSource::gw_lo;
    throw std::invalid_argument("unknown cut source: " + text);
}

EnsembleCounts counts_for(int n) {
    if (n <= 18) return {30, 10};
    if (n <= 24) return {10, 10};
    return {6, 3};
}

std::vector<double> theta_grid_for(int n) {
    const int step = n >= 28 ? 5 : 1;
    std::vector<double> grid;
    for (int t = 0; t <= 90; t += step) grid.push_back(static_cast<double>(t));
    return grid;
}

int ExperimentConfig::resolved_iterations() const {
    if (optimizer.iterations > 0) return optimizer.iterations;
    return objective == ObjectiveKind::bsp ? 200 : 50;
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key)) throw Error("unknown " + where + " key: " + key);
    }
}

} // namespace

ExperimentConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("config parse: ") + e.what());
    }
    if (!j.is_object()) throw Error("config must be a JSON object");
    reject_unknown_keys(j, {"n_list", "num_graphs", "num_bitstrings", "theta_grid", "depth",
                            "mixer", "cut_source", "objective", "strategy", "optimizer",
                            "master_seed", "records_csv", "allow_large", "record_timings"},
                        "config");

    ExperimentConfig cfg;
    try {
        cfg.n_list = j.at("n_list").get<std::vector<int>>();
        if (j.contains("num_graphs")) cfg.num_graphs = j["num_graphs"].get<int>();
        if (j.contains("num_bitstrings")) cfg.num_bitstrings = j["num_bitstrings"].get<int>();
        if (j.contains("theta_grid")) cfg.theta_grid = j["theta_grid"].get<std::vector<double>>();
        if (j.contains("depth")) cfg.depth = j["depth"].get<int>();
        if (j.contains("mixer")) cfg.mixer = parse_mixer(j["mixer"].get<std::string>());
        if (j.contains("cut_source"))
            cfg.cut_source = parse_cut_source(j["cut_source"].get<std::string>());
        if (j.contains("objective"))
            cfg.objective = parse_objective(j["objective"].get<std::string>());
        if (j.contains("strategy")) cfg.strategy = parse_strategy(j["strategy"].get<std::string>());
        if (j.contains("optimizer")) {
            const json& o = j["optimizer"];
            reject_unknown_keys(o, {"iterations", "grid_gamma", "grid_beta", "refine_tolerance",
                                    "refine_max_evals"},
                                "optimizer");
            if (o.contains("iterations")) cfg.optimizer.iterations = o["iterations"].get<int>();
            if (o.contains("grid_gamma")) cfg.optimizer.grid_gamma = o["grid_gamma"].get<int>();
            if (o.contains("grid_beta")) cfg.optimizer.grid_beta = o["grid_beta"].get<int>();
            if (o.contains("refine_tolerance"))
                cfg.optimizer.refine_tolerance = o["refine_tolerance"].get<double>();
            if (o.contains("refine_max_evals"))
                cfg.optimizer.refine_max_evals = o["refine_max_evals"].get<int>();
        }
        if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
        if (j.contains("records_csv")) cfg.records_csv = j["records_csv"].get<std::string>();
        if (j.contains("allow_large")) cfg.allow_large = j["allow_large"].get<bool>();
        if (j.contains("record_timings")) cfg.record_timings = j["record_timings"].get<bool>();
    } catch (const json::exception& e) {
        throw Error(std::string("config parse: ") + e.what());
    }
    if (cfg.n_list.empty()) throw Error("config n_list must not be empty");
    if (cfg.depth < 1) throw Error("config depth must be at least 1");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::uint64_t per_n_seed(std::uint64_t master, int n) {
    return child_seed(master, seed_stream::per_n, static_cast<std::uint64_t>(n));
}

std::uint64_t graph_seed(std::uint64_t master, int n, int graph_id) {
    return child_seed(per_n_seed(master, n), seed_stream::graph,
                      static_cast<std::uint64_t>(graph_id));
}

std::uint64_t cut_seed(std::uint64_t master, int n, int graph_id, int bitstring_id) {
    return child_seed(graph_seed(master, n, graph_id), seed_stream::cut,
                      static_cast<std::uint64_t>(bitstring_id));
}

std::uint64_t task_seed(std::uint64_t master, int n, int graph_id, int bitstring_id,
                        int theta_index) {
    return child_seed(cut_seed(master, n, graph_id, bitstring_id), seed_stream::theta,
                      static_cast<std::uint64_t>(theta_index));
}

std::vector<EnsembleEntry> build_ensemble(const ExperimentConfig& cfg) {
    std::vector<EnsembleEntry> entries;
    for (int n : cfg.n_list) {
        EnsembleCounts counts = counts_for(n);
        if (cfg.num_graphs > 0) counts.graphs = cfg.num_graphs;
        if (cfg.num_bitstrings > 0) counts.bitstrings = cfg.num_bitstrings;
        for (int gid = 0; gid < counts.graphs; ++gid) {
            Graph g = generate_regular(n, 3, graph_seed(cfg.master_seed, n, gid));
            for (int bid = 0; bid < counts.bitstrings; ++bid) {
                std::uint64_t seed = cut_seed(cfg.master_seed, n, gid, bid);
                CutAssignment cut = cfg.cut_source == CutSource::random_lo
                                        ? random_lo_cut(g, seed)
                                        : gw_local_search_cut(g, seed);
                entries.push_back({n, gid, bid, g, std::move(cut)});
            }
        }
    }
    return entries;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_semicolon(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ';';
        out += fmt_double(xs[i]);
    }
    return out;
}

std::vector<double> split_semicolon(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(';', pos);
        std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
        out.push_back(std::stod(piece));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

std::string sanitize_error(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
    }
    return text;
}

std::vector<std::string> split_comma(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = line.find(',', pos);
        if (next == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

} // namespace

std::string records_csv_header() {
    return "n,graph_id,bitstring_id,theta,objective,strategy,expectation,approx_ratio,gsp,bsp,"
           "cut_b,max_cut,gammas,betas,evals,wall_ms,error";
}

std::string to_csv_row(const SweepRecord& rec) {
    std::string row;
    row += std::to_string(rec.n);
    row += ',' + std::to_string(rec.graph_id);
    row += ',' + std::to_string(rec.bitstring_id);
    row += ',' + fmt_double(rec.theta);
    row += ',' + to_string(rec.objective);
    row += ',' + to_string(rec.strategy);
    row += ',' + fmt_double(rec.expectation);
    row += ',' + fmt_double(rec.approx_ratio);
    row += ',' + fmt_double(rec.gsp);
    row += ',' + fmt_double(rec.bsp);
    row += ',' + fmt_double(rec.cut_b);
    row += ',' + fmt_double(rec.max_cut);
    row += ',' + join_semicolon(rec.gammas);
    row += ',' + join_semicolon(rec.betas);
    row += ',' + std::to_string(rec.evals);
    row += ',' + fmt_double(rec.wall_ms);
    row += ',' + sanitize_error(rec.error);
    return row;
}

SweepRecord parse_csv_row(const std::string& line) {
    const auto fields = split_comma(line);
    if (fields.size() != 17)
        throw std::invalid_argument("expected 17 fields, found " + std::to_string(fields.size()));
    SweepRecord rec;
    rec.n = std::stoi(fields[0]);
    rec.graph_id = std::stoi(fields[1]);
    rec.bitstring_id = std::stoi(fields[2]);
    rec.theta = std::stod(fields[3]);
    rec.objective = parse_objective(fields[4]);
    rec.strategy = parse_strategy(fields[5]);
    rec.expectation = std::stod(fields[6]);
    rec.approx_ratio = std::stod(fields[7]);
    rec.gsp = std::stod(fields[8]);
    rec.bsp = std::stod(fields[9]);
    rec.cut_b = std::stod(fields[10]);
    rec.max_cut = std::stod(fields[11]);
    rec.gammas = split_semicolon(fields[12]);
    rec.betas = split_semicolon(fields[13]);
    rec.evals = std::stoll(fields[14]);
    rec.wall_ms = std::stod(fields[15]);
    rec.error = fields[16];
    return rec;
}

std::vector<SweepRecord> read_records_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != records_csv_header()) throw ParseError("unexpected records header", 1);
            continue;
        }
        try {
            records.push_back(parse_csv_row(line));
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    if (line_no == 0) throw ParseError("empty records file", 1);
    return records;
}

std::vector<SweepRecord> read_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open records: " + path);
    return read_records_csv(in);
}

int default_worker_count() {
    if (const char* env = std::getenv("QAOA_LAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
        throw Error("QAOA_LAB_THREADS must be a positive integer");
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct GraphContext {
    CutTable table;
    MaxCutResult max_cut;
};

void validate_sweep_sizes(const ExperimentConfig& cfg) {
    for (int n : cfg.n_list) {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("3-regular ensembles need even n >= 4, got n=" +
                                        std::to_string(n));
        if (n > kBruteForceMaxVertices)
            throw SizeLimitError("n=" + std::to_string(n) + " exceeds the " +
                                 std::to_string(kBruteForceMaxVertices) +
                                 "-qubit simulation cap");
        if (n >= 22 && !cfg.allow_large) {
            const double state_mib = 16.0 * std::pow(2.0, n) / (1024.0 * 1024.0);
            const double table_mib = 8.0 * std::pow(2.0, n) / (1024.0 * 1024.0);
            char msg[256];
            std::snprintf(msg, sizeof msg,
                          "n=%d needs roughly %.0f MiB per statevector plus a %.0f MiB cut "
                          "table per worker; set allow_large to proceed",
                          n, state_mib, table_mib);
            throw SizeLimitError(msg);
        }
    }
    for (double t : cfg.theta_grid) {
        if (!(t >= 0.0 && t <= 180.0))
            throw std::invalid_argument("theta grid values must lie in [0, 180] degrees");
    }
}

SweepRecord run_one(const ExperimentConfig& cfg, const GraphContext& ctx,
                    const EnsembleEntry& entry, double theta, int theta_index) {
    SweepRecord rec;
    rec.n = entry.n;
    rec.graph_id = entry.graph_id;
    rec.bitstring_id = entry.bitstring_id;
    rec.theta = theta;
    rec.objective = cfg.objective;
    rec.strategy = cfg.strategy;
    try {
        const auto t0 = std::chrono::steady_clock::now();

        Objective obj;
        obj.table = &ctx.table;
        obj.warm = WarmStart{entry.cut.bits, theta};
        obj.mixer = cfg.mixer;
        obj.depth = cfg.depth;
        obj.kind = cfg.objective;
        obj.reference_cut = entry.cut.value;

        OptimizerConfig ocfg;
        ocfg.strategy = cfg.strategy;
        ocfg.iterations = cfg.resolved_iterations();
        ocfg.grid_gamma = cfg.optimizer.grid_gamma;
        ocfg.grid_beta = cfg.optimizer.grid_beta;
        ocfg.refine_tolerance = cfg.optimizer.refine_tolerance;
        ocfg.refine_max_evals = cfg.optimizer.refine_max_evals;
        ocfg.seed = task_seed(cfg.master_seed, entry.n, entry.graph_id, entry.bitstring_id,
                              theta_index);

        OptResult best = optimize(obj, ocfg);
        CircuitParams params = obj.unpack(best.params);
        Statevector sv = qaoa_state(ctx.table, obj.warm, wrap_params(params), cfg.mixer);
        MetricReport rep =
            score_state(sv, ctx.table, entry.cut.value, ctx.max_cut.value, &ctx.max_cut.optima);

        rec.expectation = rep.expectation;
        rec.approx_ratio = rep.approximation_ratio.value_or(0.0);
        rec.gsp = rep.gsp.value_or(0.0);
        rec.bsp = rep.bsp;
        rec.cut_b = entry.cut.value;
        rec.max_cut = ctx.max_cut.value;
        rec.gammas = params.gammas;
        rec.betas = params.betas;
        rec.evals = best.evals;
        if (cfg.record_timings) {
            const auto t1 = std::chrono::steady_clock::now();
            rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

} // namespace

void run_sweep(const ExperimentConfig& cfg, std::ostream& out, int workers) {
    validate_sweep_sizes(cfg);
    const int nw = workers > 0 ? workers : default_worker_count();

    const auto entries = build_ensemble(cfg);
    out << records_csv_header() << '\n';

    std::size_t block_start = 0;
    while (block_start < entries.size()) {
        std::size_t block_end = block_start + 1;
        while (block_end < entries.size() &&
               entries[block_end].n == entries[block_start].n &&
               entries[block_end].graph_id == entries[block_start].graph_id) {
            ++block_end;
        }

        const Graph& g = entries[block_start].graph;
        GraphContext ctx{build_cut_table(g), max_cut_brute_force(g)};

        const std::vector<double> thetas =
            cfg.theta_grid.empty() ? theta_grid_for(entries[block_start].n) : cfg.theta_grid;

        const std::size_t block_entries = block_end - block_start;
        const std::size_t task_count = block_entries * thetas.size();
        std::vector<SweepRecord> results(task_count);

        std::atomic<std::size_t> cursor{0};
        auto worker = [&] {
            while (true) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= task_count) break;
                const EnsembleEntry& entry = entries[block_start + i / thetas.size()];
                const int ti = static_cast<int>(i % thetas.size());
                results[i] = run_one(cfg, ctx, entry, thetas[ti], ti);
            }
        };

        const int pool = static_cast<int>(std::min<std::size_t>(nw, task_count));
        if (pool <= 1) {
            worker();
        } else {
            std::vector<std::thread> threads;
            threads.reserve(pool);
            for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
            for (auto& t : threads) t.join();
        }

        for (const auto& rec : results) out << to_csv_row(rec) << '\n';
        out.flush();
        block_start = block_end;
    }
}

void run_sweep_to_file(const ExperimentConfig& cfg, int workers) {
    validate_sweep_sizes(cfg); // reject bad configs before touching the output file
    std::ofstream out(cfg.records_csv);
    if (!out) throw Error("cannot open output: " + cfg.records_csv);
    run_sweep(cfg, out, workers);
}

GroupBy parse_group_by(const std::string& text) {
    if (text == "theta") return GroupBy::theta;
    if (text == "n") return GroupBy::n;
    throw std::invalid_argument("unknown group-by: " + text);
}

namespace {

struct MetricAccumulator {
    long long count = 0;
    double sum[4] = {0, 0, 0, 0};
    double sum_sq[4] = {0, 0, 0, 0};

    void add(const SweepRecord& r) {
        const double vals[4] = {r.expectation, r.approx_ratio, r.gsp, r.bsp};
        ++count;
        for (int k = 0; k < 4; ++k) {
            sum[k] += vals[k];
            sum_sq[k] += vals[k] * vals[k];
        }
    }

    void append_columns(std::string& row) const {
        for (int k = 0; k < 4; ++k) {
            const double mean = sum[k] / static_cast<double>(count);
            double var = 0.0;
            if (count > 1) {
                var = (sum_sq[k] - static_cast<double>(count) * mean * mean) /
                      static_cast<double>(count - 1);
                var = std::max(0.0, var);
            }
            row += ',' + fmt_double(mean);
            row += ',' + fmt_double(std::sqrt(var));
        }
    }
};

constexpr const char* kMetricColumns =
    "mean_expectation,std_expectation,mean_approx_ratio,std_approx_ratio,"
    "mean_gsp,std_gsp,mean_bsp,std_bsp";

} // namespace

std::string aggregate_csv(const std::vector<SweepRecord>& records, GroupBy group) {
    std::vector<const SweepRecord*> ok;
    for (const auto& r : records) {
        if (r.error.empty()) ok.push_back(&r);
    }
    if (ok.empty()) throw std::invalid_argument("no valid records to aggregate");

    std::string out;
    if (group == GroupBy::theta) {
        std::map<double, MetricAccumulator> rows;
        for (const auto* r : ok) rows[r->theta].add(*r);
        out = std::string("theta,count,") + kMetricColumns + '\n';
        for (const auto& [theta, acc] : rows) {
            std::string row = fmt_double(theta) + ',' + std::to_string(acc.count);
            acc.append_columns(row);
            out += row + '\n';
        }
        return out;
    }

    // Group by n: keep the reference tilt angles when any are present so the
    // table matches the ratio-vs-size plot axes; otherwise keep every angle.
    std::set<double> present;
    for (const auto* r : ok) present.insert(r->theta);
    std::set<double> keep;
    for (double t : {0.0, 45.0, 60.0, 90.0}) {
        if (present.count(t)) keep.insert(t);
    }
    if (keep.empty()) keep = present;

    std::map<std::pair<int, double>, MetricAccumulator> rows;
    for (const auto* r : ok) {
        if (keep.count(r->theta)) rows[{r->n, r->theta}].add(*r);
    }
    out = std::string("n,theta,count,") + kMetricColumns + '\n';
    for (const auto& [key, acc] : rows) {
        std::string row = std::to_string(key.first) + ',' + fmt_double(key.second) + ',' +
                          std::to_string(acc.count);
        acc.append_columns(row);
        out += row + '\n';
    }
    return out;
}

} // namespace qaoa
