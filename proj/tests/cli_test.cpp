#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "qaoa/graph.hpp"
#include "qaoa/harness.hpp"

#ifndef QAOA_CLI_PATH
#error "QAOA_CLI_PATH must point at the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "qaoa_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& args) {
    const fs::path out_file = work_dir() / "stdout.txt";
    const fs::path err_file = work_dir() / "stderr.txt";
    const std::string cmd = std::string("\"") + QAOA_CLI_PATH + "\" " + args + " > \"" +
                            out_file.string() + "\" 2> \"" + err_file.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

fs::path write_k4_file() {
    const fs::path p = work_dir() / "k4.txt";
    std::ofstream out(p);
    out << "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
    return p;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

} // namespace

TEST_CASE("cli gen writes graphs that parse and regenerate") {
    const fs::path dir = work_dir() / "gen";
    fs::create_directories(dir);
    const CliResult r =
        run_cli("gen -n 8 --count 2 --seed 77 --out-dir \"" + dir.string() + "\"");
    REQUIRE(r.code == 0);
    for (int i = 0; i < 2; ++i) {
        const fs::path p = dir / ("n8_g" + std::to_string(i) + ".txt");
        REQUIRE(fs::exists(p));
        const qaoa::Graph g = qaoa::read_graph_file(p.string());
        CHECK(g.n == 8);
        CHECK(g.edges.size() == 12);
    }
    CHECK(r.out.find("n8_g0.txt") != std::string::npos);
}

TEST_CASE("cli oracle reports the K4 spectrum") {
    const fs::path p = write_k4_file();
    const CliResult r = run_cli("oracle \"" + p.string() + "\"");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("max_cut 4.0") != std::string::npos);
    CHECK(r.out.find("optima 6") != std::string::npos);
    CHECK(r.out.find("0011") != std::string::npos);
    CHECK(r.out.find("1100") != std::string::npos);
}

TEST_CASE("cli cuts emits bitstring,value rows") {
    const fs::path p = write_k4_file();
    const CliResult r = run_cli("cuts \"" + p.string() + "\" --count 3 --seed 5");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "bitstring,value");
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        CHECK(line.find(',') == 4); // 4-bit string then value
        CHECK(line.substr(5) == "4.0"); // local optima of K4 are global
    }
    CHECK(rows == 3);
}

TEST_CASE("cli optimize emits a JSON summary") {
    const fs::path p = write_k4_file();
    const CliResult r = run_cli("optimize \"" + p.string() +
                                "\" --bits 0011 --theta 0 --strategy grid --seed 3");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"expectation\": 4.0") != std::string::npos);
    CHECK(r.out.find("\"bitstring\": \"0011\"") != std::string::npos);
    CHECK(r.out.find("\"gammas\"") != std::string::npos);
    CHECK(r.out.find("\"bsp\": 0.0") != std::string::npos);
}

TEST_CASE("cli sweep plus report round-trips") {
    const fs::path cfg = write_file("sweep.json", R"({
        "n_list": [4],
        "num_graphs": 2,
        "num_bitstrings": 1,
        "theta_grid": [0, 60, 90],
        "strategy": "grid",
        "optimizer": {"grid_gamma": 6, "grid_beta": 6},
        "records_csv": ")" + (work_dir() / "records.csv").string() + R"("
    })");
    const CliResult sweep = run_cli("sweep \"" + cfg.string() + "\" --workers 2");
    REQUIRE(sweep.code == 0);
    CHECK(sweep.out.find("records.csv") != std::string::npos);

    const auto records = qaoa::read_records_file((work_dir() / "records.csv").string());
    CHECK(records.size() == 6);

    const CliResult report =
        run_cli("report \"" + (work_dir() / "records.csv").string() + "\" --group-by theta");
    REQUIRE(report.code == 0);
    std::istringstream lines(report.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4); // header + one row per theta
}

TEST_CASE("cli sweep rejects instances beyond the simulation cap") {
    const fs::path cfg = write_file("too_big.json", R"({"n_list": [30]})");
    const CliResult r = run_cli("sweep \"" + cfg.string() + "\"");
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(!fs::exists("records.csv")); // rejected configs must not leave output behind
}

TEST_CASE("cli usage errors exit with 1") {
    CHECK(run_cli("").code == 1);
    CHECK(run_cli("gen --bogus-flag 3").code == 1);
    CHECK(run_cli("frobnicate").code == 1);
}

TEST_CASE("cli help exits cleanly") {
    const CliResult r = run_cli("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("sweep") != std::string::npos);
}
