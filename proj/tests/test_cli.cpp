#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wf/grid.hpp"
#include "wf/kernels.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const fs::path& scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "wf_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Run the CLI with a shell line; prefix lets tests set environment variables.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + FEJER_CLI_PATH + " " +
                            args + " >" + out.string() + " 2>" + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

}  // namespace

TEST_CASE("kernel tables match the library and are byte-identical across runs") {
    const RunResult first = run_cli("kernel --kind dirichlet --n 8 --resolution 4");
    REQUIRE(first.exit_code == 0);
    std::istringstream csv(first.out);
    CHECK(wf::GridFunction::read_csv(csv) == wf::dirichlet(8, 4));

    const RunResult again = run_cli("kernel --kind dirichlet --n 8 --resolution 4");
    CHECK(again.out == first.out);

    const RunResult fejer_run = run_cli("kernel --kind fejer --n 4 --resolution 4");
    REQUIRE(fejer_run.exit_code == 0);
    std::istringstream fcsv(fejer_run.out);
    const wf::GridFunction k = wf::GridFunction::read_csv(fcsv);
    CHECK(k.size() == 16);
    CHECK(k == wf::fejer(4, 4));
    const auto closed = wf::fejer_times_n_grid(4, 4);
    for (std::size_t i = 0; i < k.size(); ++i)
        CHECK(k[i] == wf::make_rational(closed[i], 4));
}

TEST_CASE("kernel output lands in --output files identically to stdout") {
    const fs::path file = scratch_dir() / "kernel.csv";
    const RunResult direct = run_cli("kernel --kind fejer --n 6 --resolution 5");
    const RunResult to_file =
        run_cli("kernel --kind fejer --n 6 --resolution 5 --output " + file.string());
    REQUIRE(to_file.exit_code == 0);
    CHECK(to_file.out.empty());
    CHECK(slurp(file) == direct.out);
}

TEST_CASE("verify: exit 0 and a well-formed json report") {
    const RunResult r = run_cli("verify --check integrals --max-n 64");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json reports = nlohmann::json::parse(r.out);
    REQUIRE(reports.is_array());
    REQUIRE(reports.size() == 1);
    const nlohmann::json& rep = reports[0];
    CHECK(rep["check"] == "unit_integrals");
    CHECK(rep["range"][0] == 1);
    CHECK(rep["range"][1] == 64);
    CHECK(rep["pass"] == true);
    CHECK(rep["worst_ratio"]["num"] == "0");
    CHECK(rep.contains("witness"));
    CHECK(!r.err.empty());  // human summary goes to stderr
}

TEST_CASE("verify: csv format") {
    const RunResult r = run_cli("verify --check sumdk --max-n 32 --format csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "check,range_lo,range_hi,resolution,worst_ratio,witness_n,witness_coset,constant,pass");
    std::string row;
    REQUIRE(std::getline(lines, row));
    CHECK(row.starts_with("dirichlet_sum,1,32,"));
    CHECK(row.ends_with(",1"));
}

TEST_CASE("verify: forced failure with an absurd constant") {
    const RunResult r = run_cli("verify --check prop2 --max-n 64 --constant 0.001");
    CHECK(r.exit_code == 1);
    const nlohmann::json reports = nlohmann::json::parse(r.out);
    CHECK(reports[0]["pass"] == false);
    CHECK(reports[0]["witness"]["n"].get<std::uint64_t>() >= 1);
}

TEST_CASE("verify: prop1 emits the stronger-exponent note") {
    const RunResult r = run_cli("verify --check prop1 --max-n 64");
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("stronger exponent 2t-1") != std::string::npos);
}

TEST_CASE("refusal paths exit 2") {
    CHECK(run_cli("blowup --family powers --scales 4..6").exit_code == 2);
    CHECK(run_cli("kernel --kind nonsense --n 1 --resolution 3").exit_code == 2);
    CHECK(run_cli("kernel --kind fejer --n 50 --resolution 4").exit_code == 2);
    CHECK(run_cli("verify --check nonsense").exit_code == 2);
    const RunResult r = run_cli("blowup --family powers");
    CHECK(r.err.find("no blow-up predicted") != std::string::npos);
}

TEST_CASE("usage errors exit 64, help exits 0") {
    CHECK(run_cli("").exit_code == 64);
    CHECK(run_cli("frobnicate").exit_code == 64);
    CHECK(run_cli("kernel --n 4").exit_code == 64);           // missing --resolution
    CHECK(run_cli("kernel --n 4 --resolution 3 --bogus 1").exit_code == 64);
    CHECK(run_cli("blowup --scales nonsense").exit_code == 64);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("verify --help").exit_code == 0);
}

TEST_CASE("blowup writes the growth table and a summary line") {
    const fs::path file = scratch_dir() / "blowup.csv";
    const RunResult r = run_cli("blowup --family beta --scales 4..5 --output " + file.string());
    const std::string csv = slurp(file);
    CHECK(csv.starts_with("s,family,endpoint_count,t_value,predicted_lower"));
    CHECK(csv.find("4,beta,5,") != std::string::npos);
    CHECK(csv.find("5,beta,6,") != std::string::npos);
    const nlohmann::json summary = nlohmann::json::parse(r.err);
    CHECK(summary["check"] == "blowup_beta");
}

TEST_CASE("boundedness emits per-seed rows against an explicit bound") {
    const RunResult r =
        run_cli("boundedness --family powers_plus_one --m 4 --seeds 3 --constant 1e9");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "support_level,seed,family,statistic,pass");
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.starts_with("4," + std::to_string(rows) + ",powers_plus_one,"));
        CHECK(line.ends_with(",1"));
        ++rows;
    }
    CHECK(rows == 3);

    const RunResult fail =
        run_cli("boundedness --family powers_plus_one --m 4 --seeds 3 --constant 1e-12");
    CHECK(fail.exit_code == 1);
}

TEST_CASE("simd and thread environment overrides do not change bytes") {
    const std::string args = "verify --check 9a --max-n 96";
    const RunResult base = run_cli(args);
    REQUIRE(base.exit_code == 0);
    CHECK(run_cli(args, "WF_SIMD=scalar").out == base.out);
    CHECK(run_cli(args, "FEJER_THREADS=3").out == base.out);
    CHECK(run_cli(args, "WF_SIMD=avx2 FEJER_THREADS=2").out == base.out);

    const std::string kargs = "kernel --kind fejer --n 12 --resolution 6";
    const RunResult kbase = run_cli(kargs);
    CHECK(run_cli(kargs, "WF_SIMD=scalar").out == kbase.out);
}
