#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FRACMIN_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& body) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream ss(body);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string tmp_path(const std::string& name) {
    const char* base = std::getenv("TMPDIR");
    return std::string(base ? base : "/tmp") + "/fracmin_cli_test_" + name;
}

}  // namespace

TEST_CASE("eval prints the closed-form early values") {
    RunResult r = run_cli("eval 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("F=3.000000") != std::string::npos);
    CHECK(r.output.find("critical_index=2") != std::string::npos);
    CHECK(r.output.find("residual_u2=") != std::string::npos);

    r = run_cli("eval 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("F=0.500000") != std::string::npos);
}

TEST_CASE("eval at a large argument keeps the scaled residual small") {
    const RunResult r = run_cli("eval 1e6");
    CHECK(r.exit_code == 0);
    const size_t pos = r.output.find("residual_u2=");
    REQUIRE(pos != std::string::npos);
    const double v = std::stod(r.output.substr(pos + 12));
    CHECK(v < 3.0);
}

TEST_CASE("eval routes shifted problems by parameter") {
    RunResult r = run_cli("--p 2 eval 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("F=1.828427") != std::string::npos);
    CHECK(r.output.find("method=scaling") != std::string::npos);

    r = run_cli("--p 0.5 --grid 1200 eval 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("method=dp") != std::string::npos);
}

TEST_CASE("eval rejects bad domains with exit code 2") {
    CHECK(run_cli("eval 0").exit_code == 2);
    CHECK(run_cli("--p 0 eval 1").exit_code == 2);
}

TEST_CASE("constants manifest passes and exits zero") {
    const RunResult r = run_cli("constants");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
    CHECK(r.output.find("1.7046560372") != std::string::npos);
}

TEST_CASE("alpha figure has 501 rows with minimum near 1.4478") {
    const std::string out = tmp_path("alpha.csv");
    const RunResult r = run_cli("--out " + out + " emit alpha");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() == 502);
    CHECK(rows[0][0] == "t");
    CHECK(rows[0][1] == "alpha_inf");
    double best_t = 0.0, best_v = 1e9;
    for (size_t i = 1; i < rows.size(); ++i) {
        const double v = std::stod(rows[i][1]);
        if (v < best_v) {
            best_v = v;
            best_t = std::stod(rows[i][0]);
        }
    }
    CHECK(std::fabs(best_t - 1.447847) < 3e-3);
    CHECK(std::fabs(best_v - 2.673953412) < 1e-5);
}

TEST_CASE("figure output is deterministic") {
    const std::string o1 = tmp_path("alpha_a.csv");
    const std::string o2 = tmp_path("alpha_b.csv");
    CHECK(run_cli("--out " + o1 + " emit alpha").exit_code == 0);
    CHECK(run_cli("--out " + o2 + " emit alpha").exit_code == 0);
    const std::string b1 = slurp(o1);
    CHECK(b1 == slurp(o2));
    CHECK(b1.find('\r') == std::string::npos);
}

TEST_CASE("global options may follow the subcommand") {
    const std::string out = tmp_path("trail.csv");
    const RunResult r = run_cli("emit alpha --out " + out + " --grid 101");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));
    CHECK(rows.size() == 102);

    const RunResult e = run_cli("eval 4 --p 2");
    CHECK(e.exit_code == 0);
    CHECK(e.output.find("F=1.828427") != std::string::npos);
}

TEST_CASE("zero-shift correction curve touches zero near integers") {
    const std::string out = tmp_path("f0corr.csv");
    const RunResult r = run_cli("--out " + out + " emit f0corr");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() == 502);
    double min_abs = 1e9, max_abs = 0.0, pred_gap = 0.0;
    for (size_t i = 1; i < rows.size(); ++i) {
        const double c = std::stod(rows[i][1]);
        min_abs = std::min(min_abs, std::fabs(c));
        max_abs = std::max(max_abs, std::fabs(c));
        pred_gap = std::max(pred_gap,
                            std::fabs(c - std::stod(rows[i][2])) *
                                std::pow(std::stod(rows[i][0]), 2.0));
    }
    CHECK(min_abs < 1e-4);
    CHECK(max_abs > 0.05);
    CHECK(pred_gap < 1.0);
}

TEST_CASE("curve figure shows the backtracking fold for n=31") {
    const std::string out = tmp_path("curves.csv");
    const RunResult r =
        run_cli("--out " + out + " --n-range 30..32 --grid 301 emit curves");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() == 1 + 3 * 301);
    bool fold = false;
    double prev = 0.0;
    bool have_prev = false;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][0] != "31") {
            have_prev = false;
            continue;
        }
        const double lx = std::stod(rows[i][2]);
        if (have_prev && lx < prev) fold = true;
        prev = lx;
        have_prev = true;
    }
    CHECK(fold);
}

TEST_CASE("shift-parameter table carries the expected columns") {
    const std::string out = tmp_path("ap.csv");
    const RunResult r = run_cli("--out " + out + " tabulate-ap");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() > 100);
    REQUIRE(rows[0].size() == 3);
    CHECK(rows[0][0] == "p");
    CHECK(rows[0][1] == "A_prime");
    CHECK(rows[0][2] == "A");
    CHECK(std::fabs(std::stod(rows.back()[2]) - 1.70466) < 2e-3);
    CHECK(std::fabs(std::stod(rows[1][1]) - 1.58198) < 2e-2);
}

TEST_CASE("verify suites pass and bad configuration exits 2") {
    RunResult r = run_cli("verify identities");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("identity.abel") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);

    r = run_cli("verify contour");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("total_B") != std::string::npos);
    CHECK(r.output.find("2.48") != std::string::npos);
    CHECK(r.output.find("PASS") != std::string::npos);

    r = run_cli("verify genpar");
    CHECK(r.exit_code == 0);

    CHECK(run_cli("verify bogus").exit_code == 2);
    CHECK(run_cli("emit bogus").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("full verification fits the runtime budget") {
    const auto start = std::chrono::steady_clock::now();
    const RunResult r = run_cli("verify all");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("FAIL") == std::string::npos);
    CHECK(secs < 120.0);
}
