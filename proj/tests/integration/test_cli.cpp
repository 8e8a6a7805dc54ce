// End-to-end checks of the cknlab binary: exit codes, file outputs, and
// byte-level determinism. The binary path comes from the build system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef CKNLAB_BIN
#error "CKNLAB_BIN must point at the cknlab executable"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox(const std::string& name) {
        dir = fs::temp_directory_path() / ("cknlab_cli_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
};

int run(const std::string& args) {
    const std::string cmd = std::string(CKNLAB_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json slurp_json(const fs::path& path) { return json::parse(slurp(path)); }

const std::string kDesk = "--n 4 --p 2 --q 2.5 --mu 1";

}  // namespace

TEST_CASE("params: derives the desk record with exact strings") {
    Sandbox box("params");
    CHECK(run("params " + kDesk + " --out-dir " + box.dir.string()) == 0);
    const json j = slurp_json(box.dir / "params.json");
    CHECK(j.at("r").get<std::string>() == "3");
    CHECK(j.at("a").get<std::string>() == "4/9");
    CHECK(j.at("a_value").get<double>() == doctest::Approx(4.0 / 9.0));
    CHECK(j.at("g_exp").get<std::string>() == "-3");
    CHECK(j.at("run").at("command").get<std::string>() == "params");
}

TEST_CASE("params: inadmissible point exits 2") {
    Sandbox box("params_bad");
    CHECK(run("params --n 5 --p 2 --q 3 --mu 0.5 --out-dir " + box.dir.string()) == 2);
    CHECK(run("params --n 4 --p 2 --out-dir " + box.dir.string()) == 2);  // missing flags
}

TEST_CASE("copt: writes quadrature value, experimental closed form, and ratio") {
    Sandbox box("copt");
    CHECK(run("copt " + kDesk + " --delta 1.0 --out-dir " + box.dir.string()) == 0);
    const json j = slurp_json(box.dir / "copt.json");
    CHECK(j.at("copt_quadrature").get<double>() == doctest::Approx(0.71890900105743).epsilon(1e-9));
    CHECK(j.at("closed_form_experimental").get<bool>());
    CHECK(j.at("ratio_closed_to_quadrature").get<double>() > 0.0);
}

TEST_CASE("curves: euclidean columns agree and reruns are byte-identical") {
    Sandbox box("curves");
    const std::string args = "curves " + kDesk +
                             " --model euclidean:n=4 --C-multiple 1.0 --lambda-min 0.1 "
                             "--lambda-max 10 --lambda-count 5 --out-dir " +
                             box.dir.string();
    CHECK(run(args) == 0);
    const std::string first = slurp(box.dir / "curves.csv");
    CHECK(first.find("# run_spec: ") == 0);
    CHECK(first.find("lambda,F,G,H0,F_prime,ode_residual_G,ineq_slack_F") != std::string::npos);

    // F and G columns agree to 1e-8, slack is essentially zero at C = C_opt
    std::istringstream lines(first);
    std::string line;
    int data_rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'l') continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> cols;
        while (std::getline(row, cell, ',')) cols.push_back(std::stod(cell));
        REQUIRE(cols.size() == 7);
        CHECK(cols[1] == doctest::Approx(cols[2]).epsilon(1e-8));  // F == G
        CHECK(std::fabs(cols[6]) / std::max(1e-30, std::fabs(cols[4])) < 1e-4);
        ++data_rows;
    }
    CHECK(data_rows == 5);

    CHECK(run(args) == 0);
    CHECK(slurp(box.dir / "curves.csv") == first);  // deterministic bytes
}

TEST_CASE("volume-bound: undersized constant on a cone fails the audit") {
    Sandbox box("vb");
    CHECK(run("volume-bound " + kDesk +
              " --model cone:n=4,c=0.5 --C-multiple 1.0 --C0 1 --out-dir " +
              box.dir.string()) == 0);
    const std::string text = slurp(box.dir / "volume_bound.csv");
    CHECK(text.find("# verdict: FAIL") != std::string::npos);

    // sharp multiple c^{-a/n} = 0.5^{-1/9} passes with zero slack
    CHECK(run("volume-bound " + kDesk +
              " --model cone:n=4,c=0.5 --C-multiple 1.0800597388923052 --C0 1 --out-dir " +
              box.dir.string()) == 0);
    CHECK(slurp(box.dir / "volume_bound.csv").find("# verdict: PASS") != std::string::npos);
}

TEST_CASE("audit: cone density and envelope growth constant") {
    Sandbox box("audit");
    CHECK(run("audit " + kDesk + " --model cone:n=4,c=0.7 --out-dir " + box.dir.string()) == 0);
    json j = slurp_json(box.dir / "audit.json");
    CHECK(j.at("origin_density").get<double>() == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(j.at("doubling_constant").get<double>() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(run("audit " + kDesk + " --model envelope:n=4,b0=0.3 --out-dir " + box.dir.string()) ==
          0);
    j = slurp_json(box.dir / "audit.json");
    CHECK(j.at("growth_envelope_constant").get<double>() ==
          doctest::Approx(std::exp(0.9)).epsilon(1e-12));
}

TEST_CASE("table model: loads through the CLI, rejects headerless CSV") {
    Sandbox box("table");
    const fs::path good = box.dir / "model.csv";
    std::ofstream(good) << "t,relative_density\n0.5,1.0\n1.0,1.0\n";
    CHECK(run("audit " + kDesk + " --model table:" + good.string() + ",n=4 --out-dir " +
              box.dir.string()) == 0);
    const json j = slurp_json(box.dir / "audit.json");
    CHECK(j.at("origin_density").get<double>() == doctest::Approx(1.0));

    const fs::path bad = box.dir / "bad.csv";
    std::ofstream(bad) << "0.5,1.0\n1.0,1.0\n";
    CHECK(run("audit " + kDesk + " --model table:" + bad.string() + ",n=4 --out-dir " +
              box.dir.string()) == 2);
    CHECK(run("audit " + kDesk + " --model nosuchkind:n=4 --out-dir " + box.dir.string()) == 2);
}

TEST_CASE("numerical failures exit 3") {
    Sandbox box("numfail");
    // density oscillating on every dyadic shell: the origin-density limit
    // never settles and audit reports a numerical failure
    const fs::path osc = box.dir / "osc.csv";
    {
        std::ofstream out(osc);
        out << "t,relative_density\n";
        for (int k = 45; k >= 0; --k)
            out << std::ldexp(1.0, -k) << "," << (k % 2 == 0 ? 1.0 : 2.0) << "\n";
    }
    CHECK(run("audit " + kDesk + " --model table:" + osc.string() + ",n=4 --out-dir " +
              box.dir.string()) == 3);
}

TEST_CASE("minimize: small run writes results and the best profile") {
    Sandbox box("minimize");
    CHECK(run("minimize " + kDesk +
              " --model euclidean:n=4 --grid-size 32 --support-radius 20 --seeds 1 "
              "--f-tol 1e-6 --out-dir " +
              box.dir.string()) == 0);
    const json j = slurp_json(box.dir / "minimize.json");
    CHECK(j.at("family").at("flatness").get<double>() < 1e-7);
    CHECK(j.at("grid_extremal_init").at("converged").get<bool>());
    CHECK(j.at("grid_random_init").size() == 1);
    CHECK(j.at("best_constant_estimate").get<double>() ==
          doctest::Approx(0.7189).epsilon(2e-2));
    CHECK(fs::exists(box.dir / "best_profile.csv"));
}

TEST_CASE("extremal-check: flat quotients, perturbations one-sided") {
    Sandbox box("extcheck");
    CHECK(run("extremal-check " + kDesk + " --out-dir " + box.dir.string()) == 0);
    const json j = slurp_json(box.dir / "extremal_check.json");
    CHECK(j.at("max_rel_deviation").get<double>() < 1e-8);
    CHECK(j.at("min_quotient_delta").get<double>() >= -1e-9);
    CHECK(j.at("perturbations").size() == 20);
}
