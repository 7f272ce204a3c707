#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ginicell/cli.hpp"

namespace cli = ginicell::cli;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
}

const char* kSymConfig =
    "# symmetric two-tier scenario\n"
    "[tier1]\n"
    "model = ginibre\n"
    "alpha = 1.0\n"
    "lambda = 0.318309886183790672\n"
    "power = 1.0\n"
    "bias = 1.0\n"
    "antennas = 1\n"
    "users = 1\n"
    "beta = 2.0\n"
    "[tier2]\n"
    "model = poisson\n"
    "lambda = 0.318309886183790672\n"
    "power = 1.0\n"
    "bias = 1.0\n"
    "antennas = 1\n"
    "users = 1\n"
    "beta = 2.0\n"
    "[thresholds]\n"
    "theta1_db = 0\n"
    "theta2_db = 0\n";

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("theta grid construction") {
    cli::CoverageArgs a;
    a.theta_db_from = -10;
    a.theta_db_to = 20;
    a.theta_db_step = 1;
    CHECK(cli::theta_db_grid(a).size() == 31);
    a.single_theta_db = true;
    a.theta_db = 3.0;
    CHECK(cli::theta_db_grid(a) == std::vector<double>{3.0});
    cli::CoverageArgs b;
    b.single_theta_linear = true;
    b.theta_linear = 10.0;
    const auto g = cli::theta_db_grid(b);
    CHECK(g.size() == 1);
    CHECK(g[0] == doctest::Approx(10.0));
}

TEST_CASE("coverage command: analytic closed form on stdout") {
    cli::CoverageArgs a;
    a.model = "ppp";
    a.beta = 2.0;
    a.noise = 0.0;
    a.single_theta_db = true;
    a.theta_db = 0.0;
    a.method = "analytic";
    std::ostringstream out, err;
    CHECK(cli::run_coverage(a, out, err) == cli::kExitOk);
    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "theta_db,theta_linear,coverage,half_width,method");
    CHECK(lines[1].find("0.560099153") != std::string::npos);
    CHECK(lines[1].find(",analytic") != std::string::npos);
    CHECK(err.str().find("manifest:") != std::string::npos);
}

TEST_CASE("coverage command: alpha domain error directs to ppp") {
    cli::CoverageArgs a;
    a.model = "ginibre";
    a.alpha = 0.0;
    std::ostringstream out, err;
    CHECK(cli::run_coverage(a, out, err) == cli::kExitUsage);
    CHECK(err.str().find("--model ppp") != std::string::npos);
}

TEST_CASE("coverage command: both methods agree within the interval") {
    cli::CoverageArgs a;
    a.model = "ginibre";
    a.alpha = 1.0;
    a.single_theta_db = true;
    a.theta_db = 0.0;
    a.method = "both";
    a.reps = 20000;
    a.format = "json";
    std::ostringstream out, err;
    REQUIRE(cli::run_coverage(a, out, err) == cli::kExitOk);
    const json doc = json::parse(out.str());
    REQUIRE(doc.contains("results"));
    const auto& row = doc["results"][0];
    const double diff = row["difference"].get<double>();
    const double hw = row["half_width"].get<double>();
    CHECK(std::fabs(diff) < 3.0 * hw);
    CHECK(doc["manifest"]["command"] == "coverage");
}

TEST_CASE("coverage command: byte-identical reruns, file output, manifest sidecar") {
    const std::string path = "/tmp/ginicell_test_cov.csv";
    cli::CoverageArgs a;
    a.model = "ginibre";
    a.alpha = 0.5;
    a.theta_db_from = -4;
    a.theta_db_to = 4;
    a.theta_db_step = 4;
    a.method = "mc";
    a.reps = 2000;
    a.seed = 99;
    a.out = path;
    std::ostringstream out1, err1, out2, err2;
    REQUIRE(cli::run_coverage(a, out1, err1) == cli::kExitOk);
    const std::string first = slurp(path);
    REQUIRE(cli::run_coverage(a, out2, err2) == cli::kExitOk);
    CHECK(first == slurp(path));
    CHECK(!first.empty());

    const std::string manifest = slurp(path + ".manifest.json");
    const json m = json::parse(manifest);
    CHECK(m["seed"] == 99);
    CHECK(m.contains("duration_ms"));
    CHECK(m["csv_schema"] == "v1");

    // mc rows carry a half-width; grid rows stay ordered by theta
    const auto lines = split_lines(first);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1].substr(0, 3) == "-4,");
    CHECK(lines[2].substr(0, 2) == "0,");
    CHECK(lines[3].substr(0, 2) == "4,");
}

TEST_CASE("multitier command: config parsing, parts, mc agreement") {
    const std::string cfg = "/tmp/ginicell_test_sym.cfg";
    write_file(cfg, kSymConfig);
    cli::MultitierArgs a;
    a.config_path = cfg;
    a.method = "both";
    a.reps = 20000;
    a.format = "json";
    std::ostringstream out, err;
    REQUIRE(cli::run_multitier(a, out, err) == cli::kExitOk);
    const json doc = json::parse(out.str());
    const auto& rows = doc["results"];
    REQUIRE(rows.size() == 3);
    const double an_total = rows[0]["coverage_total"].get<double>();
    const double mc_total = rows[1]["coverage_total"].get<double>();
    const double hw = rows[1]["half_width"].get<double>();
    CHECK(std::fabs(an_total - mc_total) < 3.0 * hw);
    CHECK(rows[1]["assoc_freq_tier1"].get<double>() +
              rows[1]["assoc_freq_tier2"].get<double>() ==
          doctest::Approx(1.0));
}

TEST_CASE("multitier command: schema violations exit 2") {
    const std::string cfg = "/tmp/ginicell_test_bad.cfg";
    write_file(cfg, "[tier1]\nmodel = ginibre\nalpha = 1.0\nlambda = 0.3\n"
                    "antennas = 2\nusers = 5\n[tier2]\nmodel = poisson\nlambda = 0.3\n");
    cli::MultitierArgs a;
    a.config_path = cfg;
    std::ostringstream out, err;
    CHECK(cli::run_multitier(a, out, err) == cli::kExitUsage);

    write_file(cfg, "[tier1]\nmodel = ginibre\nalpha = 1.0\nlambda = 0.3\n");
    CHECK(cli::run_multitier(a, out, err) == cli::kExitUsage);
}

TEST_CASE("multitier command: doubled biases leave analytic output byte-identical") {
    const std::string cfg1 = "/tmp/ginicell_bias1.cfg";
    const std::string cfg2 = "/tmp/ginicell_bias2.cfg";
    write_file(cfg1, kSymConfig);
    std::string doubled = kSymConfig;
    // bias = 1.0 -> bias = 2.0 in both tiers
    std::size_t pos = 0;
    while ((pos = doubled.find("bias = 1.0", pos)) != std::string::npos)
        doubled.replace(pos, 10, "bias = 2.0");
    write_file(cfg2, doubled);

    cli::MultitierArgs a1, a2;
    a1.config_path = cfg1;
    a2.config_path = cfg2;
    std::ostringstream o1, e1, o2, e2;
    REQUIRE(cli::run_multitier(a1, o1, e1) == cli::kExitOk);
    REQUIRE(cli::run_multitier(a2, o2, e2) == cli::kExitOk);
    CHECK(o1.str() == o2.str());
}

TEST_CASE("sample command: determinism and expected count") {
    cli::SampleArgs a;
    a.alpha = 1.0;
    a.lambda = 0.318309886183790672;
    a.radius = 10.0;
    a.seed = 4;
    std::ostringstream out1, err1, out2, err2;
    REQUIRE(cli::run_sample(a, out1, err1) == cli::kExitOk);
    REQUIRE(cli::run_sample(a, out2, err2) == cli::kExitOk);
    CHECK(out1.str() == out2.str());
    // lambda pi r^2 = 100 expected points, allow generous slack
    const auto lines = split_lines(out1.str());
    CHECK(lines.size() > 70);
    CHECK(lines.size() < 135);
    CHECK(lines[0] == "index,squared_radius,angle");

    a.with_angles = true;
    std::ostringstream out3, err3;
    REQUIRE(cli::run_sample(a, out3, err3) == cli::kExitOk);
    CHECK(err3.str().find("angularly approximate") != std::string::npos);
}

TEST_CASE("sample command: under-dispersion of counts across seeds") {
    auto count_variance = [](double alpha) {
        cli::SampleArgs a;
        a.alpha = alpha;
        a.lambda = 0.318309886183790672;
        a.radius = 4.0;
        double s1 = 0.0, s2 = 0.0;
        const int n = 400;
        for (int seed = 1; seed <= n; ++seed) {
            a.seed = static_cast<std::uint64_t>(seed);
            std::ostringstream out, err;
            REQUIRE(cli::run_sample(a, out, err) == cli::kExitOk);
            const double c = static_cast<double>(split_lines(out.str()).size() - 1);
            s1 += c;
            s2 += c * c;
        }
        const double mean = s1 / n;
        return s2 / n - mean * mean;
    };
    CHECK(count_variance(1.0) < count_variance(0.25));
}

TEST_CASE("countstats command: analytic moments and empirical agreement") {
    cli::CountstatsArgs a;
    a.alpha = 0.5;
    a.lambda = 0.318309886183790672;
    a.radius = 2.0;
    a.empirical = true;
    a.reps = 20000;
    a.format = "json";
    std::ostringstream out, err;
    REQUIRE(cli::run_countstats(a, out, err) == cli::kExitOk);
    const json doc = json::parse(out.str());
    const auto& rows = doc["results"];
    REQUIRE(rows.size() == 4);
    const double mean = rows[0]["value"].get<double>();
    const double var = rows[1]["value"].get<double>();
    CHECK(mean == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(var <= mean);
    const double emp_mean = rows[2]["value"].get<double>();
    const double emp_mean_hw = rows[2]["half_width"].get<double>();
    const double emp_var = rows[3]["value"].get<double>();
    const double emp_var_hw = rows[3]["half_width"].get<double>();
    CHECK(std::fabs(emp_mean - mean) < 2.5 * emp_mean_hw);
    CHECK(std::fabs(emp_var - var) < 2.5 * emp_var_hw);
}

TEST_CASE("end-to-end binary: exit codes and csv schema") {
    const char* bin = std::getenv("GINICELL_BIN");
    if (bin == nullptr) return;  // available only under ctest
    const std::string base(bin);
    CHECK(std::system((base + " coverage --model ppp --theta-db 0 "
                              "--method analytic --out /tmp/ginicell_e2e.csv")
                          .c_str()) == 0);
    const std::string body = slurp("/tmp/ginicell_e2e.csv");
    CHECK(body.rfind("theta_db,theta_linear,coverage,half_width,method\n", 0) == 0);
    CHECK(body.find("0.560099153") != std::string::npos);

    const int bad = std::system(
        (base + " coverage --model ginibre --alpha 0 --theta-db 0 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(bad) == 2);
    const int usage = std::system((base + " nosuchcommand 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(usage) != 0);
}

TEST_CASE("multitier command: numerical failure exits 3") {
    // mid-range tiny alpha drives the cross-tier series past its budget
    const std::string cfg = "/tmp/ginicell_tinyalpha.cfg";
    std::string body = kSymConfig;
    const auto pos = body.find("alpha = 1.0");
    body.replace(pos, 11, "alpha = 0.001");
    write_file(cfg, body);
    cli::MultitierArgs a;
    a.config_path = cfg;
    a.method = "analytic";
    std::ostringstream out, err;
    CHECK(cli::run_multitier(a, out, err) == cli::kExitNumeric);
    CHECK(err.str().find("numerical failure") != std::string::npos);
}
