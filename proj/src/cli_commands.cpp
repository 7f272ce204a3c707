#include "ginicell/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ginicell/analytic.hpp"
#include "ginicell/pointproc.hpp"
#include "ginicell/rng.hpp"
#include "ginicell/simulate.hpp"

namespace ginicell::cli {

namespace {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

// Results go to --out when given, otherwise to the caller's stream. The
// full manifest (with wall clock) always lands in a sidecar next to the
// file, or on the message stream for stdout runs.
class Sink {
public:
    Sink(const std::string& out_path, std::ostream& fallback, std::ostream& err)
        : path_(out_path), err_(err) {
        if (path_.empty()) {
            stream_ = &fallback;
        } else {
            file_.open(path_, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path_);
            stream_ = &file_;
        }
    }

    std::ostream& stream() { return *stream_; }

    void finish(const RunManifest& manifest) {
        if (file_.is_open()) file_.close();
        const json full = manifest.to_json(true);
        if (!path_.empty()) {
            std::ofstream mf(path_ + ".manifest.json", std::ios::binary | std::ios::trunc);
            mf << full.dump(2) << "\n";
        } else {
            err_ << "manifest: " << full.dump() << "\n";
        }
    }

private:
    std::string path_;
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
    std::ostream& err_;
};

json json_row_coverage(double theta_db, double theta_lin) {
    json j;
    j["theta_db"] = round12(theta_db);
    j["theta_linear"] = round12(theta_lin);
    return j;
}

// fixed-chunk parallel map over grid indices; output order never depends
// on the worker count
template <typename Fn>
void parallel_grid(std::size_t n, int workers, const Fn& fn) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int k = std::min<int>(workers, static_cast<int>(n));
    pool.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace

std::vector<double> theta_db_grid(const CoverageArgs& args) {
    if (args.single_theta_linear) {
        if (!(args.theta_linear > 0.0))
            throw std::invalid_argument("--theta must be positive");
        return {linear_to_db(args.theta_linear)};
    }
    if (args.single_theta_db) return {args.theta_db};
    if (!(args.theta_db_step > 0.0))
        throw std::invalid_argument("--theta-db-step must be positive");
    if (args.theta_db_to < args.theta_db_from)
        throw std::invalid_argument("--theta-db-to must be >= --theta-db-from");
    std::vector<double> grid;
    const int n =
        static_cast<int>(std::floor((args.theta_db_to - args.theta_db_from) /
                                    args.theta_db_step + 1e-9)) + 1;
    grid.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        grid.push_back(args.theta_db_from + i * args.theta_db_step);
    return grid;
}

int run_coverage(const CoverageArgs& args, std::ostream& results_stream,
                 std::ostream& err) {
    Timer timer;
    // domain checks first: exit 2 territory
    if (args.model != "ppp" && args.model != "ginibre") {
        err << "error: --model must be ppp or ginibre\n";
        return kExitUsage;
    }
    if (args.model == "ginibre" && !(args.alpha > 0.0 && args.alpha <= 1.0)) {
        err << "error: --alpha must lie in (0,1]; for the Poisson limit use --model ppp\n";
        return kExitUsage;
    }
    if (!(args.beta > 1.0)) {
        err << "error: --beta must exceed 1\n";
        return kExitUsage;
    }
    if (!(args.lambda > 0.0) || !(args.power > 0.0) || args.noise < 0.0 ||
        args.fading_shape < 1) {
        err << "error: invalid scenario parameters\n";
        return kExitUsage;
    }
    if (args.method != "analytic" && args.method != "mc" && args.method != "both") {
        err << "error: --method must be analytic, mc or both\n";
        return kExitUsage;
    }
    if (args.format != "csv" && args.format != "json") {
        err << "error: --format must be csv or json\n";
        return kExitUsage;
    }
    const bool want_analytic = args.method != "mc";
    const bool want_mc = args.method != "analytic";
    if (want_mc && args.reps < 100) {
        err << "error: --reps must be at least 100\n";
        return kExitUsage;
    }

    analytic::SingleTierScenario scn;
    if (args.model == "ginibre")
        scn.deployment = pointproc::GinibreModel{args.alpha, args.lambda};
    else
        scn.deployment = pointproc::PoissonModel{args.lambda};
    scn.power = args.power;
    scn.noise = args.noise;
    scn.pathloss = channel::PathLoss{args.beta};
    scn.interferer_fading = args.fading_shape == 1
                                ? channel::FadingModel::rayleigh()
                                : channel::FadingModel::erlang(args.fading_shape);

    std::vector<double> grid;
    try {
        grid = theta_db_grid(args);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const int workers = simulate::resolve_workers(args.workers);
    std::vector<double> analytic_vals(grid.size(), 0.0);
    std::vector<simulate::McEstimate> mc_vals(grid.size());
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex fail_mu;

    try {
        if (want_analytic) {
            parallel_grid(grid.size(), workers, [&](std::size_t i) {
                if (failed.load()) return;
                try {
                    const double th = db_to_linear(grid[i]);
                    analytic_vals[i] =
                        args.model == "ginibre"
                            ? analytic::coverage_ginibre(scn, th)
                            : analytic::coverage_ppp(scn, th);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(fail_mu);
                    failed.store(true);
                    failure = e.what();
                }
            });
            if (failed.load()) throw numerics::ConvergenceError(failure, 0.0, 0.0);
        }
        if (want_mc) {
            simulate::McConfig mc;
            mc.replications = args.reps;
            mc.master_seed = args.seed;
            mc.max_points_per_tier = args.max_points;
            mc.workers = workers;
            for (std::size_t i = 0; i < grid.size(); ++i)
                mc_vals[i] = simulate::estimate_coverage_single(
                    scn, db_to_linear(grid[i]), mc);
        }
    } catch (const analytic::TruncationError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const numerics::ConvergenceError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    }

    RunManifest manifest;
    manifest.command = "coverage";
    manifest.seed = args.seed;
    manifest.parameters = {
        {"model", args.model},          {"alpha", args.alpha},
        {"lambda", round12(args.lambda)}, {"beta", args.beta},
        {"power", args.power},          {"noise", args.noise},
        {"fading_shape", args.fading_shape},
        {"method", args.method},        {"reps", args.reps},
        {"seed", args.seed},            {"max_points", args.max_points},
        {"format", args.format},        {"theta_db", json(grid)}};
    {
        std::ostringstream cl;
        cl << "coverage --model " << args.model;
        if (args.model == "ginibre") cl << " --alpha " << args.alpha;
        cl << " --lambda " << format12(args.lambda) << " --beta " << args.beta
           << " --power " << args.power << " --noise " << args.noise
           << " --fading-shape " << args.fading_shape << " --method "
           << args.method << " --reps " << args.reps << " --seed " << args.seed
           << " --max-points " << args.max_points << " --format " << args.format;
        manifest.command_line = cl.str();
    }
    json diag = json::array();
    if (want_mc)
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (mc_vals[i].truncation_warning)
                diag.push_back({{"theta_db", grid[i]},
                                {"warning", "truncation bias"},
                                {"pilot_shift", round12(mc_vals[i].pilot_shift)}});
    manifest.diagnostics = diag;

    try {
        Sink sink(args.out, results_stream, err);
        if (args.format == "csv") {
            sink.stream() << "theta_db,theta_linear,coverage,half_width,method\n";
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double th = db_to_linear(grid[i]);
                if (want_analytic)
                    sink.stream() << format12(grid[i]) << "," << format12(th) << ","
                                  << format12(analytic_vals[i]) << ",,analytic\n";
                if (want_mc)
                    sink.stream() << format12(grid[i]) << "," << format12(th) << ","
                                  << format12(mc_vals[i].coverage) << ","
                                  << format12(mc_vals[i].half_width) << ",mc\n";
            }
        } else {
            json out;
            out["manifest"] = manifest.to_json(false);
            json rows = json::array();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                json r = json_row_coverage(grid[i], db_to_linear(grid[i]));
                if (want_analytic) r["analytic"] = round12(analytic_vals[i]);
                if (want_mc) {
                    r["mc"] = round12(mc_vals[i].coverage);
                    r["half_width"] = round12(mc_vals[i].half_width);
                }
                if (want_analytic && want_mc)
                    r["difference"] = round12(mc_vals[i].coverage - analytic_vals[i]);
                rows.push_back(r);
            }
            out["results"] = rows;
            sink.stream() << out.dump(2) << "\n";
        }
        manifest.duration_ms = timer.ms();
        sink.finish(manifest);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

namespace {

std::map<std::string, std::map<std::string, std::string>> read_sections(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string line, section;
    while (std::getline(in, line)) {
        const auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw std::invalid_argument("config: expected 'key = value' inside a section: " + line);
        sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return sections;
}

double get_num(const std::map<std::string, std::string>& kv, const std::string& key,
               bool required, double fallback, const std::string& section) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        if (required)
            throw std::invalid_argument("config: missing key '" + key + "' in [" + section + "]");
        return fallback;
    }
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
        throw std::invalid_argument("config: bad number for '" + key + "': " + it->second);
    return v;
}

channel::TierConfig read_tier(const std::map<std::string, std::string>& kv,
                              const std::string& section, bool ginibre_tier) {
    channel::TierConfig t;
    const auto model_it = kv.find("model");
    const std::string model = model_it == kv.end() ? "" : model_it->second;
    if (ginibre_tier) {
        if (model != "ginibre")
            throw std::invalid_argument("config: [" + section + "] must set model = ginibre");
        pointproc::GinibreModel g;
        g.alpha = get_num(kv, "alpha", true, 0.0, section);
        g.lambda = get_num(kv, "lambda", true, 0.0, section);
        t.deployment = g;
    } else {
        if (model != "poisson")
            throw std::invalid_argument("config: [" + section + "] must set model = poisson");
        pointproc::PoissonModel p;
        p.lambda = get_num(kv, "lambda", true, 0.0, section);
        t.deployment = p;
    }
    t.power = get_num(kv, "power", false, 1.0, section);
    t.bias = get_num(kv, "bias", false, 1.0, section);
    t.antennas = static_cast<int>(get_num(kv, "antennas", false, 1.0, section));
    t.served_users = static_cast<int>(get_num(kv, "users", false, 1.0, section));
    t.pathloss.beta = get_num(kv, "beta", false, 2.0, section);
    return t;
}

} // namespace

multitier::TwoTierScenario parse_two_tier_config(const std::string& path) {
    const auto sections = read_sections(path);
    if (sections.find("tier1") == sections.end())
        throw std::invalid_argument("config: missing [tier1] section");
    if (sections.find("tier2") == sections.end())
        throw std::invalid_argument("config: missing [tier2] section");

    multitier::TwoTierScenario scn;
    scn.tier1 = read_tier(sections.at("tier1"), "tier1", true);
    scn.tier2 = read_tier(sections.at("tier2"), "tier2", false);

    const auto th_it = sections.find("thresholds");
    double th1_db = 0.0, th2_db = 0.0;
    if (th_it != sections.end()) {
        th1_db = get_num(th_it->second, "theta1_db", false, 0.0, "thresholds");
        th2_db = get_num(th_it->second, "theta2_db", false, th1_db, "thresholds");
    }
    scn.theta1 = db_to_linear(th1_db);
    scn.theta2 = db_to_linear(th2_db);
    return scn;
}

int run_multitier(const MultitierArgs& args, std::ostream& results_stream,
                  std::ostream& err) {
    Timer timer;
    if (args.method != "analytic" && args.method != "mc" && args.method != "both") {
        err << "error: --method must be analytic, mc or both\n";
        return kExitUsage;
    }
    if (args.format != "csv" && args.format != "json") {
        err << "error: --format must be csv or json\n";
        return kExitUsage;
    }
    multitier::TwoTierScenario scn;
    try {
        scn = parse_two_tier_config(args.config_path);
        scn.tier1.validate();
        scn.tier2.validate();
        if (args.method != "mc") scn.validate();  // analytic path needs full SDMA
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const bool want_analytic = args.method != "mc";
    const bool want_mc = args.method != "analytic";

    multitier::TwoTierCoverage an;
    simulate::McEstimate mc;
    try {
        if (want_analytic) an = multitier::coverage_two_tier(scn);
        if (want_mc) {
            simulate::McConfig cfg;
            cfg.replications = args.reps;
            cfg.master_seed = args.seed;
            cfg.max_points_per_tier = args.max_points;
            cfg.workers = args.workers;
            mc = simulate::estimate_coverage_two_tier(scn, cfg);
        }
    } catch (const analytic::TruncationError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const numerics::ConvergenceError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    }

    RunManifest manifest;
    manifest.command = "multitier";
    manifest.seed = args.seed;
    manifest.command_line = "multitier --config " + args.config_path +
                            " --method " + args.method;
    manifest.parameters = {
        {"config", args.config_path}, {"method", args.method},
        {"reps", args.reps},          {"seed", args.seed},
        {"max_points", args.max_points},
        {"theta1", round12(scn.theta1)}, {"theta2", round12(scn.theta2)}};
    if (want_mc && mc.truncation_warning)
        manifest.diagnostics = {{"warning", "truncation bias"},
                                {"pilot_shift", round12(mc.pilot_shift)}};

    try {
        Sink sink(args.out, results_stream, err);
        if (args.format == "csv") {
            sink.stream() << "metric,value,half_width,method\n";
            if (want_analytic) {
                sink.stream() << "coverage_total," << format12(an.total) << ",,analytic\n";
                sink.stream() << "tier1_part," << format12(an.tier1_part) << ",,analytic\n";
                sink.stream() << "tier2_part," << format12(an.tier2_part) << ",,analytic\n";
            }
            if (want_mc) {
                sink.stream() << "coverage_total," << format12(mc.coverage) << ","
                              << format12(mc.half_width) << ",mc\n";
                sink.stream() << "tier1_part," << format12(mc.per_tier_coverage[0]) << ",,mc\n";
                sink.stream() << "tier2_part," << format12(mc.per_tier_coverage[1]) << ",,mc\n";
                sink.stream() << "assoc_freq_tier1,"
                              << format12(mc.per_tier_association_freq[0]) << ",,mc\n";
                sink.stream() << "assoc_freq_tier2,"
                              << format12(mc.per_tier_association_freq[1]) << ",,mc\n";
            }
        } else {
            json out;
            out["manifest"] = manifest.to_json(false);
            json rows = json::array();
            if (want_analytic)
                rows.push_back({{"method", "analytic"},
                                {"coverage_total", round12(an.total)},
                                {"tier1_part", round12(an.tier1_part)},
                                {"tier2_part", round12(an.tier2_part)}});
            if (want_mc)
                rows.push_back({{"method", "mc"},
                                {"coverage_total", round12(mc.coverage)},
                                {"half_width", round12(mc.half_width)},
                                {"tier1_part", round12(mc.per_tier_coverage[0])},
                                {"tier2_part", round12(mc.per_tier_coverage[1])},
                                {"assoc_freq_tier1", round12(mc.per_tier_association_freq[0])},
                                {"assoc_freq_tier2", round12(mc.per_tier_association_freq[1])}});
            if (want_analytic && want_mc)
                rows.push_back({{"method", "difference"},
                                {"coverage_total", round12(mc.coverage - an.total)}});
            out["results"] = rows;
            sink.stream() << out.dump(2) << "\n";
        }
        manifest.duration_ms = timer.ms();
        sink.finish(manifest);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

int run_sample(const SampleArgs& args, std::ostream& results_stream,
               std::ostream& err) {
    Timer timer;
    if (!(args.alpha > 0.0 && args.alpha <= 1.0)) {
        err << "error: --alpha must lie in (0,1]\n";
        return kExitUsage;
    }
    if (!(args.lambda > 0.0) || !(args.radius > 0.0)) {
        err << "error: --lambda and --radius must be positive\n";
        return kExitUsage;
    }
    if (args.format != "csv" && args.format != "json") {
        err << "error: --format must be csv or json\n";
        return kExitUsage;
    }

    const pointproc::GinibreModel model{args.alpha, args.lambda};
    const int max_points = pointproc::default_max_points(model, args.radius);
    const auto cfg = pointproc::sample_radial(model, max_points, args.seed);
    const double r2 = args.radius * args.radius;

    std::vector<double> radii;
    for (double y : cfg.squared_radii) {
        if (y <= r2) radii.push_back(y);
    }
    std::vector<double> angles;
    if (args.with_angles) {
        rng::Stream as = rng::Stream::derive(args.seed, 0x616E676C65ull);
        angles.resize(radii.size());
        for (auto& a : angles) a = 2.0 * 3.14159265358979323846 * as.next_double();
    }

    RunManifest manifest;
    manifest.command = "sample";
    manifest.seed = args.seed;
    manifest.command_line = "sample";
    manifest.parameters = {{"alpha", args.alpha},
                           {"lambda", round12(args.lambda)},
                           {"radius", args.radius},
                           {"seed", args.seed},
                           {"with_angles", args.with_angles},
                           {"max_points", max_points}};
    if (args.with_angles)
        manifest.diagnostics = {{"angles", "radially exact, angularly approximate"}};

    try {
        Sink sink(args.out, results_stream, err);
        if (args.format == "csv") {
            sink.stream() << "index,squared_radius,angle\n";
            for (std::size_t i = 0; i < radii.size(); ++i) {
                sink.stream() << i << "," << format12(radii[i]) << ",";
                if (args.with_angles) sink.stream() << format12(angles[i]);
                sink.stream() << "\n";
            }
        } else {
            json out;
            out["manifest"] = manifest.to_json(false);
            json rows = json::array();
            for (std::size_t i = 0; i < radii.size(); ++i) {
                json r = {{"index", i}, {"squared_radius", round12(radii[i])}};
                if (args.with_angles) r["angle"] = round12(angles[i]);
                rows.push_back(r);
            }
            out["results"] = rows;
            sink.stream() << out.dump(2) << "\n";
        }
        manifest.duration_ms = timer.ms();
        sink.finish(manifest);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

int run_countstats(const CountstatsArgs& args, std::ostream& results_stream,
                   std::ostream& err) {
    Timer timer;
    if (!(args.alpha > 0.0 && args.alpha <= 1.0)) {
        err << "error: --alpha must lie in (0,1]\n";
        return kExitUsage;
    }
    if (!(args.lambda > 0.0) || !(args.radius > 0.0)) {
        err << "error: --lambda and --radius must be positive\n";
        return kExitUsage;
    }
    if (args.format != "csv" && args.format != "json") {
        err << "error: --format must be csv or json\n";
        return kExitUsage;
    }
    if (args.empirical && args.reps < 100) {
        err << "error: --reps must be at least 100\n";
        return kExitUsage;
    }

    const pointproc::GinibreModel model{args.alpha, args.lambda};
    const auto stats = pointproc::disk_count_statistics(model, args.radius);

    double emp_mean = 0.0, emp_var = 0.0, mean_hw = 0.0, var_hw = 0.0;
    if (args.empirical) {
        const int max_points = pointproc::default_max_points(model, args.radius);
        const double r2 = args.radius * args.radius;
        const long n = args.reps;
        double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
        for (long rep = 0; rep < n; ++rep) {
            const auto cfg = pointproc::sample_radial(
                model, max_points,
                rng::Stream::derive(args.seed, 0x636E74ull, static_cast<std::uint64_t>(rep))
                    .next_u64());
            double c = 0.0;
            for (double y : cfg.squared_radii)
                if (y <= r2) c += 1.0;
            s1 += c;
            s2 += c * c;
            s3 += c * c * c;
            s4 += c * c * c * c;
        }
        emp_mean = s1 / n;
        emp_var = s2 / n - emp_mean * emp_mean;
        // central moments for the variance CI (delta method)
        const double m1 = emp_mean;
        const double m2 = emp_var;
        const double m4 = s4 / n - 4 * m1 * s3 / n + 6 * m1 * m1 * s2 / n - 3 * m1 * m1 * m1 * m1;
        const double z = 1.959963984540054;
        mean_hw = z * std::sqrt(std::max(m2, 0.0) / n);
        var_hw = z * std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    }

    RunManifest manifest;
    manifest.command = "countstats";
    manifest.seed = args.seed;
    manifest.command_line = "countstats";
    manifest.parameters = {{"alpha", args.alpha},
                           {"lambda", round12(args.lambda)},
                           {"radius", args.radius},
                           {"empirical", args.empirical},
                           {"reps", args.reps},
                           {"seed", args.seed}};

    try {
        Sink sink(args.out, results_stream, err);
        if (args.format == "csv") {
            sink.stream() << "quantity,value,half_width,method\n";
            sink.stream() << "mean," << format12(stats.mean) << ",,analytic\n";
            sink.stream() << "variance," << format12(stats.variance) << ",,analytic\n";
            if (args.empirical) {
                sink.stream() << "mean," << format12(emp_mean) << ","
                              << format12(mean_hw) << ",empirical\n";
                sink.stream() << "variance," << format12(emp_var) << ","
                              << format12(var_hw) << ",empirical\n";
            }
        } else {
            json out;
            out["manifest"] = manifest.to_json(false);
            json rows = json::array();
            rows.push_back({{"quantity", "mean"},
                            {"value", round12(stats.mean)},
                            {"method", "analytic"}});
            rows.push_back({{"quantity", "variance"},
                            {"value", round12(stats.variance)},
                            {"method", "analytic"}});
            if (args.empirical) {
                rows.push_back({{"quantity", "mean"},
                                {"value", round12(emp_mean)},
                                {"half_width", round12(mean_hw)},
                                {"method", "empirical"}});
                rows.push_back({{"quantity", "variance"},
                                {"value", round12(emp_var)},
                                {"half_width", round12(var_hw)},
                                {"method", "empirical"}});
            }
            out["results"] = rows;
            sink.stream() << out.dump(2) << "\n";
        }
        manifest.duration_ms = timer.ms();
        sink.finish(manifest);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace ginicell::cli
