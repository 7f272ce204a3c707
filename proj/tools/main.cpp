// Command-line front end: coverage curves, two-tier scenarios, radial
// samples and disk-count statistics, with CSV/JSON output.

#include <iostream>

#include <CLI11.hpp>

#include "ginicell/cli.hpp"

namespace gc = ginicell::cli;

int main(int argc, char** argv) {
    CLI::App app{"ginicell - coverage analysis for repulsive cellular deployments"};
    app.require_subcommand(1);

    gc::CoverageArgs cov;
    auto* cov_cmd = app.add_subcommand("coverage", "single-tier coverage vs threshold");
    cov_cmd->add_option("--model", cov.model, "ppp or ginibre")->required();
    cov_cmd->add_option("--alpha", cov.alpha, "repulsion parameter in (0,1]");
    cov_cmd->add_option("--lambda", cov.lambda, "station intensity (default 1/pi)");
    cov_cmd->add_option("--beta", cov.beta, "path-loss half exponent (> 1)");
    cov_cmd->add_option("--power", cov.power, "transmit power");
    cov_cmd->add_option("--noise", cov.noise, "noise power (0 = interference only)");
    cov_cmd->add_option("--fading-shape", cov.fading_shape,
                        "interferer channel shape (1 = Rayleigh)");
    cov_cmd->add_option("--theta-db-from", cov.theta_db_from, "grid start in dB");
    cov_cmd->add_option("--theta-db-to", cov.theta_db_to, "grid end in dB");
    cov_cmd->add_option("--theta-db-step", cov.theta_db_step, "grid step in dB");
    auto* single_db = cov_cmd->add_option("--theta-db", cov.theta_db, "single threshold in dB");
    auto* single_lin = cov_cmd->add_option("--theta", cov.theta_linear, "single threshold, linear");
    cov_cmd->add_option("--method", cov.method, "analytic, mc or both");
    cov_cmd->add_option("--reps", cov.reps, "Monte Carlo replications");
    cov_cmd->add_option("--seed", cov.seed, "master seed");
    cov_cmd->add_option("--max-points", cov.max_points, "stations sampled per replication");
    cov_cmd->add_option("--workers", cov.workers, "worker threads (0 = auto)");
    cov_cmd->add_option("--format", cov.format, "csv or json");
    cov_cmd->add_option("--out", cov.out, "output file (default stdout)");

    gc::MultitierArgs mt;
    auto* mt_cmd = app.add_subcommand("multitier", "two-tier coverage from a config file");
    mt_cmd->add_option("--config", mt.config_path, "scenario config file")->required();
    mt_cmd->add_option("--method", mt.method, "analytic, mc or both");
    mt_cmd->add_option("--reps", mt.reps, "Monte Carlo replications");
    mt_cmd->add_option("--seed", mt.seed, "master seed");
    mt_cmd->add_option("--max-points", mt.max_points, "stations sampled per tier");
    mt_cmd->add_option("--workers", mt.workers, "worker threads (0 = auto)");
    mt_cmd->add_option("--format", mt.format, "csv or json");
    mt_cmd->add_option("--out", mt.out, "output file (default stdout)");

    gc::SampleArgs sm;
    auto* sm_cmd = app.add_subcommand("sample", "draw one radial configuration");
    sm_cmd->add_option("--alpha", sm.alpha, "repulsion parameter in (0,1]");
    sm_cmd->add_option("--lambda", sm.lambda, "station intensity");
    sm_cmd->add_option("--radius", sm.radius, "observation radius");
    sm_cmd->add_option("--seed", sm.seed, "seed");
    sm_cmd->add_flag("--with-angles", sm.with_angles,
                     "attach independent uniform angles (scatter output)");
    sm_cmd->add_option("--format", sm.format, "csv or json");
    sm_cmd->add_option("--out", sm.out, "output file (default stdout)");

    gc::CountstatsArgs cs;
    auto* cs_cmd = app.add_subcommand("countstats", "disk count mean/variance");
    cs_cmd->add_option("--alpha", cs.alpha, "repulsion parameter in (0,1]");
    cs_cmd->add_option("--lambda", cs.lambda, "station intensity");
    cs_cmd->add_option("--radius", cs.radius, "disk radius");
    cs_cmd->add_flag("--empirical", cs.empirical, "add sampled moments");
    cs_cmd->add_option("--reps", cs.reps, "sampled configurations");
    cs_cmd->add_option("--seed", cs.seed, "seed");
    cs_cmd->add_option("--format", cs.format, "csv or json");
    cs_cmd->add_option("--out", cs.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return gc::kExitUsage;
    }

    if (cov_cmd->parsed()) {
        cov.single_theta_db = single_db->count() > 0;
        cov.single_theta_linear = single_lin->count() > 0;
        return gc::run_coverage(cov, std::cout, std::cerr);
    }
    if (mt_cmd->parsed()) return gc::run_multitier(mt, std::cout, std::cerr);
    if (sm_cmd->parsed()) return gc::run_sample(sm, std::cout, std::cerr);
    if (cs_cmd->parsed()) return gc::run_countstats(cs, std::cout, std::cerr);
    return gc::kExitUsage;
}
