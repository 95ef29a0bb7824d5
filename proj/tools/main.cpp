#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "entdiag/io.hpp"
#include "entdiag/runner.hpp"
#include "entdiag/version.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out;
    int workers = -1;
    long long seed = -1;
    bool force = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "experiment config (JSON)")->required();
    cmd->add_option("--out", args.out, "output directory (overrides config)");
    cmd->add_option("--workers", args.workers, "worker threads (overrides config and ENTDIAG_WORKERS)");
    cmd->add_option("--seed", args.seed, "master seed (overrides config)");
    cmd->add_flag("--force", args.force, "rerun even when a complete run with this config hash exists");
}

int run_subcommand(const std::string& kind, const CommonArgs& args) {
    entdiag::ExperimentConfig cfg = entdiag::ExperimentConfig::from_file(args.config);
    // the subcommand selects the experiment; the config's field is a default
    cfg.experiment = entdiag::experiment_kind_from_string(kind);
    if (!args.out.empty()) cfg.out_dir = args.out;
    if (args.workers >= 0) cfg.workers = args.workers;
    if (args.seed >= 0) cfg.master_seed = static_cast<uint64_t>(args.seed);
    return entdiag::run_experiment(std::move(cfg), args.force);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entdiag: layered-circuit entanglement diagnostics and eigensolver experiments"};
    app.set_version_flag("--version", entdiag::kVersion);
    app.require_subcommand(1);

    const char* kinds[] = {"grow", "optimize", "sweep", "diagnose", "sff", "spread", "tables"};
    const char* descriptions[] = {
        "ensemble entanglement growth curves and fits",
        "gradient-descent eigensolver runs with trace recording",
        "before/after optimization statistics over a depth grid",
        "entropy and trace-distance bound reports for random circuits",
        "spectral form factor of the reduced circuit state",
        "operator spreading and coefficient entropy",
        "growth-table reproduction over a list of system sizes",
    };
    CommonArgs common[7];
    for (int i = 0; i < 7; ++i) add_common(app.add_subcommand(kinds[i], descriptions[i]), common[i]);

    std::string golden, results, tolerances, report_out;
    auto* verify_cmd = app.add_subcommand("verify", "compare results against golden records");
    verify_cmd->add_option("--golden", golden, "golden records (JSON)")->required();
    verify_cmd->add_option("--results", results, "produced results file or directory")->required();
    verify_cmd->add_option("--tolerances", tolerances, "tolerance overrides (JSON)");
    verify_cmd->add_option("--report", report_out, "write the machine-readable report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (int i = 0; i < 7; ++i)
            if (app.get_subcommand(kinds[i])->parsed()) return run_subcommand(kinds[i], common[i]);
        if (verify_cmd->parsed()) {
            entdiag::VerifyTolerances tol;
            if (!tolerances.empty()) tol = entdiag::VerifyTolerances::from_file(tolerances);
            const entdiag::VerifyReport report = entdiag::verify(golden, results, tol);
            std::fputs(report.to_text().c_str(), stdout);
            if (!report_out.empty()) entdiag::write_text_file(report_out, report.to_json() + "\n");
            return report.pass ? 0 : 1;
        }
    } catch (const entdiag::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
