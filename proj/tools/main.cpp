#include <iostream>

#include "CLI11.hpp"
#include "runner.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::string> out, csv, report;
    std::optional<double> fd_step, r_scale;
    std::optional<double> tol_weingarten, tol_metric, tol_conformal, tol_wedge, tol_brioschi,
        tol_specialization;

    void attach(CLI::App* cmd) {
        cmd->add_option("config", config_path, "run configuration file")->required();
        cmd->add_option("--out", out, "mesh output path (.obj or .ply)");
        cmd->add_option("--csv", csv, "per-node diagnostic CSV path");
        cmd->add_option("--report", report, "JSON summary path");
        cmd->add_option("--fd-step", fd_step, "finite-difference step for f and t");
        cmd->add_option("--r-scale", r_scale, "debug radius perturbation factor");
        cmd->add_option("--tolerance.weingarten", tol_weingarten);
        cmd->add_option("--tolerance.metric", tol_metric);
        cmd->add_option("--tolerance.conformal", tol_conformal);
        cmd->add_option("--tolerance.wedge", tol_wedge);
        cmd->add_option("--tolerance.brioschi", tol_brioschi);
        cmd->add_option("--tolerance.specialization", tol_specialization);
    }

    bcm::cli::RunConfig load() const {
        bcm::cli::RunConfig cfg = bcm::cli::load_config(config_path);
        if (out) cfg.mesh_path = out;
        if (csv) cfg.csv_path = csv;
        if (report) cfg.report_path = report;
        if (fd_step) cfg.fd_step = *fd_step;
        if (r_scale) cfg.r_scale = *r_scale;
        if (tol_weingarten) cfg.tol.weingarten = *tol_weingarten;
        if (tol_metric) cfg.tol.metric = *tol_metric;
        if (tol_conformal) cfg.tol.conformal = *tol_conformal;
        if (tol_wedge) cfg.tol.wedge = *tol_wedge;
        if (tol_brioschi) cfg.tol.brioschi = *tol_brioschi;
        if (tol_specialization) cfg.tol.specialization = *tol_specialization;
        return cfg;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bryant-type linear Weingarten surfaces from holomorphic data"};
    app.require_subcommand(1);

    Overrides gen, ver, fam, swp;
    gen.attach(app.add_subcommand("generate", "sample the surface, write mesh + CSV"));
    ver.attach(app.add_subcommand("verify", "check every identity over the grid"));
    fam.attach(app.add_subcommand("family", "generate and verify the parallel family"));
    swp.attach(app.add_subcommand("sweep", "verify a list of (h, mu) pairs"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("generate")) return bcm::cli::run_generate(gen.load());
        if (app.got_subcommand("verify")) return bcm::cli::run_verify(ver.load());
        if (app.got_subcommand("family")) return bcm::cli::run_family(fam.load());
        if (app.got_subcommand("sweep")) return bcm::cli::run_sweep(swp.load());
    } catch (const bcm::Error& e) {
        std::cerr << "error (" << bcm::to_string(e.code()) << "): " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
