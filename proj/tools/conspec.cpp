// Command-line front end.  Evaluates one scenario (a named model or an INI
// config file) and writes the term table, totals, and optional integrand
// dumps under --out.  Exit status: 0 success, 1 evaluation failure or a term
// error estimate above tolerance, 2 invalid configuration.

#include <CLI11.hpp>

#include "conspec/driver.hpp"

int main(int argc, char** argv) {
    CLI::App app{"continuous-spectrum contribution evaluator for rank <= 2 root data"};
    conspec::RunConfig cfg;
    std::string config_path;

    auto* opt_scenario = app.add_option(
        "--scenario", cfg.scenario,
        "model name (sl2z_model, a2_model, a1xa1_model, b2_model, g2_model) or config file path");
    app.add_option("--config", config_path, "INI config file; explicit flags override its values");
    auto* opt_out = app.add_option("--out", cfg.out_dir, "output directory (default: out)");
    auto* opt_tol = app.add_option("--tolerance", cfg.tolerance, "per-term error tolerance");
    auto* opt_t = app.add_option("--quad-T", cfg.quad_T, "truncation (default 10/sqrt(width))");
    auto* opt_n = app.add_option("--quad-N", cfg.quad_N, "Gauss-Legendre nodes per panel");
    auto* opt_p = app.add_option("--quad-panels", cfg.quad_panels, "panels per axis");
    auto* opt_fd = app.add_option("--fd-step", cfg.fd_step,
                                  "first-order difference step (second-order stencils use 10x)");
    auto* opt_coeffs =
        app.add_option("--coeffs", cfg.coeffs, "symbol polynomial coefficients, ascending");
    auto* opt_width = app.add_option("--width", cfg.width, "symbol Gaussian width b > 0");
    auto* opt_integrand =
        app.add_flag("--emit-integrand", cfg.emit_integrand, "dump integrand samples per term");
    app.add_flag("--constants-only", cfg.constants_only, "print the constants ledger and exit");

    CLI11_PARSE(app, argc, argv);

    if (!config_path.empty()) {
        conspec::RunConfig base;
        try {
            base = conspec::parse_config_file(config_path);
        } catch (const conspec::ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return 2;
        }
        if (opt_scenario->count()) base.scenario = cfg.scenario;
        if (opt_out->count()) base.out_dir = cfg.out_dir;
        if (opt_tol->count()) base.tolerance = cfg.tolerance;
        if (opt_t->count()) base.quad_T = cfg.quad_T;
        if (opt_n->count()) base.quad_N = cfg.quad_N;
        if (opt_p->count()) base.quad_panels = cfg.quad_panels;
        if (opt_fd->count()) base.fd_step = cfg.fd_step;
        if (opt_coeffs->count()) base.coeffs = cfg.coeffs;
        if (opt_width->count()) base.width = cfg.width;
        if (opt_integrand->count()) base.emit_integrand = cfg.emit_integrand;
        base.constants_only = cfg.constants_only;
        return conspec::run(base);
    }
    return conspec::run(cfg);
}
