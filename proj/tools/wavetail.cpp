// wavetail: predict, cross-check, and measure late-time power-law tails of
// spherical waves with small power-type nonlinearities in odd space
// dimensions d = 2l + 3.
//
// Subcommands:
//   predict  closed-form tail exponents and amplitudes for a config
//   identity kernel-moment identity self-test (no config needed)
//   duhamel  first Duhamel iterate by quadrature vs the closed-form tail
//   evolve   radial method-of-lines evolution, observers written as CSV
//   fit      measure gamma and amplitude from series CSV files
//   verify   end-to-end: evolve, isolate orders in eps, compare to predict
//
// Exit status: 0 all checks passed, 1 a check failed, 2 usage/runtime error.

#include "wavetail/commands.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"late-time tail prediction and verification for radial "
                 "waves in odd space dimensions"};
    app.require_subcommand(1);

    wavetail::CommandOptions opts;
    std::vector<double> eps_list;

    auto add_config = [&](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("-c,--config", opts.config_path,
                                  "INI config file");
        if (required) o->required()->check(CLI::ExistingFile);
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("-o,--out", opts.out_dir,
                        "output directory (default: $WAVETAIL_OUT or .)");
    };

    CLI::App* predict = app.add_subcommand(
        "predict", "closed-form tail exponents and amplitudes");
    add_config(predict, true);
    add_out(predict);

    CLI::App* identity = app.add_subcommand(
        "identity", "kernel-moment identity self-test sweep");
    add_out(identity);

    CLI::App* duhamel = app.add_subcommand(
        "duhamel",
        "first-iterate quadrature cross-check of the closed-form tail");
    add_config(duhamel, true);
    add_out(duhamel);
    duhamel->add_option("--times", opts.times,
                        "probe times (default 40 80 160 320)")
        ->expected(-3);
    duhamel->add_option("-r,--radius", opts.radius,
                        "observation radius (default: support radius + 1)");

    CLI::App* evolve =
        app.add_subcommand("evolve", "nonlinear radial evolution to CSV");
    add_config(evolve, true);
    add_out(evolve);
    evolve->add_option("--eps", eps_list,
                       "amplitudes to run (overrides config)")
        ->expected(-1);
    evolve->add_option("--threads", opts.threads,
                       "worker threads (default: hardware)");
    evolve->add_flag("--energy", opts.track_energy,
                     "track the conserved energy functional");

    CLI::App* fit = app.add_subcommand(
        "fit", "fit gamma and amplitude from series CSV files");
    fit->add_option("inputs", opts.inputs, "series CSV files")
        ->required()
        ->check(CLI::ExistingFile);
    add_out(fit);
    fit->add_option("--t-lo", opts.t_lo, "fit window start");
    fit->add_option("--t-hi", opts.t_hi, "fit window end");

    CLI::App* verify = app.add_subcommand(
        "verify", "evolve, isolate orders in eps, compare to predictions");
    add_config(verify, true);
    add_out(verify);
    verify->add_option("--eps", eps_list,
                       "base amplitude (overrides config)")
        ->expected(-1);
    verify->add_option("--threads", opts.threads,
                       "worker threads (default: hardware)");
    verify->add_option("--tol-gamma", opts.tol_gamma,
                       "relative tolerance on the exponent (default 0.02)");
    verify->add_option("--tol-amp", opts.tol_amp,
                       "relative tolerance on the amplitude (default 0.10)");
    verify->add_option("--t-lo", opts.t_lo, "fit window start override");
    verify->add_option("--t-hi", opts.t_hi, "fit window end override");

    CLI11_PARSE(app, argc, argv);
    opts.eps_override = eps_list;

    try {
        if (predict->parsed()) return wavetail::cmd_predict(opts);
        if (identity->parsed()) return wavetail::cmd_identity(opts);
        if (duhamel->parsed()) return wavetail::cmd_duhamel(opts);
        if (evolve->parsed()) return wavetail::cmd_evolve(opts);
        if (fit->parsed()) return wavetail::cmd_fit(opts);
        if (verify->parsed()) return wavetail::cmd_verify(opts);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
