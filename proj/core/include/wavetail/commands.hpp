#ifndef WAVETAIL_COMMANDS_HPP
#define WAVETAIL_COMMANDS_HPP

#include <string>
#include <vector>

namespace wavetail {

/// Options shared by the command entry points; the CLI maps its flags onto
/// this one-to-one, and tests drive the commands in-process the same way.
struct CommandOptions {
    std::string config_path;          ///< --config
    std::vector<std::string> inputs;  ///< fit: series CSV paths
    std::string out_dir;     ///< --out; falls back to $WAVETAIL_OUT, then "."
    std::vector<double> eps_override;  ///< --eps (overrides config list)
    int threads = 0;                   ///< --threads; 0 picks hardware
    double tol_gamma = 0.02;           ///< --tol-gamma (relative)
    double tol_amp = 0.10;             ///< --tol-amp (relative, signed)
    double t_lo = 0.0, t_hi = 0.0;     ///< --t-lo/--t-hi window override
    bool track_energy = false;         ///< --energy (evolve)
    std::vector<double> times;         ///< --times (duhamel probe times)
    double radius = 0.0;               ///< --r (duhamel; 0 = support + 1)
};

/// Each command prints a human summary to stdout and writes a JSON report
/// (plus any data products) into the resolved output directory.
///
/// Exit codes: 0 success / checks passed, 1 a verification check failed.
/// Usage and config errors are thrown (std::exception); the CLI maps them
/// to exit code 2.
int cmd_predict(const CommandOptions& options);   ///< closed-form tails
int cmd_identity(const CommandOptions& options);  ///< kernel-moment checks
int cmd_duhamel(const CommandOptions& options);   ///< quadrature vs closed form
int cmd_evolve(const CommandOptions& options);    ///< PDE runs -> CSV series
int cmd_fit(const CommandOptions& options);       ///< fit tails in CSV series
int cmd_verify(const CommandOptions& options);    ///< full pipeline, evolve vs prediction

}  // namespace wavetail

#endif
