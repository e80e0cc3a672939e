#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "rig/config.hpp"

namespace rig {

/// Command-line flags shared by all subcommands. Flags override the
/// corresponding config-file entries.
struct CommandOptions {
    std::optional<std::filesystem::path> config;
    std::optional<std::filesystem::path> out;
    std::optional<std::uint64_t> seed;
    std::optional<double> sigma;
    std::optional<std::filesystem::path> data;
    std::optional<std::filesystem::path> synthetic_truth;
};

inline constexpr std::string_view kTrajectoryFile = "trajectory.csv";
inline constexpr std::string_view kMeasurementsFile = "measurements.csv";
inline constexpr std::string_view kVerify2File = "verify2_report.csv";
inline constexpr std::string_view kEstimate9ReportFile = "estimate9_report.csv";
inline constexpr std::string_view kEstimate9TraceFile = "estimate9_trace.csv";

/// Loads the config file (or defaults), applies the flag overrides, and
/// re-validates. Throws on any config error before anything is computed.
RunConfig resolve_config(const CommandOptions& opt);

/// Output directory precedence: --out, then paths.out, then the
/// RIG_IDENT_OUT environment variable, then the working directory.
std::filesystem::path resolve_out_dir(const RunConfig& cfg);

/// One row of the two-parameter verification sweep: synthetic data at the
/// configured truth, noise sigma_n, full-tolerance estimation of (cm, ke).
struct Verify2Row {
    double sigma_n = 0.0;
    double cm_estimate = 0.0;
    double cm_deviation_pct = 0.0;
    double ke_estimate = 0.0;
    double ke_deviation_pct = 0.0;
};

/// Runs the sweep over cfg.verify2_sigmas; row i derives its noise seed as
/// noise.seed + i. Zero-noise rows keep sigma_misfit as the misfit scale.
std::vector<Verify2Row> run_verify2(const RunConfig& cfg);

/// Subcommand bodies. Each validates its inputs, computes, writes its
/// declared output files into the resolved directory, and logs a summary.
/// Errors are reported by exception; nothing is written before validation.
void cmd_simulate(const CommandOptions& opt, std::ostream& log);
void cmd_generate(const CommandOptions& opt, std::ostream& log);
void cmd_verify2(const CommandOptions& opt, std::ostream& log);
void cmd_estimate9(const CommandOptions& opt, std::ostream& log);
void cmd_defaults(std::ostream& out);

}  // namespace rig
