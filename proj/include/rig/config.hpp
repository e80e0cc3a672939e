#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rig/estimator.hpp"

namespace rig {

/// Default initial guesses for the nine-parameter estimation, indexed like
/// kAllEstimable (jm, cm, ke, rm, kT, lm, ks, j1, tf).
inline constexpr NineValues kDefaultGuesses = {
    4.0e-4, 19.0e-5, 601.6e-4, 3.3e-1, 1.2e-1, 1.1e-3, 2.6e-1, 28.3e-3, 1.0e-1};

/// Everything a command run needs, assembled from built-in defaults and an
/// optional flat key-value config document with dotted keys.
struct RunConfig {
    std::optional<std::filesystem::path> parameters_file;  ///< `parameters.file`
    RigParameters parameters;  ///< loaded from parameters_file, else nominal

    /// `solver.dt`, `solver.t_end`. The default horizon is longer than the
    /// plain SolverConfig one: slow damping-induced drift is what makes the
    /// weakly observable motor parameters estimable at all.
    SolverConfig solver{1e-3, 40.0};

    /// `noise.sigma_n`, `noise.seed`. The default corruption level is chosen
    /// so the weakly observable (cm, ke) split stays estimable: their joint
    /// effect on the trajectory separates only through the short electrical
    /// lag, and realization scatter on cm grows roughly tenfold per decade
    /// of noise.
    double noise_sigma = 0.001;
    std::uint64_t noise_seed = 42;

    NinefoldOptions heuristic;      ///< `estimation.budget`, `.steady_tol`, `.max_cycles`
    double sigma_misfit = 1.0;      ///< `estimation.sigma_misfit`
    NineValues guesses = kDefaultGuesses;  ///< `estimation.guess.<name>`

    std::vector<double> verify2_sigmas = {0.001, 0.01, 0.1, 1.0};  ///< `verify2.sigmas`
    double verify2_guess_cm = 0.001;  ///< `verify2.guess.cm`
    double verify2_guess_ke = 0.01;   ///< `verify2.guess.ke`

    std::optional<std::filesystem::path> out_dir;     ///< `paths.out`
    std::optional<std::filesystem::path> data_file;   ///< `paths.data`
    std::optional<std::filesystem::path> truth_file;  ///< `paths.synthetic_truth`
};

/// Checks ranges (positive step sizes, positive guesses, budget >= 1, ...).
/// Throws std::runtime_error naming the offending key.
void validate_run_config(const RunConfig& cfg);

/// Parses a config document and returns defaults overridden by it. Unknown
/// keys are rejected with a line diagnostic. A `parameters.file` entry is
/// loaded immediately so missing files fail before any computation.
RunConfig load_run_config(const std::filesystem::path& path);

/// The built-in defaults as a parseable config document (the `defaults`
/// subcommand prints this).
std::string default_config_text();

}  // namespace rig
