#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rig/measurement.hpp"
#include "rig/optimize.hpp"
#include "rig/params.hpp"

namespace rig {

/// Everything a misfit evaluation needs: the data, the values of the fixed
/// parameters, which parameters are free, the simulation grid, and the
/// noise scale of the Gaussian misfit.
struct EstimationProblem {
    MeasurementSet data;
    RigParameters fixed;
    ParameterMask mask;
    SolverConfig solver;
    double sigma_n = 1.0;
    std::vector<std::size_t> sample_index;  ///< data row -> trajectory grid index
};

/// Validates and prepares a problem: sigma_n > 0 and every data timestamp
/// must coincide with a solver grid point within 1e-9 s (no interpolation).
EstimationProblem make_problem(MeasurementSet data, const RigParameters& fixed,
                               ParameterMask mask, const SolverConfig& solver, double sigma_n);

/// Weighted sum of squared residuals over the four observable channels:
///   (1/sigma_n^2) * sum_i [ (theta_i - model)^2 + (dtheta_i - model)^2 ].
/// Both sets must have equal sample counts.
double gaussian_misfit(const MeasurementSet& data, const MeasurementSet& model, double sigma_n);

/// Substitutes the candidate values for the masked parameters, simulates,
/// and returns the Gaussian misfit against prob.data. Candidates with any
/// component <= 0 (or non-finite) cost +infinity without simulating, as
/// does an integration failure.
double misfit(std::span<const double> candidates, const EstimationProblem& prob);

struct PairEstimate {
    std::array<double, 2> values{};
    double misfit = 0.0;
    OptimizerResult opt;
};

/// Minimizes the misfit over a 2-parameter mask from the given guess.
/// Without a budget the simplex runs to its convergence tolerances; with
/// one it stops after that many iterations.
PairEstimate estimate_pair(const EstimationProblem& prob, const std::array<double, 2>& guess,
                           std::optional<int> iteration_budget = std::nullopt);

/// The cyclic pair schedule of the block heuristic: each unknown appears in
/// two consecutive pairs, and the chain closes on itself.
std::array<std::pair<Param, Param>, 9> pair_schedule();

/// Values for the nine estimable parameters, indexed like kAllEstimable.
using NineValues = std::array<double, 9>;

NineValues nine_values_of(const RigParameters& p);
void apply_nine_values(RigParameters& p, const NineValues& values);

struct StageRecord {
    int cycle = 0;
    int stage = 0;  ///< 1..9
    Param first, second;
    double start_first = 0.0, start_second = 0.0;
    double est_first = 0.0, est_second = 0.0;
    double misfit = 0.0;
};

struct EstimationState {
    RigParameters current;
    double misfit = 0.0;          ///< misfit after the last completed stage
    int stage = 0;                ///< last stage executed
    int cycle = 0;                ///< cycles completed
    double initial_misfit = 0.0;  ///< misfit at the initial guesses
    bool steady = false;          ///< stopped on steady state (vs cycle cap)
    std::vector<StageRecord> trace;
};

struct NinefoldOptions {
    int budget = 10;          ///< simplex iterations per stage
    double steady_tol = 1e-6; ///< relative misfit change across one cycle
    int max_cycles = 100;
};

/// Block-cycling heuristic over the nine unknowns: frees one scheduled pair
/// at a time, runs the budgeted simplex, commits the pair, and carries the
/// shared parameter's estimate into the next stage's guess. Cycles until
/// the misfit change over a full cycle drops below steady_tol (relative) or
/// max_cycles is hit. prob.mask must name all nine parameters.
EstimationState estimate_ninefold(const EstimationProblem& prob, const NineValues& guesses,
                                  const NinefoldOptions& options = {});

struct DeviationRow {
    Param parameter;
    double initial_guess = 0.0;
    double estimate = 0.0;
    double reference = 0.0;
    double deviation_pct = 0.0;  ///< 100 * |estimate - reference| / |reference|
};

/// Per-parameter relative deviation of the estimates from a reference set.
/// Throws if a reference value is zero.
std::vector<DeviationRow> deviation_report(std::span<const Param> names,
                                           std::span<const double> estimates,
                                           std::span<const double> guesses,
                                           const RigParameters& reference);

/// CSV `parameter,initial_guess,estimate,reference,relative_deviation_pct`.
void save_report(const std::vector<DeviationRow>& rows, const std::filesystem::path& path);

/// CSV `cycle,stage,pair,misfit`, one row per heuristic stage.
void save_trace(const std::vector<StageRecord>& trace, const std::filesystem::path& path);

}  // namespace rig
