#pragma once

#include <functional>
#include <vector>

namespace rig {

using Objective = std::function<double(const std::vector<double>&)>;

enum class StepKind { Reflect, Expand, ContractOutside, ContractInside, Shrink };
enum class Termination { Converged, MaxIterations, Stalled };

struct NelderMeadOptions {
    int max_iterations = 400;
    /// Converged when the simplex value spread drops below
    /// f_tol_rel * (|best| + 1e-30) ...
    double f_tol_rel = 1e-12;
    /// ... and every vertex lies within x_tol of the best (inf-norm).
    double x_tol = 1e-10;
};

struct OptimizerResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    int iterations = 0;
    int evals = 0;
    Termination termination = Termination::MaxIterations;
    std::vector<double> best_history;  ///< best value after each iteration
    std::vector<StepKind> steps;       ///< transformation accepted each iteration
};

/// Downhill simplex à la Nelder-Mead: reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5. The initial simplex perturbs each
/// coordinate of x0 by 5% (2.5e-4 absolute for zero coordinates). One
/// iteration is one reflect/expand/contract/shrink cycle. Non-finite trial
/// values count as +infinity; a non-finite objective at x0 itself throws
/// std::invalid_argument.
OptimizerResult nelder_mead(const Objective& objective, const std::vector<double>& x0,
                            const NelderMeadOptions& options = {});

/// Same algorithm capped at iteration_budget iterations (the tolerances may
/// still stop it earlier).
OptimizerResult nelder_mead_budgeted(const Objective& objective, const std::vector<double>& x0,
                                     int iteration_budget);

}  // namespace rig
