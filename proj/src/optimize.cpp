#include "rig/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rig {

namespace {

constexpr double kAlpha = 1.0;  // reflection
constexpr double kGamma = 2.0;  // expansion
constexpr double kRho = 0.5;    // contraction
constexpr double kSigma = 0.5;  // shrink

struct Vertex {
    std::vector<double> x;
    double value;
};

double spread(const std::vector<Vertex>& simplex)
{
    return simplex.back().value - simplex.front().value;
}

double diameter(const std::vector<Vertex>& simplex)
{
    const std::vector<double>& best = simplex.front().x;
    double d = 0.0;
    for (std::size_t v = 1; v < simplex.size(); ++v)
        for (std::size_t c = 0; c < best.size(); ++c)
            d = std::max(d, std::abs(simplex[v].x[c] - best[c]));
    return d;
}

}  // namespace

OptimizerResult nelder_mead(const Objective& objective, const std::vector<double>& x0,
                            const NelderMeadOptions& options)
{
    const std::size_t n = x0.size();
    if (n < 1)
        throw std::invalid_argument("nelder_mead: empty start point");
    if (options.max_iterations < 1)
        throw std::invalid_argument("nelder_mead: max_iterations must be >= 1");
    for (double c : x0)
        if (!std::isfinite(c))
            throw std::invalid_argument("nelder_mead: non-finite start point");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    int evals = 0;
    const auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double f = objective(x);
        return std::isfinite(f) ? f : kInf;
    };

    // initial simplex: x0 plus one 5% bump per coordinate
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    {
        const double f0 = objective(x0);
        ++evals;
        if (!std::isfinite(f0))
            throw std::invalid_argument("nelder_mead: objective not finite at start point");
        simplex.push_back(Vertex{x0, f0});
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> x = x0;
        x[c] += x[c] != 0.0 ? 0.05 * std::abs(x[c]) : 2.5e-4;
        simplex.push_back(Vertex{std::move(x), 0.0});
        simplex.back().value = eval(simplex.back().x);
    }

    const auto by_value = [](const Vertex& a, const Vertex& b) { return a.value < b.value; };
    std::stable_sort(simplex.begin(), simplex.end(), by_value);

    OptimizerResult result;
    result.termination = Termination::MaxIterations;
    result.best_history.reserve(options.max_iterations);
    result.steps.reserve(options.max_iterations);

    std::vector<double> centroid(n), trial(n), second(n);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (spread(simplex) < options.f_tol_rel * (std::abs(simplex.front().value) + 1e-30) &&
            diameter(simplex) < options.x_tol) {
            result.termination = Termination::Converged;
            break;
        }

        Vertex& worst = simplex.back();
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t c = 0; c < n; ++c)
                centroid[c] += simplex[v].x[c];
        for (double& c : centroid)
            c /= static_cast<double>(n);

        const double f_best = simplex.front().value;
        const double f_second_worst = simplex[n - 1].value;
        const double f_worst = worst.value;

        StepKind step;
        for (std::size_t c = 0; c < n; ++c)
            trial[c] = centroid[c] + kAlpha * (centroid[c] - worst.x[c]);
        const double f_reflect = eval(trial);

        if (f_reflect < f_best) {
            for (std::size_t c = 0; c < n; ++c)
                second[c] = centroid[c] + kGamma * (trial[c] - centroid[c]);
            const double f_expand = eval(second);
            if (f_expand < f_reflect) {
                worst = Vertex{second, f_expand};
                step = StepKind::Expand;
            } else {
                worst = Vertex{trial, f_reflect};
                step = StepKind::Reflect;
            }
        } else if (f_reflect < f_second_worst) {
            worst = Vertex{trial, f_reflect};
            step = StepKind::Reflect;
        } else {
            bool shrink = false;
            if (f_reflect < f_worst) {
                for (std::size_t c = 0; c < n; ++c)
                    second[c] = centroid[c] + kRho * (trial[c] - centroid[c]);
                const double f_contract = eval(second);
                if (f_contract <= f_reflect) {
                    worst = Vertex{second, f_contract};
                    step = StepKind::ContractOutside;
                } else {
                    shrink = true;
                }
            } else {
                for (std::size_t c = 0; c < n; ++c)
                    second[c] = centroid[c] - kRho * (centroid[c] - worst.x[c]);
                const double f_contract = eval(second);
                if (f_contract < f_worst) {
                    worst = Vertex{second, f_contract};
                    step = StepKind::ContractInside;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                const std::vector<double>& anchor = simplex.front().x;
                bool moved = false;
                for (std::size_t v = 1; v <= n; ++v) {
                    for (std::size_t c = 0; c < n; ++c) {
                        const double shrunk = anchor[c] + kSigma * (simplex[v].x[c] - anchor[c]);
                        moved = moved || shrunk != simplex[v].x[c];
                        simplex[v].x[c] = shrunk;
                    }
                    simplex[v].value = eval(simplex[v].x);
                }
                step = StepKind::Shrink;
                if (!moved) {
                    // simplex collapsed to one representable point; nothing can change
                    std::stable_sort(simplex.begin(), simplex.end(), by_value);
                    result.steps.push_back(step);
                    result.best_history.push_back(simplex.front().value);
                    ++result.iterations;
                    result.termination = Termination::Stalled;
                    break;
                }
            }
        }

        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        result.steps.push_back(step);
        result.best_history.push_back(simplex.front().value);
        ++result.iterations;
    }

    result.best_point = simplex.front().x;
    result.best_value = simplex.front().value;
    result.evals = evals;
    return result;
}

OptimizerResult nelder_mead_budgeted(const Objective& objective, const std::vector<double>& x0,
                                     int iteration_budget)
{
    if (iteration_budget < 1)
        throw std::invalid_argument("nelder_mead_budgeted: budget must be >= 1");
    NelderMeadOptions options;
    options.max_iterations = iteration_budget;
    return nelder_mead(objective, x0, options);
}

}  // namespace rig
