#include "rig/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "rig/kv.hpp"
#include "rig/model.hpp"

namespace rig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_sigma(double sigma_n)
{
    if (!std::isfinite(sigma_n) || sigma_n <= 0.0)
        throw std::invalid_argument("misfit noise scale sigma_n must be positive");
}

double residual_sum(const MeasurementSet& data, const MeasurementSet& model)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double r1 = model.theta1[i] - data.theta1[i];
        const double r2 = model.theta2[i] - data.theta2[i];
        const double r3 = model.dtheta1[i] - data.dtheta1[i];
        const double r4 = model.dtheta2[i] - data.dtheta2[i];
        sum += r1 * r1 + r2 * r2 + r3 * r3 + r4 * r4;
    }
    return sum;
}

/// Misfit with an explicit mask and base parameter set, so the cycling
/// heuristic can evaluate stage pairs without rebuilding the problem.
double masked_misfit(std::span<const double> candidates, std::span<const Param> names,
                     const RigParameters& base, const EstimationProblem& prob)
{
    for (double c : candidates)
        if (!std::isfinite(c) || c <= 0.0)
            return kInf;

    RigParameters params = base;
    for (std::size_t i = 0; i < names.size(); ++i)
        set_param(params, names[i], candidates[i]);

    Trajectory traj;
    try {
        traj = integrate_trapezoidal(assemble_system(params), prob.solver);
    } catch (const DivergenceError&) {
        return kInf;
    } catch (const SingularMatrixError&) {
        return kInf;
    }

    double sum = 0.0;
    for (std::size_t i = 0; i < prob.data.size(); ++i) {
        const StateVector& s = traj.states[prob.sample_index[i]];
        const double r1 = s.theta1 - prob.data.theta1[i];
        const double r2 = s.theta2 - prob.data.theta2[i];
        const double r3 = s.dtheta1 - prob.data.dtheta1[i];
        const double r4 = s.dtheta2 - prob.data.dtheta2[i];
        sum += r1 * r1 + r2 * r2 + r3 * r3 + r4 * r4;
    }
    return sum / (prob.sigma_n * prob.sigma_n);
}

}  // namespace

EstimationProblem make_problem(MeasurementSet data, const RigParameters& fixed,
                               ParameterMask mask, const SolverConfig& solver, double sigma_n)
{
    check_sigma(sigma_n);
    validate(fixed);
    if (!(solver.dt > 0.0) || !std::isfinite(solver.dt))
        throw std::invalid_argument("solver step size must be positive");
    if (!(solver.t_end >= solver.dt) || !std::isfinite(solver.t_end))
        throw std::invalid_argument("solver end time must cover at least one step");
    if (data.size() == 0)
        throw std::invalid_argument("measurement set is empty");
    if (data.theta1.size() != data.size() || data.theta2.size() != data.size() ||
        data.dtheta1.size() != data.size() || data.dtheta2.size() != data.size())
        throw std::invalid_argument("measurement channels have mismatched lengths");

    const long long n_steps = std::llround(solver.t_end / solver.dt);
    std::vector<std::size_t> index;
    index.reserve(data.size());
    for (double t : data.times) {
        const long long k = std::llround(t / solver.dt);
        if (k < 0 || k > n_steps || std::abs(static_cast<double>(k) * solver.dt - t) > 1e-9)
            throw std::invalid_argument("measurement time " + format_double(t) +
                                        " does not lie on the solver grid");
        index.push_back(static_cast<std::size_t>(k));
    }

    EstimationProblem prob{std::move(data), fixed, std::move(mask), solver, sigma_n, {}};
    prob.sample_index = std::move(index);
    return prob;
}

double gaussian_misfit(const MeasurementSet& data, const MeasurementSet& model, double sigma_n)
{
    check_sigma(sigma_n);
    if (data.size() != model.size())
        throw std::invalid_argument("data and model sample counts differ");
    return residual_sum(data, model) / (sigma_n * sigma_n);
}

double misfit(std::span<const double> candidates, const EstimationProblem& prob)
{
    if (candidates.size() != prob.mask.size())
        throw std::invalid_argument("candidate count does not match the parameter mask");
    return masked_misfit(candidates, prob.mask.free(), prob.fixed, prob);
}

PairEstimate estimate_pair(const EstimationProblem& prob, const std::array<double, 2>& guess,
                           std::optional<int> iteration_budget)
{
    if (prob.mask.size() != 2)
        throw std::invalid_argument("pair estimation needs a two-parameter mask");

    auto objective = [&prob](const std::vector<double>& x) {
        return masked_misfit(x, prob.mask.free(), prob.fixed, prob);
    };
    const std::vector<double> x0 = {guess[0], guess[1]};
    OptimizerResult r =
        iteration_budget ? nelder_mead_budgeted(objective, x0, *iteration_budget)
                         : nelder_mead(objective, x0);

    PairEstimate out;
    out.values = {r.best_point[0], r.best_point[1]};
    out.misfit = r.best_value;
    out.opt = std::move(r);
    return out;
}

std::array<std::pair<Param, Param>, 9> pair_schedule()
{
    using P = Param;
    return {{{P::tf, P::jm}, {P::jm, P::cm}, {P::cm, P::ke},
             {P::ke, P::kT}, {P::kT, P::rm}, {P::rm, P::lm},
             {P::lm, P::ks}, {P::ks, P::j1}, {P::j1, P::tf}}};
}

NineValues nine_values_of(const RigParameters& p)
{
    NineValues v{};
    for (std::size_t i = 0; i < kAllEstimable.size(); ++i)
        v[i] = get_param(p, kAllEstimable[i]);
    return v;
}

void apply_nine_values(RigParameters& p, const NineValues& values)
{
    for (std::size_t i = 0; i < kAllEstimable.size(); ++i)
        set_param(p, kAllEstimable[i], values[i]);
}

EstimationState estimate_ninefold(const EstimationProblem& prob, const NineValues& guesses,
                                  const NinefoldOptions& options)
{
    bool full_mask = prob.mask.size() == kAllEstimable.size();
    for (Param p : kAllEstimable)
        full_mask = full_mask && prob.mask.contains(p);
    if (!full_mask)
        throw std::invalid_argument("ninefold estimation frees all nine parameters");
    if (options.budget < 1)
        throw std::invalid_argument("stage iteration budget must be at least 1");
    if (options.max_cycles < 1)
        throw std::invalid_argument("max_cycles must be at least 1");
    if (std::isnan(options.steady_tol) || options.steady_tol < 0.0)
        throw std::invalid_argument("steady_tol must be non-negative");

    const auto schedule = pair_schedule();

    EstimationState state;
    state.current = prob.fixed;
    apply_nine_values(state.current, guesses);
    state.initial_misfit =
        masked_misfit(std::span<const double>{}, std::span<const Param>{}, state.current, prob);
    state.misfit = state.initial_misfit;

    double prev_cycle_misfit = state.initial_misfit;
    for (int cycle = 1; cycle <= options.max_cycles; ++cycle) {
        for (int stage = 1; stage <= 9; ++stage) {
            const auto [a, b] = schedule[static_cast<std::size_t>(stage - 1)];
            const std::array<Param, 2> names = {a, b};
            const std::array<double, 2> start = {get_param(state.current, a),
                                                 get_param(state.current, b)};

            StageRecord rec;
            rec.cycle = cycle;
            rec.stage = stage;
            rec.first = a;
            rec.second = b;
            rec.start_first = start[0];
            rec.start_second = start[1];

            // A stage whose starting point already diverges is skipped whole:
            // the estimates stand and the stage costs +infinity.
            if (!std::isfinite(masked_misfit(start, names, state.current, prob))) {
                rec.est_first = start[0];
                rec.est_second = start[1];
                rec.misfit = kInf;
            } else {
                auto objective = [&](const std::vector<double>& x) {
                    return masked_misfit(x, names, state.current, prob);
                };
                OptimizerResult r =
                    nelder_mead_budgeted(objective, {start[0], start[1]}, options.budget);
                set_param(state.current, a, r.best_point[0]);
                set_param(state.current, b, r.best_point[1]);
                rec.est_first = r.best_point[0];
                rec.est_second = r.best_point[1];
                rec.misfit = r.best_value;
            }
            state.misfit = rec.misfit;
            state.stage = stage;
            state.trace.push_back(rec);
        }
        state.cycle = cycle;

        const double change = std::abs(state.misfit - prev_cycle_misfit);
        if (change <= options.steady_tol * std::max(prev_cycle_misfit, 1e-30)) {
            state.steady = true;
            break;
        }
        prev_cycle_misfit = state.misfit;
    }
    return state;
}

std::vector<DeviationRow> deviation_report(std::span<const Param> names,
                                           std::span<const double> estimates,
                                           std::span<const double> guesses,
                                           const RigParameters& reference)
{
    if (names.size() != estimates.size() || names.size() != guesses.size())
        throw std::invalid_argument("deviation report inputs have mismatched lengths");

    std::vector<DeviationRow> rows;
    rows.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        const double ref = get_param(reference, names[i]);
        if (ref == 0.0)
            throw std::invalid_argument("reference value for " + std::string(param_name(names[i])) +
                                        " is zero; relative deviation undefined");
        DeviationRow row;
        row.parameter = names[i];
        row.initial_guess = guesses[i];
        row.estimate = estimates[i];
        row.reference = ref;
        row.deviation_pct = 100.0 * std::abs(estimates[i] - ref) / std::abs(ref);
        rows.push_back(row);
    }
    return rows;
}

void save_report(const std::vector<DeviationRow>& rows, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    out << "parameter,initial_guess,estimate,reference,relative_deviation_pct\n";
    for (const DeviationRow& r : rows) {
        out << param_name(r.parameter) << ',' << format_double(r.initial_guess) << ','
            << format_double(r.estimate) << ',' << format_double(r.reference) << ','
            << format_double(r.deviation_pct) << '\n';
    }
    if (!out)
        throw std::runtime_error("error while writing: " + path.string());
}

void save_trace(const std::vector<StageRecord>& trace, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    out << "cycle,stage,pair,misfit\n";
    for (const StageRecord& r : trace) {
        out << r.cycle << ',' << r.stage << ',' << param_name(r.first) << '-'
            << param_name(r.second) << ',' << format_double(r.misfit) << '\n';
    }
    if (!out)
        throw std::runtime_error("error while writing: " + path.string());
}

}  // namespace rig
