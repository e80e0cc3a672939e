#include "rig/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "rig/kv.hpp"
#include "rig/model.hpp"
#include "rig/ode.hpp"

namespace rig {

namespace {

std::filesystem::path prepare_out_dir(const RunConfig& cfg)
{
    const std::filesystem::path dir = resolve_out_dir(cfg);
    std::filesystem::create_directories(dir);
    return dir;
}

/// Recovers the solver grid from a measurement file's time column; the
/// spacing must be uniform to 1e-9 s (no interpolation is performed).
SolverConfig grid_from_times(const std::vector<double>& times)
{
    if (times.size() < 2)
        throw std::runtime_error("data file needs at least two samples to infer the time grid");
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9)
            throw std::runtime_error("data file time grid is not uniform near t = " +
                                     format_double(times[i]));
    return SolverConfig{dt, times.back()};
}

void save_verify2_rows(const std::vector<Verify2Row>& rows, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    out << "sigma_n,cm_estimate,cm_relative_deviation_pct,ke_estimate,ke_relative_deviation_pct\n";
    for (const Verify2Row& r : rows) {
        out << format_double(r.sigma_n) << ',' << format_double(r.cm_estimate) << ','
            << format_double(r.cm_deviation_pct) << ',' << format_double(r.ke_estimate) << ','
            << format_double(r.ke_deviation_pct) << '\n';
    }
    if (!out)
        throw std::runtime_error("error while writing: " + path.string());
}

}  // namespace

RunConfig resolve_config(const CommandOptions& opt)
{
    RunConfig cfg = opt.config ? load_run_config(*opt.config) : RunConfig{};
    if (opt.seed)
        cfg.noise_seed = *opt.seed;
    if (opt.sigma)
        cfg.noise_sigma = *opt.sigma;
    if (opt.data)
        cfg.data_file = *opt.data;
    if (opt.synthetic_truth)
        cfg.truth_file = *opt.synthetic_truth;
    if (opt.out)
        cfg.out_dir = *opt.out;
    validate_run_config(cfg);
    return cfg;
}

std::filesystem::path resolve_out_dir(const RunConfig& cfg)
{
    if (cfg.out_dir)
        return *cfg.out_dir;
    if (const char* env = std::getenv("RIG_IDENT_OUT"); env != nullptr && *env != '\0')
        return env;
    return ".";
}

std::vector<Verify2Row> run_verify2(const RunConfig& cfg)
{
    const Trajectory traj = integrate_trapezoidal(assemble_system(cfg.parameters), cfg.solver);
    const MeasurementSet clean = observe(traj);
    const double cm_ref = cfg.parameters.cm;
    const double ke_ref = cfg.parameters.ke;

    std::vector<Verify2Row> rows;
    rows.reserve(cfg.verify2_sigmas.size());
    for (std::size_t i = 0; i < cfg.verify2_sigmas.size(); ++i) {
        // Row i sweeps the misfit's assumed noise scale sigma_n over its own
        // noise realization (seed + i); the data's actual corruption level is
        // noise.sigma_n. The assumed scale cannot move the minimizer, so the
        // sweep probes robustness to a mis-specified noise model.
        const double sigma = cfg.verify2_sigmas[i];
        MeasurementSet data = add_noise(clean, cfg.noise_sigma, cfg.noise_seed + i);
        const double misfit_sigma = sigma > 0.0 ? sigma : cfg.sigma_misfit;
        EstimationProblem prob =
            make_problem(std::move(data), cfg.parameters,
                         ParameterMask({Param::cm, Param::ke}), cfg.solver, misfit_sigma);
        const PairEstimate est =
            estimate_pair(prob, {cfg.verify2_guess_cm, cfg.verify2_guess_ke});

        Verify2Row row;
        row.sigma_n = sigma;
        row.cm_estimate = est.values[0];
        row.cm_deviation_pct = 100.0 * std::abs(est.values[0] - cm_ref) / std::abs(cm_ref);
        row.ke_estimate = est.values[1];
        row.ke_deviation_pct = 100.0 * std::abs(est.values[1] - ke_ref) / std::abs(ke_ref);
        rows.push_back(row);
    }
    return rows;
}

void cmd_simulate(const CommandOptions& opt, std::ostream& log)
{
    const RunConfig cfg = resolve_config(opt);
    const std::filesystem::path out_dir = prepare_out_dir(cfg);

    const Trajectory traj = integrate_trapezoidal(assemble_system(cfg.parameters), cfg.solver);
    const std::filesystem::path path = out_dir / kTrajectoryFile;
    save_trajectory(traj, path);

    const StateVector& y = traj.states.back();
    log << "wrote " << path.string() << " (" << traj.size() << " rows)\n";
    log << "final state at t = " << format_double(traj.time_at(traj.size() - 1))
        << ": theta1 = " << format_double(y.theta1) << ", theta2 = " << format_double(y.theta2)
        << ", q = " << format_double(y.q) << ", dtheta1 = " << format_double(y.dtheta1)
        << ", dtheta2 = " << format_double(y.dtheta2) << ", dq = " << format_double(y.dq)
        << "\n";
}

void cmd_generate(const CommandOptions& opt, std::ostream& log)
{
    const RunConfig cfg = resolve_config(opt);
    const std::filesystem::path out_dir = prepare_out_dir(cfg);

    const Trajectory traj = integrate_trapezoidal(assemble_system(cfg.parameters), cfg.solver);
    const MeasurementSet data = add_noise(observe(traj), cfg.noise_sigma, cfg.noise_seed);
    const std::filesystem::path path = out_dir / kMeasurementsFile;
    save_measurements(data, path);

    log << "wrote " << path.string() << " (" << data.size()
        << " samples, sigma_n = " << format_double(cfg.noise_sigma)
        << ", seed = " << cfg.noise_seed << ")\n";
}

void cmd_verify2(const CommandOptions& opt, std::ostream& log)
{
    const RunConfig cfg = resolve_config(opt);
    const std::filesystem::path out_dir = prepare_out_dir(cfg);

    const std::vector<Verify2Row> rows = run_verify2(cfg);
    const std::filesystem::path path = out_dir / kVerify2File;
    save_verify2_rows(rows, path);

    log << "wrote " << path.string() << "\n";
    for (const Verify2Row& r : rows)
        log << "sigma_n = " << format_double(r.sigma_n)
            << ": cm = " << format_double(r.cm_estimate) << " ("
            << format_double(r.cm_deviation_pct) << "%), ke = "
            << format_double(r.ke_estimate) << " (" << format_double(r.ke_deviation_pct)
            << "%)\n";
}

void cmd_estimate9(const CommandOptions& opt, std::ostream& log)
{
    const RunConfig cfg = resolve_config(opt);
    if (cfg.data_file && cfg.truth_file)
        throw std::runtime_error(
            "both a data file and a synthetic truth are configured; use exactly one");
    if (!cfg.data_file && !cfg.truth_file)
        throw std::runtime_error(
            "estimate9 needs a data file (--data) or a synthetic truth (--synthetic-truth)");

    MeasurementSet data;
    SolverConfig grid = cfg.solver;
    if (cfg.data_file) {
        data = load_measurements(*cfg.data_file);
        grid = grid_from_times(data.times);
    } else {
        const RigParameters truth = load_parameters(*cfg.truth_file);
        const Trajectory traj = integrate_trapezoidal(assemble_system(truth), cfg.solver);
        data = add_noise(observe(traj), cfg.noise_sigma, cfg.noise_seed);
    }

    const std::filesystem::path out_dir = prepare_out_dir(cfg);

    const std::vector<Param> all(kAllEstimable.begin(), kAllEstimable.end());
    EstimationProblem prob =
        make_problem(std::move(data), cfg.parameters, ParameterMask(all), grid, cfg.sigma_misfit);
    const EstimationState state = estimate_ninefold(prob, cfg.guesses, cfg.heuristic);

    const NineValues estimates = nine_values_of(state.current);
    const std::vector<DeviationRow> report =
        deviation_report(kAllEstimable, estimates, cfg.guesses, cfg.parameters);
    const std::filesystem::path report_path = out_dir / kEstimate9ReportFile;
    const std::filesystem::path trace_path = out_dir / kEstimate9TraceFile;
    save_report(report, report_path);
    save_trace(state.trace, trace_path);

    log << "wrote " << report_path.string() << " and " << trace_path.string() << "\n";
    log << (state.steady ? "steady state after " : "cycle cap reached at ") << state.cycle
        << (state.cycle == 1 ? " cycle" : " cycles") << "; misfit "
        << format_double(state.initial_misfit) << " -> " << format_double(state.misfit) << "\n";
}

void cmd_defaults(std::ostream& out)
{
    out << default_config_text();
}

}  // namespace rig
