#include "rig/config.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rig/kv.hpp"

namespace rig {

namespace {

std::size_t guess_index(Param p)
{
    for (std::size_t i = 0; i < kAllEstimable.size(); ++i)
        if (kAllEstimable[i] == p)
            return i;
    throw std::logic_error("parameter is not estimable");
}

std::vector<double> parse_double_list(std::string_view text, const std::string& context)
{
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view cell =
            text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        values.push_back(parse_double(cell, context));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return values;
}

int parse_bounded_int(std::string_view text, const std::string& context)
{
    const std::int64_t v = parse_i64(text, context);
    if (v < 1 || v > std::numeric_limits<int>::max())
        throw std::runtime_error(context + ": out of range: " + std::string(text));
    return static_cast<int>(v);
}

void apply_entry(RunConfig& cfg, const KvEntry& e)
{
    const std::string ctx = "line " + std::to_string(e.line) + ": " + e.key;
    const std::string& k = e.key;

    if (k == "parameters.file") {
        if (e.value.empty())
            throw std::runtime_error(ctx + ": empty path");
        cfg.parameters_file = std::filesystem::path(e.value);
    } else if (k == "solver.dt") {
        cfg.solver.dt = parse_double(e.value, ctx);
    } else if (k == "solver.t_end") {
        cfg.solver.t_end = parse_double(e.value, ctx);
    } else if (k == "noise.sigma_n") {
        cfg.noise_sigma = parse_double(e.value, ctx);
    } else if (k == "noise.seed") {
        cfg.noise_seed = parse_u64(e.value, ctx);
    } else if (k == "estimation.budget") {
        cfg.heuristic.budget = parse_bounded_int(e.value, ctx);
    } else if (k == "estimation.steady_tol") {
        cfg.heuristic.steady_tol = parse_double(e.value, ctx);
    } else if (k == "estimation.max_cycles") {
        cfg.heuristic.max_cycles = parse_bounded_int(e.value, ctx);
    } else if (k == "estimation.sigma_misfit") {
        cfg.sigma_misfit = parse_double(e.value, ctx);
    } else if (k.starts_with("estimation.guess.")) {
        const std::string_view name = std::string_view(k).substr(17);
        const std::optional<Param> p = param_from_name(name);
        if (!p)
            throw std::runtime_error(ctx + ": not an estimable parameter");
        cfg.guesses[guess_index(*p)] = parse_double(e.value, ctx);
    } else if (k == "verify2.sigmas") {
        cfg.verify2_sigmas = parse_double_list(e.value, ctx);
    } else if (k == "verify2.guess.cm") {
        cfg.verify2_guess_cm = parse_double(e.value, ctx);
    } else if (k == "verify2.guess.ke") {
        cfg.verify2_guess_ke = parse_double(e.value, ctx);
    } else if (k == "paths.out" || k == "paths.data" || k == "paths.synthetic_truth") {
        if (e.value.empty())
            throw std::runtime_error(ctx + ": empty path");
        auto& slot = k == "paths.out"    ? cfg.out_dir
                     : k == "paths.data" ? cfg.data_file
                                         : cfg.truth_file;
        slot = std::filesystem::path(e.value);
    } else {
        throw std::runtime_error("line " + std::to_string(e.line) + ": unknown key '" + k + "'");
    }
}

}  // namespace

void validate_run_config(const RunConfig& cfg)
{
    if (!std::isfinite(cfg.solver.dt) || cfg.solver.dt <= 0.0)
        throw std::runtime_error("solver.dt must be positive");
    if (!std::isfinite(cfg.solver.t_end) || cfg.solver.t_end < cfg.solver.dt)
        throw std::runtime_error("solver.t_end must cover at least one step");
    if (!std::isfinite(cfg.noise_sigma) || cfg.noise_sigma < 0.0)
        throw std::runtime_error("noise.sigma_n must be non-negative");
    if (cfg.heuristic.budget < 1)
        throw std::runtime_error("estimation.budget must be at least 1");
    if (std::isnan(cfg.heuristic.steady_tol) || cfg.heuristic.steady_tol < 0.0)
        throw std::runtime_error("estimation.steady_tol must be non-negative");
    if (cfg.heuristic.max_cycles < 1)
        throw std::runtime_error("estimation.max_cycles must be at least 1");
    if (!std::isfinite(cfg.sigma_misfit) || cfg.sigma_misfit <= 0.0)
        throw std::runtime_error("estimation.sigma_misfit must be positive");
    for (std::size_t i = 0; i < kAllEstimable.size(); ++i)
        if (!std::isfinite(cfg.guesses[i]) || cfg.guesses[i] <= 0.0)
            throw std::runtime_error("estimation.guess." +
                                     std::string(param_name(kAllEstimable[i])) +
                                     " must be positive");
    if (cfg.verify2_sigmas.empty())
        throw std::runtime_error("verify2.sigmas must list at least one value");
    for (double s : cfg.verify2_sigmas)
        if (!std::isfinite(s) || s < 0.0)
            throw std::runtime_error("verify2.sigmas entries must be non-negative");
    if (!std::isfinite(cfg.verify2_guess_cm) || cfg.verify2_guess_cm <= 0.0)
        throw std::runtime_error("verify2.guess.cm must be positive");
    if (!std::isfinite(cfg.verify2_guess_ke) || cfg.verify2_guess_ke <= 0.0)
        throw std::runtime_error("verify2.guess.ke must be positive");
    validate(cfg.parameters);
}

RunConfig load_run_config(const std::filesystem::path& path)
{
    RunConfig cfg;
    for (const KvEntry& e : parse_kv_file(path))
        apply_entry(cfg, e);
    if (cfg.parameters_file)
        cfg.parameters = load_parameters(*cfg.parameters_file);
    validate_run_config(cfg);
    return cfg;
}

std::string default_config_text()
{
    const RunConfig cfg;
    std::ostringstream out;
    out << "# simulation grid\n";
    out << "solver.dt = " << format_double(cfg.solver.dt) << "\n";
    out << "solver.t_end = " << format_double(cfg.solver.t_end) << "\n";
    out << "\n# synthetic measurement noise\n";
    out << "noise.sigma_n = " << format_double(cfg.noise_sigma) << "\n";
    out << "noise.seed = " << cfg.noise_seed << "\n";
    out << "\n# nine-parameter estimation heuristic\n";
    out << "estimation.budget = " << cfg.heuristic.budget << "\n";
    out << "estimation.steady_tol = " << format_double(cfg.heuristic.steady_tol) << "\n";
    out << "estimation.max_cycles = " << cfg.heuristic.max_cycles << "\n";
    out << "estimation.sigma_misfit = " << format_double(cfg.sigma_misfit) << "\n";
    for (std::size_t i = 0; i < kAllEstimable.size(); ++i)
        out << "estimation.guess." << param_name(kAllEstimable[i]) << " = "
            << format_double(cfg.guesses[i]) << "\n";
    out << "\n# two-parameter verification sweep\n";
    out << "verify2.sigmas = ";
    for (std::size_t i = 0; i < cfg.verify2_sigmas.size(); ++i)
        out << (i ? "," : "") << format_double(cfg.verify2_sigmas[i]);
    out << "\n";
    out << "verify2.guess.cm = " << format_double(cfg.verify2_guess_cm) << "\n";
    out << "verify2.guess.ke = " << format_double(cfg.verify2_guess_ke) << "\n";
    out << "\n# unset by default; physical parameters fall back to the built-in\n"
           "# nominal values, paths to flags or the RIG_IDENT_OUT variable\n";
    out << "# parameters.file = rig.params\n";
    out << "# paths.out = out\n";
    out << "# paths.data = measurements.csv\n";
    out << "# paths.synthetic_truth = truth.params\n";
    return out.str();
}

}  // namespace rig
