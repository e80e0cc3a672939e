#include "rig/ode.hpp"

#include <cmath>
#include <fstream>

#include "rig/kv.hpp"

namespace rig {

namespace {

void check_solver_config(const SolverConfig& cfg)
{
    if (!(cfg.dt > 0.0) || !(cfg.dt <= cfg.t_end) || !std::isfinite(cfg.t_end))
        throw std::invalid_argument("solver config requires 0 < dt <= t_end, got dt=" +
                                    std::to_string(cfg.dt) + ", t_end=" + std::to_string(cfg.t_end));
}

}  // namespace

Trajectory integrate_trapezoidal(const SystemMatrices& sys, const SolverConfig& cfg)
{
    check_solver_config(cfg);
    const auto n_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));

    Matrix lhs = Matrix::identity(6);
    Matrix rhs = Matrix::identity(6);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            lhs(i, j) -= 0.5 * cfg.dt * sys.a(i, j);
            rhs(i, j) += 0.5 * cfg.dt * sys.a(i, j);
        }
    }
    const LuFactorization lu(lhs);

    Trajectory traj;
    traj.t0 = 0.0;
    traj.dt = cfg.dt;
    traj.states.reserve(n_steps + 1);
    traj.states.push_back(StateVector{});

    std::array<double, 6> y{};
    std::array<double, 6> work{};
    for (std::size_t k = 0; k < n_steps; ++k) {
        rhs.multiply(y.data(), work.data());
        for (std::size_t i = 0; i < 6; ++i)
            work[i] += cfg.dt * sys.f[i];
        lu.solve(work.data());
        y = work;
        for (double c : y)
            if (!std::isfinite(c))
                throw DivergenceError(k + 1, "state diverged at step " + std::to_string(k + 1) +
                                                 " (t = " + std::to_string((k + 1) * cfg.dt) + ")");
        traj.states.push_back(StateVector::from_array(y));
    }
    return traj;
}

StateVector exact_solution(const SystemMatrices& sys, double t)
{
    if (!(t >= 0.0))
        throw std::invalid_argument("exact_solution requires t >= 0");

    Matrix m(7);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j)
            m(i, j) = sys.a(i, j) * t;
        m(i, 6) = sys.f[i] * t;
    }
    const Matrix e = matrix_exponential(m);

    std::array<double, 6> y{};
    for (std::size_t i = 0; i < 6; ++i)
        y[i] = e(i, 6);  // exp(Mt) applied to (0,...,0,1)
    return StateVector::from_array(y);
}

namespace {

/// Max over components of |y - ref| / max(|ref|, 1e-9).
double relative_error(const StateVector& y, const StateVector& ref)
{
    const auto ya = y.as_array();
    const auto ra = ref.as_array();
    double err = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
        err = std::max(err, std::abs(ya[i] - ra[i]) / std::max(std::abs(ra[i]), 1e-9));
    return err;
}

}  // namespace

double RichardsonResult::observed_order() const
{
    return std::log2(err_h / err_h2);
}

double RichardsonResult::observed_order_fine() const
{
    return std::log2(err_h2 / err_h4);
}

RichardsonResult richardson_order_check(const SystemMatrices& sys, double t, double h)
{
    if (!(t > 0.0))
        throw std::invalid_argument("richardson_order_check requires t > 0");

    const StateVector ref = exact_solution(sys, t);
    RichardsonResult result;
    double* errs[3] = {&result.err_h, &result.err_h2, &result.err_h4};
    double step = h;
    for (double* e : errs) {
        const Trajectory traj = integrate_trapezoidal(sys, SolverConfig{step, t});
        *e = relative_error(traj.states.back(), ref);
        step *= 0.5;
    }
    return result;
}

void save_trajectory(const Trajectory& traj, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    out << "t,theta1,theta2,q,dtheta1,dtheta2,dq\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const StateVector& s = traj.states[k];
        out << format_double(traj.time_at(k));
        for (double c : s.as_array())
            out << ',' << format_double(c);
        out << '\n';
    }
    if (!out.flush())
        throw std::runtime_error("write failed: " + path.string());
}

}  // namespace rig
