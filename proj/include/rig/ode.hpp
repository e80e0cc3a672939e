#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "rig/model.hpp"

namespace rig {

/// One sample of the rig state, ordered as the state vector.
struct StateVector {
    double theta1 = 0.0;   ///< rotor-1 angle [rad]
    double theta2 = 0.0;   ///< gearbox-side angle [rad]
    double q = 0.0;        ///< motor charge [C]
    double dtheta1 = 0.0;  ///< rotor-1 angular velocity [rad/s]
    double dtheta2 = 0.0;  ///< gearbox-side angular velocity [rad/s]
    double dq = 0.0;       ///< motor current [A]

    std::array<double, 6> as_array() const { return {theta1, theta2, q, dtheta1, dtheta2, dq}; }
    static StateVector from_array(const std::array<double, 6>& a)
    {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }

    bool operator==(const StateVector&) const = default;
};

/// State history on the uniform grid t0 + k*dt.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<StateVector> states;

    std::size_t size() const { return states.size(); }
    double time_at(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
};

struct SolverConfig {
    double dt = 1e-3;    ///< step size [s]
    double t_end = 10.0; ///< final time [s]
};

/// Thrown when the integration produces a non-finite state.
struct DivergenceError : std::runtime_error {
    DivergenceError(std::size_t step, const std::string& what)
        : std::runtime_error(what), step(step) {}
    std::size_t step;  ///< first offending step index
};

/// Implicit trapezoidal rule on ydot = A y + F from y(0) = 0:
///   (I - dt/2 A) y_{n+1} = (I + dt/2 A) y_n + dt F.
/// A and F are constant, so the step matrix is factored once and reused.
/// Throws SingularMatrixError for a pathological step matrix and
/// DivergenceError if the state leaves the finite range.
Trajectory integrate_trapezoidal(const SystemMatrices& sys, const SolverConfig& cfg);

/// Closed-form solution at time t: the top block of exp(M t) z0 with the
/// augmented matrix M = [[A, F], [0, 0]] and z0 = (0,...,0,1). Serves as
/// the independent reference for the time stepper.
StateVector exact_solution(const SystemMatrices& sys, double t);

/// Observed-order study for the trapezoidal scheme: integrates to time t
/// with steps h, h/2, h/4 and compares against exact_solution.
struct RichardsonResult {
    double err_h = 0.0;
    double err_h2 = 0.0;
    double err_h4 = 0.0;

    /// True when the scheme reproduces the reference exactly (zero forcing).
    bool exact() const { return err_h == 0.0 && err_h2 == 0.0 && err_h4 == 0.0; }
    /// log2(err_h / err_h2); ~2 for a second-order scheme.
    double observed_order() const;
    /// log2(err_h2 / err_h4), the finer-pair estimate.
    double observed_order_fine() const;
};

RichardsonResult richardson_order_check(const SystemMatrices& sys, double t, double h);

/// CSV export, header `t,theta1,theta2,q,dtheta1,dtheta2,dq`.
void save_trajectory(const Trajectory& traj, const std::filesystem::path& path);

}  // namespace rig
