#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rig/model.hpp"
#include "rig/ode.hpp"

using namespace rig;

namespace {

/// Decoupled test system: y_i' = -lambda_i y_i + 1, closed form
/// y_i(t) = (1 - exp(-lambda_i t)) / lambda_i.
SystemMatrices diagonal_system()
{
    SystemMatrices sys;
    for (std::size_t i = 0; i < 6; ++i) {
        sys.a(i, i) = -static_cast<double>(i + 1);
        sys.f[i] = 1.0;
    }
    return sys;
}

double max_rel_error(const StateVector& y, const StateVector& ref)
{
    const auto ya = y.as_array();
    const auto ra = ref.as_array();
    double err = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
        err = std::max(err, std::abs(ya[i] - ra[i]) / std::max(std::abs(ra[i]), 1e-9));
    return err;
}

std::filesystem::path temp_file(const char* name)
{
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("trapezoidal rule matches the scalar closed form")
{
    const SystemMatrices sys = diagonal_system();
    const Trajectory traj = integrate_trapezoidal(sys, SolverConfig{1e-3, 1.0});
    REQUIRE(traj.size() == 1001);

    const auto y = traj.states.back().as_array();
    for (std::size_t i = 0; i < 6; ++i) {
        const double lambda = static_cast<double>(i + 1);
        const double exact = -std::expm1(-lambda) / lambda;
        CHECK(y[i] == doctest::Approx(exact).epsilon(1e-7));
    }
}

TEST_CASE("matrix-exponential reference agrees with the scalar closed form")
{
    const StateVector y = exact_solution(diagonal_system(), 1.0);
    const auto ya = y.as_array();
    for (std::size_t i = 0; i < 6; ++i) {
        const double lambda = static_cast<double>(i + 1);
        CHECK(ya[i] == doctest::Approx(-std::expm1(-lambda) / lambda).epsilon(1e-13));
    }
}

TEST_CASE("rig trajectory tracks the matrix-exponential reference")
{
    // Second-order scheme: the lightly damped torsional mode costs a phase
    // drift of a few 1e-6 relative per simulated second at dt = 1e-3.
    const SystemMatrices sys = assemble_system(nominal_parameters());
    const Trajectory traj = integrate_trapezoidal(sys, SolverConfig{1e-3, 1.0});
    CHECK(max_rel_error(traj.states.back(), exact_solution(sys, 1.0)) < 1e-5);

    const Trajectory fine = integrate_trapezoidal(sys, SolverConfig{5e-4, 1.0});
    const double coarse_err = max_rel_error(traj.states.back(), exact_solution(sys, 1.0));
    const double fine_err = max_rel_error(fine.states.back(), exact_solution(sys, 1.0));
    CHECK(coarse_err / fine_err == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("rig final state regression at ten seconds")
{
    const SystemMatrices sys = assemble_system(nominal_parameters());
    const Trajectory traj = integrate_trapezoidal(sys, SolverConfig{1e-3, 10.0});
    REQUIRE(traj.size() == 10001);
    const StateVector& y = traj.states.back();
    CHECK(y.theta1 == doctest::Approx(157.1239562393036).epsilon(1e-9));
    CHECK(y.theta2 == doctest::Approx(158.64561826928505).epsilon(1e-9));
    CHECK(y.q == doctest::Approx(11.046686969661927).epsilon(1e-9));
    CHECK(y.dtheta1 == doctest::Approx(13.348028688293436).epsilon(1e-9));
    CHECK(y.dtheta2 == doctest::Approx(15.604404552142221).epsilon(1e-9));
    CHECK(y.dq == doctest::Approx(1.4819448821231005).epsilon(1e-9));
}

TEST_CASE("integration starts from rest")
{
    const Trajectory traj =
        integrate_trapezoidal(assemble_system(nominal_parameters()), SolverConfig{1e-3, 0.01});
    CHECK(traj.states.front() == StateVector{});
    CHECK(traj.t0 == 0.0);
    CHECK(traj.dt == 1e-3);
    CHECK(traj.time_at(3) == 0.003);
}

TEST_CASE("observed convergence order is two")
{
    const SystemMatrices sys = assemble_system(nominal_parameters());
    const RichardsonResult r = richardson_order_check(sys, 1.0, 1e-2);
    CHECK(!r.exact());
    CHECK(r.observed_order() > 1.9);
    CHECK(r.observed_order() < 2.1);
    CHECK(r.observed_order_fine() > 1.9);
    CHECK(r.observed_order_fine() < 2.1);
}

TEST_CASE("large steps stay stable on the stiff rig system")
{
    // fastest system pole sits near -300/s; dt = 0.1 puts it far outside
    // an explicit scheme's stability region
    const SystemMatrices sys = assemble_system(nominal_parameters());
    const Trajectory traj = integrate_trapezoidal(sys, SolverConfig{0.1, 50.0});
    const StateVector y = traj.states.back();
    for (double c : y.as_array())
        CHECK(std::isfinite(c));
    // by t = 50 the spin-up is essentially done; the coarse grid must still
    // land near the reference velocity
    const StateVector ref = exact_solution(sys, 50.0);
    CHECK(y.dtheta2 == doctest::Approx(ref.dtheta2).epsilon(0.05));
}

TEST_CASE("a genuinely unstable system reports divergence")
{
    SystemMatrices sys;
    for (std::size_t i = 0; i < 6; ++i)
        sys.a(i, i) = 800.0;
    sys.f[0] = 1.0;
    CHECK_THROWS_AS(integrate_trapezoidal(sys, SolverConfig{1e-3, 10.0}), DivergenceError);
    try {
        integrate_trapezoidal(sys, SolverConfig{1e-3, 10.0});
    } catch (const DivergenceError& e) {
        CHECK(e.step > 0);
    }
}

TEST_CASE("solver config is validated")
{
    const SystemMatrices sys = assemble_system(nominal_parameters());
    CHECK_THROWS_AS(integrate_trapezoidal(sys, SolverConfig{0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(integrate_trapezoidal(sys, SolverConfig{-1e-3, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(integrate_trapezoidal(sys, SolverConfig{2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(exact_solution(sys, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(richardson_order_check(sys, 0.0, 1e-2), std::invalid_argument);
}

TEST_CASE("reference at time zero is the rest state")
{
    const StateVector y = exact_solution(assemble_system(nominal_parameters()), 0.0);
    CHECK(y == StateVector{});
}

TEST_CASE("trajectory export writes one row per state")
{
    const Trajectory traj =
        integrate_trapezoidal(assemble_system(nominal_parameters()), SolverConfig{1e-3, 0.005});
    const std::filesystem::path path = temp_file("rig_test_traj.csv");
    save_trajectory(traj, path);

    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "t,theta1,theta2,q,dtheta1,dtheta2,dq");
    std::size_t rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == traj.size());
    std::filesystem::remove(path);
}

TEST_CASE("trajectory export rejects an unwritable path")
{
    const Trajectory traj =
        integrate_trapezoidal(assemble_system(nominal_parameters()), SolverConfig{1e-3, 0.002});
    CHECK_THROWS_AS(save_trajectory(traj, "/nonexistent-dir/traj.csv"), std::runtime_error);
}
