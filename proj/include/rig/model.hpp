#pragma once

#include <array>

#include "rig/linalg.hpp"
#include "rig/params.hpp"

namespace rig {

/// First-order form of the rig dynamics: ydot = A y + F with state
/// y = (theta1, theta2, q, theta1', theta2', q').
struct SystemMatrices {
    Matrix a{6};
    std::array<double, 6> f{};

    bool operator==(const SystemMatrices&) const = default;
};

/// Builds A and F from the governing torque and potential balances:
///   j1*theta1'' + ks*(theta1 - theta2)                                = -t1
///   jm*theta2'' - im^2*ks*(theta1 - theta2) - im*kT*q' + cm*theta2'   = -im*tf
///   lm*q'' + rm*q' + (ke/im)*theta2'                                  = v
/// Validates the parameters first; throws InvalidParameterError naming the
/// offender.
SystemMatrices assemble_system(const RigParameters& p);

/// Same assembly with no parameter checks, for probing degenerate regimes
/// (zero stiffness and the like).
SystemMatrices assemble_system_unchecked(const RigParameters& p);

/// Motor-shaft angle behind the gearbox: theta3 = theta2 / im.
double motor_angle(double theta2, const RigParameters& p);

}  // namespace rig
