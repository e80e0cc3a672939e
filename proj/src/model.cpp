#include "rig/model.hpp"

#include <stdexcept>

namespace rig {

SystemMatrices assemble_system_unchecked(const RigParameters& p)
{
    SystemMatrices sys;

    // derivative selector block: rows 0..2 pick off y[3..5]
    sys.a(0, 3) = 1.0;
    sys.a(1, 4) = 1.0;
    sys.a(2, 5) = 1.0;

    // rotor 1: theta1'' = -(ks/j1)*(theta1 - theta2) - t1/j1
    const double twist1 = p.ks / p.j1;
    sys.a(3, 0) = -twist1;
    sys.a(3, 1) = twist1;
    sys.f[3] = -p.t1 / p.j1;

    // rotor 2 / gearbox side:
    //   theta2'' = (im^2 ks/jm)*(theta1 - theta2) + (im kT/jm)*q' - (cm/jm)*theta2' - im tf/jm
    const double twist2 = p.im * p.im * p.ks / p.jm;
    sys.a(4, 0) = twist2;
    sys.a(4, 1) = -twist2;
    sys.a(4, 4) = -p.cm / p.jm;
    sys.a(4, 5) = p.im * p.kT / p.jm;
    sys.f[4] = -p.im * p.tf / p.jm;

    // motor circuit: q'' = -(ke/(im lm))*theta2' - (rm/lm)*q' + v/lm
    sys.a(5, 4) = -p.ke / (p.im * p.lm);
    sys.a(5, 5) = -p.rm / p.lm;
    sys.f[5] = p.v / p.lm;

    return sys;
}

SystemMatrices assemble_system(const RigParameters& p)
{
    validate(p);
    return assemble_system_unchecked(p);
}

double motor_angle(double theta2, const RigParameters& p)
{
    if (!(p.im > 0.0))
        throw InvalidParameterError("im", "gear reduction factor must be positive");
    return theta2 / p.im;
}

}  // namespace rig
