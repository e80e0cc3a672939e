#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rig {

/// Physical parameters of the torsional test rig: a flexible shaft with a
/// rotor at each end, driven by a geared DC motor. SI units throughout.
struct RigParameters {
    // column
    double j1 = 28.3e-3;   ///< moment of inertia of rotor 1 [kg m^2]
    double ks = 3.0e-1;    ///< torsional stiffness of the shaft [N m/rad]
    double t1 = 0.0;       ///< friction torque on rotor 1 [N m]
    // motor
    double jm = 4.0e-4;    ///< motor moment of inertia [kg m^2]
    double lm = 1.1e-3;    ///< motor internal inductance [H]
    double rm = 3.3e-1;    ///< motor internal resistance [ohm]
    double kT = 1.2e-1;    ///< torque constant [N m/A]
    double ke = 601.6e-4;  ///< voltage constant [V/(rad/s)]
    double tf = 1.0e-1;    ///< motor internal friction torque [N m]
    double cm = 18.0e-5;   ///< motor internal damping [N m/(rad/s)]
    double im = 0.125;     ///< gear reduction factor (8:1 gearbox)
    double v = 8.0;        ///< supply voltage [V]
    // geometry and mass, kept for config-file fidelity; not part of the dynamics
    double ls = 2.4;       ///< shaft length [m]
    double Ds = 3.0e-3;    ///< shaft diameter [m]
    double mr1 = 6.4;      ///< rotor-1 mass [kg]
    double rr1 = 188.0e-3; ///< rotor-1 radius [m]

    bool operator==(const RigParameters&) const = default;
};

/// Factory-nominal values (the defaults above).
RigParameters nominal_parameters();

/// The nine estimable parameters, in the canonical unknown-vector order.
enum class Param { jm, cm, ke, rm, kT, lm, ks, j1, tf };

inline constexpr std::array<Param, 9> kAllEstimable = {
    Param::jm, Param::cm, Param::ke, Param::rm, Param::kT,
    Param::lm, Param::ks, Param::j1, Param::tf};

std::string_view param_name(Param p);
std::optional<Param> param_from_name(std::string_view name);

double get_param(const RigParameters& p, Param which);
void set_param(RigParameters& p, Param which, double value);

/// Thrown when a parameter set violates its physical constraints.
struct InvalidParameterError : std::runtime_error {
    InvalidParameterError(std::string param, const std::string& what)
        : std::runtime_error(what), parameter(std::move(param)) {}
    std::string parameter;  ///< name of the offending field
};

/// Checks positivity constraints (inertias, stiffness, electrical constants
/// > 0; friction torques >= 0; 0 < im <= 1). Throws InvalidParameterError
/// naming the first offender.
void validate(const RigParameters& p);

/// Set of parameters currently treated as unknown. Only the nine estimable
/// names are admissible; order is meaningful (it is the candidate-vector
/// order seen by the optimizer).
class ParameterMask {
public:
    ParameterMask() = default;
    explicit ParameterMask(std::vector<Param> free);

    const std::vector<Param>& free() const { return free_; }
    std::size_t size() const { return free_.size(); }
    bool contains(Param p) const;

private:
    std::vector<Param> free_;
};

/// Flat key-value parameter file (one `name = value` per line, `#` comments).
/// Keys are the RigParameters field names; unknown keys are rejected; keys
/// left out keep their nominal value.
RigParameters load_parameters(const std::filesystem::path& path);
void save_parameters(const RigParameters& p, const std::filesystem::path& path);

}  // namespace rig
