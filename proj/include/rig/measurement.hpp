#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "rig/ode.hpp"

namespace rig {

/// The four channels a bench test can actually record: both rotation
/// angles and their rates. Charge and current are not observable.
struct MeasurementSet {
    std::vector<double> times;
    std::vector<double> theta1;
    std::vector<double> theta2;
    std::vector<double> dtheta1;
    std::vector<double> dtheta2;
    double sigma_n = 0.0;                    ///< noise standard deviation (0 = clean)
    std::optional<std::uint64_t> seed;       ///< provenance of the noise draws

    std::size_t size() const { return times.size(); }

    bool operator==(const MeasurementSet&) const = default;
};

/// Projects a trajectory onto the observable channels, noiselessly.
MeasurementSet observe(const Trajectory& traj);

/// Adds one independent N(0, sigma_n^2) draw per sample per channel.
/// Draws come from a Box-Muller transform over std::mt19937_64 raw output
/// (53-bit mantissas), applied channel by channel in declaration order, so
/// results are identical across platforms and library versions for a given
/// seed. Records sigma_n and the seed in the result.
MeasurementSet add_noise(const MeasurementSet& m, double sigma_n, std::uint64_t seed);

/// CSV with header `t,theta1,theta2,dtheta1,dtheta2`; `#` comment lines may
/// carry `sigma_n=` and `seed=` provenance. Load validates monotonic times
/// and numeric cells, reporting row and column on failure.
MeasurementSet load_measurements(const std::filesystem::path& path);
void save_measurements(const MeasurementSet& m, const std::filesystem::path& path);

}  // namespace rig
