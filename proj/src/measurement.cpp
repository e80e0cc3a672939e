#include "rig/measurement.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rig/kv.hpp"

namespace rig {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Standard-normal stream: Box-Muller over the engine's raw 64-bit words.
/// mt19937_64 output is pinned by the standard, and the transform below is
/// explicit, so the stream never shifts between library versions.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;          // [0, 1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace

MeasurementSet observe(const Trajectory& traj)
{
    if (traj.states.empty())
        throw std::invalid_argument("observe: empty trajectory");

    MeasurementSet m;
    m.times.reserve(traj.size());
    m.theta1.reserve(traj.size());
    m.theta2.reserve(traj.size());
    m.dtheta1.reserve(traj.size());
    m.dtheta2.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const StateVector& s = traj.states[k];
        m.times.push_back(traj.time_at(k));
        m.theta1.push_back(s.theta1);
        m.theta2.push_back(s.theta2);
        m.dtheta1.push_back(s.dtheta1);
        m.dtheta2.push_back(s.dtheta2);
    }
    return m;
}

MeasurementSet add_noise(const MeasurementSet& m, double sigma_n, std::uint64_t seed)
{
    if (!(sigma_n >= 0.0))
        throw std::invalid_argument("add_noise: sigma_n must be >= 0");

    MeasurementSet out = m;
    out.sigma_n = sigma_n;
    out.seed = seed;
    if (sigma_n == 0.0)
        return out;

    GaussianStream gauss(seed);
    for (std::vector<double>* channel : {&out.theta1, &out.theta2, &out.dtheta1, &out.dtheta2})
        for (double& sample : *channel)
            sample += sigma_n * gauss.next();
    return out;
}

void save_measurements(const MeasurementSet& m, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    out << "# sigma_n=" << format_double(m.sigma_n) << "\n";
    if (m.seed)
        out << "# seed=" << *m.seed << "\n";
    out << "t,theta1,theta2,dtheta1,dtheta2\n";
    for (std::size_t k = 0; k < m.size(); ++k) {
        out << format_double(m.times[k]) << ',' << format_double(m.theta1[k]) << ','
            << format_double(m.theta2[k]) << ',' << format_double(m.dtheta1[k]) << ','
            << format_double(m.dtheta2[k]) << '\n';
    }
    if (!out.flush())
        throw std::runtime_error("write failed: " + path.string());
}

namespace {

std::string_view trim_view(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

MeasurementSet load_measurements(const std::filesystem::path& path)
{
    const std::string text = read_text_file(path);
    static constexpr const char* kColumns[5] = {"t", "theta1", "theta2", "dtheta1", "dtheta2"};

    MeasurementSet m;
    bool saw_header = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line(text.data() + pos, (eol == std::string::npos ? text.size() : eol) - pos);
        pos = eol == std::string::npos ? text.size() : eol + 1;
        ++line_no;
        line = trim_view(line);
        if (line.empty())
            continue;
        const std::string where = path.string() + ": line " + std::to_string(line_no);
        if (line.front() == '#') {
            std::string_view body = trim_view(line.substr(1));
            if (body.starts_with("sigma_n="))
                m.sigma_n = parse_double(body.substr(8), where + ": sigma_n");
            else if (body.starts_with("seed="))
                m.seed = parse_u64(body.substr(5), where + ": seed");
            continue;
        }
        if (!saw_header) {
            if (line != "t,theta1,theta2,dtheta1,dtheta2")
                throw std::runtime_error(where + ": expected header 't,theta1,theta2,dtheta1,dtheta2'");
            saw_header = true;
            continue;
        }

        double cells[5];
        std::size_t cell = 0;
        std::size_t field_start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (cell >= 5)
                    throw std::runtime_error(where + ": expected 5 columns, found more");
                cells[cell] = parse_double(line.substr(field_start, i - field_start),
                                           where + ", column " + kColumns[cell]);
                ++cell;
                field_start = i + 1;
            }
        }
        if (cell != 5)
            throw std::runtime_error(where + ": expected 5 columns, found " + std::to_string(cell) +
                                     " (missing " + kColumns[cell] + ")");
        if (!m.times.empty() && !(cells[0] > m.times.back()))
            throw std::runtime_error(where + ": non-monotonic time " + format_double(cells[0]) +
                                     " after " + format_double(m.times.back()));
        m.times.push_back(cells[0]);
        m.theta1.push_back(cells[1]);
        m.theta2.push_back(cells[2]);
        m.dtheta1.push_back(cells[3]);
        m.dtheta2.push_back(cells[4]);
    }
    if (!saw_header)
        throw std::runtime_error(path.string() + ": no samples (missing header)");
    if (m.times.empty())
        throw std::runtime_error(path.string() + ": no samples");
    return m;
}

}  // namespace rig
