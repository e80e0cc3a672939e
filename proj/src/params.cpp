#include "rig/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "rig/kv.hpp"

namespace rig {

RigParameters nominal_parameters()
{
    return RigParameters{};
}

std::string_view param_name(Param p)
{
    switch (p) {
        case Param::jm: return "jm";
        case Param::cm: return "cm";
        case Param::ke: return "ke";
        case Param::rm: return "rm";
        case Param::kT: return "kT";
        case Param::lm: return "lm";
        case Param::ks: return "ks";
        case Param::j1: return "j1";
        case Param::tf: return "tf";
    }
    return "?";
}

std::optional<Param> param_from_name(std::string_view name)
{
    for (Param p : kAllEstimable)
        if (param_name(p) == name)
            return p;
    return std::nullopt;
}

double get_param(const RigParameters& p, Param which)
{
    switch (which) {
        case Param::jm: return p.jm;
        case Param::cm: return p.cm;
        case Param::ke: return p.ke;
        case Param::rm: return p.rm;
        case Param::kT: return p.kT;
        case Param::lm: return p.lm;
        case Param::ks: return p.ks;
        case Param::j1: return p.j1;
        case Param::tf: return p.tf;
    }
    return 0.0;
}

void set_param(RigParameters& p, Param which, double value)
{
    switch (which) {
        case Param::jm: p.jm = value; return;
        case Param::cm: p.cm = value; return;
        case Param::ke: p.ke = value; return;
        case Param::rm: p.rm = value; return;
        case Param::kT: p.kT = value; return;
        case Param::lm: p.lm = value; return;
        case Param::ks: p.ks = value; return;
        case Param::j1: p.j1 = value; return;
        case Param::tf: p.tf = value; return;
    }
}

void validate(const RigParameters& p)
{
    const auto positive = [](const char* name, double value) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw InvalidParameterError(name, std::string("parameter '") + name +
                                                  "' must be positive, got " + std::to_string(value));
    };
    const auto non_negative = [](const char* name, double value) {
        if (!(value >= 0.0) || !std::isfinite(value))
            throw InvalidParameterError(name, std::string("parameter '") + name +
                                                  "' must be non-negative, got " + std::to_string(value));
    };
    positive("j1", p.j1);
    positive("jm", p.jm);
    positive("lm", p.lm);
    positive("rm", p.rm);
    positive("kT", p.kT);
    positive("ke", p.ke);
    positive("cm", p.cm);
    positive("ks", p.ks);
    non_negative("tf", p.tf);
    non_negative("t1", p.t1);
    if (!(p.im > 0.0) || !(p.im <= 1.0))
        throw InvalidParameterError("im", "parameter 'im' must lie in (0, 1], got " + std::to_string(p.im));
}

ParameterMask::ParameterMask(std::vector<Param> free) : free_(std::move(free))
{
    for (std::size_t i = 0; i < free_.size(); ++i)
        for (std::size_t j = i + 1; j < free_.size(); ++j)
            if (free_[i] == free_[j])
                throw std::invalid_argument("duplicate parameter in mask: " +
                                            std::string(param_name(free_[i])));
}

bool ParameterMask::contains(Param p) const
{
    return std::find(free_.begin(), free_.end(), p) != free_.end();
}

namespace {

struct Field {
    const char* key;
    double RigParameters::*member;
};

constexpr Field kFields[] = {
    {"j1", &RigParameters::j1},   {"ks", &RigParameters::ks},   {"t1", &RigParameters::t1},
    {"jm", &RigParameters::jm},   {"lm", &RigParameters::lm},   {"rm", &RigParameters::rm},
    {"kT", &RigParameters::kT},   {"ke", &RigParameters::ke},   {"tf", &RigParameters::tf},
    {"cm", &RigParameters::cm},   {"im", &RigParameters::im},   {"v", &RigParameters::v},
    {"ls", &RigParameters::ls},   {"Ds", &RigParameters::Ds},   {"mr1", &RigParameters::mr1},
    {"rr1", &RigParameters::rr1},
};

}  // namespace

RigParameters load_parameters(const std::filesystem::path& path)
{
    RigParameters p = nominal_parameters();
    for (const KvEntry& e : parse_kv_file(path)) {
        const auto field = std::find_if(std::begin(kFields), std::end(kFields),
                                        [&](const Field& f) { return e.key == f.key; });
        if (field == std::end(kFields))
            throw std::runtime_error(path.string() + ": line " + std::to_string(e.line) +
                                     ": unknown parameter '" + e.key + "'");
        p.*(field->member) = parse_double(e.value, path.string() + ": " + e.key);
    }
    return p;
}

void save_parameters(const RigParameters& p, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    for (const Field& f : kFields)
        out << f.key << " = " << format_double(p.*(f.member)) << "\n";
    if (!out.flush())
        throw std::runtime_error("write failed: " + path.string());
}

}  // namespace rig
