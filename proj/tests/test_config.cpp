#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "rig/config.hpp"
#include "rig/kv.hpp"

using namespace rig;

namespace {

class TempFile {
public:
    explicit TempFile(const std::string& text, const char* name = "rig_test_cfg.txt")
        : path_(std::filesystem::temp_directory_path() / name)
    {
        std::ofstream out(path_, std::ios::binary);
        out << text;
    }
    ~TempFile() { std::error_code ec; std::filesystem::remove(path_, ec); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST_CASE("built-in defaults are valid")
{
    const RunConfig cfg;
    CHECK_NOTHROW(validate_run_config(cfg));
    CHECK(cfg.solver.dt == 1e-3);
    CHECK(cfg.solver.t_end == 40.0);
    CHECK(cfg.noise_sigma == 0.001);
    CHECK(cfg.noise_seed == 42);
    CHECK(cfg.heuristic.budget == 10);
    CHECK(cfg.heuristic.steady_tol == 1e-6);
    CHECK(cfg.heuristic.max_cycles == 100);
    CHECK(cfg.sigma_misfit == 1.0);
    CHECK(cfg.guesses == kDefaultGuesses);
    CHECK(cfg.verify2_sigmas == std::vector<double>{0.001, 0.01, 0.1, 1.0});
    CHECK(cfg.verify2_guess_cm == 0.001);
    CHECK(cfg.verify2_guess_ke == 0.01);
    CHECK(!cfg.parameters_file);
    CHECK(!cfg.out_dir);
    CHECK(!cfg.data_file);
    CHECK(!cfg.truth_file);
    CHECK(cfg.parameters == nominal_parameters());
}

TEST_CASE("the defaults document round-trips to the built-in defaults")
{
    const TempFile file(default_config_text(), "rig_test_defaults.txt");
    const RunConfig cfg = load_run_config(file.path());
    const RunConfig fresh;
    CHECK(cfg.solver.dt == fresh.solver.dt);
    CHECK(cfg.solver.t_end == fresh.solver.t_end);
    CHECK(cfg.noise_sigma == fresh.noise_sigma);
    CHECK(cfg.noise_seed == fresh.noise_seed);
    CHECK(cfg.heuristic.budget == fresh.heuristic.budget);
    CHECK(cfg.heuristic.steady_tol == fresh.heuristic.steady_tol);
    CHECK(cfg.heuristic.max_cycles == fresh.heuristic.max_cycles);
    CHECK(cfg.sigma_misfit == fresh.sigma_misfit);
    CHECK(cfg.guesses == fresh.guesses);
    CHECK(cfg.verify2_sigmas == fresh.verify2_sigmas);
    CHECK(cfg.verify2_guess_cm == fresh.verify2_guess_cm);
    CHECK(cfg.verify2_guess_ke == fresh.verify2_guess_ke);
    // the commented-out path keys must stay comments
    CHECK(!cfg.parameters_file);
    CHECK(!cfg.out_dir);
}

TEST_CASE("every config key is applied")
{
    const TempFile file(
        "solver.dt = 0.002\n"
        "solver.t_end = 5\n"
        "noise.sigma_n = 0.01\n"
        "noise.seed = 7\n"
        "estimation.budget = 3\n"
        "estimation.steady_tol = 0.5\n"
        "estimation.max_cycles = 2\n"
        "estimation.sigma_misfit = 0.1\n"
        "estimation.guess.cm = 2e-4\n"
        "estimation.guess.tf = 0.2\n"
        "verify2.sigmas = 0.1, 1.0\n"
        "verify2.guess.cm = 0.002\n"
        "verify2.guess.ke = 0.02\n"
        "paths.out = outdir\n"
        "paths.data = d.csv\n"
        "paths.synthetic_truth = t.params\n");
    const RunConfig cfg = load_run_config(file.path());
    CHECK(cfg.solver.dt == 0.002);
    CHECK(cfg.solver.t_end == 5.0);
    CHECK(cfg.noise_sigma == 0.01);
    CHECK(cfg.noise_seed == 7);
    CHECK(cfg.heuristic.budget == 3);
    CHECK(cfg.heuristic.steady_tol == 0.5);
    CHECK(cfg.heuristic.max_cycles == 2);
    CHECK(cfg.sigma_misfit == 0.1);
    CHECK(cfg.guesses[static_cast<std::size_t>(Param::cm)] == 2e-4);
    CHECK(cfg.guesses[static_cast<std::size_t>(Param::tf)] == 0.2);
    CHECK(cfg.guesses[static_cast<std::size_t>(Param::ke)] ==
          kDefaultGuesses[static_cast<std::size_t>(Param::ke)]);
    CHECK(cfg.verify2_sigmas == std::vector<double>{0.1, 1.0});
    CHECK(cfg.verify2_guess_cm == 0.002);
    CHECK(cfg.verify2_guess_ke == 0.02);
    CHECK(cfg.out_dir == std::filesystem::path("outdir"));
    CHECK(cfg.data_file == std::filesystem::path("d.csv"));
    CHECK(cfg.truth_file == std::filesystem::path("t.params"));
}

TEST_CASE("later duplicate keys win")
{
    const TempFile file("solver.dt = 0.01\nsolver.dt = 0.005\n");
    CHECK(load_run_config(file.path()).solver.dt == 0.005);
}

TEST_CASE("config rejections carry a line diagnostic")
{
    SUBCASE("unknown key")
    {
        const TempFile file("solver.dt = 0.001\nsolver.dx = 1\n");
        CHECK_THROWS_WITH_AS(load_run_config(file.path()),
                             doctest::Contains("line 2: unknown key 'solver.dx'"),
                             std::runtime_error);
    }
    SUBCASE("missing equals sign")
    {
        const TempFile file("solver.dt 0.001\n");
        CHECK_THROWS_WITH_AS(load_run_config(file.path()),
                             doctest::Contains("line 1: expected 'key = value'"),
                             std::runtime_error);
    }
    SUBCASE("empty key")
    {
        const TempFile file("= 3\n");
        CHECK_THROWS_WITH_AS(load_run_config(file.path()), doctest::Contains("empty key"),
                             std::runtime_error);
    }
    SUBCASE("non-numeric value")
    {
        const TempFile file("solver.dt = fast\n");
        CHECK_THROWS_WITH_AS(load_run_config(file.path()),
                             doctest::Contains("not a number: 'fast'"), std::runtime_error);
    }
    SUBCASE("guess for a non-estimable name")
    {
        const TempFile file("estimation.guess.im = 0.25\n");
        CHECK_THROWS_WITH_AS(load_run_config(file.path()),
                             doctest::Contains("not an estimable parameter"),
                             std::runtime_error);
    }
    SUBCASE("empty path")
    {
        const TempFile file("paths.out =\n");
        CHECK_THROWS_WITH_AS(load_run_config(file.path()), doctest::Contains("empty path"),
                             std::runtime_error);
    }
    SUBCASE("negative seed")
    {
        const TempFile file("noise.seed = -5\n");
        CHECK_THROWS_WITH_AS(load_run_config(file.path()),
                             doctest::Contains("not an unsigned integer"), std::runtime_error);
    }
    SUBCASE("zero budget")
    {
        const TempFile file("estimation.budget = 0\n");
        CHECK_THROWS_WITH_AS(load_run_config(file.path()),
                             doctest::Contains("estimation.budget"), std::runtime_error);
    }
}

TEST_CASE("range validation names the offending key")
{
    const auto expect = [](const std::string& text, const char* needle) {
        const TempFile file(text);
        CHECK_THROWS_WITH_AS(load_run_config(file.path()), doctest::Contains(needle),
                             std::runtime_error);
    };
    expect("solver.dt = 0\n", "solver.dt must be positive");
    expect("solver.dt = 1\nsolver.t_end = 0.5\n", "solver.t_end must cover at least one step");
    expect("noise.sigma_n = -1\n", "noise.sigma_n must be non-negative");
    expect("estimation.steady_tol = -1\n", "estimation.steady_tol must be non-negative");
    expect("estimation.sigma_misfit = 0\n", "estimation.sigma_misfit must be positive");
    expect("estimation.guess.cm = 0\n", "estimation.guess.cm must be positive");
    expect("verify2.sigmas = -0.5\n", "verify2.sigmas entries must be non-negative");
    expect("verify2.guess.ke = 0\n", "verify2.guess.ke must be positive");
}

TEST_CASE("a parameters file overrides the nominal physical values")
{
    const TempFile params("ks = 0.25\nv = 10\n", "rig_test_params_ok.params");
    const TempFile cfg_file("parameters.file = " + params.path().string() + "\n",
                            "rig_test_cfg_params.txt");
    const RunConfig cfg = load_run_config(cfg_file.path());
    CHECK(cfg.parameters_file == params.path());
    CHECK(cfg.parameters.ks == 0.25);
    CHECK(cfg.parameters.v == 10.0);
    CHECK(cfg.parameters.j1 == nominal_parameters().j1);
}

TEST_CASE("a missing parameters file fails before any computation")
{
    const TempFile cfg_file("parameters.file = /nonexistent/rig.params\n");
    CHECK_THROWS_WITH_AS(load_run_config(cfg_file.path()),
                         doctest::Contains("/nonexistent/rig.params"), std::runtime_error);
}

TEST_CASE("an invalid parameters file is rejected by validation")
{
    const TempFile params("j1 = -1\n", "rig_test_params_bad.params");
    const TempFile cfg_file("parameters.file = " + params.path().string() + "\n",
                            "rig_test_cfg_badparams.txt");
    CHECK_THROWS_AS(load_run_config(cfg_file.path()), InvalidParameterError);
}

TEST_CASE("parameter files reject unknown keys and keep omitted ones nominal")
{
    SUBCASE("unknown key")
    {
        const TempFile file("j1 = 0.03\nbogus = 1\n", "rig_test_params_unknown.params");
        CHECK_THROWS_WITH_AS(load_parameters(file.path()),
                             doctest::Contains("line 2: unknown parameter 'bogus'"),
                             std::runtime_error);
    }
    SUBCASE("omitted keys stay nominal")
    {
        const TempFile file("tf = 0.2\n", "rig_test_params_partial.params");
        const RigParameters p = load_parameters(file.path());
        CHECK(p.tf == 0.2);
        RigParameters expected = nominal_parameters();
        expected.tf = 0.2;
        CHECK(p == expected);
    }
}

TEST_CASE("parameter sets round-trip through save and load")
{
    RigParameters p = nominal_parameters();
    p.j1 = 29.8e-3;
    p.t1 = 0.05;
    p.im = 0.0625;
    p.Ds = 2.9e-3;
    p.ke = 587.7e-4;
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "rig_test_params_rt.params";
    save_parameters(p, path);
    CHECK(load_parameters(path) == p);
    std::filesystem::remove(path);
}

TEST_CASE("physical validation names the first offender")
{
    const auto offender = [](RigParameters p) -> std::string {
        try {
            validate(p);
        } catch (const InvalidParameterError& e) {
            return e.parameter;
        }
        return "";
    };
    RigParameters p = nominal_parameters();
    CHECK(offender(p).empty());
    p.j1 = 0.0;
    CHECK(offender(p) == "j1");
    p = nominal_parameters();
    p.im = 1.5;
    CHECK(offender(p) == "im");
    p = nominal_parameters();
    p.tf = -0.1;
    CHECK(offender(p) == "tf");
    p = nominal_parameters();
    p.t1 = -1.0;
    CHECK(offender(p) == "t1");
}

TEST_CASE("parameter masks preserve order and reject duplicates")
{
    const ParameterMask mask{{Param::ke, Param::cm}};
    REQUIRE(mask.size() == 2);
    CHECK(mask.free()[0] == Param::ke);
    CHECK(mask.free()[1] == Param::cm);
    CHECK(mask.contains(Param::cm));
    CHECK(!mask.contains(Param::tf));
    CHECK_THROWS_WITH_AS((ParameterMask{{Param::cm, Param::cm}}),
                         doctest::Contains("duplicate parameter in mask: cm"),
                         std::invalid_argument);
}

TEST_CASE("parameter names round-trip")
{
    for (Param p : kAllEstimable) {
        const auto back = param_from_name(param_name(p));
        REQUIRE(back.has_value());
        CHECK(*back == p);
    }
    CHECK(!param_from_name("bogus"));
    CHECK(!param_from_name("im"));
}

TEST_CASE("format_double round-trips exactly")
{
    for (double v : {0.0, 1.0, -1.0, 0.1, 1e-3, 40.0, 601.6e-4, 2.5e-4, 3.141592653589793,
                     1.0000000000000002, 2.2250738585072014e-308, 1.7976931348623157e308}) {
        const std::string s = format_double(v);
        CHECK(parse_double(s, "roundtrip") == v);
    }
}
