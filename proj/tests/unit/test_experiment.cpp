#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fnls/checkpoint.hpp"
#include "fnls/config.hpp"
#include "fnls/errors.hpp"
#include "fnls/manifest.hpp"
#include "fnls/random_family.hpp"
#include "fnls/scenarios.hpp"

using namespace fnls;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> config_errors(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.messages;
    }
    return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("fnls_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("minimal config gets defaults") {
        auto c = parse_config("model.branch = power\n");
        CHECK(c.model.branch == Branch::Power);
        CHECK(c.model.d == 2);
        CHECK(c.model.alpha == 1.5);
        CHECK(c.n == 256);
        CHECK(c.L == 12.0);
        CHECK(c.evolve.blowup_kinetic_factor == 1e3);
        CHECK(c.evolve.gradient_resolution_floor == 0.99);
        CHECK(c.initial.kind == InitialData::Kind::Gaussian);
        CHECK_FALSE(c.scenario.has_value());
        CHECK(parse_config("").n == 256);
    }
    SUBCASE("values, comments and nesting") {
        auto c = parse_config(
            "# header\n"
            "scenario = concentration-study\n"
            "model.d = 3   # trailing\n"
            "model.alpha = 1.25\n"
            "grid.n_per_dim = 64\n"
            "grid.L = 8.5\n"
            "evolve.adaptive = false\n"
            "evolve.record_every = 3\n"
            "initial_data = chirped_gaussian(0.7, 0.4, -1.5)\n"
            "output_dir = \"runs/a # b\"\n"
            "seed = 18446744073709551615\n"
            "verify.commutator_lambdas = 1, 3, 9\n");
        CHECK(c.scenario == Scenario::Concentrate);
        CHECK(c.model.d == 3);
        CHECK(c.model.alpha == 1.25);
        CHECK(c.n == 64);
        CHECK(c.L == 8.5);
        CHECK_FALSE(c.evolve.adaptive);
        CHECK(c.evolve.record_every == 3);
        CHECK(c.initial.kind == InitialData::Kind::ChirpedGaussian);
        CHECK(c.initial.sigma == 0.7);
        CHECK(c.initial.amplitude == 0.4);
        CHECK(c.initial.chirp_b == -1.5);
        CHECK(c.output_dir == "runs/a # b");
        CHECK(c.seed == 18446744073709551615ULL);
        CHECK(c.verify.commutator_lambdas == std::vector<double>{1, 3, 9});
        CHECK(c.lines.at("grid.L") == 6);
    }
    SUBCASE("alpha outside (1,2)") {
        auto e = config_errors("model.d = 2\nmodel.alpha = 2.5\n");
        REQUIRE(e.size() == 1);
        CHECK(e[0] == "line 2: alpha must lie in (1,2)");
        CHECK(config_errors("model.alpha = 1\n").size() == 1);
        CHECK(config_errors("model.alpha = 2\n").size() == 1);
    }
    SUBCASE("Hartree needs d > 2 alpha") {
        auto e = config_errors("model.branch = hartree\nmodel.d = 3\nmodel.alpha = 1.6\n");
        REQUIRE(e.size() == 1);
        CHECK(any_contains(e, "d > 2 alpha"));
        CHECK(any_contains(e, "line 3"));
        CHECK(config_errors("model.branch = hartree\nmodel.d = 4\nmodel.alpha = 1.6\ngrid.n_per_dim = 32\n").empty());
    }
    SUBCASE("all errors are reported") {
        auto e = config_errors(
            "model.alpha = abc\n"
            "grid.n_per_dim = 100\n"
            "bogus.key = 1\n"
            "no equals sign\n"
            "evolve.cfl_safety = 1.5\n"
            "evolve.adaptive = maybe\n"
            "model.d = 2.5\n"
            "grid.L = 4\n"
            "grid.L = 5\n"
            "initial_data = lorentzian(1)\n");
        CHECK(e.size() == 9);
        CHECK(any_contains(e, "line 1: model.alpha: expected a number"));
        CHECK(any_contains(e, "line 2: grid.n_per_dim must be a power of two"));
        CHECK(any_contains(e, "line 3: unknown key 'bogus.key'"));
        CHECK(any_contains(e, "line 4: expected 'key = value'"));
        CHECK(any_contains(e, "line 5: cfl_safety must lie in (0, 1]"));
        CHECK(any_contains(e, "line 6: evolve.adaptive: expected true or false"));
        CHECK(any_contains(e, "line 7: model.d: expected an integer"));
        CHECK(any_contains(e, "line 9: duplicate key 'grid.L'"));
        CHECK(any_contains(e, "line 10: initial_data: unknown kind 'lorentzian'"));
    }
    SUBCASE("checkpoint paths must exist") {
        auto e = config_errors("initial_data = from_checkpoint(/nonexistent/x.fnls)\n");
        REQUIRE(e.size() == 1);
        CHECK(any_contains(e, "line 1: checkpoint file not found"));
        CHECK(any_contains(config_errors("initial_data.kind = from_checkpoint\n"), "needs a path"));
    }
    SUBCASE("oversized grids") {
        CHECK(any_contains(config_errors("model.d = 5\ngrid.n_per_dim = 64\n"), "at most 32"));
        CHECK(any_contains(config_errors("model.d = 4\ngrid.n_per_dim = 256\n"), "grid too large"));
    }
    SUBCASE("scenario defaults") {
        auto c = parse_config("evolve.record_every = 4\n");
        apply_scenario_defaults(c, Scenario::Concentrate);
        CHECK(c.initial.kind == InitialData::Kind::ScaledGroundState);
        CHECK(c.initial.factor == 1.2);
        CHECK(c.evolve.record_every == 4);
        CHECK(c.evolve.blowup_kinetic_factor == 2.0);
        auto d = parse_config("");
        apply_scenario_defaults(d, Scenario::Evolve);
        CHECK(d.evolve.blowup_kinetic_factor == 1e3);
    }
}

TEST_CASE("checkpoints") {
    auto dir = scratch("ckpt");
    auto g = make_grid(2, 16, 3.0);
    auto u = sample_field(g, [](const double* x) { return cplx(std::sin(x[0]) * 1e-300, std::cos(3 * x[1]) / 7); });
    u[5] = cplx(-0.0, 1.0 / 3.0);
    const auto p = ModelParams::power(2, 1.7);
    const auto path = (dir / "a.fnls").string();
    write_checkpoint(path, u, p, 0.125);

    SUBCASE("bit-exact round trip") {
        auto c = read_checkpoint(path);
        CHECK(c.d == 2);
        CHECK(c.n == 16);
        CHECK(c.L == 3.0);
        CHECK(c.alpha == 1.7);
        CHECK(c.branch == Branch::Power);
        CHECK(c.t == 0.125);
        REQUIRE(c.payload.size() == u.size());
        CHECK(std::memcmp(c.payload.data(), u.values().data(), 16 * u.size()) == 0);
        CHECK(fs::file_size(path) == kCheckpointHeaderBytes + 16 * u.size());
        auto bytes = encode_checkpoint(c);
        CHECK(slurp(path) == std::string(bytes.begin(), bytes.end()));
        CHECK(checkpoint_field(c, g).values() == u.values());
    }
    SUBCASE("header layout") {
        const auto s = slurp(path);
        CHECK(s.substr(0, 5) == "FNLS1");
        CHECK(static_cast<unsigned char>(s[5]) == 2);
        CHECK(static_cast<unsigned char>(s[6]) == 16);
        CHECK(s[7] == 0);
        CHECK(s[8] == 0);
        CHECK(s[9] == 0);
    }
    SUBCASE("errors") {
        auto bytes = encode_checkpoint(read_checkpoint(path));
        auto expect_kind = [](std::vector<unsigned char> b, CheckpointError::Kind k) {
            try {
                decode_checkpoint(b);
            } catch (const CheckpointError& e) {
                return e.kind == k;
            }
            return false;
        };
        auto t1 = bytes;
        t1.resize(bytes.size() - 7);
        CHECK(expect_kind(t1, CheckpointError::Kind::Truncated));
        auto t2 = bytes;
        t2.resize(20);
        CHECK(expect_kind(t2, CheckpointError::Kind::Truncated));
        auto m = bytes;
        m[4] = '2';
        CHECK(expect_kind(m, CheckpointError::Kind::Magic));
        auto dd = bytes;
        dd[5] = 9;
        CHECK(expect_kind(dd, CheckpointError::Kind::Dimension));
        auto huge = bytes;
        huge[8] = 0x40;  // n = 2^22 + 16
        CHECK(expect_kind(huge, CheckpointError::Kind::Dimension));

        auto c = read_checkpoint(path);
        try {
            checkpoint_field(c, make_grid(3, 16, 3.0));
            FAIL("expected a dimension error");
        } catch (const CheckpointError& e) {
            CHECK(e.kind == CheckpointError::Kind::Dimension);
        }
        CHECK_THROWS_AS(checkpoint_field(c, make_grid(2, 32, 3.0)), CheckpointError);
        CHECK_THROWS_AS(read_checkpoint((dir / "missing.fnls").string()), CheckpointError);
    }
}

TEST_CASE("manifest") {
    Manifest m;
    m.set("a", 0.1);
    m.set("b", 3);
    m.set("c", true);
    m.set("d", "text with = sign");
    m.set("a", 0.25);
    m.set("e", HUGE_VAL);
    CHECK(m.str() == "a = 0.25\nb = 3\nc = true\nd = text with = sign\ne = inf\n");
    auto back = Manifest::parse(m.str());
    CHECK(back.get("d") == "text with = sign");
    CHECK(back.get("a") == "0.25");
    CHECK_FALSE(back.get("zz").has_value());
    CHECK(std::stod(format_real(0.1)) == 0.1);
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("counter generator") {
    CounterRng a(42), b(42), c(43);
    CHECK(a.bits(0) == b.bits(0));
    CHECK(a.bits(1) != a.bits(0));
    CHECK(a.bits(5) != c.bits(5));
    double mean = 0;
    for (int i = 0; i < 20000; ++i) {
        const double u = a.uniform(i);
        CHECK_UNARY(u >= 0.0);
        CHECK_UNARY(u < 1.0);
        mean += u / 20000;
    }
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
    // members do not depend on family size
    auto g = make_grid(2, 32, 6.0);
    CHECK(radial_bump_family(g, 3, 2)[1].values() == radial_bump_family(g, 3, 5)[1].values());
}

TEST_CASE("scenario runs") {
    SUBCASE("evolve is deterministic and writes its artifacts") {
        auto cfg = parse_config(
            "model.d = 2\nmodel.alpha = 1.5\ngrid.n_per_dim = 64\ngrid.L = 8\n"
            "initial_data = gaussian(1.0, 0.7)\nevolve.t_max = 0.1\nevolve.dt_init = 0.01\n"
            "evolve.record_every = 2\nevolve.checkpoint_every = 4\n");
        auto d1 = scratch("det1"), d2 = scratch("det2");
        auto r1 = run_scenario(cfg, Scenario::Evolve, d1.string());
        auto r2 = run_scenario(cfg, Scenario::Evolve, d2.string());
        CHECK(r1.exit_code == kExitOk);
        CHECK(slurp(d1 / "diagnostics.csv") == slurp(d2 / "diagnostics.csv"));
        CHECK(slurp(d1 / "final.fnls") == slurp(d2 / "final.fnls"));
        CHECK(fs::exists(d1 / "manifest.txt"));
        CHECK(fs::exists(d1 / "checkpoint_00000004.fnls"));
        const auto csv = slurp(d1 / "diagnostics.csv");
        CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
        auto man = Manifest::read((d1 / "manifest.txt").string());
        CHECK(man.get("outcome") == "Completed");
        CHECK(man.get("code_version").has_value());

        // restart from the written checkpoint
        auto cfg2 = parse_config("grid.n_per_dim = 64\ngrid.L = 8\ninitial_data = from_checkpoint(final.fnls)\n"
                                 "evolve.t_max = 0.05\n",
                                 d1.string());
        auto d3 = scratch("restart");
        CHECK(run_scenario(cfg2, Scenario::Evolve, d3.string()).exit_code == kExitOk);
        auto cfg3 = parse_config("model.d = 3\ngrid.n_per_dim = 16\ngrid.L = 8\n"
                                 "initial_data = from_checkpoint(final.fnls)\n",
                                 d1.string());
        std::ostringstream err;
        CHECK(run_scenario_guarded(cfg3, Scenario::Evolve, d3.string(), err) == kExitConfig);
        CHECK(err.str().find("d = 2") != std::string::npos);
    }
    SUBCASE("resolution loss maps to exit 3") {
        auto cfg = parse_config("grid.n_per_dim = 32\ngrid.L = 8\ninitial_data = gaussian(0.5, 2)\n"
                                "evolve.t_max = 0.1\nevolve.gradient_resolution_floor = 0.999999\n");
        std::ostringstream err;
        CHECK(run_scenario_guarded(cfg, Scenario::Evolve, scratch("lost").string(), err) == kExitResolutionLost);
    }
    SUBCASE("ground state scenario") {
        auto cfg = parse_config("grid.n_per_dim = 64\ngrid.L = 8\n");
        auto d = scratch("gs");
        auto r = run_scenario(cfg, Scenario::GroundState, d.string());
        CHECK(r.exit_code == kExitOk);
        auto man = Manifest::read((d / "manifest.txt").string());
        for (const char* k : {"d", "alpha", "branch", "L", "n", "residual", "kinetic_threshold", "energy_threshold",
                              "C_dalpha", "iterations"})
            CHECK_MESSAGE(man.get(k).has_value(), k);
        auto c = read_checkpoint((d / "groundstate.fnls").string());
        CHECK(c.n == 64);
    }
}
