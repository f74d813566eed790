#include <doctest.h>

#include <stdexcept>
#include <string>

#include "cascade/config.hpp"
#include "cascade/presets.hpp"

using namespace cascade;

TEST_SUITE("config") {

TEST_CASE("empty document takes all defaults") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.params.lambda1 == 1.0);
    CHECK(cfg.params.mu == 0.0);
    CHECK(cfg.params.Delta1 == 0.0);
    CHECK(cfg.params.chi1 == 0.0);
    CHECK(cfg.params.gamma1 == 0.0);
    CHECK(cfg.params.nbar1 == 10.0);
    CHECK(cfg.params.tau_max == 50.0);
    CHECK(cfg.params.tau_step == 0.01);
    CHECK(cfg.engine == Engine::Analytic);
    CHECK(cfg.mode == RunMode::Simulate);
}

TEST_CASE("nbar-only document reproduces the resonant-panel physics") {
    const RunConfig cfg = parse_config("nbar1 = 10\nnbar2 = 10\n");
    const ModelParams preset = load_preset("2a");
    CHECK(cfg.params.nbar1 == preset.nbar1);
    CHECK(cfg.params.nbar2 == preset.nbar2);
    CHECK(cfg.params.mu == preset.mu);
    CHECK(cfg.params.Delta1 == preset.Delta1);
    CHECK(cfg.params.chi1 == preset.chi1);
    CHECK(cfg.params.gamma1 == preset.gamma1);
}

TEST_CASE("comments, spacing, overrides") {
    const RunConfig cfg = parse_config(
        "# run with modulation\n"
        "mu = 9.42477796076938  # 3 pi\n"
        "engine = both\n"
        "output = run.csv\n"
        "tau_max = 25\n");
    CHECK(cfg.params.mu == doctest::Approx(9.42477796076938));
    CHECK(cfg.engine == Engine::Both);
    CHECK(cfg.output == "run.csv");
    CHECK(cfg.params.tau_max == 25.0);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS((void)parse_config("gamma1 = -1\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config("chi2 = -0.1\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config("nbar1 = -2\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config("tau_step = 0\n"), std::invalid_argument);
    // truncation too small for the coherent tail
    CHECK_THROWS_AS((void)parse_config("nmax1 = 12\n"), std::invalid_argument);
}

TEST_CASE("unknown key is named with its line") {
    try {
        (void)parse_config("nbar1 = 10\nfoo = 1\n");
        FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("foo") != std::string::npos);
    }
}

TEST_CASE("malformed line is rejected with its number") {
    try {
        (void)parse_config("mu = 1\nnonsense without equals\n");
        FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_config("mu = not_a_number\n"), std::invalid_argument);
}

TEST_CASE("sweep plumbing") {
    const RunConfig cfg = parse_config(
        "mode = sweep\nsweep_key = gamma1\nsweep_values = 0, 0.0005\n");
    CHECK(cfg.mode == RunMode::Sweep);
    CHECK(cfg.sweep_key == "gamma1");
    REQUIRE(cfg.sweep_values.size() == 2);
    CHECK(cfg.sweep_values[0] == 0.0);
    CHECK(cfg.sweep_values[1] == 0.0005);
    CHECK(cfg.sweep_tokens[1] == "0.0005");

    CHECK_THROWS_AS((void)parse_config("mode = sweep\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config("sweep_key = bogus\n"), std::invalid_argument);
}

TEST_CASE("presets: caption spot checks") {
    CHECK(preset_ids().size() == 36);

    const ModelParams p2a = load_preset("2a");
    CHECK(p2a.nbar1 == 10.0);
    CHECK(p2a.mu == 0.0);
    CHECK(p2a.Delta1 == 0.0);
    CHECK(p2a.chi1 == 0.0);
    CHECK(p2a.gamma1 == 0.0);

    const ModelParams p2d = load_preset("2d");
    CHECK(p2d.mu == doctest::Approx(3.0 * 3.14159265358979323846));
    CHECK(p2d.gamma1 == 0.0005);

    const ModelParams p3c = load_preset("3c");
    CHECK(p3c.Delta1 == 17.0);
    CHECK(p3c.Delta2 == 17.0);
    CHECK(p3c.gamma1 == 0.0);

    const ModelParams p4b = load_preset("4b");
    CHECK(p4b.chi1 == 0.01);
    CHECK(p4b.gamma1 == 0.0004);

    const ModelParams p5d = load_preset("5d");
    CHECK(p5d.mu == doctest::Approx(5.0 * 3.14159265358979323846));
    CHECK(p5d.gamma1 == 0.001);

    const ModelParams p6c = load_preset("6c");
    CHECK(p6c.Delta1 == 15.0);

    const ModelParams p7f = load_preset("7f");
    CHECK(p7f.chi1 == 0.5);
    CHECK(p7f.chi2 == 0.5);
    CHECK(p7f.gamma1 == 0.001);

    CHECK_THROWS_AS((void)load_preset("9z"), std::invalid_argument);

    for (const std::string& id : preset_ids()) {
        const ModelParams p = load_preset(id);
        CHECK_NOTHROW(p.validate());
        CHECK(p.lambda1 == 1.0);
        CHECK(p.lambda2 == 1.0);
        CHECK(p.nbar1 == 10.0);
        CHECK(p.nbar2 == 10.0);
    }
}

} // TEST_SUITE
