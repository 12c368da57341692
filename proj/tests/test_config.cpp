#include <doctest.h>

#include "fmstab/config.hpp"

using namespace fmstab;

namespace {

const char* kMinimal = R"({
  "model": {
    "kind": "bbmb",
    "basis": {"kind": "sine_dirichlet_1d", "length": 1.0, "modes": 16},
    "f": {"form": "identity"},
    "h": {"type": "mode", "k": 1, "amplitude": 0.1}
  },
  "controller": {
    "variant": "track_state",
    "mu": 1.0,
    "n_modes": 2,
    "target": {"type": "trajectory", "initial_condition": {"type": "random_smooth", "amplitude": 0.01}}
  },
  "integrator": {"scheme": "imex_cnab2", "dt": 0.001, "t_end": 2.0, "record_every": 10},
  "initial_condition": {"type": "random_smooth", "amplitude": 0.02},
  "seed": 42,
  "output_dir": "out"
})";

}  // namespace

TEST_CASE("minimal config parses and validates") {
    const ExperimentConfig cfg = parse_config(kMinimal);
    CHECK(cfg.model.kind == ModelKind::BBMB);
    CHECK(cfg.model.basis.modes() == 16);
    CHECK(cfg.has_controller);
    CHECK(cfg.controller.mu == 1.0);
    CHECK(cfg.target == TargetType::Trajectory);
    CHECK(cfg.seed == 42);
    CHECK(cfg.model.h.norm_l2() == doctest::Approx(0.1));
}

TEST_CASE("round-trip: parsing the canonical form reproduces it and the hash") {
    const ExperimentConfig cfg = parse_config(kMinimal);
    const ExperimentConfig again = parse_config(cfg.canonical);
    CHECK(cfg.canonical == again.canonical);
    CHECK(cfg.config_hash == again.config_hash);
    // whitespace-insensitive: a reformatted document hashes identically
    std::string squashed;
    for (char c : std::string(kMinimal))
        if (c != '\n' && c != ' ') squashed += c;
    CHECK(parse_config(squashed).config_hash == cfg.config_hash);
}

TEST_CASE("unknown keys are rejected at every level") {
    std::string bad = kMinimal;
    bad.insert(bad.rfind('}'), R"(, "extra_key": 1)");
    bool named = false;
    try {
        parse_config(bad);
    } catch (const ConfigError& e) {
        named = std::string(e.what()).find("extra_key") != std::string::npos;
    }
    CHECK(named);

    std::string bad2 = kMinimal;
    bad2.replace(bad2.find("\"dt\""), 4, "\"dtt\"");
    CHECK_THROWS_AS(parse_config(bad2), ConfigError);
}

TEST_CASE("invalid values fail early") {
    std::string bad = kMinimal;
    bad.replace(bad.find("0.001"), 5, "-1.00");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    std::string bad3 = kMinimal;
    bad3.replace(bad3.find("\"n_modes\": 2"), 12, "\"n_modes\": 99");
    CHECK_THROWS_AS(parse_config(bad3), ConfigError);  // N > M
    std::string bad4 = kMinimal;
    bad4.replace(bad4.find("\"kind\": \"bbmb\""), 14, "\"kind\": \"kdvb\"");
    CHECK_THROWS_AS(parse_config(bad4), ConfigError);  // KdVB on a Dirichlet basis
}

TEST_CASE("ic construction is deterministic and seedable") {
    const ExperimentConfig cfg = parse_config(kMinimal);
    const SpectralField a = build_ic(cfg.ic_u, cfg.model.basis, cfg.seed);
    const SpectralField b = build_ic(cfg.ic_u, cfg.model.basis, cfg.seed);
    CHECK(a.coeffs == b.coeffs);
    const SpectralField c = build_ic(cfg.ic_u, cfg.model.basis, cfg.seed + 1);
    CHECK(a.coeffs != c.coeffs);
    IcSpec mode;
    mode.type = IcSpec::Type::SingleMode;
    mode.k = 3;
    mode.amplitude = 2.5;
    const SpectralField d = build_ic(mode, cfg.model.basis, 0);
    CHECK(d.coeffs[2] == 2.5);
    CHECK(d.norm_l2() == 2.5);
}

TEST_CASE("fnv1a is the reference implementation") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") == 12638187200555641996ull);
}
