#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "fmstab/inequalities.hpp"
#include "fmstab/models.hpp"
#include "fmstab/timeint.hpp"

namespace fmstab {

/// Invalid or inconsistent experiment configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Initial-condition recipe; fields used depend on type.
struct IcSpec {
    enum class Type { Zero, SingleMode, RandomSmooth, FromFile };
    Type type = Type::Zero;
    int k = 1;
    double amplitude = 1.0;
    double decay_exponent = 2.0;
    std::string path;
    std::optional<std::uint64_t> seed;  ///< overrides the derived stream seed
};

enum class TargetType { None, Trajectory, SteadyState, Zero };

/// Parsed, validated experiment description. `canonical` is the normalized
/// JSON document (sorted keys, stable number formatting); `config_hash` is
/// the FNV-1a 64 of it and is echoed into every run's provenance sidecar.
struct ExperimentConfig {
    ModelSpec model;  // h is built; basis set
    bool has_controller = false;
    ControllerSpec controller;
    TargetType target = TargetType::None;
    IcSpec ic_u, ic_ut;       // initial data (velocity used by wave kinds)
    IcSpec ic_v, ic_vt;       // trajectory target initial data
    IcSpec steady_guess;      // steady-state target Newton guess
    IntegratorSpec integrator;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    IneqConstants consts;     // c0, b0, beta (lambda1 always from the basis)
    double sobolev_const = 1.0;
    std::string canonical;
    std::string config_hash;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

std::uint64_t fnv1a64(const std::string& s);

/// Materializes an IcSpec on the basis. Stream seeds: the main initial
/// condition uses `seed`, its velocity seed+1, the trajectory seed+2 and
/// seed+3, unless the IcSpec pins its own.
SpectralField build_ic(const IcSpec& ic, const Basis& basis, std::uint64_t stream_seed);

}  // namespace fmstab
