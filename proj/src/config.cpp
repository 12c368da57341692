#include "fmstab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fmstab {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (allowed.find(it.key()) == allowed.end())
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double num(const json& j, const std::string& key, std::optional<double> def = {}) {
    if (!j.contains(key)) {
        if (def) return *def;
        throw ConfigError("missing required numeric field '" + key + "'");
    }
    if (!j[key].is_number()) throw ConfigError("field '" + key + "' must be a number");
    return j[key].get<double>();
}

int integer(const json& j, const std::string& key, std::optional<int> def = {}) {
    if (!j.contains(key)) {
        if (def) return *def;
        throw ConfigError("missing required integer field '" + key + "'");
    }
    if (!j[key].is_number_integer()) throw ConfigError("field '" + key + "' must be an integer");
    return j[key].get<int>();
}

std::string text(const json& j, const std::string& key, std::optional<std::string> def = {}) {
    if (!j.contains(key)) {
        if (def) return *def;
        throw ConfigError("missing required string field '" + key + "'");
    }
    if (!j[key].is_string()) throw ConfigError("field '" + key + "' must be a string");
    return j[key].get<std::string>();
}

BasisKind parse_basis_kind(const std::string& s) {
    if (s == "sine_dirichlet_1d") return BasisKind::SineDirichlet1D;
    if (s == "periodic_zero_mean_1d") return BasisKind::PeriodicZeroMean1D;
    if (s == "periodic_zero_mean_2d_vector") return BasisKind::PeriodicZeroMean2DVector;
    throw ConfigError("unknown basis kind '" + s + "'");
}

ModelKind parse_model_kind(const std::string& s) {
    if (s == "nsv2d") return ModelKind::NSV2D;
    if (s == "bbmb") return ModelKind::BBMB;
    if (s == "kdvb") return ModelKind::KdVB;
    if (s == "sdwave") return ModelKind::SDWave;
    if (s == "ndwave") return ModelKind::NDWave;
    throw ConfigError("unknown model kind '" + s + "'");
}

NonlinearitySpec parse_f(const json& j) {
    reject_unknown(j, {"form", "coefficients", "p", "m0", "a", "d0"}, "model.f");
    NonlinearitySpec f;
    const std::string form = text(j, "form");
    if (form == "zero")
        f.form = NonlinearitySpec::Form::Zero;
    else if (form == "identity")
        f.form = NonlinearitySpec::Form::Identity;
    else if (form == "cubic_minus_linear")
        f.form = NonlinearitySpec::Form::CubicMinusLinear;
    else if (form == "polynomial")
        f.form = NonlinearitySpec::Form::Polynomial;
    else
        throw ConfigError("unknown nonlinearity form '" + form + "'");
    if (j.contains("coefficients")) {
        if (!j["coefficients"].is_array()) throw ConfigError("model.f.coefficients must be an array");
        for (const auto& c : j["coefficients"]) f.poly.push_back(c.get<double>());
    } else if (f.form == NonlinearitySpec::Form::Polynomial) {
        throw ConfigError("polynomial nonlinearity needs coefficients");
    }
    f.p = integer(j, "p", 2);
    f.m0 = num(j, "m0", 1.0);
    f.a = num(j, "a", 1.0);
    f.d0 = num(j, "d0", 0.25);
    if (f.p < 2) throw ConfigError("model.f.p must be >= 2");
    return f;
}

DampingSpec parse_g(const json& j) {
    reject_unknown(j, {"form", "a1", "a2", "m"}, "model.g");
    DampingSpec g;
    const std::string form = text(j, "form", std::string("linear"));
    if (form == "linear")
        g.form = DampingSpec::Form::Linear;
    else if (form == "linear_plus_power")
        g.form = DampingSpec::Form::LinearPlusPower;
    else
        throw ConfigError("unknown damping form '" + form + "'");
    g.a1 = num(j, "a1", 1.0);
    g.a2 = num(j, "a2", 0.0);
    g.m = num(j, "m", 0.0);
    if (g.a1 <= 0.0) throw ConfigError("model.g.a1 must be > 0");
    if (g.form == DampingSpec::Form::LinearPlusPower && (g.a2 < 0.0 || g.m < 0.0))
        throw ConfigError("model.g: a2, m must be >= 0");
    return g;
}

IcSpec parse_ic(const json& j, const std::string& where) {
    reject_unknown(j, {"type", "k", "amplitude", "decay_exponent", "path", "seed"}, where);
    IcSpec ic;
    const std::string type = text(j, "type");
    if (type == "zero")
        ic.type = IcSpec::Type::Zero;
    else if (type == "single_mode")
        ic.type = IcSpec::Type::SingleMode;
    else if (type == "random_smooth")
        ic.type = IcSpec::Type::RandomSmooth;
    else if (type == "from_file")
        ic.type = IcSpec::Type::FromFile;
    else
        throw ConfigError(where + ": unknown type '" + type + "'");
    ic.k = integer(j, "k", 1);
    ic.amplitude = num(j, "amplitude", 1.0);
    ic.decay_exponent = num(j, "decay_exponent", 2.0);
    if (ic.type == IcSpec::Type::FromFile) ic.path = text(j, "path");
    if (j.contains("seed")) ic.seed = j["seed"].get<std::uint64_t>();
    return ic;
}

SpectralField parse_h(const json& j, const Basis& basis) {
    reject_unknown(j, {"type", "k", "amplitude", "values"}, "model.h");
    const std::string type = text(j, "type");
    if (type == "zero") return SpectralField(basis);
    if (type == "mode") return single_mode(basis, integer(j, "k", 1), num(j, "amplitude"));
    if (type == "coeffs") {
        if (!j.contains("values") || !j["values"].is_array())
            throw ConfigError("model.h: coeffs type needs values array");
        SpectralField h(basis);
        const auto& vals = j["values"];
        if (static_cast<int>(vals.size()) > basis.size())
            throw ConfigError("model.h: more values than basis modes");
        for (std::size_t i = 0; i < vals.size(); ++i) h.coeffs[i] = vals[i].get<double>();
        return h;
    }
    throw ConfigError("model.h: unknown type '" + type + "'");
}

}  // namespace

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SpectralField build_ic(const IcSpec& ic, const Basis& basis, std::uint64_t stream_seed) {
    switch (ic.type) {
        case IcSpec::Type::Zero: return SpectralField(basis);
        case IcSpec::Type::SingleMode: return single_mode(basis, ic.k, ic.amplitude);
        case IcSpec::Type::RandomSmooth:
            return random_smooth(basis, ic.seed.value_or(stream_seed), ic.decay_exponent,
                                 ic.amplitude);
        case IcSpec::Type::FromFile: {
            std::ifstream in(ic.path);
            if (!in) throw ConfigError("initial condition file not found: " + ic.path);
            json j;
            in >> j;
            if (!j.is_array()) throw ConfigError("initial condition file must hold a JSON array");
            SpectralField u(basis);
            if (static_cast<int>(j.size()) != basis.size())
                throw ConfigError("initial condition file length does not match the basis");
            for (std::size_t i = 0; i < j.size(); ++i) u.coeffs[i] = j[i].get<double>();
            return u;
        }
    }
    throw ConfigError("build_ic: bad type");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j,
                   {"model", "controller", "integrator", "initial_condition", "initial_velocity",
                    "seed", "output_dir", "ineq_constants"},
                   "config");

    ExperimentConfig cfg;
    if (!j.contains("model")) throw ConfigError("config: missing 'model'");
    const json& jm = j["model"];
    reject_unknown(jm, {"kind", "nu", "alpha", "b", "lambda", "sdwave_eps", "f", "g", "h", "basis"},
                   "model");
    cfg.model.kind = parse_model_kind(text(jm, "kind"));
    cfg.model.nu = num(jm, "nu", 1.0);
    cfg.model.alpha = num(jm, "alpha", 1.0);
    cfg.model.b = num(jm, "b", 1.0);
    cfg.model.lambda = num(jm, "lambda", 0.0);
    cfg.model.sdwave_eps = num(jm, "sdwave_eps", 0.0);
    if (!jm.contains("basis")) throw ConfigError("model: missing 'basis'");
    const json& jb = jm["basis"];
    reject_unknown(jb, {"kind", "length", "modes"}, "model.basis");
    cfg.model.basis =
        Basis(parse_basis_kind(text(jb, "kind")), num(jb, "length", 1.0), integer(jb, "modes"));
    cfg.model.f = jm.contains("f") ? parse_f(jm["f"]) : NonlinearitySpec{};
    cfg.model.g = jm.contains("g") ? parse_g(jm["g"]) : DampingSpec{};
    cfg.model.h = jm.contains("h") ? parse_h(jm["h"], cfg.model.basis)
                                   : SpectralField(cfg.model.basis);
    try {
        cfg.model.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }

    if (j.contains("controller")) {
        const json& jc = j["controller"];
        reject_unknown(jc, {"variant", "mu", "n_modes", "target"}, "controller");
        const std::string variant = text(jc, "variant");
        cfg.has_controller = true;
        if (variant == "track_state")
            cfg.controller.variant = ControllerVariant::TrackState;
        else if (variant == "track_state_plus_velocity")
            cfg.controller.variant = ControllerVariant::TrackStatePlusVelocity;
        else if (variant == "steady_state")
            cfg.controller.variant = ControllerVariant::SteadyState;
        else
            throw ConfigError("controller: unknown variant '" + variant + "'");
        cfg.controller.mu = num(jc, "mu");
        cfg.controller.n = integer(jc, "n_modes");
        try {
            cfg.controller.validate(cfg.model.basis);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("controller: ") + e.what());
        }
        if (!jc.contains("target")) throw ConfigError("controller: missing 'target'");
        const json& jt = jc["target"];
        reject_unknown(jt, {"type", "initial_condition", "initial_velocity", "guess"},
                       "controller.target");
        const std::string tt = text(jt, "type");
        if (tt == "trajectory") {
            cfg.target = TargetType::Trajectory;
            if (!jt.contains("initial_condition"))
                throw ConfigError("trajectory target needs initial_condition");
            cfg.ic_v = parse_ic(jt["initial_condition"], "controller.target.initial_condition");
            cfg.ic_vt = jt.contains("initial_velocity")
                            ? parse_ic(jt["initial_velocity"], "controller.target.initial_velocity")
                            : IcSpec{};
        } else if (tt == "steady_state") {
            cfg.target = TargetType::SteadyState;
            cfg.steady_guess = jt.contains("guess")
                                   ? parse_ic(jt["guess"], "controller.target.guess")
                                   : IcSpec{};
        } else if (tt == "zero") {
            cfg.target = TargetType::Zero;
        } else {
            throw ConfigError("controller.target: unknown type '" + tt + "'");
        }
        if (cfg.controller.variant == ControllerVariant::SteadyState &&
            cfg.target == TargetType::Trajectory)
            throw ConfigError("steady_state variant needs a time-independent target");
    }

    if (!j.contains("integrator")) throw ConfigError("config: missing 'integrator'");
    const json& ji = j["integrator"];
    reject_unknown(ji, {"scheme", "dt", "t_end", "record_every"}, "integrator");
    const std::string scheme = text(ji, "scheme", std::string("imex_cnab2"));
    if (scheme == "imex_cnab2")
        cfg.integrator.scheme = Scheme::IMEX_CNAB2;
    else if (scheme == "imex_euler")
        cfg.integrator.scheme = Scheme::IMEX_Euler;
    else if (scheme == "rk4_reference")
        cfg.integrator.scheme = Scheme::RK4Reference;
    else
        throw ConfigError("integrator: unknown scheme '" + scheme + "'");
    cfg.integrator.dt = num(ji, "dt");
    cfg.integrator.t_end = num(ji, "t_end");
    cfg.integrator.record_every = integer(ji, "record_every", 1);
    if (cfg.integrator.dt <= 0.0 || cfg.integrator.t_end <= 0.0 || cfg.integrator.record_every < 1)
        throw ConfigError("integrator: dt, t_end, record_every must be positive");

    if (j.contains("initial_condition"))
        cfg.ic_u = parse_ic(j["initial_condition"], "initial_condition");
    if (j.contains("initial_velocity"))
        cfg.ic_ut = parse_ic(j["initial_velocity"], "initial_velocity");
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.output_dir = text(j, "output_dir", std::string("out"));
    if (j.contains("ineq_constants")) {
        const json& jq = j["ineq_constants"];
        reject_unknown(jq, {"c0", "b0", "beta", "sobolev"}, "ineq_constants");
        cfg.consts.c0 = num(jq, "c0", 2.0);
        cfg.consts.b0 = num(jq, "b0", 2.0);
        cfg.consts.beta = num(jq, "beta", 2.0);
        cfg.sobolev_const = num(jq, "sobolev", 1.0);
        try {
            cfg.consts.validate();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("ineq_constants: ") + e.what());
        }
    }

    cfg.canonical = j.dump(2);  // object keys are kept sorted by the parser
    cfg.config_hash = [&] {
        std::ostringstream os;
        os << std::hex << fnv1a64(cfg.canonical);
        return os.str();
    }();
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace fmstab
