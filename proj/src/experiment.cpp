#include "fmstab/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "fmstab/control.hpp"

namespace fmstab {

namespace {

SpectralField target_field(const ExperimentConfig& cfg) {
    const Basis& b = cfg.model.basis;
    switch (cfg.target) {
        case TargetType::Zero:
        case TargetType::None:
            return SpectralField(b);
        case TargetType::Trajectory:
            return build_ic(cfg.ic_v, b, cfg.seed + 2);
        case TargetType::SteadyState: {
            const SpectralField guess = build_ic(cfg.steady_guess, b, cfg.seed + 4);
            const SteadyStateResult ss = steady_state_solve(cfg.model, guess);
            if (!ss.converged)
                throw ConfigError("steady-state solve did not converge; final residual " +
                                  std::to_string(ss.residual));
            return ss.phi;
        }
    }
    throw ConfigError("target_field: bad target");
}

}  // namespace

ThresholdReport certify(const ExperimentConfig& cfg) {
    const Basis& b = cfg.model.basis;
    const double h_norm = cfg.model.h.size() != 0 ? cfg.model.h.norm_l2() : 0.0;
    std::optional<double> mu;
    std::optional<int> n;
    if (cfg.has_controller) {
        mu = cfg.controller.mu;
        n = cfg.controller.n;
    }
    switch (cfg.model.kind) {
        case ModelKind::NSV2D:
            return nsv_thresholds(cfg.model.nu, cfg.model.alpha, h_norm, cfg.consts.b0, b, mu, n);
        case ModelKind::BBMB:
            if (cfg.model.nu != 1.0 || cfg.model.alpha != 1.0)
                throw ConfigError("BBMB certificates assume unit diffusion and regularization");
            return bbmb_thresholds(cfg.model.f, h_norm, b, cfg.sobolev_const, mu, n);
        case ModelKind::KdVB:
            if (cfg.model.nu != 1.0)
                throw ConfigError("KdVB certificates assume unit diffusion");
            return kdvb_thresholds(h_norm, b, cfg.consts.beta, mu, n);
        case ModelKind::SDWave: {
            const SpectralField u0 = build_ic(cfg.ic_u, b, cfg.seed);
            const SpectralField u1 = build_ic(cfg.ic_ut, b, cfg.seed + 1);
            SpectralField z0 = u0, z1 = u1;
            if (cfg.target == TargetType::Trajectory) {
                z0 = u0 - build_ic(cfg.ic_v, b, cfg.seed + 2);
                z1 = u1 - build_ic(cfg.ic_vt, b, cfg.seed + 3);
            }
            return sdwave_thresholds(cfg.model.b, cfg.model.nu, cfg.model.f.a, cfg.model.f.m0,
                                     cfg.model.f.p, b, z0, z1, mu, n, cfg.model.f.d0);
        }
        case ModelKind::NDWave:
            return ndwave_thresholds(cfg.model.f.m0, cfg.has_controller ? cfg.controller.mu : 0.0,
                                     cfg.has_controller ? cfg.controller.n : 0, b);
    }
    throw ConfigError("certify: bad model kind");
}

SimulationOutput simulate(const ExperimentConfig& cfg) {
    SimulationOutput out;
    const Basis& b = cfg.model.basis;
    out.initial.u = build_ic(cfg.ic_u, b, cfg.seed);
    if (cfg.model.second_order()) out.initial.ut = build_ic(cfg.ic_ut, b, cfg.seed + 1);

    if (cfg.has_controller) {
        ControlSetup cs;
        cs.spec = cfg.controller;
        if (cfg.target == TargetType::Trajectory) {
            ModelState v0;
            v0.u = build_ic(cfg.ic_v, b, cfg.seed + 2);
            if (cfg.model.second_order()) v0.ut = build_ic(cfg.ic_vt, b, cfg.seed + 3);
            cs.trajectory0 = std::move(v0);
        } else {
            cs.fixed_target = target_field(cfg);
        }
        out.control = std::move(cs);
    }
    out.record = advance(cfg.model, out.control, out.initial, cfg.integrator);
    return out;
}

AnalysisOutput analyze(const ExperimentConfig& cfg, const RunRecord& record,
                       const ThresholdReport& report) {
    AnalysisOutput out;
    const auto ts = record.series("t");
    const double t_end = ts.empty() ? 0.0 : ts.back();
    double t_lo = 0.2 * t_end;

    // delay the window until the state is inside the computed absorbing ball
    double ball = std::numeric_limits<double>::infinity();
    const double h_norm = cfg.model.h.size() != 0 ? cfg.model.h.norm_l2() : 0.0;
    if (h_norm > 0.0) {
        const double lam1 = cfg.model.basis.lambda1();
        if (cfg.model.kind == ModelKind::NSV2D) {
            const double d0 = 0.5 * cfg.model.nu *
                              std::min(lam1, 1.0 / (cfg.model.alpha * cfg.model.alpha));
            ball = 2.0 * h_norm * h_norm / (cfg.model.nu * lam1 * d0);
        } else if (cfg.model.kind == ModelKind::BBMB && report.constants.count("R2")) {
            ball = report.constants.at("R2");
        }
    }
    if (std::isfinite(ball)) {
        const auto energy_u = record.series("energy_u");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (energy_u[i] <= ball) {
                t_lo = std::max(t_lo, ts[i]);
                break;
            }
            if (i + 1 == ts.size()) t_lo = t_end;  // never entered
        }
    }

    switch (cfg.model.kind) {
        case ModelKind::NSV2D:
            out.series = "z_h1";
            out.fit = fit_exponential(ts, record.series("z_h1"), t_lo, t_end);
            out.verdict = compare_to_certificate(out.fit, report);
            break;
        case ModelKind::BBMB: {
            out.series = "z_h1_sq";
            auto v = record.series("z_h1");
            for (double& x : v) x *= x;
            out.fit = fit_exponential(ts, v, t_lo, t_end, 1e-26);
            out.verdict = compare_to_certificate(out.fit, report);
            break;
        }
        case ModelKind::KdVB:
            out.series = "z_l2";
            out.fit = fit_exponential(ts, record.series("z_l2"), t_lo, t_end);
            out.verdict = compare_to_certificate(out.fit, report);
            break;
        case ModelKind::SDWave:
            out.series = "wave_energy";
            out.fit = fit_exponential(ts, record.series("wave_energy"), t_lo, t_end, 1e-26);
            out.verdict = compare_to_certificate(out.fit, report);
            break;
        case ModelKind::NDWave: {
            out.series = "lyap";
            out.algebraic = check_algebraic_decay(ts, record.series("lyap"), report.rate,
                                                  std::max(1.0, t_lo));
            out.verdict = !report.certified ? Verdict::NOT_APPLICABLE
                          : out.algebraic.bounded ? Verdict::PASS
                                                  : Verdict::FAIL;
            break;
        }
    }
    return out;
}

void write_run_csv(const std::string& path, const RunRecord& record) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr) throw std::runtime_error("cannot write " + path);
    for (std::size_t i = 0; i < record.columns.size(); ++i)
        std::fprintf(f, "%s%s", record.columns[i].c_str(),
                     i + 1 == record.columns.size() ? "\n" : ",");
    for (const auto& row : record.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            std::fprintf(f, "%.17g%s", row[i], i + 1 == row.size() ? "\n" : ",");
    }
    std::fclose(f);
}

void write_meta_json(const std::string& path, const ExperimentConfig& cfg,
                     const RunRecord& record) {
    nlohmann::json j;
    j["config_hash"] = cfg.config_hash;
    j["seed"] = cfg.seed;
    j["scheme"] = record.meta.scheme;
    j["dt"] = record.meta.dt_requested;
    j["dt_used"] = record.meta.dt_used;
    j["t_end"] = record.meta.t_end;
    j["steps"] = record.meta.steps;
    j["record_every"] = record.meta.record_every;
    j["columns"] = record.columns;
    j["warnings"] = record.meta.warnings;
    j["aborted"] = record.aborted;
    j["abort_step"] = record.abort_step;
    j["config"] = nlohmann::json::parse(cfg.canonical);
    write_text(path, j.dump(2) + "\n");
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string verdict_json(const AnalysisOutput& out, const ThresholdReport& report) {
    nlohmann::json j;
    j["series"] = out.series;
    j["fitted_rate"] = out.fit.fitted_rate;
    j["r_squared"] = out.fit.r_squared;
    j["window"] = {out.fit.t_lo, out.fit.t_hi};
    j["floor_reached"] = out.fit.floor_reached;
    j["n_used"] = out.fit.n_used;
    if (report.rate_kind == "algebraic") {
        j["scaled_sup"] = out.algebraic.sup;
        j["bounded"] = out.algebraic.bounded;
    }
    j["guaranteed_rate"] = {{"kind", report.rate_kind}, {"value", report.rate}};
    j["certified"] = report.certified;
    j["verdict"] = verdict_name(out.verdict);
    return j.dump(2) + "\n";
}

std::string fit_csv(const RunRecord& record, const std::string& column, const AnalysisOutput& out) {
    const auto ts = record.series("t");
    auto vs = record.series(column);
    std::string s = "t," + column + ",log_value,fitted_log\n";
    char buf[128];
    // reconstruct the fitted line from the rate and one anchor point
    double anchor_t = out.fit.t_lo, anchor_log = 0.0;
    bool have_anchor = false;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!have_anchor && ts[i] >= out.fit.t_lo && vs[i] > 0.0) {
            anchor_t = ts[i];
            anchor_log = std::log(vs[i]);
            have_anchor = true;
        }
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double lv = vs[i] > 0.0 ? std::log(vs[i]) : -745.0;
        const double fitted = anchor_log - out.fit.fitted_rate * (ts[i] - anchor_t);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", ts[i], vs[i], lv, fitted);
        s += buf;
    }
    return s;
}

}  // namespace fmstab
