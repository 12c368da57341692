#include "fmstab/timeint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fmstab/products.hpp"

namespace fmstab {

namespace {

/// One 1x1 or 2x2 block of the stiff linear operator, acting on (possibly
/// non-adjacent) stacked indices.
struct Block {
    int i0 = 0, i1 = -1;
    double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;
    bool pair = false;
};

struct Layout {
    const ModelSpec* model = nullptr;
    int offset = 0;
    int ncoef = 0;
    bool second = false;
    int dim() const { return second ? 2 * ncoef : ncoef; }
};

void append_system(const ModelSpec& m, int offset, std::vector<Block>& blocks,
                   std::vector<double>& mass) {
    const Basis& b = m.basis;
    const int n = b.size();
    switch (m.kind) {
        case ModelKind::NSV2D:
        case ModelKind::BBMB: {
            for (int k = 1; k <= n; ++k) {
                const double lam = b.eigenvalue(k);
                Block blk;
                blk.i0 = offset + k - 1;
                blk.a00 = -m.nu * lam;
                blocks.push_back(blk);
                mass.push_back(1.0 + m.alpha * m.alpha * lam);
            }
            break;
        }
        case ModelKind::KdVB: {
            for (int j = 1; j <= b.modes(); ++j) {
                const double kap = 2.0 * M_PI * j / b.length();
                Block blk;
                blk.pair = true;
                blk.i0 = offset + 2 * j - 2;
                blk.i1 = offset + 2 * j - 1;
                blk.a00 = blk.a11 = -m.nu * kap * kap;
                blk.a01 = kap * kap * kap;
                blk.a10 = -blk.a01;
                blocks.push_back(blk);
                mass.push_back(1.0);
                mass.push_back(1.0);
            }
            break;
        }
        case ModelKind::SDWave:
        case ModelKind::NDWave: {
            for (int k = 1; k <= n; ++k) {
                const double lam = b.eigenvalue(k);
                Block blk;
                blk.pair = true;
                blk.i0 = offset + k - 1;
                blk.i1 = offset + n + k - 1;
                blk.a01 = 1.0;
                blk.a10 = -m.nu * lam + (m.kind == ModelKind::SDWave ? m.lambda : 0.0);
                blk.a11 = m.kind == ModelKind::SDWave ? -m.b * lam : 0.0;
                blocks.push_back(blk);
            }
            for (int k = 0; k < 2 * n; ++k) mass.push_back(1.0);
            break;
        }
    }
}

void apply_blocks(const std::vector<Block>& blocks, const std::vector<double>& y,
                  std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (const Block& b : blocks) {
        if (!b.pair) {
            out[static_cast<std::size_t>(b.i0)] = b.a00 * y[static_cast<std::size_t>(b.i0)];
        } else {
            const double x0 = y[static_cast<std::size_t>(b.i0)];
            const double x1 = y[static_cast<std::size_t>(b.i1)];
            out[static_cast<std::size_t>(b.i0)] = b.a00 * x0 + b.a01 * x1;
            out[static_cast<std::size_t>(b.i1)] = b.a10 * x0 + b.a11 * x1;
        }
    }
}

/// Factorized (B - c L); solve() applies the inverse block by block.
struct ShiftedSolve {
    std::vector<Block> inv;
    void build(const std::vector<Block>& blocks, const std::vector<double>& mass, double c) {
        inv.clear();
        inv.reserve(blocks.size());
        for (const Block& b : blocks) {
            Block s = b;
            if (!b.pair) {
                s.a00 = 1.0 / (mass[static_cast<std::size_t>(b.i0)] - c * b.a00);
            } else {
                const double m00 = mass[static_cast<std::size_t>(b.i0)] - c * b.a00;
                const double m01 = -c * b.a01;
                const double m10 = -c * b.a10;
                const double m11 = mass[static_cast<std::size_t>(b.i1)] - c * b.a11;
                const double det = m00 * m11 - m01 * m10;
                s.a00 = m11 / det;
                s.a01 = -m01 / det;
                s.a10 = -m10 / det;
                s.a11 = m00 / det;
            }
            inv.push_back(s);
        }
    }
    void solve(std::vector<double>& y) const {
        for (const Block& b : inv) {
            if (!b.pair) {
                y[static_cast<std::size_t>(b.i0)] *= b.a00;
            } else {
                const double x0 = y[static_cast<std::size_t>(b.i0)];
                const double x1 = y[static_cast<std::size_t>(b.i1)];
                y[static_cast<std::size_t>(b.i0)] = b.a00 * x0 + b.a01 * x1;
                y[static_cast<std::size_t>(b.i1)] = b.a10 * x0 + b.a11 * x1;
            }
        }
    }
};

SpectralField extract(const std::vector<double>& y, const Layout& lo, bool velocity, double t) {
    SpectralField f(lo.model->basis, t);
    const int base = lo.offset + (velocity ? lo.ncoef : 0);
    for (int k = 0; k < lo.ncoef; ++k)
        f.coeffs[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(base + k)];
    return f;
}

/// Explicit (non-stiff) part of one system: nonlinearity + forcing + the
/// supplied controller force; accumulated into the stacked vector.
void eval_explicit_system(const ModelSpec& m, const Layout& lo, const SpectralField& u,
                          const SpectralField* ut, const SpectralField* force,
                          std::vector<double>& out) {
    const Basis& b = m.basis;
    const int n = lo.ncoef;
    SpectralField acc(b);
    switch (m.kind) {
        case ModelKind::NSV2D:
            acc = acc - nonlinear_product(u, u, ProductForm::Advection2D);
            break;
        case ModelKind::BBMB:
        case ModelKind::KdVB:
            if (!m.f.is_zero()) {
                const TrigSeries1D fu = series_polynomial(to_series(u), m.f.coefficients());
                acc = acc - project_series(series_multiply(fu, series_derivative(to_series(u))), b);
            }
            break;
        case ModelKind::SDWave:
            if (!m.f.is_zero()) acc = acc - project_f(m.f, u);
            break;
        case ModelKind::NDWave:
            if (!m.f.is_zero()) acc = acc - project_f(m.f, u);
            acc = acc - project_g(m.g, *ut);
            break;
    }
    if (m.h.size() != 0) acc = acc + m.h;
    if (force != nullptr) acc = acc + *force;
    const int base = lo.offset + (lo.second ? n : 0);
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(base + k)] += acc.coeffs[static_cast<std::size_t>(k)];
}

struct ColumnPlan {
    std::vector<std::string> names;
    int n_modes_recorded = 0;
};

ColumnPlan make_columns(const ModelSpec& m, const std::optional<ControlSetup>& ctrl) {
    ColumnPlan p;
    p.names = {"t", "u_l2", "u_h1", "energy_u", "z_l2", "z_h1"};
    if (m.second_order()) {
        p.names.push_back("zt_l2");
        p.names.push_back("wave_energy");
        p.names.push_back("lyap");
    }
    if (m.kind == ModelKind::NSV2D) p.names.push_back("hdotu");
    if (m.kind == ModelKind::KdVB) p.names.push_back("mean_u");
    const int n = ctrl ? ctrl->spec.n : 0;
    p.n_modes_recorded = std::min(n + 4, m.basis.size());
    for (int k = 1; k <= p.n_modes_recorded; ++k)
        p.names.push_back("z_mode_" + std::to_string(k));
    return p;
}

}  // namespace

int RunRecord::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> RunRecord::series(const std::string& name) const {
    const int c = column(name);
    if (c < 0) throw std::invalid_argument("RunRecord: no column " + name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r[static_cast<std::size_t>(c)]);
    return v;
}

RunRecord advance(const ModelSpec& model, const std::optional<ControlSetup>& ctrl,
                  const ModelState& state0, const IntegratorSpec& spec) {
    model.validate();
    if (state0.u.basis != model.basis) throw std::domain_error("advance: state basis mismatch");
    if (model.second_order() && !state0.ut)
        throw std::domain_error("advance: second-order model needs initial du/dt");
    if (spec.dt <= 0.0 || spec.t_end <= 0.0) throw std::domain_error("advance: dt, t_end must be > 0");

    RunRecord rec;
    rec.meta.scheme = spec.scheme == Scheme::IMEX_CNAB2 ? "imex_cnab2"
                      : spec.scheme == Scheme::IMEX_Euler ? "imex_euler"
                                                          : "rk4_reference";
    rec.meta.dt_requested = spec.dt;
    rec.meta.t_end = spec.t_end;
    rec.meta.record_every = spec.record_every;

    double dt = spec.dt;
    if (ctrl) {
        ctrl->spec.validate(model.basis);
        if (ctrl->spec.variant == ControllerVariant::TrackStatePlusVelocity && !model.second_order())
            throw std::domain_error("advance: velocity tracking needs a second-order model");
        if (!ctrl->has_trajectory() && !ctrl->fixed_target)
            throw std::domain_error("advance: controller needs a target");
        if (ctrl->fixed_target && ctrl->fixed_target->basis != model.basis)
            throw std::domain_error("advance: target basis mismatch");
        if (ctrl->has_trajectory()) {
            if (ctrl->trajectory0->u.basis != model.basis)
                throw std::domain_error("advance: trajectory basis mismatch");
            if (model.second_order() && !ctrl->trajectory0->ut)
                throw std::domain_error("advance: trajectory needs initial du/dt");
        }
        // the controller is explicit; its spectral radius mu caps dt
        if (ctrl->spec.mu > 0.0 && dt > 1.0 / ctrl->spec.mu) {
            dt = 1.0 / ctrl->spec.mu;
            rec.meta.warnings.push_back("dt reduced to 1/mu for explicit controller stability");
        }
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(spec.t_end / dt - 1e-9)));
    dt = spec.t_end / steps;
    rec.meta.dt_used = dt;
    rec.meta.steps = steps;

    // stacked layout: u system, then the co-advanced reference system
    Layout lo_u{&model, 0, model.basis.size(), model.second_order()};
    const bool coupled = ctrl && ctrl->has_trajectory();
    Layout lo_v{&model, lo_u.dim(), model.basis.size(), model.second_order()};
    const int dim = lo_u.dim() + (coupled ? lo_v.dim() : 0);

    std::vector<Block> blocks;
    std::vector<double> mass;
    append_system(model, 0, blocks, mass);
    if (coupled) append_system(model, lo_v.offset, blocks, mass);

    std::vector<double> y(static_cast<std::size_t>(dim), 0.0);
    auto load = [&](const ModelState& s, const Layout& lo) {
        for (int k = 0; k < lo.ncoef; ++k)
            y[static_cast<std::size_t>(lo.offset + k)] = s.u.coeffs[static_cast<std::size_t>(k)];
        if (lo.second)
            for (int k = 0; k < lo.ncoef; ++k)
                y[static_cast<std::size_t>(lo.offset + lo.ncoef + k)] =
                    s.ut->coeffs[static_cast<std::size_t>(k)];
    };
    load(state0, lo_u);
    if (coupled) load(*ctrl->trajectory0, lo_v);

    const SpectralField zero(model.basis);
    auto eval_n = [&](double t, const std::vector<double>& yy, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        const SpectralField u = extract(yy, lo_u, false, t);
        SpectralField ut, v, vt;
        const bool second = model.second_order();
        if (second) ut = extract(yy, lo_u, true, t);
        if (coupled) {
            v = extract(yy, lo_v, false, t);
            if (second) vt = extract(yy, lo_v, true, t);
        } else if (ctrl && ctrl->fixed_target) {
            v = *ctrl->fixed_target;
            if (second) vt = zero;
        }
        SpectralField force(model.basis);
        const SpectralField* fptr = nullptr;
        if (ctrl) {
            force = feedback(ctrl->spec, u, second ? &ut : nullptr, v, second ? &vt : nullptr);
            fptr = &force;
        }
        eval_explicit_system(model, lo_u, u, second ? &ut : nullptr, fptr, out);
        if (coupled) eval_explicit_system(model, lo_v, v, second ? &vt : nullptr, nullptr, out);
    };

    const ColumnPlan plan = make_columns(model, ctrl);
    rec.columns = plan.names;
    auto record_row = [&](double t) {
        const SpectralField u = extract(y, lo_u, false, t);
        SpectralField ut;
        const bool second = model.second_order();
        ModelState st{u, std::nullopt};
        if (second) {
            ut = extract(y, lo_u, true, t);
            st.ut = ut;
        }
        SpectralField v(model.basis), vt(model.basis);
        if (coupled) {
            v = extract(y, lo_v, false, t);
            if (second) vt = extract(y, lo_v, true, t);
        } else if (ctrl && ctrl->fixed_target) {
            v = *ctrl->fixed_target;
        }
        const SpectralField z = u - v;
        std::vector<double> row;
        row.reserve(plan.names.size());
        row.push_back(t);
        row.push_back(u.norm_l2());
        row.push_back(u.norm_h1());
        row.push_back(energy(model, st).total);
        row.push_back(z.norm_l2());
        row.push_back(z.norm_h1());
        if (second) {
            const SpectralField zt = ut - vt;
            row.push_back(zt.norm_l2());
            const double zt2 = zt.norm_l2() * zt.norm_l2();
            const double zh2 = z.norm_h1() * z.norm_h1();
            row.push_back(zt2 + zh2);
            EnergyOpts eo;
            if (ctrl) {
                eo.mu = ctrl->spec.mu;
                eo.n = ctrl->spec.n;
            }
            const SpectralField* phi = (ctrl && ctrl->fixed_target) ? &*ctrl->fixed_target : nullptr;
            eo.phi = phi;
            ModelState zs{z, zt};
            row.push_back(energy(model, zs, eo).total);
        }
        if (model.kind == ModelKind::NSV2D)
            row.push_back(model.h.size() != 0 ? inner(model.h, u) : 0.0);
        if (model.kind == ModelKind::KdVB) row.push_back(0.0);  // zero mean is structural
        for (int k = 1; k <= plan.n_modes_recorded; ++k)
            row.push_back(std::abs(z.coeffs[static_cast<std::size_t>(k - 1)]));
        rec.rows.push_back(std::move(row));
    };

    // steppers
    ShiftedSolve cn_solve, euler_solve;
    cn_solve.build(blocks, mass, 0.5 * dt);
    euler_solve.build(blocks, mass, dt);

    std::vector<double> n_prev(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> n_curr(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> ly(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> work(static_cast<std::size_t>(dim), 0.0);

    auto finite = [&]() {
        for (double c : y)
            if (!std::isfinite(c)) return false;
        return true;
    };

    record_row(0.0);
    rec.last_finite_state = y;

    auto rk_f = [&](double t, const std::vector<double>& yy, std::vector<double>& out) {
        apply_blocks(blocks, yy, out);
        eval_n(t, yy, work);
        for (int i = 0; i < dim; ++i)
            out[static_cast<std::size_t>(i)] =
                (out[static_cast<std::size_t>(i)] + work[static_cast<std::size_t>(i)]) /
                mass[static_cast<std::size_t>(i)];
    };

    std::vector<double> k1, k2, k3, k4, ytmp;
    if (spec.scheme == Scheme::RK4Reference) {
        k1 = k2 = k3 = k4 = ytmp = y;
    }

    bool have_prev = false;
    for (int step = 0; step < steps; ++step) {
        const double t = step * dt;
        if (spec.scheme == Scheme::RK4Reference) {
            rk_f(t, y, k1);
            for (int i = 0; i < dim; ++i) ytmp[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] + 0.5 * dt * k1[static_cast<std::size_t>(i)];
            rk_f(t + 0.5 * dt, ytmp, k2);
            for (int i = 0; i < dim; ++i) ytmp[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] + 0.5 * dt * k2[static_cast<std::size_t>(i)];
            rk_f(t + 0.5 * dt, ytmp, k3);
            for (int i = 0; i < dim; ++i) ytmp[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] + dt * k3[static_cast<std::size_t>(i)];
            rk_f(t + dt, ytmp, k4);
            for (int i = 0; i < dim; ++i)
                y[static_cast<std::size_t>(i)] +=
                    dt / 6.0 *
                    (k1[static_cast<std::size_t>(i)] + 2.0 * k2[static_cast<std::size_t>(i)] +
                     2.0 * k3[static_cast<std::size_t>(i)] + k4[static_cast<std::size_t>(i)]);
        } else if (spec.scheme == Scheme::IMEX_Euler) {
            eval_n(t, y, n_curr);
            for (int i = 0; i < dim; ++i)
                work[static_cast<std::size_t>(i)] =
                    mass[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)] +
                    dt * n_curr[static_cast<std::size_t>(i)];
            y = work;
            euler_solve.solve(y);
        } else if (!have_prev) {
            // bootstrap substep: trapezoid on the stiff part (keeps the
            // skew-adjoint blocks isometric), forward Euler on the rest
            eval_n(t, y, n_curr);
            apply_blocks(blocks, y, ly);
            for (int i = 0; i < dim; ++i)
                work[static_cast<std::size_t>(i)] =
                    mass[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)] +
                    0.5 * dt * ly[static_cast<std::size_t>(i)] +
                    dt * n_curr[static_cast<std::size_t>(i)];
            y = work;
            cn_solve.solve(y);
            n_prev = n_curr;
            have_prev = true;
        } else {
            eval_n(t, y, n_curr);
            apply_blocks(blocks, y, ly);
            for (int i = 0; i < dim; ++i)
                work[static_cast<std::size_t>(i)] =
                    mass[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)] +
                    0.5 * dt * ly[static_cast<std::size_t>(i)] +
                    dt * (1.5 * n_curr[static_cast<std::size_t>(i)] -
                          0.5 * n_prev[static_cast<std::size_t>(i)]);
            y = work;
            cn_solve.solve(y);
            n_prev = n_curr;
        }
        if (!finite()) {
            rec.aborted = true;
            rec.abort_step = step + 1;
            break;
        }
        rec.last_finite_state = y;
        if ((step + 1) % spec.record_every == 0 || step + 1 == steps) record_row((step + 1) * dt);
    }
    rec.final_state = rec.aborted ? rec.last_finite_state : y;
    return rec;
}

OrderCheck richardson_order_check(const ModelSpec& model, const std::optional<ControlSetup>& ctrl,
                                  const ModelState& state0, const IntegratorSpec& spec,
                                  const std::vector<double>& dt_list) {
    if (dt_list.size() < 3) throw std::invalid_argument("richardson_order_check: need >= 3 dt values");
    std::vector<std::vector<double>> finals;
    for (double dt : dt_list) {
        IntegratorSpec s = spec;
        s.dt = dt;
        s.record_every = 1 << 28;
        const RunRecord r = advance(model, ctrl, state0, s);
        if (r.aborted) throw std::runtime_error("richardson_order_check: run aborted");
        finals.push_back(r.final_state);
    }
    OrderCheck oc;
    for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < finals[i].size(); ++k) {
            const double d = finals[i][k] - finals[i + 1][k];
            s += d * d;
        }
        oc.diffs.push_back(std::sqrt(s));
    }
    bool degenerate = true;
    for (double d : oc.diffs) degenerate = degenerate && d < 1e-14;
    if (degenerate) {
        oc.status = OrderCheck::Status::Degenerate;
        return oc;
    }
    double sum = 0.0;
    int cnt = 0;
    for (std::size_t i = 0; i + 1 < oc.diffs.size(); ++i) {
        if (!(oc.diffs[i] > oc.diffs[i + 1])) {
            oc.status = OrderCheck::Status::Failure;
            return oc;
        }
        const double ratio = dt_list[i] / dt_list[i + 1];
        sum += std::log(oc.diffs[i] / oc.diffs[i + 1]) / std::log(ratio);
        ++cnt;
    }
    oc.observed_order = sum / cnt;
    return oc;
}

}  // namespace fmstab
