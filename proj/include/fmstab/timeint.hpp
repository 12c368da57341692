#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fmstab/control.hpp"
#include "fmstab/models.hpp"

namespace fmstab {

enum class Scheme { IMEX_CNAB2, IMEX_Euler, RK4Reference };

struct IntegratorSpec {
    Scheme scheme = Scheme::IMEX_CNAB2;
    double dt = 1e-3;
    double t_end = 1.0;
    int record_every = 1;
};

/// Controller wiring for a run: the gain spec plus its target, either a
/// co-advanced reference trajectory (same scheme and dt, one coupled system)
/// or a fixed field (steady state, or zero).
struct ControlSetup {
    ControllerSpec spec;
    std::optional<ModelState> trajectory0;  ///< reference initial state (v-system)
    std::optional<SpectralField> fixed_target;

    bool has_trajectory() const { return trajectory0.has_value(); }
};

struct RunMeta {
    std::string scheme;
    double dt_requested = 0.0;
    double dt_used = 0.0;
    double t_end = 0.0;
    int steps = 0;
    int record_every = 1;
    std::vector<std::string> warnings;
};

/// Time series of every norm the analysis needs, plus the raw final state.
struct RunRecord {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    RunMeta meta;
    bool aborted = false;
    int abort_step = -1;
    std::vector<double> final_state;      ///< stacked coefficients (u [, ut] [, v...])
    std::vector<double> last_finite_state;

    int column(const std::string& name) const;  ///< -1 when missing
    std::vector<double> series(const std::string& name) const;
};

/// Advances the model (and the coupled reference system, when tracking a
/// trajectory) and records the run. Deterministic; aborts on NaN/Inf with
/// the step index and the last finite state preserved.
RunRecord advance(const ModelSpec& model, const std::optional<ControlSetup>& ctrl,
                  const ModelState& state0, const IntegratorSpec& spec);

struct OrderCheck {
    enum class Status { Ok, Degenerate, Failure };
    Status status = Status::Ok;
    double observed_order = 0.0;
    std::vector<double> diffs;
};

/// Convergence order from pairwise endpoint differences over a geometric
/// dt sequence (>= 3 values, decreasing).
OrderCheck richardson_order_check(const ModelSpec& model, const std::optional<ControlSetup>& ctrl,
                                  const ModelState& state0, const IntegratorSpec& spec,
                                  const std::vector<double>& dt_list);

}  // namespace fmstab
