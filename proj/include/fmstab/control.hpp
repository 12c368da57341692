#pragma once

#include <optional>

#include "fmstab/models.hpp"

namespace fmstab {

enum class ControllerVariant { TrackState, TrackStatePlusVelocity, SteadyState };

struct ControllerSpec {
    ControllerVariant variant = ControllerVariant::TrackState;
    double mu = 0.0;  ///< feedback gain, >= 0
    int n = 1;        ///< number of observed/actuated low modes

    void validate(const Basis& basis) const;
};

/// The feedback force -mu P_N(u - v), or -mu P_N((u-v) + (ut-vt)) for the
/// velocity variant. Linear in the error; identically zero beyond mode N.
SpectralField feedback(const ControllerSpec& ctrl, const SpectralField& u,
                       const SpectralField* ut, const SpectralField& v,
                       const SpectralField* vt);

struct SteadyStateResult {
    SpectralField phi;
    double residual = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Damped Newton solve of the Galerkin stationary problem
/// nu (-Laplace) phi + P_M f(phi) = P_M h from the supplied initial guess.
/// Converged means residual < tol (default 1e-10).
SteadyStateResult steady_state_solve(const ModelSpec& model, const SpectralField& guess,
                                     double tol = 1e-10, int max_iter = 60);

}  // namespace fmstab
