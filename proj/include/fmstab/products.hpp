#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fmstab/field.hpp"

namespace fmstab {

enum class ProductForm { UV, UDxV, Advection2D };

/// Galerkin projection of the pointwise product (or advection) onto the
/// first M modes of the common basis. Bilinear. 1D products are computed by
/// exact trig-series convolution (alias-free by construction); the 2D
/// advection uses 3/2-rule zero-padded FFT collocation and returns the
/// Leray-projected (u . grad) v.
SpectralField nonlinear_product(const SpectralField& u, const SpectralField& v, ProductForm form);

/// Finite trigonometric series on (0, l): sum c_m cos(m pi x / l) for
/// Dirichlet algebra (half-wave frequencies) or m 2pi x / l for periodic
/// algebra (full waves). Plain, unnormalized coefficients.
struct TrigSeries1D {
    double length = 1.0;
    double freq_unit = M_PI;  // pi/l per unit m (Dirichlet) or 2pi/l (periodic)
    std::vector<double> cos_c;  // index 0..D
    std::vector<double> sin_c;  // index 0..D, [0] unused

    int degree() const { return static_cast<int>(cos_c.size()) - 1; }
};

TrigSeries1D to_series(const SpectralField& u);
TrigSeries1D series_derivative(const TrigSeries1D& a);
TrigSeries1D series_multiply(const TrigSeries1D& a, const TrigSeries1D& b);
TrigSeries1D series_axpy(double alpha, const TrigSeries1D& a, double beta, const TrigSeries1D& b);
TrigSeries1D series_constant(const SpectralField& like, double value);

/// Horner evaluation of a polynomial in the series (coefficients low-first).
TrigSeries1D series_polynomial(const TrigSeries1D& u, const std::vector<double>& poly);

/// L2 Galerkin projection of the series back onto the field basis. For the
/// sine basis the cosine part projects through the analytic
/// integral of cos(m pi y) sin(k pi y); for periodic bases the mean and the
/// tail are simply dropped.
SpectralField project_series(const TrigSeries1D& a, const Basis& b);

/// Composite Gauss-Legendre integral of f over [0, l].
double integrate_1d(const std::function<double(double)>& f, double l, int panels);

/// max of |f| over [lo, hi] by dense sampling plus local ternary refinement;
/// exact (to roundoff) for monotone pieces and monomials.
double max_abs_on(const std::function<double(double)>& f, double lo, double hi, int samples);

}  // namespace fmstab
