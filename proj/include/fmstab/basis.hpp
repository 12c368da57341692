#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace fmstab {

enum class BasisKind {
    SineDirichlet1D,        ///< w_k = sqrt(2/l) sin(k pi x / l) on (0, l)
    PeriodicZeroMean1D,     ///< cos/sin pairs exp(2 pi i j x / l), j >= 1, zero mean
    PeriodicZeroMean2DVector  ///< divergence-free (Stokes) cos/sin pairs on [0, L]^2
};

/// Integer wavevector of a 2D mode (half-plane representative).
struct WaveVec2 {
    int k1 = 0;
    int k2 = 0;
    int norm2() const { return k1 * k1 + k2 * k2; }
};

/// Eigenbasis of -Laplace on the paper's domains. Immutable; cheap to copy.
///
/// Coefficients are always stored against L2-orthonormal *real* modes, so
/// Parseval is the identity map. Periodic kinds store the (cos, sin) pair of
/// each wavenumber as two consecutive real modes; both carry the same
/// eigenvalue. The constant mode is excluded for periodic kinds (zero mean),
/// and 2D vector modes are divergence-free by construction.
class Basis {
public:
    Basis() = default;
    Basis(BasisKind kind, double length, int modes);

    BasisKind kind() const { return kind_; }
    double length() const { return length_; }
    int modes() const { return modes_; }

    /// Number of real coefficients a field on this basis carries.
    int size() const { return size_; }

    /// k-th eigenvalue of -Laplace (1-indexed over real modes, sorted
    /// nondecreasing). Valid for any k >= 1, also beyond the resolution
    /// cutoff; k <= size() addresses an actual stored coefficient.
    double eigenvalue(int k) const;

    double lambda1() const { return eigenvalue(1); }

    /// 2D only: wavevector of real mode k (two consecutive modes share one).
    const WaveVec2& wavevec(int k) const;
    int num_wavevecs() const;

    bool operator==(const Basis& o) const {
        return kind_ == o.kind_ && length_ == o.length_ && modes_ == o.modes_;
    }
    bool operator!=(const Basis& o) const { return !(*this == o); }

    static const char* kind_name(BasisKind k);

private:
    BasisKind kind_ = BasisKind::SineDirichlet1D;
    double length_ = 1.0;
    int modes_ = 0;
    int size_ = 0;
    // sorted half-plane wavevectors, shared between copies (2D only)
    std::shared_ptr<const std::vector<WaveVec2>> wavevecs_;
    double eigenvalue_2d_unbounded(int pair_index) const;
};

}  // namespace fmstab
