#include "fmstab/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fmstab {

namespace {

// Half-plane representatives with |k| <= cutoff (disk truncation), sorted by
// eigenvalue. The disk keeps the stored-mode order equal to the true sorted
// spectrum of -Laplace, so gap scans and the controller agree on lambda_{N+1}.
std::vector<WaveVec2> half_plane_sorted(int cutoff) {
    std::vector<WaveVec2> ks;
    ks.reserve(static_cast<std::size_t>(2 * cutoff * (cutoff + 1)));
    for (int k1 = -cutoff; k1 <= cutoff; ++k1) {
        for (int k2 = -cutoff; k2 <= cutoff; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            if (k1 * k1 + k2 * k2 > cutoff * cutoff) continue;
            if (k1 > 0 || (k1 == 0 && k2 > 0)) ks.push_back({k1, k2});
        }
    }
    std::sort(ks.begin(), ks.end(), [](const WaveVec2& a, const WaveVec2& b) {
        if (a.norm2() != b.norm2()) return a.norm2() < b.norm2();
        if (a.k1 != b.k1) return a.k1 < b.k1;
        return a.k2 < b.k2;
    });
    return ks;
}

}  // namespace

Basis::Basis(BasisKind kind, double length, int modes)
    : kind_(kind), length_(length), modes_(modes) {
    if (length <= 0.0) throw std::invalid_argument("Basis: length must be positive");
    if (modes < 1) throw std::invalid_argument("Basis: modes must be positive");
    switch (kind_) {
        case BasisKind::SineDirichlet1D: size_ = modes_; break;
        case BasisKind::PeriodicZeroMean1D: size_ = 2 * modes_; break;
        case BasisKind::PeriodicZeroMean2DVector: {
            auto ks = std::make_shared<std::vector<WaveVec2>>(half_plane_sorted(modes_));
            size_ = 2 * static_cast<int>(ks->size());
            wavevecs_ = std::move(ks);
            break;
        }
    }
}

double Basis::eigenvalue(int k) const {
    if (k < 1) throw std::domain_error("Basis::eigenvalue: k out of range");
    switch (kind_) {
        case BasisKind::SineDirichlet1D: {
            const double w = static_cast<double>(k) * M_PI / length_;
            return w * w;
        }
        case BasisKind::PeriodicZeroMean1D: {
            const int j = (k + 1) / 2;
            const double w = 2.0 * M_PI * static_cast<double>(j) / length_;
            return w * w;
        }
        case BasisKind::PeriodicZeroMean2DVector: {
            const int pair = (k + 1) / 2;  // 1-indexed wavevector
            double n2;
            if (pair <= static_cast<int>(wavevecs_->size())) {
                n2 = static_cast<double>((*wavevecs_)[static_cast<std::size_t>(pair - 1)].norm2());
            } else {
                n2 = eigenvalue_2d_unbounded(pair);
            }
            const double f = 2.0 * M_PI / length_;
            return f * f * n2;
        }
    }
    throw std::logic_error("Basis::eigenvalue: bad kind");
}

double Basis::eigenvalue_2d_unbounded(int pair_index) const {
    // Rebuild a larger sorted shell table; a square of half-width C covers
    // the first ~pi*C^2 pairs, so sqrt(pair) + 2 is always enough.
    const int c = std::max(modes_, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(pair_index)))) + 2);
    const auto ks = half_plane_sorted(c);
    if (pair_index > static_cast<int>(ks.size()))
        throw std::domain_error("Basis::eigenvalue: k out of range");
    const auto& kv = ks[static_cast<std::size_t>(pair_index - 1)];
    if (std::max(std::abs(kv.k1), std::abs(kv.k2)) >= c)
        throw std::logic_error("Basis::eigenvalue: shell table too small");
    return static_cast<double>(kv.norm2());
}

const WaveVec2& Basis::wavevec(int k) const {
    if (kind_ != BasisKind::PeriodicZeroMean2DVector)
        throw std::domain_error("Basis::wavevec: 1D basis has no wavevectors");
    const int pair = (k + 1) / 2;
    if (pair < 1 || pair > static_cast<int>(wavevecs_->size()))
        throw std::domain_error("Basis::wavevec: k out of range");
    return (*wavevecs_)[static_cast<std::size_t>(pair - 1)];
}

int Basis::num_wavevecs() const {
    return wavevecs_ ? static_cast<int>(wavevecs_->size()) : 0;
}

const char* Basis::kind_name(BasisKind k) {
    switch (k) {
        case BasisKind::SineDirichlet1D: return "sine_dirichlet_1d";
        case BasisKind::PeriodicZeroMean1D: return "periodic_zero_mean_1d";
        case BasisKind::PeriodicZeroMean2DVector: return "periodic_zero_mean_2d_vector";
    }
    return "?";
}

}  // namespace fmstab
