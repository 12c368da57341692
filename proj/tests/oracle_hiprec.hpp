#pragma once

// 256-bit MPFR scalar (about 77 decimal digits) used by the acceptance
// suite to re-derive every threshold constant independently of the library.

#include <mpfr.h>

#include <string>

namespace hiprec {

class R {
public:
    R() { mpfr_init2(v_, 256); mpfr_set_zero(v_, 1); }
    R(double d) : R() { mpfr_set_d(v_, d, MPFR_RNDN); }
    R(int i) : R() { mpfr_set_si(v_, i, MPFR_RNDN); }
    R(const R& o) : R() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    R(R&& o) noexcept : R() { mpfr_swap(v_, o.v_); }
    R& operator=(R o) {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~R() { mpfr_clear(v_); }

    double d() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend R operator+(const R& a, const R& b) { R r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend R operator-(const R& a, const R& b) { R r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend R operator-(const R& a) { R r; mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }
    friend R operator*(const R& a, const R& b) { R r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend R operator/(const R& a, const R& b) { R r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend bool operator<(const R& a, const R& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const R& a, const R& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const R& a, const R& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const R& a, const R& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    friend R sqrt(const R& a) { R r; mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r; }
    friend R pow(const R& a, const R& b) { R r; mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend R abs(const R& a) { R r; mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
    friend R min(const R& a, const R& b) { R r; mpfr_min(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    static R pi() { R r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

private:
    mpfr_t v_;
};

/// |got - want| / max(|want|, tiny) evaluated in double precision.
inline double rel_err(double got, const R& want) {
    const double w = want.d();
    const double denom = std::abs(w) > 1e-300 ? std::abs(w) : 1.0;
    return std::abs(got - w) / denom;
}

}  // namespace hiprec
