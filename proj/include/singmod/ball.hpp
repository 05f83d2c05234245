#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <mpfr.h>

#include "singmod/arith.hpp"

namespace singmod::ball {

/// Thrown when a certified comparison cannot be decided at the current radius.
class undecidable_error : public std::runtime_error {
public:
    explicit undecidable_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thin RAII wrapper over mpfr_t.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Mpfr(const Mpfr& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(const Mpfr& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

/// Midpoint-radius enclosure of a real number. The true value always lies in
/// [mid - rad, mid + rad]; every operation preserves that containment.
class BallReal {
public:
    explicit BallReal(mpfr_prec_t prec = 128);
    static BallReal exact_int(const Int& n, mpfr_prec_t prec);
    static BallReal exact_i64(std::int64_t n, mpfr_prec_t prec);
    static BallReal from_rational(const Rat& q, mpfr_prec_t prec);
    static BallReal pi(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    mpfr_srcptr mid() const { return mid_.get(); }
    mpfr_srcptr rad() const { return rad_.get(); }
    bool is_exact() const { return mpfr_zero_p(rad_.get()); }

    BallReal add(const BallReal& o) const;
    BallReal sub(const BallReal& o) const;
    BallReal mul(const BallReal& o) const;
    BallReal div(const BallReal& o) const;
    BallReal neg() const;
    BallReal abs() const;
    BallReal sqrt() const;
    BallReal exp() const;
    BallReal log() const;
    BallReal pow_ui(unsigned long e) const;
    BallReal mul_i64(std::int64_t k) const;
    BallReal mul_2exp(long e) const;

    /// Upper/lower bounds of the enclosure, rounded outward.
    Mpfr upper() const;
    Mpfr lower() const;

    /// Certified strict comparisons; throws undecidable_error on overlap.
    bool less_than(const BallReal& o) const;
    bool greater_than(const BallReal& o) const;
    /// Non-throwing: true only if certainly <.
    bool certainly_less(const BallReal& o) const;
    bool certainly_positive() const;
    bool certainly_negative() const;
    bool contains_zero() const;

    /// Certified rounding to the unique integer at distance < 1/2, if any.
    bool certified_integer(Int& out) const;

    std::string to_string(int digits = 20) const;
    double mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }

    // Internal constructor pieces (used by BallComplex).
    Mpfr mid_;
    Mpfr rad_;
    mpfr_prec_t prec_;
};

/// Disk enclosure of a complex number: center (re, im), radius rad.
class BallComplex {
public:
    explicit BallComplex(mpfr_prec_t prec = 128);
    BallComplex(const BallReal& re, const BallReal& im);
    static BallComplex exact_i64(std::int64_t re, std::int64_t im, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    mpfr_srcptr re() const { return re_.get(); }
    mpfr_srcptr im() const { return im_.get(); }
    mpfr_srcptr rad() const { return rad_.get(); }

    BallComplex add(const BallComplex& o) const;
    BallComplex sub(const BallComplex& o) const;
    BallComplex mul(const BallComplex& o) const;
    BallComplex recip() const;
    BallComplex div(const BallComplex& o) const;
    BallComplex neg() const;
    BallComplex mul_i64(std::int64_t k) const;
    BallComplex mul_real(const BallReal& r) const;
    BallComplex pow_ui(unsigned long e) const;
    /// e^z.
    BallComplex exp() const;
    /// Modulus |z| as a real ball.
    BallReal abs() const;
    /// log |z|; requires the disk to avoid 0.
    BallReal log_abs() const;
    /// Grow the radius by a nonnegative real upper bound (tail terms).
    BallComplex widened(const Mpfr& extra) const;

    BallReal real_part() const;
    BallReal imag_part() const;

    std::string to_string(int digits = 20) const;

    Mpfr re_;
    Mpfr im_;
    Mpfr rad_;
    mpfr_prec_t prec_;
};

/// Radius helper: nonnegative 64-bit upper-rounded scratch value.
constexpr mpfr_prec_t kRadPrec = 64;

}  // namespace singmod::ball
