#include <doctest.h>

#include <random>

#include "singmod/ball.hpp"

using namespace singmod;
using namespace singmod::ball;

namespace {

// Plain high-precision reference value (no radius tracking).
struct RefC {
    Mpfr re, im;
    explicit RefC(mpfr_prec_t p) : re(p), im(p) {}
};

double dist_to(const BallComplex& b, const RefC& r) {
    Mpfr d1(64), d2(64);
    mpfr_sub(d1.get(), b.re(), r.re.get(), MPFR_RNDA);
    mpfr_sub(d2.get(), b.im(), r.im.get(), MPFR_RNDA);
    mpfr_hypot(d1.get(), d1.get(), d2.get(), MPFR_RNDU);
    return mpfr_get_d(d1.get(), MPFR_RNDU);
}

}  // namespace

TEST_CASE("exact integer arithmetic stays exact") {
    auto a = BallReal::exact_i64(12345, 128);
    auto b = BallReal::exact_i64(-678, 128);
    auto c = a.mul(b).add(a).sub(b);
    CHECK(c.is_exact());
    Int out;
    REQUIRE(c.certified_integer(out));
    CHECK(out == Int(12345) * -678 + 12345 + 678);
}

TEST_CASE("division radius covers the true quotient") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t num = static_cast<std::int64_t>(rng() % 1000000) + 1;
        std::int64_t den = static_cast<std::int64_t>(rng() % 1000000) + 1;
        auto q = BallReal::exact_i64(num, 96).div(BallReal::exact_i64(den, 96));
        Mpfr ref(1024);
        mpfr_set_si(ref.get(), num, MPFR_RNDN);
        mpfr_div_si(ref.get(), ref.get(), den, MPFR_RNDN);
        Mpfr diff(64);
        mpfr_sub(diff.get(), q.mid(), ref.get(), MPFR_RNDA);
        mpfr_abs(diff.get(), diff.get(), MPFR_RNDU);
        CHECK(mpfr_cmp(diff.get(), q.rad()) <= 0);
    }
}

TEST_CASE("monotone function enclosures contain reference values") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
        std::int64_t scaled = 10 + static_cast<std::int64_t>(rng() % 10000000);
        auto bx = BallReal::exact_i64(scaled, 128).div(BallReal::exact_i64(1000, 128));
        for (int which = 0; which < 3; ++which) {
            BallReal y = which == 0 ? bx.sqrt() : which == 1 ? bx.log() : bx.mul_2exp(-20).exp();
            Mpfr ref(1024);
            mpfr_set_si(ref.get(), scaled, MPFR_RNDN);
            mpfr_div_si(ref.get(), ref.get(), 1000, MPFR_RNDN);
            if (which == 0) mpfr_sqrt(ref.get(), ref.get(), MPFR_RNDN);
            if (which == 1) mpfr_log(ref.get(), ref.get(), MPFR_RNDN);
            if (which == 2) {
                mpfr_mul_2si(ref.get(), ref.get(), -20, MPFR_RNDN);
                mpfr_exp(ref.get(), ref.get(), MPFR_RNDN);
            }
            Mpfr diff(64);
            mpfr_sub(diff.get(), y.mid(), ref.get(), MPFR_RNDA);
            mpfr_abs(diff.get(), diff.get(), MPFR_RNDU);
            CHECK(mpfr_cmp(diff.get(), y.rad()) <= 0);
        }
    }
}

TEST_CASE("complex op chains enclose a high-precision reference") {
    std::mt19937_64 rng(3);
    mpfr_prec_t p = 128, pref = 1024;
    for (int trial = 0; trial < 200; ++trial) {
        auto zr = static_cast<std::int64_t>(rng() % 2001) - 1000;
        auto zi = static_cast<std::int64_t>(rng() % 2001) - 1000;
        if (zr == 0 && zi == 0) continue;
        BallComplex z = BallComplex::exact_i64(zr, zi, p).mul_real(
            BallReal::exact_i64(1, p).div(BallReal::exact_i64(997, p)));
        RefC ref(pref);
        mpfr_set_si(ref.re.get(), zr, MPFR_RNDN);
        mpfr_div_si(ref.re.get(), ref.re.get(), 997, MPFR_RNDN);
        mpfr_set_si(ref.im.get(), zi, MPFR_RNDN);
        mpfr_div_si(ref.im.get(), ref.im.get(), 997, MPFR_RNDN);

        BallComplex z2 = z.mul(z);
        RefC r2(pref);
        {
            Mpfr t1(pref), t2(pref);
            mpfr_mul(t1.get(), ref.re.get(), ref.re.get(), MPFR_RNDN);
            mpfr_mul(t2.get(), ref.im.get(), ref.im.get(), MPFR_RNDN);
            mpfr_sub(r2.re.get(), t1.get(), t2.get(), MPFR_RNDN);
            mpfr_mul(t1.get(), ref.re.get(), ref.im.get(), MPFR_RNDN);
            mpfr_mul_2si(r2.im.get(), t1.get(), 1, MPFR_RNDN);
        }
        CHECK(dist_to(z2, r2) <= mpfr_get_d(z2.rad(), MPFR_RNDU) * (1 + 1e-12) + 1e-300);

        BallComplex small = z2.mul_real(BallReal::exact_i64(1, p).div(BallReal::exact_i64(1000, p)));
        BallComplex w = small.exp();
        RefC rs(pref);
        mpfr_div_si(rs.re.get(), r2.re.get(), 1000, MPFR_RNDN);
        mpfr_div_si(rs.im.get(), r2.im.get(), 1000, MPFR_RNDN);
        RefC rw(pref);
        {
            Mpfr ex(pref), s(pref), c(pref);
            mpfr_exp(ex.get(), rs.re.get(), MPFR_RNDN);
            mpfr_sin_cos(s.get(), c.get(), rs.im.get(), MPFR_RNDN);
            mpfr_mul(rw.re.get(), ex.get(), c.get(), MPFR_RNDN);
            mpfr_mul(rw.im.get(), ex.get(), s.get(), MPFR_RNDN);
        }
        CHECK(dist_to(w, rw) <= mpfr_get_d(w.rad(), MPFR_RNDU) * (1 + 1e-12) + 1e-300);

        BallComplex q = w.div(z.add(BallComplex::exact_i64(3, 0, p)));
        RefC rq(pref);
        {
            Mpfr dr(pref), di(pref), n2(pref), t(pref);
            mpfr_add_si(dr.get(), ref.re.get(), 3, MPFR_RNDN);
            mpfr_set(di.get(), ref.im.get(), MPFR_RNDN);
            mpfr_mul(n2.get(), dr.get(), dr.get(), MPFR_RNDN);
            mpfr_mul(t.get(), di.get(), di.get(), MPFR_RNDN);
            mpfr_add(n2.get(), n2.get(), t.get(), MPFR_RNDN);
            Mpfr ac(pref), bd(pref), bc(pref), ad(pref);
            mpfr_mul(ac.get(), rw.re.get(), dr.get(), MPFR_RNDN);
            mpfr_mul(bd.get(), rw.im.get(), di.get(), MPFR_RNDN);
            mpfr_mul(bc.get(), rw.im.get(), dr.get(), MPFR_RNDN);
            mpfr_mul(ad.get(), rw.re.get(), di.get(), MPFR_RNDN);
            mpfr_add(rq.re.get(), ac.get(), bd.get(), MPFR_RNDN);
            mpfr_div(rq.re.get(), rq.re.get(), n2.get(), MPFR_RNDN);
            mpfr_sub(rq.im.get(), bc.get(), ad.get(), MPFR_RNDN);
            mpfr_div(rq.im.get(), rq.im.get(), n2.get(), MPFR_RNDN);
        }
        CHECK(dist_to(q, rq) <= mpfr_get_d(q.rad(), MPFR_RNDU) * (1 + 1e-12) + 1e-300);
    }
}

TEST_CASE("certified comparisons") {
    auto one = BallReal::exact_i64(1, 64);
    auto two = BallReal::exact_i64(2, 64);
    CHECK(one.less_than(two));
    CHECK(two.greater_than(one));
    CHECK_FALSE(two.less_than(one));
    Int t10;
    mpz_ui_pow_ui(t10.get_mpz_t(), 10, 40);
    // sqrt(2) at two precisions: same value, overlapping balls -> undecidable
    auto s1 = BallReal::exact_i64(2, 96).sqrt();
    auto s2 = BallReal::exact_i64(2, 200).sqrt();
    CHECK_THROWS_AS((void)s1.less_than(s2), undecidable_error);
}

TEST_CASE("certified integer rounding requires radius < 1/2") {
    auto v = BallReal::exact_i64(7, 96);
    Int out;
    CHECK(v.certified_integer(out));
    CHECK(out == 7);
    auto near_half = BallReal::exact_i64(74999, 96).div(BallReal::exact_i64(10000, 96));
    CHECK(near_half.certified_integer(out));
    CHECK(out == 7);
    auto half = BallReal::exact_i64(15, 96).div(BallReal::exact_i64(2, 96));
    CHECK_FALSE(half.certified_integer(out));
}

TEST_CASE("division by a zero-containing ball fails loudly") {
    auto z = BallReal::exact_i64(0, 64);
    CHECK_THROWS_AS(BallReal::exact_i64(1, 64).div(z), domain_error);
    CHECK_THROWS_AS(BallComplex::exact_i64(0, 0, 64).recip(), domain_error);
}

TEST_CASE("tiny magnitudes survive without underflow") {
    // e^{-pi sqrt(1e10)/4} has exponent around -1e5 in base 2.
    auto big = BallReal::exact_i64(10000000000LL, 128).sqrt();
    auto t = big.mul(BallReal::pi(128)).div(BallReal::exact_i64(4, 128)).neg().exp();
    CHECK(t.certainly_positive());
    Mpfr u(64);
    mpfr_add(u.get(), t.mid(), t.rad(), MPFR_RNDU);
    CHECK(mpfr_get_exp(u.get()) < -100000);
}
