#include "singmod/jfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace singmod::jfun {

using ball::kRadPrec;
using ball::Mpfr;

namespace {

constexpr mpfr_prec_t kPrecCap = 16384;

std::vector<Int> sigma_table(int n, int power) {
    std::vector<Int> s(static_cast<std::size_t>(n) + 1, 0);
    for (int d = 1; d <= n; ++d) {
        Int dp = 1;
        for (int i = 0; i < power; ++i) dp *= d;
        for (int m = d; m <= n; m += d) s[static_cast<std::size_t>(m)] += dp;
    }
    return s;
}

std::vector<Int> series_mul(const std::vector<Int>& a, const std::vector<Int>& b, int n) {
    std::vector<Int> out(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        int jmax = std::min(n - i, static_cast<int>(b.size()) - 1);
        for (int j = 0; j <= jmax; ++j)
            out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    return out;
}

// Coefficients of prod (1 - q^m)^24 up to q^n (the weight-12 Delta without the
// leading q), via Euler's pentagonal series and repeated squaring.
std::vector<Int> eta24(int n) {
    std::vector<Int> eta(static_cast<std::size_t>(n) + 1, 0);
    eta[0] = 1;
    for (int k = 1;; ++k) {
        long g1 = static_cast<long>(k) * (3 * k - 1) / 2;
        long g2 = static_cast<long>(k) * (3 * k + 1) / 2;
        if (g1 > n && g2 > n) break;
        Int sign = (k % 2 == 0) ? 1 : -1;
        if (g1 <= n) eta[static_cast<std::size_t>(g1)] += sign;
        if (g2 <= n) eta[static_cast<std::size_t>(g2)] += sign;
    }
    std::vector<Int> p2 = series_mul(eta, eta, n);
    std::vector<Int> p4 = series_mul(p2, p2, n);
    std::vector<Int> p8 = series_mul(p4, p4, n);
    std::vector<Int> p16 = series_mul(p8, p8, n);
    return series_mul(p16, p8, n);
}

std::vector<Int> eisenstein(int n, int power, long scale) {
    // 1 + scale * sum sigma_power(m) q^m
    auto s = sigma_table(n, power);
    std::vector<Int> e(static_cast<std::size_t>(n) + 1, 0);
    e[0] = 1;
    for (int m = 1; m <= n; ++m) e[static_cast<std::size_t>(m)] = Int(scale) * s[static_cast<std::size_t>(m)];
    return e;
}

Coefficients divide_by_delta(const std::vector<Int>& numerator, int n) {
    // j-type series: numerator / (q prod(1-q^m)^24) = sum_{k>=-1} c_k q^k.
    // With D = eta24 (D[0] = 1): c_{k-1} = numerator[k] - sum_{i=1..k} D[i] c_{k-i-1+...}
    // Writing N(q) = J(q) * q * D(q): N_k = sum_{i>=0} D_i c_{k-1-i}.
    std::vector<Int> D = eta24(n + 1);
    Coefficients out;
    out.c.resize(static_cast<std::size_t>(n) + 2);
    for (int k = 0; k <= n + 1; ++k) {
        Int acc = (k < static_cast<int>(numerator.size())) ? numerator[static_cast<std::size_t>(k)] : Int(0);
        for (int i = 1; i <= k; ++i) acc -= D[static_cast<std::size_t>(i)] * out.c[static_cast<std::size_t>(k - i)];
        out.c[static_cast<std::size_t>(k)] = acc;  // c_{k-1}
    }
    return out;
}

}  // namespace

Coefficients j_coefficients(int n) {
    if (n < 0 || n > 10000) throw domain_error("j_coefficients: order out of range");
    auto e4 = eisenstein(n + 1, 3, 240);
    auto e43 = series_mul(series_mul(e4, e4, n + 1), e4, n + 1);
    return divide_by_delta(e43, n);
}

Coefficients j_coefficients_via_e6(int n) {
    if (n < 0 || n > 10000) throw domain_error("j_coefficients_via_e6: order out of range");
    auto e6 = eisenstein(n + 1, 5, -504);
    auto e62 = series_mul(e6, e6, n + 1);
    Coefficients out = divide_by_delta(e62, n);
    out.c[1] += 1728;  // constant term shift: j = 1728 + E6^2/Delta
    return out;
}

namespace {

std::shared_ptr<const Coefficients> coefficient_cache(int n) {
    static std::mutex mu;
    static std::shared_ptr<const Coefficients> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (!cache || cache->max_index() < n) {
        int target = std::max(n, std::max(64, cache ? 2 * cache->max_index() : 0));
        cache = std::make_shared<const Coefficients>(j_coefficients(target));
    }
    return cache;
}

// Upper bound of sum_{k>=0} (k+1)^3 x^k = (1 + 4x + x^2)/(1-x)^4 for x in [0,1).
Mpfr cubic_tail_factor(mpfr_srcptr x) {
    Mpfr num(kRadPrec), den(kRadPrec), t(kRadPrec);
    mpfr_mul(t.get(), x, x, MPFR_RNDU);
    mpfr_mul_ui(num.get(), x, 4, MPFR_RNDU);
    mpfr_add(num.get(), num.get(), t.get(), MPFR_RNDU);
    mpfr_add_ui(num.get(), num.get(), 1, MPFR_RNDU);
    mpfr_ui_sub(den.get(), 1, x, MPFR_RNDD);
    if (mpfr_sgn(den.get()) <= 0) throw domain_error("tail factor: |q| >= 1");
    mpfr_pow_ui(den.get(), den.get(), 4, MPFR_RNDD);
    mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDU);
    return num;
}

Mpfr ball_abs_upper(const BallComplex& z) {
    Mpfr u(kRadPrec);
    mpfr_hypot(u.get(), z.re(), z.im(), MPFR_RNDU);
    mpfr_add(u.get(), u.get(), z.rad(), MPFR_RNDU);
    return u;
}

}  // namespace

BallComplex j_from_q(const BallComplex& q, mpfr_prec_t p) {
    Mpfr x = ball_abs_upper(q);
    if (mpfr_cmp_d(x.get(), 0.03) >= 0) throw domain_error("j_from_q: |q| too large");

    // Truncation order from the geometric decay: terms shrink by x each step,
    // polynomial growth absorbed by the closed-form tail factors below.
    long bits_per_term = -static_cast<long>(mpfr_get_exp(x.get()));  // >= 5
    int N = static_cast<int>(p / std::max(1L, bits_per_term)) + 8;

    BallComplex e4 = BallComplex::exact_i64(1, 0, p);
    BallComplex qpow = BallComplex::exact_i64(1, 0, p);
    auto sig3 = sigma_table(N, 3);
    for (int m = 1; m <= N; ++m) {
        qpow = qpow.mul(q);
        Int coef = 240 * sig3[static_cast<std::size_t>(m)];
        BallComplex term = qpow.mul_real(BallReal::exact_int(coef, p));
        e4 = e4.add(term);
    }
    // E4 tail: 240 * 1.22 * (N+1)^3 x^(N+1) * S3(x).
    {
        Mpfr tail(kRadPrec), t(kRadPrec);
        mpfr_set_d(tail.get(), 292.8, MPFR_RNDU);  // 240 * 1.22
        mpfr_set_si(t.get(), N + 1, MPFR_RNDU);
        mpfr_pow_ui(t.get(), t.get(), 3, MPFR_RNDU);
        mpfr_mul(tail.get(), tail.get(), t.get(), MPFR_RNDU);
        mpfr_pow_ui(t.get(), x.get(), static_cast<unsigned long>(N + 1), MPFR_RNDU);
        mpfr_mul(tail.get(), tail.get(), t.get(), MPFR_RNDU);
        Mpfr s3 = cubic_tail_factor(x.get());
        mpfr_mul(tail.get(), tail.get(), s3.get(), MPFR_RNDU);
        e4 = e4.widened(tail);
    }

    BallComplex prod = BallComplex::exact_i64(1, 0, p);
    qpow = BallComplex::exact_i64(1, 0, p);
    for (int m = 1; m <= N; ++m) {
        qpow = qpow.mul(q);
        prod = prod.mul(BallComplex::exact_i64(1, 0, p).sub(qpow));
    }
    BallComplex p24 = prod.pow_ui(24);
    // prod_{m>N} (1-q^m)^24 = exp(24 * O1(eps)), eps = x^(N+1)/((1-x)(1-x^(N+1))).
    {
        Mpfr eps(kRadPrec), t(kRadPrec), u(kRadPrec);
        mpfr_pow_ui(eps.get(), x.get(), static_cast<unsigned long>(N + 1), MPFR_RNDU);
        mpfr_ui_sub(t.get(), 1, x.get(), MPFR_RNDD);
        mpfr_ui_sub(u.get(), 1, eps.get(), MPFR_RNDD);
        mpfr_mul(t.get(), t.get(), u.get(), MPFR_RNDD);
        mpfr_div(eps.get(), eps.get(), t.get(), MPFR_RNDU);
        mpfr_mul_ui(eps.get(), eps.get(), 24, MPFR_RNDU);
        // factor ball: center 1, radius e^eps - 1
        mpfr_exp(eps.get(), eps.get(), MPFR_RNDU);
        mpfr_sub_ui(eps.get(), eps.get(), 1, MPFR_RNDU);
        BallComplex factor = BallComplex::exact_i64(1, 0, p).widened(eps);
        p24 = p24.mul(factor);
    }
    BallComplex delta_series = q.mul(p24);
    return e4.pow_ui(3).div(delta_series);
}

BallComplex tau_of_form(const qf::ReducedForm& form, std::int64_t delta, mpfr_prec_t prec) {
    BallReal sqrt_abs = BallReal::exact_i64(-delta, prec).sqrt();
    BallReal two_a = BallReal::exact_i64(2 * form.a, prec);
    BallReal re = BallReal::exact_i64(form.b, prec).div(two_a);
    BallReal im = sqrt_abs.div(two_a);
    return BallComplex(re, im);
}

namespace {

// q = e^{2 pi i tau}
BallComplex q_of_tau(const BallComplex& tau, mpfr_prec_t p) {
    BallReal pi = BallReal::pi(p);
    BallComplex two_pi_i_tau = tau.mul_real(pi).mul_i64(2);
    // multiply by i: (re, im) -> (-im, re)
    BallComplex rotated(p);
    mpfr_neg(rotated.re_.get(), two_pi_i_tau.im_.get(), MPFR_RNDN);
    mpfr_set(rotated.im_.get(), two_pi_i_tau.re_.get(), MPFR_RNDN);
    mpfr_set(rotated.rad_.get(), two_pi_i_tau.rad_.get(), MPFR_RNDU);
    return rotated.exp();
}

// Anchor J(x1) = sum c_k x1^k at x1 = e^{-2 pi * 17/20}; certified upper bound.
double anchor_upper_bound() {
    static std::once_flag flag;
    static double value = 0;
    std::call_once(flag, [] {
        mpfr_prec_t p = 256;
        BallReal v = BallReal::exact_i64(-17, p).div(BallReal::exact_i64(10, p));
        BallReal arg = v.mul(BallReal::pi(p));  // -2 pi * 17/20 = -pi * 17/10
        BallReal x1 = arg.exp();
        BallComplex q1(x1, BallReal::exact_i64(0, p));
        BallComplex j1 = j_from_q(q1, p);
        Mpfr u(kRadPrec);
        mpfr_add(u.get(), j1.re(), j1.rad(), MPFR_RNDU);
        value = mpfr_get_d(u.get(), MPFR_RNDU);
    });
    return value;
}

// x1 = e^{-2 pi * 17/20} as an upper-rounded double; tails compare |q| to it.
double anchor_x1_lower() {
    static const double v = [] {
        mpfr_prec_t p = 128;
        BallReal arg = BallReal::exact_i64(-17, p).div(BallReal::exact_i64(10, p)).mul(BallReal::pi(p));
        BallReal x1 = arg.exp();
        Mpfr l(kRadPrec);
        mpfr_sub(l.get(), x1.mid(), x1.rad(), MPFR_RNDD);
        return mpfr_get_d(l.get(), MPFR_RNDD);
    }();
    return v;
}

BallComplex eval_j_series(const BallComplex& tau, mpfr_prec_t p, mpfr_prec_t target_bits) {
    // Domain: Im tau >= 0.85 (with the ball's radius already inside).
    Mpfr imlo(kRadPrec);
    mpfr_sub(imlo.get(), tau.im(), tau.rad(), MPFR_RNDD);
    if (mpfr_cmp_d(imlo.get(), 0.849) < 0)
        throw domain_error("eval_j: Im(tau) below fundamental-domain height");
    BallComplex q = q_of_tau(tau, p);
    Mpfr x = ball_abs_upper(q);
    double xd = mpfr_get_d(x.get(), MPFR_RNDU);
    double x1 = anchor_x1_lower();
    if (!(xd <= x1)) throw domain_error("eval_j: |q| exceeds the tail anchor");

    // Truncation order: U * (x/x1)^(n+1) <= 2^-(target+16) * (1/x) (j ~ q^-1).
    double U = anchor_upper_bound();
    double per_term = std::log2(x1) - std::log2(xd);  // bits gained per term
    double need = static_cast<double>(target_bits) + 16 + std::log2(std::max(U, 2.0)) + std::log2(1.0 / xd);
    int n = per_term > 0.01 ? static_cast<int>(need / per_term) + 2 : 1 << 20;
    if (n > 500000) throw resource_error("eval_j: truncation order out of reach");
    auto coef_ptr = coefficient_cache(n);
    const Coefficients& coef = *coef_ptr;

    BallComplex acc = q.recip();
    BallComplex qpow = BallComplex::exact_i64(1, 0, p);
    for (int k = 0; k <= n; ++k) {
        if (k > 0) qpow = qpow.mul(q);
        acc = acc.add(qpow.mul_real(BallReal::exact_int(coef.at(k), p)));
    }
    // Positivity tail: sum_{k>n} c_k x^k <= (x/x1)^(n+1) * sum_{k>n} c_k x1^k <= (x/x1)^(n+1) * U.
    Mpfr tail(kRadPrec);
    mpfr_set_d(tail.get(), x1, MPFR_RNDD);
    mpfr_div(tail.get(), x.get(), tail.get(), MPFR_RNDU);
    mpfr_pow_ui(tail.get(), tail.get(), static_cast<unsigned long>(n + 1), MPFR_RNDU);
    mpfr_mul_d(tail.get(), tail.get(), U, MPFR_RNDU);
    return acc.widened(tail);
}

template <typename MakeTau>
BallComplex eval_with_escalation(MakeTau&& make_tau, mpfr_prec_t precision_bits) {
    for (mpfr_prec_t p = precision_bits + 64; p <= kPrecCap; p *= 2) {
        BallComplex j = eval_j_series(make_tau(p), p, precision_bits);
        // radius <= 2^-prec * |j| + 2^-prec
        Mpfr allowance(kRadPrec);
        mpfr_hypot(allowance.get(), j.re(), j.im(), MPFR_RNDD);
        mpfr_add_ui(allowance.get(), allowance.get(), 1, MPFR_RNDD);
        mpfr_mul_2si(allowance.get(), allowance.get(), -static_cast<long>(precision_bits), MPFR_RNDD);
        if (mpfr_cmp(j.rad(), allowance.get()) <= 0) return j;
    }
    throw resource_error("eval_j: precision target unreachable at the 16384-bit cap");
}

}  // namespace

BallComplex eval_j(const BallComplex& tau, mpfr_prec_t precision_bits) {
    return eval_with_escalation([&](mpfr_prec_t) { return tau; }, precision_bits);
}

SingularPoint make_singular_point(const qf::ReducedForm& form, const qf::Discriminant& delta,
                                  mpfr_prec_t precision_bits) {
    SingularPoint sp{form, delta, tau_of_form(form, delta.delta, precision_bits), BallComplex(precision_bits)};
    sp.q = q_of_tau(sp.tau, precision_bits);
    return sp;
}

BallComplex singular_modulus(const qf::ReducedForm& form, const qf::Discriminant& delta,
                             mpfr_prec_t precision_bits) {
    if (form.discriminant() != delta.delta) throw domain_error("singular_modulus: form/discriminant mismatch");
    return eval_with_escalation([&](mpfr_prec_t p) { return tau_of_form(form, delta.delta, p); },
                                precision_bits);
}

Int singular_modulus_integer(const qf::ReducedForm& form, const qf::Discriminant& delta) {
    for (mpfr_prec_t p = 128; p <= kPrecCap; p *= 2) {
        BallComplex v = singular_modulus(form, delta, p);
        // imaginary part must straddle 0
        Mpfr imab(kRadPrec);
        mpfr_abs(imab.get(), v.im(), MPFR_RNDU);
        if (mpfr_cmp(imab.get(), v.rad()) > 0)
            throw domain_error("singular_modulus_integer: value is not real");
        Int out;
        if (v.real_part().certified_integer(out)) return out;
    }
    throw resource_error("singular_modulus_integer: certification failed at precision cap");
}

LogAbsEstimate log_abs_estimate(const qf::Discriminant& delta, std::int64_t a, mpfr_prec_t prec) {
    if (a < 1) throw domain_error("log_abs_estimate: a must be positive");
    // a <= 0.1 |delta|^(1/2)  <=>  100 a^2 <= |delta|
    if (100 * a * a > -delta.delta) throw domain_error("log_abs_estimate: a > 0.1 sqrt|delta|");
    BallReal sq = BallReal::exact_i64(-delta.delta, prec).sqrt();
    BallReal ai = BallReal::exact_i64(a, prec);
    LogAbsEstimate est{sq.mul(BallReal::pi(prec)).div(ai),
                       sq.mul_i64(-3).div(ai).exp()};
    return est;
}

BallComplex log1p_enclosure(const BallComplex& u, int order) {
    if (order < 1) throw domain_error("log1p_enclosure: order must be >= 1");
    Mpfr uabs = ball_abs_upper(u);
    if (mpfr_cmp_ui(uabs.get(), 1) >= 0) throw domain_error("log1p_enclosure: |u| >= 1");
    mpfr_prec_t p = u.prec();
    BallComplex acc(p);
    BallComplex upow = BallComplex::exact_i64(1, 0, p);
    for (int k = 1; k <= order; ++k) {
        upow = upow.mul(u);
        BallComplex term = upow.mul_real(BallReal::exact_i64(1, p).div(BallReal::exact_i64(k, p)));
        acc = (k % 2 == 1) ? acc.add(term) : acc.sub(term);
    }
    // tail: |u|^(order+1) / ((order+1)(1-|u|))
    Mpfr tail(kRadPrec), den(kRadPrec);
    mpfr_pow_ui(tail.get(), uabs.get(), static_cast<unsigned long>(order + 1), MPFR_RNDU);
    mpfr_ui_sub(den.get(), 1, uabs.get(), MPFR_RNDD);
    mpfr_mul_ui(den.get(), den.get(), static_cast<unsigned long>(order + 1), MPFR_RNDD);
    mpfr_div(tail.get(), tail.get(), den.get(), MPFR_RNDU);
    return acc.widened(tail);
}

bool lower_bound_check(const qf::Discriminant& delta) {
    if (delta.delta == -3) throw domain_error("lower_bound_check: discriminant -3 excluded (j = 0)");
    BallReal bound = BallReal::exact_i64(-delta.delta, 192).pow_ui(3);
    for (const auto& form : qf::reduced_forms(delta.delta)) {
        for (mpfr_prec_t p = 128;; p *= 2) {
            if (p > kPrecCap) throw resource_error("lower_bound_check: undecidable at precision cap");
            BallComplex v = singular_modulus(form, delta, p);
            BallReal lhs = v.abs().mul(bound);  // |x| * |delta|^3 >= 1
            if (lhs.certainly_positive()) {
                BallReal one = BallReal::exact_i64(1, p);
                if (one.certainly_less(lhs)) break;
                if (lhs.certainly_less(one)) return false;
            }
        }
    }
    return true;
}

namespace {

void push_check(ExpansionReport& rep, const std::string& label, const BallReal& value, double limit) {
    Mpfr u(kRadPrec);
    mpfr_add(u.get(), value.mid(), value.rad(), MPFR_RNDU);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.12Rg", u.get());
    bool ok = mpfr_cmp_d(u.get(), limit) < 0;
    rep.checks.push_back(ConstantCheck{label, s, std::to_string(limit), ok});
    mpfr_free_str(s);
}

}  // namespace

ExpansionReport verify_expansion_constants(mpfr_prec_t prec) {
    ExpansionReport rep;
    rep.all_ok = true;
    mpfr_prec_t p = prec;

    BallReal pi = BallReal::pi(p);
    BallReal e10pi = pi.mul_i64(10).exp();
    BallReal x0 = pi.mul_i64(-10).exp();  // |q| at height 5

    // j0(5i), j1(5i) from a certified j(5i).
    BallComplex tau5(BallReal::exact_i64(0, p), BallReal::exact_i64(5, p));
    BallComplex j5 = eval_j(tau5, p);
    BallReal j5r = j5.real_part();  // tau = 5i: value is real; radius covers Im
    BallReal j0_5i = j5r.sub(e10pi).sub(BallReal::exact_i64(744, p));
    BallReal j1_5i = j0_5i.sub(x0.mul_i64(196884));

    // (7): e^{10 pi} j0(5i) < 2e5
    BallReal c7 = e10pi.mul(j0_5i);
    push_check(rep, "two_term_remainder[e^10pi*j0(5i) < 2e5]", c7, 2e5);
    // (8): e^{20 pi} j1(5i) < 3e7
    BallReal c8 = e10pi.mul(e10pi).mul(j1_5i);
    push_check(rep, "three_term_remainder[e^20pi*j1(5i) < 3e7]", c8, 3e7);

    // Upper constants used by the chained bounds.
    BallReal C7 = c7;  // |j0(tau)| <= C7 |q| for Im tau >= 5
    BallReal C8 = c8;  // |j1(tau)| <= C8 |q|^2

    // (10): |log(q j) - 744 q| <= K10 |q|^2 with
    // K10 = C7 + (744 + C7 x0)^2/2 + (744 + C7 x0)^3 x0 / (3 (1 - U)).
    BallReal u_over_q = BallReal::exact_i64(744, p).add(C7.mul(x0));
    BallReal U = u_over_q.mul(x0);
    BallReal one = BallReal::exact_i64(1, p);
    BallReal k10 = C7.add(u_over_q.mul(u_over_q).div(BallReal::exact_i64(2, p)))
                       .add(u_over_q.pow_ui(3).mul(x0).div(one.sub(U).mul_i64(3)));
    push_check(rep, "log_one_term[K10 < 5e5]", k10, 5e5);

    // (9): |log|j| - 2 pi v| <= K9 |q|, K9 = 744 + K10 x0.
    BallReal k9 = BallReal::exact_i64(744, p).add(k10.mul(x0));
    push_check(rep, "log_simple[K9 < 800]", k9, 800);

    // (11): |log(q j) - 744 q + 79884 q^2| <= K11 |q|^3, order-3 expansion of
    // log(1+u), u = a1 q + a2 q^2 + w, |w| <= C8 |q|^3. The polynomial
    // u - u^2/2 + u^3/3 is expanded exactly over monomials q^i w^j; everything
    // beyond the displayed terms has q-weight >= 3.
    {
        std::map<std::pair<int, int>, Rat> u_poly;  // (q-degree, w-degree) -> coefficient
        u_poly[{1, 0}] = 744;
        u_poly[{2, 0}] = 196884;
        u_poly[{0, 1}] = 1;
        auto poly_mul = [](const std::map<std::pair<int, int>, Rat>& A,
                           const std::map<std::pair<int, int>, Rat>& B) {
            std::map<std::pair<int, int>, Rat> C;
            for (const auto& [ka, va] : A)
                for (const auto& [kb, vb] : B)
                    C[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
            return C;
        };
        auto u2 = poly_mul(u_poly, u_poly);
        auto u3 = poly_mul(u2, u_poly);
        std::map<std::pair<int, int>, Rat> expansion;
        for (const auto& [k, v] : u_poly) expansion[k] += v;
        for (const auto& [k, v] : u2) expansion[k] -= v / 2;
        for (const auto& [k, v] : u3) expansion[k] += v / 3;
        expansion[{1, 0}] -= 744;
        expansion[{2, 0}] += 79884;  // displayed: 744 q - 79884 q^2
        // Bound sum |coef| x0^i (C8 x0^3)^j / x0^3; every term has i + 3j >= 3.
        BallReal bound = BallReal::exact_i64(0, p);
        BallReal wmax = C8.mul(x0.pow_ui(3));
        for (const auto& [k, v] : expansion) {
            if (v == 0) continue;
            int weight = k.first + 3 * k.second;
            if (weight < 3) throw domain_error("expansion bookkeeping: low-order residue");
            Rat av = abs(v);
            BallReal term = BallReal::from_rational(av, p).mul(x0.pow_ui(static_cast<unsigned long>(k.first)));
            if (k.second > 0) term = term.mul(wmax.pow_ui(static_cast<unsigned long>(k.second)));
            bound = bound.add(term);
        }
        // Lemma tail at order 3: |u|^4 / (4 (1 - |u|)).
        BallReal u_abs = u_over_q.mul(x0).add(C8.mul(x0.pow_ui(3)));  // crude upper: 744x0+196884x0^2+C8x0^3 <= (744+C7x0)x0 + C8x0^3
        BallReal tail = u_abs.pow_ui(4).div(one.sub(u_abs).mul_i64(4));
        bound = bound.add(tail);
        BallReal k11 = bound.div(x0.pow_ui(3));
        push_check(rep, "log_two_terms[K11 < 2e8]", k11, 2e8);
    }

    // (12): |j(tau)| <= e^{2 pi V} + 2079 for tau in F, Im tau <= V:
    // 744 + sum_{k>=1} c_k q0^k < 2079 at q0 = e^{-pi sqrt 3}.
    {
        BallReal q0 = BallReal::exact_i64(3, p).sqrt().mul(pi).neg().exp();
        BallComplex q0c(q0, BallReal::exact_i64(0, p));
        BallComplex jq0 = j_from_q(q0c, p);
        BallReal s = jq0.real_part().sub(BallReal::exact_i64(1, p).div(q0)).sub(BallReal::exact_i64(744, p));
        BallReal chain = s.add(BallReal::exact_i64(744, p));
        push_check(rep, "floor_chain[744 + j0(floor) < 2079]", chain, 2079.0);
    }

    for (const auto& c : rep.checks) rep.all_ok = rep.all_ok && c.ok;
    return rep;
}

}  // namespace singmod::jfun
