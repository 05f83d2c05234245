#pragma once

#include <string>
#include <vector>

#include "singmod/ball.hpp"
#include "singmod/quadforms.hpp"

namespace singmod::jfun {

using ball::BallComplex;
using ball::BallReal;

/// Exact Fourier coefficients c_{-1}..c_n of j, indexed from -1.
struct Coefficients {
    std::vector<Int> c;  // c[k + 1] = c_k
    const Int& at(int k) const { return c.at(static_cast<std::size_t>(k + 1)); }
    int max_index() const { return static_cast<int>(c.size()) - 2; }
};

/// c_k via E4^3 / Delta over exact integers.
Coefficients j_coefficients(int n);
/// Independent construction 1728 + E6^2 / Delta (test oracle).
Coefficients j_coefficients_via_e6(int n);

struct SingularPoint {
    qf::ReducedForm form;
    qf::Discriminant delta;
    BallComplex tau;
    BallComplex q;
};

SingularPoint make_singular_point(const qf::ReducedForm& form, const qf::Discriminant& delta,
                                  mpfr_prec_t precision_bits);

/// tau = (b + i sqrt|delta|)/(2a) as a ball.
BallComplex tau_of_form(const qf::ReducedForm& form, std::int64_t delta, mpfr_prec_t prec);

/// Enclosure of j(tau) with radius <= 2^-prec * |j| + 2^-prec, escalating the
/// working precision (doubling, capped) and failing loudly if unreachable.
/// Requires Im(tau) >= 0.85 (fundamental-domain height, minus tolerance).
BallComplex eval_j(const BallComplex& tau, mpfr_prec_t precision_bits);

/// j as a function of q = e^{2 pi i tau}: E4(q)^3 / Delta(q) with elementary
/// tail bounds. Independent of the coefficient-series path; |q| < 0.03.
BallComplex j_from_q(const BallComplex& q, mpfr_prec_t working_prec);

/// Enclosure of the singular modulus j(tau_form).
BallComplex singular_modulus(const qf::ReducedForm& form, const qf::Discriminant& delta,
                             mpfr_prec_t precision_bits);

/// Certified integer value of a class-number-one singular modulus.
Int singular_modulus_integer(const qf::ReducedForm& form, const qf::Discriminant& delta);

struct LogAbsEstimate {
    BallReal estimate;     // pi sqrt|delta| / a
    BallReal error_bound;  // e^{-3 sqrt|delta| / a}
};

/// Requires a <= 0.1 sqrt|delta|.
LogAbsEstimate log_abs_estimate(const qf::Discriminant& delta, std::int64_t a, mpfr_prec_t prec);

struct ConstantCheck {
    std::string label;
    std::string computed;  // certified upper bound of the majorant
    std::string limit;
    bool ok;
};

struct ExpansionReport {
    std::vector<ConstantCheck> checks;
    bool all_ok;
};

/// Certifies the displayed constants of the tau->infinity expansions:
/// 2e5, 3e7, 800, 5e5, 2e8 at height >= 5, and the 2079 floor chain.
ExpansionReport verify_expansion_constants(mpfr_prec_t prec = 256);

/// log(1 + u) by the order-n truncation with tail |u|^(n+1)/((n+1)(1-|u|)).
BallComplex log1p_enclosure(const BallComplex& u, int order);

/// |x| >= |delta|^-3 for every singular modulus of the discriminant.
bool lower_bound_check(const qf::Discriminant& delta);

}  // namespace singmod::jfun
