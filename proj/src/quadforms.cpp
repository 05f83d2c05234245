#include "singmod/quadforms.hpp"

#include <algorithm>
#include <array>

namespace singmod::qf {

using arith::factor;
using arith::Factored;
using arith::gcd_i64;

bool is_valid_discriminant(int64_t delta) {
    if (delta >= 0) return false;
    int64_t r = ((delta % 4) + 4) % 4;
    return r == 0 || r == 1;
}

static void require_valid(int64_t delta) {
    if (!is_valid_discriminant(delta))
        throw domain_error("discriminant must be negative and = 0,1 mod 4");
}

Discriminant split_discriminant(int64_t delta) {
    require_valid(delta);
    Factored f = factor(delta);
    // Largest square dividing delta, then push factors of 2 back until the
    // cofactor is a fundamental discriminant.
    int64_t cond = 1;
    for (const auto& [p, e] : f.factors) {
        for (int i = 0; i < e / 2; ++i) cond *= static_cast<int64_t>(p);
    }
    int64_t core = delta / (cond * cond);  // squarefree up to sign
    // core = 1 mod 4: fundamental. Otherwise core = 2,3 mod 4 and 4*core is.
    int64_t rc = ((core % 4) + 4) % 4;
    if (rc != 1) {
        if (cond % 2 != 0)
            throw domain_error("split_discriminant: internal parity error");
        cond /= 2;
    }
    int64_t fundamental = delta / (cond * cond);
    return Discriminant{delta, fundamental, cond};
}

Int psi(int64_t ell, const Discriminant& delta) {
    if (ell < 1) throw domain_error("psi: ell must be positive");
    Factored f = factor(ell);
    Int result = 1;
    for (const auto& [p, e] : f.factors) {
        auto pi = static_cast<int64_t>(p);
        int chi = arith::kronecker(delta.delta, pi);
        // p^(e-1) * (p - chi)
        Int term = pi - chi;
        for (int i = 1; i < e; ++i) term *= pi;
        result *= term;
    }
    return result;
}

int unit_index(int64_t delta, int64_t ell) {
    if (ell <= 1) return 1;
    if (delta == -3) return 3;
    if (delta == -4) return 2;
    return 1;
}

Int class_number_formula(const Discriminant& delta, int64_t ell, const Int& h_delta) {
    Int num = h_delta * psi(ell, delta);
    int u = unit_index(delta.delta, ell);
    if (num % u != 0) throw domain_error("class_number_formula: unit index does not divide");
    return num / u;
}

Int class_number_formula(const Discriminant& delta, int64_t ell) {
    return class_number_formula(delta, ell, Int(class_number(delta)));
}

namespace {

constexpr int64_t kPointQueryLimit = int64_t(1) << 40;

// Walk T_delta: calls visit(a, b, c) for every reduced form.
// Returns false if visit ever returns false (early abort).
template <typename Visit>
bool walk_reduced_forms(int64_t delta, Visit&& visit) {
    require_valid(delta);
    int64_t absd = -delta;
    for (int64_t a = 1; 3 * a * a <= absd; ++a) {
        if (a <= 1024) {
            int64_t b0 = -a + 1;
            if ((((b0 - delta) % 2) + 2) % 2 != 0) ++b0;  // b = delta mod 2
            for (int64_t b = b0; b <= a; b += 2) {
                int64_t num = b * b - delta;
                if (num % (4 * a) != 0) continue;
                int64_t c = num / (4 * a);
                if (c < a) continue;
                if (c == a && b < 0) continue;
                if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
                if (!visit(a, b, c)) return false;
            }
        } else {
            for (int64_t b : arith::sqrt_mod_4a(delta, a)) {
                int64_t c = (b * b - delta) / (4 * a);
                if (c < a) continue;
                if (c == a && b < 0) continue;
                if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
                if (!visit(a, b, c)) return false;
            }
        }
    }
    return true;
}

}  // namespace

int64_t class_number(const Discriminant& delta) { return class_number(delta.delta); }

int64_t class_number(int64_t delta) {
    if (-delta > kPointQueryLimit) throw domain_error("class_number: |delta| above point-query bound");
    int64_t h = 0;
    walk_reduced_forms(delta, [&](int64_t, int64_t, int64_t) {
        ++h;
        return true;
    });
    return h;
}

std::vector<ReducedForm> reduced_forms(const Discriminant& delta) { return reduced_forms(delta.delta); }

std::vector<ReducedForm> reduced_forms(int64_t delta) {
    if (-delta > kPointQueryLimit) throw domain_error("reduced_forms: |delta| above point-query bound");
    std::vector<ReducedForm> forms;
    walk_reduced_forms(delta, [&](int64_t a, int64_t b, int64_t c) {
        forms.push_back(ReducedForm{a, b, c});
        return true;
    });
    std::sort(forms.begin(), forms.end(),
              [](const ReducedForm& x, const ReducedForm& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    return forms;
}

ReducedForm reduce_form(int64_t a, int64_t b, int64_t c) {
    if (a <= 0) throw domain_error("reduce_form: a must be positive");
    int64_t disc = b * b - 4 * a * c;
    if (disc >= 0) throw domain_error("reduce_form: discriminant must be negative");
    if (gcd_i64(gcd_i64(a, b), c) != 1) throw domain_error("reduce_form: form must be primitive");
    for (;;) {
        // Translate b into (-a, a].
        if (b > a || b <= -a) {
            int64_t twoa = 2 * a;
            int64_t bm = ((b % twoa) + twoa) % twoa;
            if (bm > a) bm -= twoa;
            int64_t k = (bm - b) / twoa;
            c += k * (b + a * k);
            b = bm;
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        break;
    }
    // Boundary tie: a = c wants b >= 0.
    if (a == c && b < 0) b = -b;
    return ReducedForm{a, b, c};
}

ReducedForm principal_form(int64_t delta) {
    require_valid(delta);
    if ((((delta % 4) + 4) % 4) == 0) return ReducedForm{1, 0, -delta / 4};
    return ReducedForm{1, 1, (1 - delta) / 4};
}

ReducedForm inverse(const ReducedForm& f) { return reduce_form(f.a, -f.b, f.c); }

ReducedForm compose(const ReducedForm& f, const ReducedForm& g) {
    int64_t delta = f.discriminant();
    if (delta != g.discriminant()) throw domain_error("compose: discriminant mismatch");
    // Ideal product: (a1, (b1+s)/2)(a2, (b2+s)/2) with s = sqrt(delta), via a
    // 2x2 HNF of the four generators written as (p + q*sqrt(delta))/2.
    // Generators: 2*a1*a2, a1*(b2 + s), a2*(b1 + s), (b1*b2 + delta + (b1+b2) s)/2.
    Int rows[4][2] = {
        {Int(2) * f.a * g.a, Int(0)},
        {Int(f.a) * g.b, Int(f.a)},
        {Int(g.a) * f.b, Int(g.a)},
        {(Int(f.b) * g.b + delta) / 2, (Int(f.b) + g.b) / 2},
    };
    // HNF on rows (p, q): fold the q column to a single row (P, Q) with
    // Q = gcd of the q entries, clear it from the others, gcd the p column.
    Int P = 0, Q = 0;
    for (auto& r : rows) {
        if (r[1] == 0) continue;
        if (Q == 0) {
            P = r[0];
            Q = r[1];
            continue;
        }
        Int gg, x, y;
        mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), Q.get_mpz_t(), r[1].get_mpz_t());
        P = x * P + y * r[0];
        Q = gg;
    }
    if (Q < 0) {
        Q = -Q;
        P = -P;
    }
    Int pcol = 0;
    for (auto& r : rows) {
        if (Q != 0 && r[1] != 0) {
            Int k = r[1] / Q;
            r[0] -= k * P;
            r[1] = 0;
        }
        pcol = gcd(pcol, r[0]);
    }
    // Lattice basis {(pcol, 0), (P, Q)} encodes Q * (Z*A + Z*(B + sqrt(delta))/2)
    // with pcol = 2*Q*A and B = P/Q.
    if (Q == 0 || pcol % (2 * Q) != 0 || P % Q != 0)
        throw domain_error("compose: inputs are not proper primitive forms");
    Int A = pcol / (2 * Q);
    Int B = P / Q;
    // Normalize B mod 2A to keep c small, and fix parity against delta.
    Int twoA = 2 * A;
    B %= twoA;
    if (B < 0) B += twoA;
    Int C4 = B * B - delta;
    if (C4 % (4 * A) != 0) throw domain_error("compose: non-integral composition");
    Int C = C4 / (4 * A);
    if (!A.fits_slong_p() || !B.fits_slong_p() || !C.fits_slong_p())
        throw resource_error("compose: coefficients exceed 64-bit range");
    return reduce_form(A.get_si(), B.get_si(), C.get_si());
}

std::vector<ReducedForm> ambiguous_forms(int64_t delta) {
    require_valid(delta);
    int64_t absd = -delta;
    std::vector<ReducedForm> out;
    // b = 0: a*c = |delta|/4, a <= c, gcd(a, c) = 1.
    if (absd % 4 == 0) {
        int64_t n = absd / 4;
        for (int64_t a : factor(n).divisors()) {
            int64_t c = n / a;
            if (a > c) continue;
            if (gcd_i64(a, c) != 1) continue;
            out.push_back(ReducedForm{a, 0, c});
        }
    }
    // b = a: c = (a + |delta|/a)/4 with a | |delta|; need a <= c (a < c strict
    // unless the form is (a, a, a), delta = -3a^2).
    for (int64_t a : factor(absd).divisors()) {
        int64_t q = absd / a;
        if ((a + q) % 4 != 0) continue;
        int64_t c = (a + q) / 4;
        if (c < a) continue;
        if (gcd_i64(gcd_i64(a, a), c) != 1) continue;
        out.push_back(ReducedForm{a, a, c});
    }
    // a = c: (2a - b)(2a + b) = |delta|, 0 <= b < a (b = a case already above).
    for (int64_t d1 : factor(absd).divisors()) {
        int64_t d2 = absd / d1;
        if (d1 > d2) continue;
        // 2a - b = d1, 2a + b = d2
        if ((d1 + d2) % 4 != 0) continue;
        int64_t a = (d1 + d2) / 4;
        int64_t b = (d2 - d1) / 2;
        if (b < 0 || b >= a) continue;
        if (gcd_i64(gcd_i64(a, b), a) != 1) continue;
        out.push_back(ReducedForm{a, b, a});
    }
    std::sort(out.begin(), out.end(), [](const ReducedForm& x, const ReducedForm& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

static ClassGroupSummary summarize(int64_t h, int64_t two_torsion) {
    ClassGroupSummary s;
    s.h = h;
    s.two_torsion = two_torsion;
    s.is_two_elementary = (h == two_torsion);
    s.is_almost_two_elementary = ((2 * two_torsion) % h == 0);
    return s;
}

ClassGroupSummary class_group_summary(const Discriminant& delta) { return class_group_summary(delta.delta); }

ClassGroupSummary class_group_summary(int64_t delta) {
    int64_t h = class_number(delta);
    int64_t t = static_cast<int64_t>(ambiguous_forms(delta).size());
    return summarize(h, t);
}

ClassGroupSummary class_group_summary_fast(const Discriminant& delta, const Int& h_fundamental) {
    Int h = class_number_formula(Discriminant{delta.fundamental, delta.fundamental, 1}, delta.conductor, h_fundamental);
    if (!h.fits_slong_p()) throw resource_error("class_group_summary_fast: class number overflow");
    int64_t t = static_cast<int64_t>(ambiguous_forms(delta.delta).size());
    return summarize(h.get_si(), t);
}

bool admits_denominator(const Discriminant& delta, int64_t a) {
    return denominator_multiplicity(delta, a) > 0;
}

int64_t denominator_multiplicity(const Discriminant& delta, int64_t a) {
    if (a < 1) throw domain_error("denominator_multiplicity: a must be positive");
    int64_t count = 0;
    for (int64_t b : arith::sqrt_mod_4a(delta.delta, a)) {
        int64_t num = b * b - delta.delta;
        int64_t c = num / (4 * a);
        if (c < a) continue;
        if (c == a && b < 0) continue;
        if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
        ++count;
    }
    return count;
}

int64_t s_of_a(int64_t a) {
    if (a < 1) throw domain_error("s_of_a: a must be positive");
    std::vector<int> counts(static_cast<std::size_t>(4 * a), 0);
    for (int64_t b = -a + 1; b <= a; ++b) {
        int64_t r = ((b * b) % (4 * a) + 4 * a) % (4 * a);
        ++counts[static_cast<std::size_t>(r)];
    }
    return *std::max_element(counts.begin(), counts.end());
}

int64_t denominator_count_bounds(int64_t A) {
    if (A < 2) throw domain_error("denominator_count_bounds: A must be >= 2");
    int64_t total = 0;
    for (int64_t a = 1; a < A; ++a) total += s_of_a(a);
    return total;
}

}  // namespace singmod::qf
