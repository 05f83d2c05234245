#include "singmod/relations.hpp"

#include <algorithm>
#include <cmath>

namespace singmod::rel {

using ball::BallReal;

RelationInstance RelationInstance::make(std::vector<RelationTerm> terms) {
    if (terms.empty()) throw domain_error("RelationInstance: empty");
    for (const auto& t : terms) {
        if (t.exponent == 0) throw domain_error("RelationInstance: zero exponent");
        if (t.form.discriminant() != t.delta.delta)
            throw domain_error("RelationInstance: form does not match discriminant");
    }
    return RelationInstance{std::move(terms)};
}

int64_t RelationInstance::X() const {
    int64_t x = 0;
    for (const auto& t : terms) x = std::max(x, -t.delta.delta);
    return x;
}

int64_t RelationInstance::Y() const {
    int64_t y = std::numeric_limits<int64_t>::max();
    for (const auto& t : terms) y = std::min(y, -t.delta.delta);
    return y;
}

Int RelationInstance::norm_m() const {
    Int m = 0;
    for (const auto& t : terms) m = std::max(m, Int(abs(t.exponent)));
    return m;
}

Int RelationInstance::norm_m_prime() const {
    Int m = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) m = std::max(m, Int(abs(m_prime(i))));
    return m;
}

int64_t RelationInstance::common_fundamental() const {
    int64_t d = terms.front().delta.fundamental;
    for (const auto& t : terms)
        if (t.delta.fundamental != d)
            throw domain_error("RelationInstance: mixed fundamental discriminants");
    return d;
}

int64_t RelationInstance::conductor_gcd() const {
    int64_t f = 0;
    for (const auto& t : terms) f = arith::gcd_i64(f, t.delta.conductor);
    return f;
}

int64_t RelationInstance::e_of(std::size_t i) const { return terms.at(i).delta.conductor / conductor_gcd(); }

Int RelationInstance::m_prime(std::size_t i) const { return Int(e_of(i)) * terms.at(i).exponent; }

int64_t RelationInstance::core_delta_abs() const {
    int64_t f = conductor_gcd();
    return -common_fundamental() * f * f;
}

int64_t RelationInstance::max_denominator() const {
    int64_t a = 0;
    for (const auto& t : terms) a = std::max(a, t.form.a);
    return a;
}

namespace {

Int ceil_mul_sqrt(const Int& S, const Int& t) {
    // ceil(S * sqrt(t)) for S, t >= 0.
    Int s2t = S * S * t;
    Int n = sqrt(s2t);  // floor sqrt
    if (n * n < s2t) n += 1;
    return n;
}

Int c_of_ell(int ell) {
    if (ell < 1 || ell > 8) throw domain_error("masser bound: ell out of supported range");
    unsigned long e = (1ul << (2 * ell)) + (1ul << (ell + 1)) + 8;
    Int c;
    mpz_ui_pow_ui(c.get_mpz_t(), 3, e);
    return c;
}

}  // namespace

Int masser_basis_bound(int k, const Int& X, int ell) {
    if (k < 1) throw domain_error("masser_basis_bound: k must be positive");
    if (X < 1) throw domain_error("masser_basis_bound: X must be positive");
    if (k == 1) return 24;
    Int base = c_of_ell(ell) * k;
    Int S = 24;
    for (int i = 0; i < k - 1; ++i) S *= base;
    Int t;
    mpz_pow_ui(t.get_mpz_t(), X.get_mpz_t(), static_cast<unsigned long>(k - 1));
    return ceil_mul_sqrt(S, t);
}

Int masser_sigma_bound(int k, const Int& X, int ell) {
    // Proposition 3.8 reading: identical shape, height 8 X^(1/2) instead of
    // 4 X^(1/2); the paper's c(l) already absorbs a factor 9 >= 4, so the
    // doubled height contributes one extra factor 2 per exponent.
    if (k < 1) throw domain_error("masser_sigma_bound: k must be positive");
    if (k == 1) return 24;
    Int base = c_of_ell(ell) * k * 2;
    Int S = 24;
    for (int i = 0; i < k - 1; ++i) S *= base;
    Int t;
    mpz_pow_ui(t.get_mpz_t(), X.get_mpz_t(), static_cast<unsigned long>(k - 1));
    return ceil_mul_sqrt(S, t);
}

Int masser_generic_bound(int k, const Rat& h, const Rat& eta, const Int& omega) {
    if (eta <= 0) throw domain_error("masser_generic_bound: eta must be positive");
    if (h < eta) throw domain_error("masser_generic_bound: h >= eta required");
    if (k < 1) throw domain_error("masser_generic_bound: k must be positive");
    Rat ratio = Rat(k) * h / eta;
    Rat pow = 1;
    for (int i = 0; i < k - 1; ++i) pow *= ratio;
    Rat v = Rat(omega) * pow;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    return q;
}

namespace {

constexpr mpfr_prec_t kCmpCap = 1 << 14;

// Certified strict comparison with escalation; throws if truly undecidable.
template <typename MakeLhs, typename MakeRhs>
bool certified_greater(MakeLhs&& lhs, MakeRhs&& rhs) {
    for (mpfr_prec_t p = 96; p <= kCmpCap; p *= 2) {
        try {
            return rhs(p).less_than(lhs(p));
        } catch (const ball::undecidable_error&) {
        }
    }
    throw ball::undecidable_error("relations: comparison undecidable at precision cap");
}

}  // namespace

bool erootofy_holds(int k, int64_t X, int64_t Y, int64_t A) {
    if (k < 1 || X < 1 || Y < 1 || A < 1) throw domain_error("erootofy_holds: positive inputs required");
    return certified_greater(
        [&](mpfr_prec_t p) { return BallReal::exact_i64(Y, p).sqrt(); },
        [&](mpfr_prec_t p) {
            BallReal logs = BallReal::exact_i64(X, p).log()
                                .add(BallReal::exact_i64(A, p).log())
                                .add(BallReal::exact_i64(k, p).log())
                                .add(BallReal::exact_i64(20, p));
            return logs.mul_i64(A).mul_i64(k).div(BallReal::exact_i64(3, p));
        });
}

bool eassumpdelta_holds(int k, int64_t X, int64_t core_abs, int64_t A, const Rat& eps) {
    if (A < 1) throw domain_error("eassumpdelta_holds: A must be >= 1");
    if (eps <= 0 || eps > Rat(1, 2)) throw domain_error("eassumpdelta_holds: eps in (0, 1/2] required");
    if (k < 1 || X < 1 || core_abs < 1) throw domain_error("eassumpdelta_holds: positive inputs required");
    Rat keps = Rat(k) / eps;
    bool first = certified_greater(
        [&](mpfr_prec_t p) { return BallReal::exact_i64(core_abs, p).sqrt(); },
        [&](mpfr_prec_t p) { return BallReal::from_rational(keps, p).mul(BallReal::exact_i64(X, p).log()); });
    bool second = certified_greater(
        [&](mpfr_prec_t p) { return BallReal::exact_i64(core_abs, p).sqrt(); },
        [&](mpfr_prec_t p) {
            return BallReal::from_rational(keps, p).log().add(BallReal::exact_i64(4, p)).mul_i64(A).div(
                BallReal::exact_i64(3, p));
        });
    return first && second;
}

bool check_linear_relation_hypothesis(const RelationInstance& inst, int64_t A) {
    if (A < 1) throw domain_error("check_linear_relation_hypothesis: A must be positive");
    inst.common_fundamental();
    if (inst.max_denominator() > A)
        throw domain_error("check_linear_relation_hypothesis: some denominator exceeds A");
    return erootofy_holds(inst.k(), inst.X(), inst.Y(), A);
}

bool inequality_hypothesis(const RelationInstance& inst, int64_t A, const Rat& eps) {
    inst.common_fundamental();
    return eassumpdelta_holds(inst.k(), inst.X(), inst.core_delta_abs(), A, eps);
}

LinearRelation derive_linear_relation(const RelationInstance& inst, int64_t A) {
    if (!check_linear_relation_hypothesis(inst, A))
        throw domain_error("derive_linear_relation: hypothesis (erootofy) fails");
    LinearRelation out;
    out.sum = 0;
    for (const auto& t : inst.terms) {
        Rat c = Rat(t.delta.conductor, t.form.a) * Rat(t.exponent);
        c.canonicalize();
        out.coefficients.push_back(c);
        out.sum += c;
    }
    out.sum.canonicalize();
    return out;
}

InequalityBounds inequality_bounds(const RelationInstance& inst, int64_t A, const Rat& eps) {
    if (!inequality_hypothesis(inst, A, eps))
        throw domain_error("inequality_bounds: hypothesis (eassumpdelta) fails");
    InequalityBounds b;
    b.pos_lhs = b.pos_rhs = b.neg_lhs = b.neg_rhs = 0;
    Rat eps_norm = eps * Rat(inst.norm_m_prime());
    for (std::size_t i = 0; i < inst.terms.size(); ++i) {
        const auto& t = inst.terms[i];
        Int mp = inst.m_prime(i);
        Rat abs_term = Rat(abs(mp));
        int64_t a = t.form.a;
        int64_t min_aA = std::min(a, A);
        if (t.exponent > 0) {
            if (a < A) b.pos_lhs += Rat(mp) / a;
            b.neg_rhs += Rat(mp) / min_aA;
        } else {
            if (a < A) b.neg_lhs += abs_term / a;
            b.pos_rhs += abs_term / min_aA;
        }
    }
    b.pos_rhs += eps_norm;
    b.neg_rhs += eps_norm;
    for (Rat* r : {&b.pos_lhs, &b.pos_rhs, &b.neg_lhs, &b.neg_rhs}) r->canonicalize();
    return b;
}

bool verify_relation_exact(const std::vector<Int>& values, const std::vector<Int>& exponents) {
    if (values.size() != exponents.size() || values.empty())
        throw domain_error("verify_relation_exact: size mismatch");
    Int num = 1, den = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0) throw domain_error("verify_relation_exact: zero value");
        if (exponents[i] == 0) throw domain_error("verify_relation_exact: zero exponent");
        if (!exponents[i].fits_slong_p() || abs(exponents[i]) > 100000)
            throw resource_error("verify_relation_exact: exponent too large");
        long e = exponents[i].get_si();
        Int pow;
        mpz_pow_ui(pow.get_mpz_t(), values[i].get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        if (e > 0)
            num *= pow;
        else
            den *= pow;
    }
    return num == den;
}

namespace {

// Row-style HNF basis of the lattice generated by the given vectors.
std::vector<std::vector<Int>> hnf_basis(std::vector<std::vector<Int>> rows, std::size_t k) {
    std::vector<std::vector<Int>> basis;
    std::size_t col = 0, start = 0;
    for (col = 0; col < k; ++col) {
        // Find pivot: gcd-reduce column entries below `start`.
        bool any = false;
        for (;;) {
            std::size_t piv = start;
            Int best = 0;
            for (std::size_t r = start; r < rows.size(); ++r) {
                if (rows[r][col] != 0 && (best == 0 || abs(rows[r][col]) < abs(best))) {
                    best = rows[r][col];
                    piv = r;
                }
            }
            if (best == 0) break;
            any = true;
            std::swap(rows[piv], rows[start]);
            bool clean = true;
            for (std::size_t r = start + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                Int q = rows[r][col] / rows[start][col];
                for (std::size_t c = 0; c < k; ++c) rows[r][c] -= q * rows[start][c];
                if (rows[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (any) {
            if (rows[start][col] < 0)
                for (std::size_t c = 0; c < k; ++c) rows[start][c] = -rows[start][c];
            ++start;
        }
    }
    basis.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(start));
    return basis;
}

}  // namespace

std::vector<std::vector<Int>> relation_lattice_bruteforce(const std::vector<Int>& values, int64_t cap) {
    if (cap < 1) throw domain_error("relation_lattice_bruteforce: cap must be positive");
    std::size_t k = values.size();
    if (k == 0 || k > 6) throw domain_error("relation_lattice_bruteforce: 1..6 values supported");
    double combos = std::pow(2.0 * static_cast<double>(cap) + 1.0, static_cast<double>(k));
    if (combos > 5e7) throw resource_error("relation_lattice_bruteforce: enumeration budget exceeded");
    for (const Int& v : values)
        if (v == 0) throw domain_error("relation_lattice_bruteforce: zero value");

    std::vector<double> logs;
    for (const Int& v : values) logs.push_back(std::log(std::fabs(v.get_d())));

    std::vector<std::vector<Int>> found;
    std::vector<Int> m(k, Int(-cap));
    std::vector<long> mi(k, -cap);
    for (;;) {
        double s = 0;
        bool zero = true;
        for (std::size_t i = 0; i < k; ++i) {
            s += static_cast<double>(mi[i]) * logs[i];
            if (mi[i] != 0) zero = false;
        }
        if (!zero && std::fabs(s) < 1e-6) {
            // exact check, skipping zero exponents (verify wants them nonzero)
            Int num = 1, den = 1;
            for (std::size_t i = 0; i < k; ++i) {
                if (mi[i] == 0) continue;
                Int pow;
                mpz_pow_ui(pow.get_mpz_t(), values[i].get_mpz_t(),
                           static_cast<unsigned long>(mi[i] < 0 ? -mi[i] : mi[i]));
                (mi[i] > 0 ? num : den) *= pow;
            }
            if (num == den) {
                std::vector<Int> vec;
                for (long v : mi) vec.emplace_back(v);
                found.push_back(std::move(vec));
            }
        }
        std::size_t idx = 0;
        while (idx < k && ++mi[idx] > cap) {
            mi[idx] = -cap;
            ++idx;
        }
        if (idx == k) break;
    }
    return hnf_basis(std::move(found), k);
}

}  // namespace singmod::rel
