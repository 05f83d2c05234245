#include "singmod/isogeny.hpp"

#include <algorithm>

namespace singmod::iso {

using arith::gcd_i64;

RatioSet q_set(int64_t n) {
    if (n < 1) throw domain_error("q_set: n must be positive");
    RatioSet out{n, {}};
    for (int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        int64_t e = n / d;
        // pairs (r, s) = (d, e) and (e, d)
        Rat r1(d, e);
        r1.canonicalize();
        Rat r2(e, d);
        r2.canonicalize();
        out.ratios.push_back(r1);
        if (r2 != r1) out.ratios.push_back(r2);
    }
    std::sort(out.ratios.begin(), out.ratios.end());
    out.ratios.erase(std::unique(out.ratios.begin(), out.ratios.end()), out.ratios.end());
    return out;
}

bool isogenous_upper_triangular(const QuadPoint& z, const QuadPoint& w, int64_t n) {
    if (n < 1) throw domain_error("isogenous_upper_triangular: n must be positive");
    if (z.delta != w.delta) return false;
    // Hypothesis Im z >= n: |delta| >= 4 n^2 a_z^2.
    if (-z.delta < 4 * n * n * z.a * z.a)
        throw domain_error("isogenous_upper_triangular: Im z < n, criterion not applicable");
    // (b_w + sqrt(delta)) / (2 a_w) = (p (b_z + sqrt(delta)) / (2 a_z) + q) / s
    // sqrt coefficient: s * a_z = p * a_w; rational part: q = s b_w / (2 a_w) - p b_z / (2 a_z).
    for (int64_t p = 1; p <= n; ++p) {
        if (n % p != 0) continue;
        int64_t s = n / p;
        if (static_cast<std::int64_t>(s) * z.a != p * w.a) continue;
        // q = (s b_w a_z - p b_z a_w) / (2 a_w a_z); check integrality.
        Int num = Int(s) * w.b * z.a - Int(p) * z.b * w.a;
        Int den = Int(2) * w.a * z.a;
        if (num % den != 0) continue;
        Int q = num / den;
        Int g = gcd(gcd(Int(p), q), Int(s));
        if (g == 1) return true;
    }
    return false;
}

std::vector<int64_t> admissible_denominators(int64_t n, int64_t a, int64_t f, int64_t target_f,
                                             bool delta_bound_ok) {
    if (!delta_bound_ok)
        throw domain_error("admissible_denominators: |delta|^(1/2) >= 2 n a hypothesis not asserted");
    if (n < 1 || a < 1 || f < 1 || target_f < 1) throw domain_error("admissible_denominators: bad input");
    std::vector<int64_t> out;
    for (const Rat& rho : q_set(n).ratios) {
        // a_y = (a * target_f / f) * rho
        Rat ay = Rat(a * target_f, f) * rho;
        ay.canonicalize();
        if (ay.get_den() == 1 && ay.get_num() >= 1) out.push_back(ay.get_num().get_si());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<int64_t> construct_isogeny_degree(const FormWithDiscriminant& x,
                                                const FormWithDiscriminant& y) {
    // Same discriminant, coprime denominators: a_x a_y.
    if (x.delta.delta == y.delta.delta && gcd_i64(x.form.a, y.form.a) == 1)
        return x.form.a * y.form.a;
    // Both dominant, same core discriminant, coprime e's: e_x e_y.
    if (x.form.a == 1 && y.form.a == 1) {
        int64_t g = gcd_i64(x.delta.conductor, y.delta.conductor);
        int64_t ex = x.delta.conductor / g;
        int64_t ey = y.delta.conductor / g;
        if (gcd_i64(ex, ey) == 1 && x.delta.delta * ey * ey == y.delta.delta * ex * ex)
            return ex * ey;
    }
    // Two subdominant points of the same discriminant: equal or 4-isogenous.
    if (x.delta.delta == y.delta.delta && x.form.a == 2 && y.form.a == 2)
        return x.form == y.form ? 1 : 4;
    return std::nullopt;
}

}  // namespace singmod::iso
