#pragma once

#include <optional>
#include <vector>

#include "singmod/quadforms.hpp"

namespace singmod::iso {

using std::int64_t;

/// Q(n) = { r/s : r s = n }, reduced, sorted, closed under inversion.
struct RatioSet {
    int64_t n;
    std::vector<Rat> ratios;
};

RatioSet q_set(int64_t n);

/// tau = (b + sqrt(delta)) / (2a), carried exactly.
struct QuadPoint {
    int64_t b;
    int64_t a;
    int64_t delta;
};

/// Upper-triangular isogeny criterion: true iff w = (p z + q) / s with
/// p, s > 0, p s = n, gcd(p, q, s) = 1, exactly over Q(sqrt(delta)).
/// Requires w reduced (in F) and Im z >= n.
bool isogenous_upper_triangular(const QuadPoint& z, const QuadPoint& w, int64_t n);

/// All positive integers a_y with (a_y / target_f) / (a / f) in Q(n).
/// delta_bound_ok asserts the caller checked |delta_x|^(1/2) >= 2 n a_x.
std::vector<int64_t> admissible_denominators(int64_t n, int64_t a, int64_t f, int64_t target_f,
                                             bool delta_bound_ok);

struct FormWithDiscriminant {
    qf::ReducedForm form;
    qf::Discriminant delta;
};

/// Constructive isogeny degree between two singular moduli, when one of the
/// three explicit rules applies: same discriminant with coprime denominators
/// (degree a_x a_y), both dominant over the same core (degree e_x e_y), or
/// two subdominant points of one discriminant (equal, else degree 4).
std::optional<int64_t> construct_isogeny_degree(const FormWithDiscriminant& x,
                                                const FormWithDiscriminant& y);

}  // namespace singmod::iso
