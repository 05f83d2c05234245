#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "singmod/arith.hpp"

namespace singmod::qf {

using std::int64_t;

/// Negative discriminant delta = fundamental * conductor^2.
struct Discriminant {
    int64_t delta;
    int64_t fundamental;
    int64_t conductor;

    bool operator==(const Discriminant&) const = default;
};

/// Gauss-reduced positive definite form (a, b, c), gcd 1,
/// with -a < b <= a < c or 0 <= b <= a = c.
struct ReducedForm {
    int64_t a;
    int64_t b;
    int64_t c;

    bool operator==(const ReducedForm&) const = default;
    auto operator<=>(const ReducedForm&) const = default;
    int64_t discriminant() const { return b * b - 4 * a * c; }
};

struct ClassGroupSummary {
    int64_t h;
    int64_t two_torsion;  // 2^rho_2, the number of ambiguous classes
    bool is_two_elementary;
    bool is_almost_two_elementary;
};

bool is_valid_discriminant(int64_t delta);

/// Unique split delta = D * f^2 with D fundamental.
Discriminant split_discriminant(int64_t delta);

/// Psi(ell, delta) = ell * prod_{p | ell} (1 - (delta/p)/p), an integer.
Int psi(int64_t ell, const Discriminant& delta);

/// Unit index [O_delta^x : O_{delta ell^2}^x]: 3 for delta=-3, 2 for -4 (ell>1), else 1.
int unit_index(int64_t delta, int64_t ell);

/// h(delta * ell^2) through the class number formula, given h(delta).
Int class_number_formula(const Discriminant& delta, int64_t ell, const Int& h_delta);
Int class_number_formula(const Discriminant& delta, int64_t ell);

/// |T_delta| by direct enumeration of reduced forms.
int64_t class_number(const Discriminant& delta);
int64_t class_number(int64_t delta);

/// The full set T_delta, sorted by (a, b); the a=1 dominant form comes first
/// automatically under that order.
std::vector<ReducedForm> reduced_forms(const Discriminant& delta);
std::vector<ReducedForm> reduced_forms(int64_t delta);

/// Reduce a primitive positive definite form.
ReducedForm reduce_form(int64_t a, int64_t b, int64_t c);

ReducedForm principal_form(int64_t delta);
ReducedForm inverse(const ReducedForm& f);

/// Gauss composition (ideal multiplication + reduction).
ReducedForm compose(const ReducedForm& f, const ReducedForm& g);

/// h, 2-torsion count and (almost-)2-elementary flags.
ClassGroupSummary class_group_summary(const Discriminant& delta);
ClassGroupSummary class_group_summary(int64_t delta);

/// Ambiguous reduced forms (b=0, b=a or a=c) straight from the factorization
/// of delta; agrees with filtering reduced_forms (property-tested).
std::vector<ReducedForm> ambiguous_forms(int64_t delta);

/// Summary for delta = D f^2 given h(D), without enumerating forms of delta.
ClassGroupSummary class_group_summary_fast(const Discriminant& delta, const Int& h_fundamental);

/// true iff some (a, b, c) in T_delta has the given a.
bool admits_denominator(const Discriminant& delta, int64_t a);
/// Number of forms in T_delta with the given a.
int64_t denominator_multiplicity(const Discriminant& delta, int64_t a);

/// s(a) = max over residues r mod 4a of #{b in (-a, a] : b^2 = r mod 4a}.
int64_t s_of_a(int64_t a);
/// S(A) = sum_{a < A} s(a).
int64_t denominator_count_bounds(int64_t A);

}  // namespace singmod::qf
