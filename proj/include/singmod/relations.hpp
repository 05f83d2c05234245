#pragma once

#include <optional>
#include <vector>

#include "singmod/ball.hpp"
#include "singmod/quadforms.hpp"

namespace singmod::rel {

using std::int64_t;

struct RelationTerm {
    qf::Discriminant delta;
    qf::ReducedForm form;
    Int exponent;
};

/// A putative multiplicative relation prod x_i^{m_i} = 1 among singular
/// moduli of one fundamental discriminant, with the derived quantities the
/// propositions consume.
struct RelationInstance {
    std::vector<RelationTerm> terms;

    static RelationInstance make(std::vector<RelationTerm> terms);

    int k() const { return static_cast<int>(terms.size()); }
    int64_t X() const;       // max |delta_i|
    int64_t Y() const;       // min |delta_i|
    Int norm_m() const;      // max |m_i|
    Int norm_m_prime() const;
    int64_t common_fundamental() const;  // throws if mixed
    int64_t conductor_gcd() const;
    int64_t e_of(std::size_t i) const;   // f_i / f
    Int m_prime(std::size_t i) const;    // e_i * m_i
    int64_t core_delta_abs() const;      // |D| f^2
    int64_t max_denominator() const;
};

/// ceil(24 (c(l) k X^(1/2))^(k-1)), c(l) = 3^(4^l + 2^(l+1) + 8).
Int masser_basis_bound(int k, const Int& X, int ell);
/// Same with the doubled height 8 X^(1/2) folded in (relations among ratios).
Int masser_sigma_bound(int k, const Int& X, int ell);
/// ceil(omega (k h / eta)^(k-1)).
Int masser_generic_bound(int k, const Rat& h, const Rat& eta, const Int& omega);

/// Scalar forms of the two hypothesis predicates (certified comparisons).
bool erootofy_holds(int k, int64_t X, int64_t Y, int64_t A);
bool eassumpdelta_holds(int k, int64_t X, int64_t core_abs, int64_t A, const Rat& eps);

/// (erootofy): Y^(1/2) > (1/3) A k (log X + log A + log k + 20), certified.
bool check_linear_relation_hypothesis(const RelationInstance& inst, int64_t A);

/// (eassumpdelta): |core|^(1/2) >= max{k eps^-1 log X, (1/3) A (log(k eps^-1) + 4)}.
bool inequality_hypothesis(const RelationInstance& inst, int64_t A, const Rat& eps);

struct LinearRelation {
    std::vector<Rat> coefficients;  // (f_i / a_i) m_i
    Rat sum;
};

/// The exact rational sum of (elinrelf); zero by Proposition 3.1 whenever the
/// multiplicative relation actually holds and the hypothesis is met.
LinearRelation derive_linear_relation(const RelationInstance& inst, int64_t A);

struct InequalityBounds {
    Rat pos_lhs, pos_rhs;
    Rat neg_lhs, neg_rhs;
};

/// The four sides of (eupperforpos)/(eupperforneg), exact rationals.
InequalityBounds inequality_bounds(const RelationInstance& inst, int64_t A, const Rat& eps);

/// Exact big-integer check of prod v_i^{m_i} = 1.
bool verify_relation_exact(const std::vector<Int>& values, const std::vector<Int>& exponents);

/// Basis of the sublattice generated by the relation vectors inside the
/// sup-norm box [-cap, cap]^k, by exhaustive enumeration + exact verification.
std::vector<std::vector<Int>> relation_lattice_bruteforce(const std::vector<Int>& values, int64_t cap);

}  // namespace singmod::rel
