#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace singmod {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when an operation is called outside its stated domain.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a computation cannot reach its target (precision cap,
/// enumeration budget, memory bound).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

namespace arith {

struct Factored {
    std::int64_t value = 1;
    // (prime, exponent), primes strictly increasing, exponents >= 1.
    std::vector<std::pair<std::uint64_t, int>> factors;

    int omega() const { return static_cast<int>(factors.size()); }
    bool is_squarefree() const;
    std::uint64_t totient() const;
    /// All positive divisors of |value|, unsorted.
    std::vector<std::uint64_t> divisors() const;
};

/// Canonical factorization of a nonzero 64-bit integer.
/// Trial division over a precomputed prime table, Pollard rho for the rest.
Factored factor(std::int64_t n);

bool is_prime_u64(std::uint64_t n);

/// Kronecker symbol (D/n), full extension to all integers.
int kronecker(const Int& D, const Int& n);
int kronecker(std::int64_t D, std::int64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::int64_t gcd_i64(std::int64_t a, std::int64_t b);

/// x^2 = n exactly, or -1.
std::int64_t isqrt_exact(std::int64_t n);

/// All b mod 2a (representatives in (-a, a]) with b^2 = D (mod 4a).
/// D may be any integer class; only its residue matters.
std::vector<std::int64_t> sqrt_mod_4a(std::int64_t D, std::int64_t a);

}  // namespace arith
}  // namespace singmod
