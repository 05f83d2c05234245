#include "singmod/arith.hpp"

#include <algorithm>
#include <cmath>

namespace singmod::arith {

namespace {

constexpr std::uint32_t kPrimeTableLimit = 1u << 16;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        std::vector<bool> sieve(kPrimeTableLimit, true);
        sieve[0] = sieve[1] = false;
        for (std::uint32_t p = 2; p * p < kPrimeTableLimit; ++p)
            if (sieve[p])
                for (std::uint32_t q = p * p; q < kPrimeTableLimit; q += p) sieve[q] = false;
        std::vector<std::uint32_t> primes;
        for (std::uint32_t p = 2; p < kPrimeTableLimit; ++p)
            if (sieve[p]) primes.push_back(p);
        return primes;
    }();
    return table;
}

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t pollard_rho(std::uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            d = gcd_u64(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t0 = 0, t1 = 1;
    std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a % m);
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    t0 %= static_cast<std::int64_t>(m);
    if (t0 < 0) t0 += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t0);
}

// x with x^2 = a (mod p), p an odd prime, or -1. Tonelli-Shanks.
std::int64_t sqrt_mod_p(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (powmod(a, (p - 1) / 2, p) != 1) return -1;
    if (p % 4 == 3) return static_cast<std::int64_t>(powmod(a, (p + 1) / 4, p));
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = static_cast<std::uint64_t>(s);
    std::uint64_t c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t t2 = t, i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return static_cast<std::int64_t>(r);
}

constexpr std::uint64_t kScanLimit = 1ull << 22;

// All x mod q with x^2 = a (mod q), q = p^k a prime power.
// k >= 2 only occurs with q below kScanLimit in this codebase, so those cases
// fall back to a direct scan; k == 1 odd uses Tonelli-Shanks.
std::vector<std::uint64_t> sqrt_mod_prime_power(std::uint64_t a, std::uint64_t p, int k, std::uint64_t q) {
    a %= q;
    if (p != 2 && k == 1) {
        std::int64_t y = sqrt_mod_p(a, p);
        if (y < 0) return {};
        std::uint64_t yy = static_cast<std::uint64_t>(y);
        if (yy == 0) return {0};
        std::uint64_t other = q - yy;
        if (other == yy) return {yy};
        return {std::min(yy, other), std::max(yy, other)};
    }
    if (q <= kScanLimit) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t x = 0; x <= q / 2; ++x) {
            if (mulmod(x, x, q) == a) {
                out.push_back(x);
                std::uint64_t nx = (q - x) % q;
                if (nx != x) out.push_back(nx);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    if (p == 2) {
        // Lift from q/2; each root extends to x or x + q/2.
        auto prev = sqrt_mod_prime_power(a % (q / 2), 2, k - 1, q / 2);
        std::vector<std::uint64_t> out;
        for (std::uint64_t x : prev)
            for (std::uint64_t cand : {x, x + q / 2})
                if (mulmod(cand, cand, q) == a) out.push_back(cand % q);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    // Large odd p^k, k >= 2, with p not dividing a: Hensel lift.
    if (a % p == 0) throw resource_error("sqrt_mod_prime_power: unsupported ramified large modulus");
    std::int64_t y0 = sqrt_mod_p(a % p, p);
    if (y0 < 0) return {};
    std::uint64_t mod = p, y = static_cast<std::uint64_t>(y0);
    while (mod < q) {
        std::uint64_t mod2 = mod * p;
        std::uint64_t diff = (mulmod(y, y, mod2) + mod2 - a % mod2) % mod2;
        std::uint64_t inv = invmod(2 * y % mod2, mod2);
        y = (y + mod2 - mulmod(diff, inv, mod2)) % mod2;
        mod = mod2;
    }
    return {std::min(y, q - y), std::max(y, q - y)};
}

}  // namespace

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    std::uint64_t ua = a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a);
    std::uint64_t ub = b < 0 ? static_cast<std::uint64_t>(-(b + 1)) + 1 : static_cast<std::uint64_t>(b);
    return static_cast<std::int64_t>(gcd_u64(ua, ub));
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin base set for 64-bit inputs.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

bool Factored::is_squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& pe) { return pe.second == 1; });
}

std::uint64_t Factored::totient() const {
    std::uint64_t t = 1;
    for (const auto& [p, e] : factors) {
        t *= p - 1;
        for (int i = 1; i < e; ++i) t *= p;
    }
    return t;
}

std::vector<std::uint64_t> Factored::divisors() const {
    std::vector<std::uint64_t> ds{1};
    for (const auto& [p, e] : factors) {
        std::size_t n = ds.size();
        std::uint64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < n; ++j) ds.push_back(ds[j] * pk);
        }
    }
    return ds;
}

Factored factor(std::int64_t n) {
    if (n == 0) throw domain_error("factor: zero input");
    Factored out;
    out.value = n;
    std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);

    for (std::uint32_t p : small_primes()) {
        if (static_cast<std::uint64_t>(p) * p > m) break;
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.factors.emplace_back(p, e);
        }
    }
    std::vector<std::uint64_t> stack;
    if (m > 1) stack.push_back(m);
    std::vector<std::pair<std::uint64_t, int>> big;
    while (!stack.empty()) {
        std::uint64_t v = stack.back();
        stack.pop_back();
        if (v == 1) continue;
        if (is_prime_u64(v)) {
            big.emplace_back(v, 1);
            continue;
        }
        std::uint64_t d = pollard_rho(v);
        stack.push_back(d);
        stack.push_back(v / d);
    }
    std::sort(big.begin(), big.end());
    for (std::size_t i = 0; i < big.size();) {
        std::size_t j = i;
        int e = 0;
        while (j < big.size() && big[j].first == big[i].first) {
            ++e;
            ++j;
        }
        out.factors.emplace_back(big[i].first, e);
        i = j;
    }
    return out;
}

int kronecker(std::int64_t D, std::int64_t n) {
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        if (D < 0) sign = -sign;
        n = -n;
    }
    int tz = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++tz;
    }
    if (tz > 0) {
        if ((D & 1) == 0) return 0;
        std::int64_t d8 = ((D % 8) + 8) % 8;
        int two = (d8 == 1 || d8 == 7) ? 1 : -1;
        if ((tz & 1) && two == -1) sign = -sign;
    }
    std::int64_t a = D % n;
    if (a < 0) a += n;
    while (a != 0) {
        int tz2 = 0;
        while ((a & 1) == 0) {
            a >>= 1;
            ++tz2;
        }
        if (tz2 & 1) {
            std::int64_t n8 = n % 8;
            if (n8 == 3 || n8 == 5) sign = -sign;
        }
        if ((a % 4 == 3) && (n % 4 == 3)) sign = -sign;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? sign : 0;
}

int kronecker(const Int& D, const Int& n) {
    return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
}

std::int64_t isqrt_exact(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? r : -1;
}

std::vector<std::int64_t> sqrt_mod_4a(std::int64_t D, std::int64_t a) {
    if (a <= 0) throw domain_error("sqrt_mod_4a: a must be positive");
    std::uint64_t m = 4ull * static_cast<std::uint64_t>(a);
    std::uint64_t target =
        static_cast<std::uint64_t>(((D % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) % static_cast<std::int64_t>(m));

    Factored fm = factor(static_cast<std::int64_t>(m));
    std::vector<std::vector<std::uint64_t>> roots_per_pk;
    std::vector<std::uint64_t> moduli;
    for (const auto& [p, e] : fm.factors) {
        std::uint64_t pk = 1;
        for (int i = 0; i < e; ++i) pk *= p;
        auto roots = sqrt_mod_prime_power(target % pk, p, e, pk);
        if (roots.empty()) return {};
        moduli.push_back(pk);
        roots_per_pk.push_back(std::move(roots));
    }

    std::vector<std::uint64_t> xs{0};
    std::uint64_t mod = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        std::uint64_t pk = moduli[i];
        std::uint64_t inv = invmod(mod % pk, pk);
        std::vector<std::uint64_t> next;
        next.reserve(xs.size() * roots_per_pk[i].size());
        for (std::uint64_t x : xs)
            for (std::uint64_t r : roots_per_pk[i]) {
                std::uint64_t diff = (r + pk - x % pk) % pk;
                std::uint64_t t = mulmod(diff, inv, pk);
                next.push_back(x + mod * t);
            }
        xs = std::move(next);
        mod *= pk;
    }

    // Representatives in (-a, a] modulo 2a; x and x + 2a solve the same congruence.
    std::vector<std::int64_t> out;
    std::uint64_t twoa = 2ull * static_cast<std::uint64_t>(a);
    for (std::uint64_t x : xs) {
        std::int64_t b = static_cast<std::int64_t>(x % twoa);
        if (b > a) b -= static_cast<std::int64_t>(twoa);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace singmod::arith
