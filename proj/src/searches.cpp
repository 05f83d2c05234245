#include "singmod/searches.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

namespace singmod::searches {

using arith::gcd_i64;

namespace {

int effective_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void sieve_range(int64_t bound, int64_t a_lo, int64_t a_hi, std::vector<std::uint32_t>& counts) {
    for (int64_t a = a_lo; a < a_hi; ++a) {
        for (int64_t b = -a + 1; b <= a; ++b) {
            int64_t g = gcd_i64(a, b);
            int64_t c_min = a;
            // |delta| = 4ac - b^2 <= bound
            int64_t c_max = (bound + b * b) / (4 * a);
            if (c_max < c_min) continue;
            for (int64_t c = c_min; c <= c_max; ++c) {
                if (c == a && b < 0) continue;
                if (g != 1 && gcd_i64(g, c) != 1) continue;
                int64_t absd = 4 * a * c - b * b;
                if (absd <= 0 || absd > bound) continue;
                ++counts[static_cast<std::size_t>(absd)];
            }
        }
    }
}

}  // namespace

std::vector<std::uint32_t> sieve_class_numbers(int64_t bound, int threads, int chunks,
                                               const std::function<void(int64_t, int64_t)>& checkpoint) {
    if (bound < 3) throw domain_error("sieve_class_numbers: bound too small");
    if (bound > 30000000) throw resource_error("sieve_class_numbers: bound above the 3e7 memory budget");
    int nthreads = effective_threads(threads);
    int64_t a_max = 1;
    while (3 * (a_max + 1) * (a_max + 1) <= bound) ++a_max;

    int nchunks = chunks > 0 ? chunks : 4 * nthreads;
    std::vector<std::pair<int64_t, int64_t>> ranges;
    int64_t step = std::max<int64_t>(1, (a_max + nchunks - 1) / nchunks);
    for (int64_t lo = 1; lo <= a_max; lo += step) ranges.emplace_back(lo, std::min(a_max + 1, lo + step));

    // One accumulation buffer per worker, merged by addition at the end.
    std::vector<std::vector<std::uint32_t>> buffers(static_cast<std::size_t>(nthreads));
    std::atomic<std::size_t> next{0};
    auto worker = [&](int tid) {
        auto& buf = buffers[static_cast<std::size_t>(tid)];
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= ranges.size()) break;
            if (buf.empty()) buf.assign(static_cast<std::size_t>(bound) + 1, 0);
            sieve_range(bound, ranges[idx].first, ranges[idx].second, buf);
            if (checkpoint) checkpoint(ranges[idx].first, ranges[idx].second);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();

    std::vector<std::uint32_t> counts(static_cast<std::size_t>(bound) + 1, 0);
    for (const auto& buf : buffers) {
        if (buf.empty()) continue;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(bound); ++i) counts[i] += buf[i];
    }
    return counts;
}

SieveReport sieve_report(int64_t bound, int64_t h_threshold, int threads) {
    auto start = std::chrono::steady_clock::now();
    auto counts = sieve_class_numbers(bound, threads);
    SieveReport rep{bound, h_threshold, 0, 0, 0.0};
    for (int64_t d = 3; d <= bound; ++d) {
        int64_t r = d % 4;
        if (r != 0 && r != 3) continue;  // |delta| = 0,3 mod 4
        auto h = static_cast<int64_t>(counts[static_cast<std::size_t>(d)]);
        if (h >= 1 && h <= h_threshold) {
            ++rep.count_qualifying;
            rep.max_abs_delta_found = d;
        }
    }
    rep.elapsed_seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

int64_t watkins_dmax(int n) {
    static const std::map<int, int64_t> table = {
        {1, 163},    {2, 427},    {3, 907},    {4, 1555},   {5, 2683},
        {6, 3763},   {7, 5923},   {8, 6307},   {10, 13843}, {12, 17803},
        {16, 34483}, {25, 111763}, {50, 462883}, {100, 2383747},
    };
    auto it = table.find(n);
    if (it == table.end()) throw domain_error("watkins_dmax: argument outside Table 1");
    return it->second;
}

int64_t watkins_extension_bound(int64_t* argmax_f) {
    int64_t best = 0, best_f = 0;
    for (int64_t f = 1; f <= 5000; ++f) {
        auto phi = static_cast<int64_t>(arith::factor(f).totient());
        if (phi <= 100) {
            int n = static_cast<int>(100 / phi);
            int64_t v = f * f * watkins_dmax(n);
            if (v > best) {
                best = v;
                best_f = f;
            }
        }
        // D in {-3, -4}: phi(f) <= 300, |delta| <= 4 f^2.
        if (phi <= 300) {
            int64_t v = 4 * f * f;
            if (v > best) {
                best = v;
                best_f = f;
            }
        }
    }
    if (argmax_f) *argmax_f = best_f;
    return best;
}

int64_t class_number_capped(int64_t delta, int64_t cap) {
    int64_t absd = -delta;
    int64_t count = 0;
    for (int64_t a = 1; 3 * a * a <= absd; ++a) {
        if (a <= 1024) {
            int64_t b0 = -a + 1;
            if ((((b0 - delta) % 2) + 2) % 2 != 0) ++b0;
            for (int64_t b = b0; b <= a; b += 2) {
                int64_t num = b * b - delta;
                if (num % (4 * a) != 0) continue;
                int64_t c = num / (4 * a);
                if (c < a) continue;
                if (c == a && b < 0) continue;
                if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
                if (++count > cap) return -1;
            }
        } else {
            for (int64_t b : arith::sqrt_mod_4a(delta, a)) {
                int64_t c = (b * b - delta) / (4 * a);
                if (c < a) continue;
                if (c == a && b < 0) continue;
                if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
                if (++count > cap) return -1;
            }
        }
    }
    return count;
}

namespace {

// Smallest-prime-factor table.
std::vector<std::int32_t> spf_table(int64_t n) {
    std::vector<std::int32_t> spf(static_cast<std::size_t>(n) + 1, 0);
    for (int64_t i = 2; i <= n; ++i) {
        if (spf[static_cast<std::size_t>(i)] != 0) continue;
        for (int64_t j = i; j <= n; j += i)
            if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
    }
    return spf;
}

struct FundamentalScanHit {
    int64_t d_abs;  // |D|
    int64_t h;
    int64_t two_torsion;
};

bool is_fundamental_abs(int64_t m, const std::vector<std::int32_t>& spf, int* omega_out) {
    // m = |D|; fundamental iff (m = 3 mod 4 squarefree) or
    // (m = 0 mod 4, m/4 squarefree, m/4 = 1,2 mod 4).
    int64_t core = m;
    if (m % 4 == 0) {
        core = m / 4;
        int64_t r = core % 4;
        if (r != 1 && r != 2) return false;
    } else if (m % 4 != 3) {
        return false;
    }
    int omega = 0;
    int64_t v = core;
    bool even_seen = false;
    while (v > 1) {
        int64_t p = spf[static_cast<std::size_t>(v)];
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e > 1) return false;
        if (p == 2) even_seen = true;
        ++omega;
    }
    if (m % 4 == 0 && !even_seen) ++omega;  // the prime 2 from the factor 4
    if (omega_out) *omega_out = omega;
    return true;
}

}  // namespace

TwoElementaryReport enumerate_two_elementary(bool almost, int threads) {
    TatuzawaParams params;
    const int64_t bound = params.fundamental_bound;
    auto spf = spf_table(bound);

    // Stage 1: fundamental scan with early abort at 2^omega.
    int nthreads = effective_threads(threads);
    std::vector<std::vector<FundamentalScanHit>> hits_per_thread(static_cast<std::size_t>(nthreads));
    std::atomic<int64_t> next_block{3};
    constexpr int64_t kBlock = 4096;
    auto worker = [&](int tid) {
        auto& hits = hits_per_thread[static_cast<std::size_t>(tid)];
        for (;;) {
            int64_t lo = next_block.fetch_add(kBlock);
            if (lo > bound) break;
            int64_t hi = std::min(bound, lo + kBlock - 1);
            for (int64_t m = lo; m <= hi; ++m) {
                int omega = 0;
                if (!is_fundamental_abs(m, spf, &omega)) continue;
                int64_t cap = int64_t(1) << omega;  // h | 2^(rho2+1), rho2 <= omega-1
                int64_t h = class_number_capped(-m, cap);
                if (h < 0) continue;
                int64_t t = static_cast<int64_t>(qf::ambiguous_forms(-m).size());
                if ((2 * t) % h != 0) continue;  // not almost 2-elementary
                hits.push_back(FundamentalScanHit{m, h, t});
            }
        }
    };
    {
        std::vector<std::thread> pool;
        for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
        worker(0);
        for (auto& th : pool) th.join();
    }
    std::vector<FundamentalScanHit> hits;
    for (auto& v : hits_per_thread) hits.insert(hits.end(), v.begin(), v.end());
    std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return x.d_abs < y.d_abs; });

    // Stage 2: conductor extension per Proposition 2.5.
    TwoElementaryReport rep;
    rep.almost = almost;
    for (const auto& hit : hits) {
        int64_t D = -hit.d_abs;
        std::vector<int64_t> conductors;
        if (D == -3 || D == -4) {
            int64_t fmax = almost ? 20 : 8;
            for (int64_t f = 1; f <= fmax; ++f) conductors.push_back(f);
        } else {
            int64_t fdiv = almost ? 240 : 24;
            for (int64_t f = 1; f <= fdiv; ++f)
                if (fdiv % f == 0) conductors.push_back(f);
        }
        for (int64_t f : conductors) {
            int64_t delta = D * f * f;
            qf::Discriminant dd{delta, D, f};
            qf::ClassGroupSummary s = qf::class_group_summary_fast(dd, Int(hit.h));
            bool flag = almost ? s.is_almost_two_elementary : s.is_two_elementary;
            if (flag) rep.discriminants.push_back(TwoElementaryEntry{delta, s.h});
        }
    }
    std::sort(rep.discriminants.begin(), rep.discriminants.end(),
              [](const auto& x, const auto& y) { return -x.delta < -y.delta; });
    rep.count = static_cast<int64_t>(rep.discriminants.size());
    rep.max_abs = rep.discriminants.empty() ? 0 : -rep.discriminants.back().delta;
    rep.max_h = 0;
    for (const auto& e : rep.discriminants) rep.max_h = std::max(rep.max_h, e.h);
    return rep;
}

namespace {

// Products of exactly k distinct odd primes <= bound, by DFS; calls f(product).
void dfs_products(const std::vector<int64_t>& primes, std::size_t idx, int k, int64_t prod, int64_t bound,
                  const std::function<void(int64_t)>& f) {
    if (k == 0) {
        f(prod);
        return;
    }
    for (std::size_t i = idx; i < primes.size(); ++i) {
        // Smallest possible completion from here.
        double need = static_cast<double>(prod) * primes[i];
        for (int j = 1; j < k; ++j) {
            if (i + static_cast<std::size_t>(j) >= primes.size()) {
                need = static_cast<double>(bound) * 2;
                break;
            }
            need *= static_cast<double>(primes[i + static_cast<std::size_t>(j)]);
        }
        if (need > static_cast<double>(bound)) break;
        dfs_products(primes, i + 1, k - 1, prod * primes[i], bound, f);
    }
}

std::vector<int64_t> primes_up_to(int64_t n) {
    std::vector<bool> sieve(static_cast<std::size_t>(n) + 1, true);
    std::vector<int64_t> primes;
    for (int64_t p = 3; p <= n; p += 2) {
        if (!sieve[static_cast<std::size_t>(p)]) continue;
        primes.push_back(p);
        for (int64_t q = p * p; q <= n; q += 2 * p) sieve[static_cast<std::size_t>(q)] = false;
    }
    return primes;
}

bool almost_two_elementary_fundamental(int64_t d_abs, int omega) {
    int64_t cap = int64_t(1) << omega;
    int64_t h = class_number_capped(-d_abs, cap);
    if (h < 0) return false;
    int64_t t = static_cast<int64_t>(qf::ambiguous_forms(-d_abs).size());
    return (2 * t) % h == 0;
}

}  // namespace

bool high_omega_band_check(int threads, std::vector<int64_t>* per_band_candidates) {
    TatuzawaParams params;
    bool all_empty = true;
    if (per_band_candidates) per_band_candidates->assign(5, 0);

    for (int n = 7; n <= params.omega_cap; ++n) {
        // band bound: 26549 * 4.635^n, computed exactly as a rational then floored.
        Rat bound_q(params.coef);
        for (int i = 0; i < n; ++i) bound_q *= params.base;
        Int floor_b = bound_q.get_num() / bound_q.get_den();
        int64_t band = floor_b.get_si();

        std::vector<int64_t> candidates;
        {
            // |D| = m, m odd squarefree with n prime factors, m = 3 mod 4.
            static const int64_t kOddPrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
            int64_t maxp = band;
            for (int j = 0; j < n - 1 && j < 11; ++j) maxp /= kOddPrimes[j];
            auto primes = primes_up_to(std::max<int64_t>(maxp + 1, 100));
            dfs_products(primes, 0, n, 1, band, [&](int64_t m) {
                if (m % 4 == 3) candidates.push_back(m);
            });
            // |D| = 4m, m odd squarefree = 1 mod 4, n-1 prime factors.
            dfs_products(primes, 0, n - 1, 1, band / 4, [&](int64_t m) {
                if (m % 4 == 1) candidates.push_back(4 * m);
            });
            // |D| = 8m, m odd squarefree, n-1 prime factors.
            dfs_products(primes, 0, n - 1, 1, band / 8, [&](int64_t m) { candidates.push_back(8 * m); });
        }
        if (per_band_candidates) (*per_band_candidates)[static_cast<std::size_t>(n - 7)] =
            static_cast<int64_t>(candidates.size());

        std::atomic<std::size_t> next{0};
        std::atomic<bool> found{false};
        int nthreads = effective_threads(threads);
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= candidates.size() || found.load()) break;
                if (almost_two_elementary_fundamental(candidates[i], n)) found.store(true);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        if (found.load()) all_empty = false;
    }
    return all_empty;
}

}  // namespace singmod::searches
