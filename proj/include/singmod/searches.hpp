#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "singmod/quadforms.hpp"

namespace singmod::searches {

using std::int64_t;

struct SieveReport {
    int64_t bound;
    int64_t h_threshold;
    int64_t max_abs_delta_found;
    int64_t count_qualifying;
    double elapsed_seconds;
};

/// h(delta) for every |delta| <= bound, delta = 0,1 mod 4, by one pass over
/// reduced triples. counts[|delta|] = h; other slots stay 0.
/// chunks > 0 splits the a-loop into that many ranges (determinism check).
std::vector<std::uint32_t> sieve_class_numbers(int64_t bound, int threads, int chunks = 0,
                                               const std::function<void(int64_t, int64_t)>& checkpoint = {});

/// Largest |delta| with h <= h_threshold and the number of qualifying delta.
SieveReport sieve_report(int64_t bound, int64_t h_threshold, int threads);

/// Formula stage of the Watkins extension: max over conductors f of
/// f^2 D_max(floor(100 / phi(f))), including the -3/-4 branch.
int64_t watkins_extension_bound(int64_t* argmax_f = nullptr);

/// D_max(n) per Watkins' table for the arguments the formula stage queries.
int64_t watkins_dmax(int n);

struct TwoElementaryEntry {
    int64_t delta;
    int64_t h;
};

struct TwoElementaryReport {
    bool almost;
    std::vector<TwoElementaryEntry> discriminants;  // sorted by |delta|
    int64_t count;
    int64_t max_abs;
    int64_t max_h;
    // Proposition 2.6 guarantees the list only outside one unknown
    // fundamental discriminant of class number >= 128.
    bool exceptional_discriminant_caveat = true;
};

struct TatuzawaParams {
    // Fixed constants of the Tatuzawa stage of Proposition 2.6
    // (0.048, 4.635 held as exact rationals in lowest terms).
    Rat epsilon{Rat(6, 125)};
    int64_t floor_abs = 1116353418;
    int64_t coef = 26549;
    Rat base{Rat(927, 200)};
    int omega_cap = 11;
    int64_t fundamental_bound = 693067;  // Watkins D_max(64)
};

/// All (almost-)2-elementary discriminants: fundamental scan to 693067,
/// conductor extension per Proposition 2.5, flags via the class group summary.
TwoElementaryReport enumerate_two_elementary(bool almost, int threads);

/// Band |D| <= 26549 * 4.635^n, omega(D) = n, for n = 7..11: true iff no
/// almost-2-elementary fundamental discriminant exists there.
bool high_omega_band_check(int threads, std::vector<int64_t>* per_band_candidates = nullptr);

/// h(D) with early abort: returns -1 as soon as the count exceeds cap.
int64_t class_number_capped(int64_t delta, int64_t cap);

}  // namespace singmod::searches
