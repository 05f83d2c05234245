#include <doctest.h>

#include <random>
#include <set>

#include "singmod/searches.hpp"

using namespace singmod;
using namespace singmod::searches;

TEST_CASE("sieve agrees with point queries exhaustively to 1e5") {
    auto counts = sieve_class_numbers(100000, 0);
    for (std::int64_t d = -3; d >= -100000; --d) {
        if (!qf::is_valid_discriminant(d)) continue;
        CHECK(static_cast<std::int64_t>(counts[static_cast<std::size_t>(-d)]) == qf::class_number(d));
    }
    // and the class number formula closes the loop on every split
    for (std::int64_t d = -3; d >= -100000; --d) {
        if (!qf::is_valid_discriminant(d)) continue;
        auto spl = qf::split_discriminant(d);
        if (spl.conductor == 1) continue;
        Int h_fund(counts[static_cast<std::size_t>(-spl.fundamental)]);
        auto fund = qf::Discriminant{spl.fundamental, spl.fundamental, 1};
        CHECK(qf::class_number_formula(fund, spl.conductor, h_fund) ==
              Int(counts[static_cast<std::size_t>(-d)]));
    }
}

TEST_CASE("sieve partition determinism") {
    auto one = sieve_class_numbers(20000, 2, 1);
    auto four = sieve_class_numbers(20000, 3, 4);
    auto sixteen = sieve_class_numbers(20000, 4, 16);
    CHECK(one == four);
    CHECK(one == sixteen);
}

TEST_CASE("sieve report basics") {
    auto rep = sieve_report(200, 1, 1);
    CHECK(rep.max_abs_delta_found == 163);
    CHECK(rep.bound == 200);
    CHECK_THROWS_AS(sieve_class_numbers(50000000, 1), resource_error);
    // consistency of the two Watkins stages: every sieve hit with h <= 100
    // stays below the formula bound
    auto rep100 = sieve_report(100000, 100, 0);
    CHECK(rep100.max_abs_delta_found <= watkins_extension_bound());
}

TEST_CASE("watkins formula stage") {
    std::int64_t f = 0;
    CHECK(watkins_extension_bound(&f) == 28753200);
    CHECK(f == 420);
    CHECK(watkins_dmax(1) == 163);
    CHECK(watkins_dmax(100) == 2383747);
    CHECK(watkins_dmax(50) == 462883);
    CHECK(watkins_dmax(7) == 5923);
    CHECK_THROWS_AS(watkins_dmax(11), domain_error);
    // every n = floor(100/phi(f)) the formula stage queries is in the table
    for (std::int64_t ff = 1; ff <= 5000; ++ff) {
        auto phi = static_cast<std::int64_t>(arith::factor(ff).totient());
        if (phi > 100) continue;
        CHECK_NOTHROW(watkins_dmax(static_cast<int>(100 / phi)));
    }
    // the -3/-4 branch peaks at f = 1260: 4 * 1260^2 = 6350400 < 28753200
    CHECK(4 * 1260 * 1260 == 6350400);
}

TEST_CASE("capped class number") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
        std::int64_t d = -3 - static_cast<std::int64_t>(rng() % 300000);
        if (!qf::is_valid_discriminant(d)) continue;
        std::int64_t h = qf::class_number(d);
        CHECK(class_number_capped(d, h) == h);
        if (h > 1) CHECK(class_number_capped(d, h - 1) == -1);
    }
}

TEST_CASE("two-elementary enumeration reproduces the counts") {
    auto plain = enumerate_two_elementary(false, 0);
    CHECK(plain.count == 101);
    CHECK(plain.max_abs == 7392);
    CHECK(plain.max_h <= 16);
    auto almost = enumerate_two_elementary(true, 0);
    CHECK(almost.count == 425);
    CHECK(almost.max_abs == 87360);
    CHECK(almost.max_h <= 64);

    // nested: every 2-elementary discriminant appears among the almost ones
    std::set<std::int64_t> almost_set;
    for (const auto& e : almost.discriminants) almost_set.insert(e.delta);
    for (const auto& e : plain.discriminants) CHECK(almost_set.count(e.delta) == 1);

    // every reported discriminant re-verifies through the direct summary
    for (const auto& e : plain.discriminants) {
        auto s = qf::class_group_summary(e.delta);
        CHECK(s.is_two_elementary);
        CHECK(s.h == e.h);
    }
    for (const auto& e : almost.discriminants) {
        auto s = qf::class_group_summary(e.delta);
        CHECK(s.is_almost_two_elementary);
        CHECK(s.h == e.h);
    }
    // sorted by |delta|
    for (std::size_t i = 1; i < almost.discriminants.size(); ++i)
        CHECK(-almost.discriminants[i - 1].delta <= -almost.discriminants[i].delta);
    CHECK(plain.exceptional_discriminant_caveat);
}

TEST_CASE("tatuzawa constants and the omega cap consistency") {
    TatuzawaParams params;
    CHECK(params.epsilon == Rat(6, 125));
    CHECK(params.floor_abs == 1116353418);
    CHECK(params.coef == 26549);
    CHECK(params.omega_cap == 11);
    // 4 * (3 * 5 * ... * 37) exceeds the floor
    Int prod = 4;
    for (int p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) prod *= p;
    CHECK(prod > params.floor_abs);
    // and 26549 * 4.635^n > 1116353418 for n >= 7
    Rat band(params.coef);
    for (int i = 0; i < 7; ++i) band *= params.base;
    CHECK(band > params.floor_abs);
}
