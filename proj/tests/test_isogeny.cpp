#include <doctest.h>

#include <algorithm>
#include <random>

#include "singmod/isogeny.hpp"

using namespace singmod;
using namespace singmod::iso;

TEST_CASE("q_set anchors") {
    auto q12 = q_set(12);
    std::vector<Rat> want;
    for (auto [n, d] : {std::pair<int, int>{1, 12}, {1, 3}, {3, 4}, {4, 3}, {3, 1}, {12, 1}}) {
        Rat r(n, d);
        r.canonicalize();
        want.push_back(r);
    }
    std::sort(want.begin(), want.end());
    CHECK(q12.ratios == want);
    CHECK(q_set(1).ratios == std::vector<Rat>{Rat(1)});
    CHECK(q_set(7).ratios == std::vector<Rat>{Rat(1, 7), Rat(7)});
}

TEST_CASE("q_set closure under inversion and divisor identity") {
    for (std::int64_t n = 1; n <= 10000; ++n) {
        auto qs = q_set(n);
        for (const auto& r : qs.ratios) {
            Rat inv = 1 / r;
            CHECK(std::binary_search(qs.ratios.begin(), qs.ratios.end(), inv));
        }
        std::vector<Rat> gen;
        for (std::int64_t d = 1; d <= n; ++d)
            if (n % d == 0) {
                Rat r(d, n / d);
                r.canonicalize();
                gen.push_back(r);
            }
        std::sort(gen.begin(), gen.end());
        gen.erase(std::unique(gen.begin(), gen.end()), gen.end());
        CHECK(gen == qs.ratios);
    }
}

TEST_CASE("upper-triangular criterion: identity and hypothesis check") {
    QuadPoint z{0, 1, -16};
    CHECK(isogenous_upper_triangular(z, z, 1));
    QuadPoint small{0, 1, -4};
    CHECK_THROWS_AS(isogenous_upper_triangular(small, small, 3), domain_error);
}

TEST_CASE("dominant and subdominant points are 2-isogenous, not 3") {
    // -1019 = 5 mod 8 admits no subdominant form at all; -1007 = 1 mod 8 does.
    CHECK(qf::reduced_forms(-1019).size() == qf::class_number(-1019));
    for (const auto& f : qf::reduced_forms(-1019)) CHECK(f.a != 2);

    auto forms = qf::reduced_forms(-1007);
    REQUIRE(forms[0] == qf::ReducedForm{1, 1, 252});
    QuadPoint z{forms[0].b, forms[0].a, -1007};
    bool found2 = false;
    for (const auto& f : forms)
        if (f.a == 2) {
            QuadPoint w{f.b, f.a, -1007};
            if (isogenous_upper_triangular(z, w, 2)) found2 = true;
            CHECK_FALSE(isogenous_upper_triangular(z, w, 3));
        }
    CHECK(found2);
}

TEST_CASE("admissible denominators: worked instances from the 1 mod 24 case") {
    CHECK(admissible_denominators(6, 3, 2, 3, true) == std::vector<std::int64_t>{3, 27});
    CHECK(admissible_denominators(6, 9, 2, 3, true) == std::vector<std::int64_t>{9, 81});
    CHECK(admissible_denominators(1, 7, 1, 1, true) == std::vector<std::int64_t>{7});
    CHECK_THROWS_AS(admissible_denominators(6, 3, 2, 3, false), domain_error);
}

TEST_CASE("admissible denominators stay within the 1/n..n window") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 60);
        std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 50);
        std::int64_t f = 1 + static_cast<std::int64_t>(rng() % 6);
        std::int64_t tf = 1 + static_cast<std::int64_t>(rng() % 6);
        for (std::int64_t ay : admissible_denominators(n, a, f, tf, true)) {
            Rat lo = Rat(a, f) / Rat(n);
            Rat hi = Rat(a, f) * Rat(n);
            Rat v(ay, tf);
            CHECK(v >= lo);
            CHECK(v <= hi);
        }
    }
}

TEST_CASE("constructive isogeny degrees") {
    auto d23 = qf::split_discriminant(-23);
    auto forms23 = qf::reduced_forms(-23);
    CHECK(construct_isogeny_degree({forms23[0], d23}, {forms23[2], d23}) == 2);

    auto d7 = qf::split_discriminant(-7);
    auto d28 = qf::split_discriminant(-28);
    CHECK(construct_isogeny_degree({qf::ReducedForm{1, 1, 2}, d7}, {qf::ReducedForm{1, 0, 7}, d28}) == 2);

    auto d1019 = qf::split_discriminant(-1019);
    qf::ReducedForm s1{2, 1, (1 + 1019) / 8};
    qf::ReducedForm s2{2, -1, (1 + 1019) / 8};
    CHECK(construct_isogeny_degree({s1, d1019}, {s2, d1019}) == 4);
    CHECK(construct_isogeny_degree({s1, d1019}, {s1, d1019}) == 1);

    auto d244 = qf::split_discriminant(-244);
    qf::ReducedForm g1{5, 4, 13}, g2{5, -4, 13};
    REQUIRE(g1.discriminant() == -244);
    CHECK_FALSE(construct_isogeny_degree({g1, d244}, {g2, d244}).has_value());
}

TEST_CASE("constructive degree agrees with the upper-triangular predicate") {
    std::mt19937_64 rng(99);
    int agreements = 0;
    while (agreements < 200) {
        std::int64_t d = -3 - static_cast<std::int64_t>(rng() % 400000);
        if (!qf::is_valid_discriminant(d)) continue;
        auto forms = qf::reduced_forms(d);
        if (forms.size() < 2) continue;
        const auto& x = forms[0];  // dominant
        const auto& y = forms[rng() % forms.size()];
        if (arith::gcd_i64(x.a, y.a) != 1) continue;
        std::int64_t n = x.a * y.a;
        if (-d < 4 * n * n * x.a * x.a) continue;  // predicate hypothesis Im z >= n
        auto dd = qf::split_discriminant(d);
        auto deg = construct_isogeny_degree({x, dd}, {y, dd});
        REQUIRE(deg.has_value());
        CHECK(*deg == n);
        CHECK(isogenous_upper_triangular({x.b, x.a, d}, {y.b, y.a, d}, n));
        ++agreements;
    }
}
