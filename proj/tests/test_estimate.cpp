#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "altrel/estimate.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace altrel;

namespace {

// every t x t symmetric (or zero-diagonal) matrix over GF(q), rank histogram
std::vector<BigInt> rank_histogram(uint32_t t, uint32_t q, bool skew) {
    Field F = make_field(q, 1, 1);
    uint32_t nfree = skew ? t * (t - 1) / 2 : t * (t + 1) / 2;
    uint64_t total = 1;
    for (uint32_t i = 0; i < nfree; ++i) total *= q;
    std::vector<BigInt> hist(t + 1, 0);
    for (uint64_t code = 0; code < total; ++code) {
        Mat M(t, t);
        uint64_t c = code;
        for (uint32_t i = 0; i < t; ++i)
            for (uint32_t j = skew ? i + 1 : i; j < t; ++j) {
                elem v = F->from_int(c % q);
                c /= q;
                M.at(i, j) = v;
                M.at(j, i) = skew ? F->neg(v) : v;
            }
        ++hist[mat_rank(*F, M)];
    }
    return hist;
}

} // namespace

TEST_CASE("square distinguishability thresholds match the worked examples") {
    ParamSet a{200, 4, 4, 4};
    DistVerdict va = square_dist_alternant(a);
    CHECK(va.e == 0);
    CHECK(va.threshold == 124);
    CHECK(va.distinguishable);
    a.n = 124;
    CHECK_FALSE(square_dist_alternant(a).distinguishable);
    a.n = 125;
    CHECK(square_dist_alternant(a).distinguishable);

    ParamSet b{45, 7, 2, 4};
    DistVerdict vb = square_dist_alternant(b);
    CHECK(vb.threshold == 30);
    CHECK(vb.distinguishable);
    b.n = 30;
    CHECK_FALSE(square_dist_alternant(b).distinguishable);

    ParamSet g{200, 4, 4, 4};
    DistVerdict vg = square_dist_goppa(g);
    CHECK(vg.e == 1);
    CHECK(vg.threshold == 96);
    CHECK(vg.distinguishable);
    g.n = 96;
    CHECK_FALSE(square_dist_goppa(g).distinguishable);

    // below the r < q-1 cut the Goppa correction only sees (r-1)(r-2)
    ParamSet g8{45, 8, 2, 4};
    CHECK(square_dist_goppa(g8).e == 0);
    CHECK(square_dist_goppa(g8).threshold == 30);

    // r = 2 alternant: correction term vanishes, threshold is the full C(rm+1,2)
    ParamSet t2{60, 8, 2, 2};
    CHECK(square_dist_alternant(t2).threshold == 10);
    ParamSet t2g{60, 8, 2, 2}; // degenerate small-r Goppa branch still answers
    CHECK(square_dist_goppa(t2g).threshold == 10);

    CHECK(e_alternant(2, 64) == 5);
    CHECK(e_alternant(7, 4) == 0);
    CHECK(e_alternant(2, 3) == 1);
    CHECK(e_goppa(4, 4) == 1);
    CHECK(e_goppa(2, 64) == 7); // min i with 64 <= 2^i, plus one
}

TEST_CASE("dual square bound clamps at n and dominates measured dimensions") {
    ParamSet a{45, 7, 2, 4};
    CHECK(mt22_sq_dual_bound(a, KeyInstance::Kind::alternant) == 30);
    a.n = 25; // below the threshold the length itself is the cap
    CHECK(mt22_sq_dual_bound(a, KeyInstance::Kind::alternant) == 25);

    Field F = make_field(7, 1, 2);
    Rng rng(4242);
    for (int it = 0; it < 5; ++it) {
        KeyInstance key = random_key(F, KeyInstance::Kind::alternant, 4, 45, rng);
        size_t sq = schur_square_dim(dual(key.pub));
        CHECK((int64_t)sq <= 30);
        // a random code of the same parameters fills the full quadratic space
        LinearCode rnd = random_code(F, 45, 45 - 8, rng);
        CHECK(schur_square_dim(dual(rnd)) == 36); // C(8+1, 2)
    }

    Field F4 = make_field(2, 2, 4);
    Rng rng2(99);
    KeyInstance gop = random_key(F4, KeyInstance::Kind::goppa, 4, 140, rng2);
    ParamSet g{140, 4, 4, 4};
    int64_t bound = mt22_sq_dual_bound(g, KeyInstance::Kind::goppa);
    CHECK(bound == 96);
    CHECK((int64_t)schur_square_dim(dual(gop.pub)) <= bound);
}

TEST_CASE("rank counts match exhaustive enumeration") {
    for (uint32_t q : {2u, 3u}) {
        for (uint32_t t = 1; t <= 3; ++t) {
            auto hist = rank_histogram(t, q, false);
            for (uint32_t rk = 0; rk <= t; ++rk) CHECK(count_sym_rank(t, rk, q) == hist[rk]);
        }
        for (uint32_t t = 1; t <= 4; ++t) {
            auto hist = rank_histogram(t, q, true);
            for (uint32_t rk = 0; rk <= t; ++rk) CHECK(count_skew_rank(t, rk, q) == hist[rk]);
        }
    }

    CHECK(count_skew_rank(3, 2, 2) == 7);
    CHECK(count_sym_rank(4, 0, 5) == 1);
    CHECK(count_skew_rank(5, 3, 3) == 0);

    // ranks partition the whole space: q^(t(t+1)/2) symmetric, q^(t(t-1)/2) alternating
    for (uint32_t q : {2u, 3u, 4u}) {
        for (uint32_t t : {4u, 6u, 9u}) {
            BigInt sym = 0, skw = 0, full = 1;
            for (uint32_t rk = 0; rk <= t; ++rk) {
                sym += count_sym_rank(t, rk, q);
                skw += count_skew_rank(t, rk, q);
            }
            for (uint32_t i = 0; i < t * (t + 1) / 2; ++i) full *= q;
            CHECK(sym == full);
            BigInt fskw = 1;
            for (uint32_t i = 0; i < t * (t - 1) / 2; ++i) fskw *= q;
            CHECK(skw == fskw);
        }
    }

    CHECK_THROWS_AS(count_sym_rank(3, 4, 2), std::invalid_argument);
}

TEST_CASE("low-rank existence thresholds") {
    ParamSet p{20, 3, 3, 4}; // rm = 12, C(13,2) = 78 > n
    CHECK(gv_rank_threshold(p, 2, false) == (20 <= 2 * 12 - 1));
    p.n = 23;
    CHECK(gv_rank_threshold(p, 2, false));
    p.n = 24;
    CHECK_FALSE(gv_rank_threshold(p, 2, false)); // boundary at 2rm - 1
    CHECK(gv_rank_threshold(p, 2, true));        // skew rank 2 reaches 3rm - 3

    // rank-3 symmetric and rank-2 alternating share a threshold
    for (auto [n, q, m, r] : {std::tuple<uint64_t, uint32_t, uint32_t, uint32_t>{24, 3, 3, 4},
                              {60, 8, 2, 8},
                              {120, 2, 8, 6}}) {
        ParamSet s{n, q, m, r};
        CHECK(gv_rank_threshold(s, 3, false) == gv_rank_threshold(s, 2, true));
    }

    ParamSet bad{12, 4, 2, 2}; // C(5,2) = 10 < n: matrix code fills everything
    CHECK_THROWS_AS(gv_rank_threshold(bad, 2, false), std::invalid_argument);
}

TEST_CASE("key guessing cost counts irreducible polynomials exactly") {
    // monic irreducible quadratics and cubics over GF(9), by brute force
    Field F9 = make_field(3, 2, 1);
    uint64_t irr2 = 0, irr3 = 0;
    for (uint32_t b = 0; b < 9; ++b)
        for (uint32_t c = 0; c < 9; ++c) {
            Poly f = poly_from({(elem)c, (elem)b, 1});
            if (poly_roots(*F9, f).empty()) ++irr2; // quadratic with no root
            for (uint32_t d = 0; d < 9; ++d) {
                Poly g = poly_from({(elem)d, (elem)c, (elem)b, 1});
                if (poly_roots(*F9, g).empty()) ++irr3; // cubic with no root
            }
        }
    CHECK(irr2 == 36);  // (9^2 - 9)/2
    CHECK(irr3 == 240); // (9^3 - 9)/3

    // full support keeps only the polynomial count
    ParamSet p2{9, 3, 2, 2};
    CHECK(keyattack_log2(p2) == doctest::Approx(std::log2(36.0)));
    ParamSet p3{9, 3, 2, 3};
    CHECK(keyattack_log2(p3) == doctest::Approx(std::log2(240.0)));

    // mu(2) kicks in: r = 4 over GF(4) gives (4^4 - 4^2)/4 = 60
    ParamSet p4{4, 2, 2, 4};
    CHECK_THROWS_AS(keyattack_log2(p4), std::invalid_argument); // n = rm not allowed
    ParamSet p5{16, 2, 4, 3};
    CHECK(keyattack_log2(p5) == doctest::Approx(std::log2((4096.0 - 16.0) / 3)));
}

TEST_CASE("parameter table costs are reproduced") {
    struct Row {
        uint64_t n;
        uint32_t r, m, dreg;
        double key, dense, sparse;
    };
    const Row rows[] = {
        {3488, 64, 12, 84, 3238, 3141, 2231},
        {4608, 96, 13, 212, 9334, 7931, 5643},
        {6688, 128, 13, 229, 7286, 9030, 6425},
        {6960, 119, 13, 169, 6537, 6779, 4822},
        {8192, 128, 13, 154, 1657, 6329, 4501},
    };
    for (const Row& row : rows) {
        CAPTURE(row.n);
        ParamSet p{row.n, 2, row.m, row.r};
        CHECK(dreg_random(p.s(), (uint64_t)p.k()) == row.dreg);
        CHECK(std::abs(keyattack_log2(p) - row.key) < 1.0);
        CHECK(std::abs(dist_cost_log2(p, row.dreg, CostMode::sparse) - row.sparse) < 2.0);
        // omega = 2.807 reproduces the published dense column (see README)
        CHECK(std::abs(dist_cost_log2(p, row.dreg, CostMode::dense, 2.807) - row.dense) < 8.0);
    }

    // the last row has full support: the support-guessing factor is one
    ParamSet full{8192, 2, 13, 128};
    CHECK(keyattack_log2(full) == doctest::Approx(1657.0).epsilon(1e-6));

    // sparse beats dense everywhere in the table
    for (const Row& row : rows) {
        ParamSet p{row.n, 2, row.m, row.r};
        CHECK(dist_cost_log2(p, row.dreg, CostMode::sparse) <
              dist_cost_log2(p, row.dreg, CostMode::dense));
    }
}

TEST_CASE("sublinear regime exponents") {
    SublinearPoint pt = sublinear_exponents(0.5, 0.25, 1u << 20);
    CHECK(pt.key == doctest::Approx(1024.0));
    CHECK(pt.message == doctest::Approx(512.0));
    CHECK(pt.dist == doctest::Approx(10.0)); // 4 * .5 * .25 * 1024^2 / 2^20 * 20

    // distinguisher exponent stays sublinear while alpha < 1
    for (double a : {0.5, 0.6, 0.75, 0.9}) {
        SublinearPoint q = sublinear_exponents(a, 0.25, 1u << 24);
        CHECK(q.dist < (double)(1u << 24));
        CHECK(q.message < q.key);
    }
    CHECK_THROWS_AS(sublinear_exponents(0.3, 0.25, 1024), std::invalid_argument);
    CHECK_THROWS_AS(sublinear_exponents(1.0, 0.25, 1024), std::invalid_argument);
}

TEST_CASE("big integer log2 and parameter validation") {
    CHECK(big_log2(BigInt(1)) == 0.0);
    CHECK(big_log2(BigInt(1) << 100) == doctest::Approx(100.0));
    BigInt x = BigInt(3) << 200;
    CHECK(big_log2(x) == doctest::Approx(200.0 + std::log2(3.0)));
    CHECK_THROWS_AS(big_log2(BigInt(0)), std::invalid_argument);

    ParamSet bad{10, 2, 3, 4}; // rm = 12 >= n
    CHECK_THROWS_AS(validate_params(bad), std::invalid_argument);
    ParamSet big{300, 2, 4, 3}; // n > q^m = 16
    CHECK_THROWS_AS(validate_params(big), std::invalid_argument);
    ParamSet r1{10, 2, 4, 1};
    CHECK_THROWS_AS(validate_params(r1), std::invalid_argument);
}
