#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "altrel/qrel.hpp"

using namespace altrel;

namespace {

SupportMultiplier random_sm(const Field& F, size_t n, Rng& rng) {
    SupportMultiplier sm;
    std::vector<bool> used(F->size, false);
    while (sm.x.size() < n) {
        elem v = F->random_element(rng);
        if (!used[v]) { used[v] = true; sm.x.push_back(v); }
    }
    sm.y.resize(n);
    for (auto& v : sm.y) v = F->random_nonzero(rng);
    return sm;
}

std::vector<elem> vectorize_le(const FieldCtx&, const Mat& M) {
    size_t k = M.rows;
    std::vector<elem> v(k * (k + 1) / 2);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i; j < k; ++j) v[pair_le_index(k, i, j)] = M.at(i, j);
    return v;
}

} // namespace

TEST_CASE("pair index maps are bijective") {
    size_t k = 7;
    std::vector<bool> hit_le(k * (k + 1) / 2, false), hit_lt(k * (k - 1) / 2, false);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i; j < k; ++j) {
            size_t idx = pair_le_index(k, i, j);
            REQUIRE(idx < hit_le.size());
            CHECK_FALSE(hit_le[idx]);
            hit_le[idx] = true;
        }
        for (size_t j = i + 1; j < k; ++j) {
            size_t idx = pair_lt_index(k, i, j);
            REQUIRE(idx < hit_lt.size());
            CHECK_FALSE(hit_lt[idx]);
            hit_lt[idx] = true;
        }
    }
}

TEST_CASE("relation code dimension identity and matrix form") {
    for (auto [p, a, m] : {std::array<uint32_t, 3>{2, 2, 2},
                           std::array<uint32_t, 3>{3, 1, 2},
                           std::array<uint32_t, 3>{2, 3, 1}}) {
        auto F = make_field(p, a, m);
        Rng rng(derive_seed(10, p));
        for (int it = 0; it < 8; ++it) {
            size_t k = 3 + rng.below(3), n = k + 1 + rng.below(8);
            Mat V = rand_matrix(*F, k, n, rng);
            if (mat_rank(*F, V) < k) continue;
            MatRelCode rc = quad_rel_code(F, V);
            LinearCode C = make_code(F, V, false);
            // dim of the relation space complements the Schur square
            CHECK(rc.rel.size() == k * (k + 1) / 2 - schur_square_dim(C));
            // every relation annihilates the products
            for (const auto& rel : rc.rel) {
                for (size_t t = 0; t < n; ++t) {
                    elem acc = 0;
                    for (size_t i = 0; i < k; ++i)
                        for (size_t j = i; j < k; ++j) {
                            elem c = rel[pair_le_index(k, i, j)];
                            if (c)
                                acc = F->add(acc, F->mul(c, F->mul(V.at(i, t), V.at(j, t))));
                        }
                    CHECK(acc == 0);
                }
            }
            // matrix forms are symmetric, zero diagonal in characteristic 2,
            // and span a space of the same dimension as the relation code
            Mat vec(rc.mats.size(), k * (k + 1) / 2);
            for (size_t r = 0; r < rc.mats.size(); ++r) {
                const Mat& M = rc.mats[r];
                CHECK(M == transpose(M));
                if (F->char2())
                    for (size_t i = 0; i < k; ++i) CHECK(M.at(i, i) == 0);
                vec.set_row(r, vectorize_le(*F, M));
            }
            CHECK(mat_rank(*F, vec) == rc.rel.size());
        }
    }
}

TEST_CASE("polar identity in odd characteristic") {
    auto F = make_field(5, 1, 2);
    Rng rng(11);
    Mat V = rand_matrix(*F, 4, 9, rng);
    MatRelCode rc = quad_rel_code(F, V);
    REQUIRE(!rc.rel.empty());
    for (size_t r = 0; r < rc.rel.size(); ++r) {
        std::vector<elem> u(4);
        for (auto& v : u) v = F->random_element(rng);
        elem q = 0; // quadratic form value
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i; j < 4; ++j)
                q = F->add(q, F->mul(rc.rel[r][pair_le_index(4, i, j)], F->mul(u[i], u[j])));
        elem bil = 0; // u^T M u
        auto Mu = mat_vec(*F, rc.mats[r], u);
        for (size_t i = 0; i < 4; ++i) bil = F->add(bil, F->mul(u[i], Mu[i]));
        CHECK(bil == F->mul_int(q, 2));
    }
}

TEST_CASE("congruence transport carries one basis onto the other") {
    for (auto [p, a, m] : {std::array<uint32_t, 3>{2, 2, 2}, std::array<uint32_t, 3>{3, 1, 2}}) {
        auto F = make_field(p, a, m);
        Rng rng(derive_seed(12, p));
        for (int it = 0; it < 10; ++it) {
            size_t k = 4, n = 10;
            Mat A = rand_matrix(*F, k, n, rng);
            if (mat_rank(*F, A) < k) continue;
            Mat P = rand_invertible(*F, k, rng);
            Mat B = mat_mul(*F, P, A);
            MatRelCode rca = quad_rel_code(F, A);
            MatRelCode rcb = quad_rel_code(F, B);
            CHECK(rca.rel.size() == rcb.rel.size());
            auto moved = congruence_transport(*F, rcb.mats, P);
            IncrementalSpan span(F, k * (k + 1) / 2);
            for (const Mat& M : rca.mats) span.add(vectorize_le(*F, M));
            for (const Mat& M : moved) CHECK(span.contains(vectorize_le(*F, M)));
        }
    }
}

TEST_CASE("annihilator forms vanish on the matrix code with distinct pivots") {
    auto F = make_field(2, 2, 2);
    Rng rng(13);
    auto sm = random_sm(F, 12, rng);
    KeyInstance key = alternant_key(F, sm, 2);
    Mat A = canonical_dual_basis(key);
    MatRelCode rc = quad_rel_code(F, A);
    LinearForms lf = annihilator_forms(F, rc);
    size_t s = rc.k;
    CHECK(lf.s == s);
    CHECK(lf.nvars == s * (s - 1) / 2);
    // t + dim span(mats on strict upper) = number of variables
    IncrementalSpan span(F, lf.nvars);
    for (const Mat& M : rc.mats) span.add(mat_upper_coords(M));
    CHECK(lf.t() == lf.nvars - span.dim());
    for (const auto& f : lf.forms)
        for (const Mat& M : rc.mats) {
            auto v = mat_upper_coords(M);
            elem acc = 0;
            for (size_t i = 0; i < lf.nvars; ++i) acc = F->add(acc, F->mul(f[i], v[i]));
            CHECK(acc == 0);
        }
    for (size_t i = 1; i < lf.lead.size(); ++i) CHECK(lf.lead[i - 1] < lf.lead[i]);
    auto G = make_field(3, 1, 2);
    MatRelCode dummy;
    dummy.F = G;
    CHECK_THROWS_AS(annihilator_forms(G, dummy), std::invalid_argument);
}

TEST_CASE("block relations live in the matrix code of a GRS power basis") {
    for (auto [p, a, m] : {std::array<uint32_t, 3>{2, 2, 2}, std::array<uint32_t, 3>{5, 1, 2}}) {
        auto F = make_field(p, a, m);
        Rng rng(derive_seed(14, p));
        size_t r = 4, n = 12;
        auto sm = random_sm(F, n, rng);
        // rows y x^a for a < r: the block the relations are written on
        Mat V(r, n);
        for (size_t i = 0; i < n; ++i) {
            elem pw = sm.y[i];
            for (size_t aa = 0; aa < r; ++aa) {
                V.at(aa, i) = pw;
                pw = F->mul(pw, sm.x[i]);
            }
        }
        MatRelCode rc = quad_rel_code(F, V);
        IncrementalSpan span(F, r * (r + 1) / 2);
        for (const Mat& M : rc.mats) span.add(vectorize_le(*F, M));
        auto gens = block_relation_basis(*F, r);
        CHECK(gens.size() == 3); // r = 4
        for (const Mat& M : gens) CHECK(span.contains(vectorize_le(*F, M)));
    }
    auto F2 = make_field(2, 1, 1);
    CHECK(block_relation_basis(*F2, 6).size() == 13);
}

TEST_CASE("rank census on small block spaces") {
    // r=3 characteristic 2: one generator m_02, rank 2 whenever nonzero
    auto F4 = make_field(2, 2, 1);
    auto h = rank_census_blocks(F4, 3);
    CHECK(h == std::vector<uint64_t>{1, 0, 3, 0});
    // r=3 odd: the single relation matrix has rank 3 for every nonzero scale
    auto F3 = make_field(3, 1, 1);
    CHECK(rank_census_blocks(F3, 3) == std::vector<uint64_t>{1, 0, 0, 2});

    // r=4 over GF(2): cross-check with a hand-rolled enumeration
    auto F2 = make_field(2, 1, 1);
    auto hist = rank_census_blocks(F2, 4);
    auto gens = block_relation_basis(*F2, 4);
    REQUIRE(gens.size() == 3);
    std::vector<uint64_t> ref(5, 0);
    for (unsigned mask = 0; mask < 8; ++mask) {
        // GF(2) ranks via bit elimination, independent of mat_rank
        std::vector<unsigned> rows(4, 0);
        for (unsigned g = 0; g < 3; ++g)
            if (mask >> g & 1)
                for (size_t i = 0; i < 4; ++i)
                    for (size_t j = 0; j < 4; ++j)
                        if (gens[g].at(i, j)) rows[i] ^= 1u << j;
        size_t rank = 0;
        for (unsigned col = 0; col < 4; ++col) {
            size_t piv = rank;
            while (piv < 4 && !(rows[piv] >> col & 1)) ++piv;
            if (piv == 4) continue;
            std::swap(rows[rank], rows[piv]);
            for (size_t i = 0; i < 4; ++i)
                if (i != rank && (rows[i] >> col & 1)) rows[i] ^= rows[rank];
            ++rank;
        }
        ++ref[rank];
    }
    CHECK(hist == ref);

    // span too large to enumerate
    CHECK_THROWS_AS(rank_census_blocks(F4, 8), budget_error);
}

TEST_CASE("verified low-rank subspace dimensions") {
    Rng rng(15);
    {
        auto F = make_field(2, 2, 2); // q=4, m=2
        KeyInstance key = random_key(F, KeyInstance::Kind::alternant, 4, 14, rng);
        CHECK(low_rank_space_dim(key) == 1); // floor((r-1)/2)
    }
    {
        auto F = make_field(2, 1, 4); // binary, m=4
        KeyInstance key = random_key(F, KeyInstance::Kind::goppa, 3, 16, rng);
        CHECK(low_rank_space_dim(key) == 2); // r-1
    }
    {
        auto F = make_field(3, 1, 2);
        KeyInstance key = random_key(F, KeyInstance::Kind::alternant, 3, 8, rng);
        CHECK_THROWS_AS(low_rank_space_dim(key), std::invalid_argument);
    }
}
