#include "altrel/codes.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace altrel {

void validate_support(const FieldCtx& F, const SupportMultiplier& sm) {
    if (sm.x.size() != sm.y.size()) throw std::invalid_argument("support/multiplier length mismatch");
    if (sm.x.empty()) throw std::invalid_argument("empty support");
    std::set<elem> seen;
    for (elem xi : sm.x) {
        if (xi >= F.size) throw std::invalid_argument("support element out of range");
        if (!seen.insert(xi).second) throw std::invalid_argument("repeated support element");
    }
    for (elem yi : sm.y) {
        if (yi >= F.size) throw std::invalid_argument("multiplier element out of range");
        if (yi == 0) throw std::invalid_argument("zero multiplier");
    }
}

LinearCode make_code(Field F, const Mat& rows, bool subfield) {
    LinearCode C;
    C.F = std::move(F);
    C.gen = row_space(*C.F, rows);
    C.subfield = subfield;
    return C;
}

bool code_eq(const LinearCode& A, const LinearCode& B) {
    return A.subfield == B.subfield && A.gen == B.gen;
}

LinearCode grs(Field F, const SupportMultiplier& sm, size_t k) {
    validate_support(*F, sm);
    size_t n = sm.n();
    if (k > n) throw std::invalid_argument("GRS dimension exceeds length");
    Mat G(k, n);
    for (size_t i = 0; i < n; ++i) {
        elem pw = sm.y[i];
        for (size_t a = 0; a < k; ++a) {
            G.at(a, i) = pw;
            pw = F->mul(pw, sm.x[i]);
        }
    }
    return make_code(std::move(F), G, false);
}

SupportMultiplier grs_dual_multiplier(const FieldCtx& F, const SupportMultiplier& sm) {
    validate_support(F, sm);
    size_t n = sm.n();
    SupportMultiplier out;
    out.x = sm.x;
    out.y.resize(n);
    for (size_t i = 0; i < n; ++i) {
        elem prod = sm.y[i]; // y_i * pi'(x_i)
        for (size_t j = 0; j < n; ++j)
            if (j != i) prod = F.mul(prod, F.sub(sm.x[i], sm.x[j]));
        out.y[i] = F.inv(prod);
    }
    return out;
}

namespace {

// Parity rows y_i x_i^a, a < r, raised to the q^j power coordinate-wise.
Mat grs_power_rows(const FieldCtx& F, const SupportMultiplier& sm, size_t r, uint64_t j) {
    size_t n = sm.n();
    Mat H(r, n);
    for (size_t i = 0; i < n; ++i) {
        elem pw = sm.y[i];
        for (size_t a = 0; a < r; ++a) {
            H.at(a, i) = F.frobenius(pw, j);
            pw = F.mul(pw, sm.x[i]);
        }
    }
    return H;
}

} // namespace

LinearCode alternant(Field F, const SupportMultiplier& sm, size_t r) {
    validate_support(*F, sm);
    size_t n = sm.n();
    if (r == 0 || r > n) throw std::invalid_argument("alternant order out of range");
    Mat H = grs_power_rows(*F, sm, r, 0);

    // Solve H c^T = 0 for c in GF(q)^n by expanding each unknown over the
    // GF(p)-basis of the subfield and each equation into its GF(p) digits.
    auto Fp = make_field(F->p, 1, 1);
    const auto& sigma = F->subfield_basis();
    size_t a = F->a, e = F->e;
    Mat M(r * e, n * a);
    for (size_t h = 0; h < r; ++h)
        for (size_t i = 0; i < n; ++i)
            for (size_t u = 0; u < a; ++u) {
                elem coef = F->mul(H.at(h, i), sigma[u]);
                // digit d of coef is the z^d coordinate over GF(p)
                for (size_t d = 0; d < e; ++d) {
                    M.at(h * e + d, i * a + u) = coef % F->p;
                    coef /= F->p;
                }
            }
    Mat K = kernel_basis(*Fp, M);
    Mat G(K.rows, n);
    for (size_t kr = 0; kr < K.rows; ++kr)
        for (size_t i = 0; i < n; ++i) {
            elem v = 0;
            for (size_t u = 0; u < a; ++u)
                v = F->add(v, F->mul_int(sigma[u], K.at(kr, i * a + u)));
            G.at(kr, i) = v;
        }
    return make_code(std::move(F), G, true);
}

LinearCode dual(const LinearCode& C) {
    LinearCode D;
    D.F = C.F;
    // Gaussian elimination on subfield entries stays in the subfield, so the
    // same kernel routine serves both scalar rings
    D.gen = kernel_basis(*C.F, C.gen);
    D.subfield = C.subfield;
    return D;
}

LinearCode extend_field(const LinearCode& C) {
    LinearCode E = C;
    E.subfield = false;
    return E;
}

LinearCode schur_product(const LinearCode& C, const LinearCode& D) {
    if (C.F != D.F || C.n() != D.n()) throw std::invalid_argument("schur_product mismatch");
    const FieldCtx& F = *C.F;
    bool square = C.gen == D.gen;
    size_t kc = C.dim(), kd = D.dim(), n = C.n();
    size_t rows = square ? kc * (kc + 1) / 2 : kc * kd;
    Mat P(rows, n);
    size_t rr = 0;
    for (size_t i = 0; i < kc; ++i)
        for (size_t j = square ? i : 0; j < kd; ++j, ++rr)
            for (size_t t = 0; t < n; ++t)
                P.at(rr, t) = F.mul(C.gen.at(i, t), D.gen.at(j, t));
    return make_code(C.F, P, C.subfield && D.subfield);
}

size_t schur_square_dim(const LinearCode& C) { return schur_product(C, C).dim(); }

LinearCode intersect(const LinearCode& C, const LinearCode& D) {
    if (C.F != D.F || C.n() != D.n() || C.subfield != D.subfield)
        throw std::invalid_argument("intersect mismatch");
    LinearCode dc = dual(C), dd = dual(D);
    return dual(make_code(C.F, mat_stack(dc.gen, dd.gen), C.subfield));
}

KeyInstance alternant_key(Field F, SupportMultiplier sm, uint32_t r) {
    KeyInstance key;
    key.kind = KeyInstance::Kind::alternant;
    key.F = F;
    key.r = r;
    key.pub = alternant(F, sm, r);
    key.sm = std::move(sm);
    return key;
}

KeyInstance goppa_key(Field F, std::vector<elem> x, const Poly& gamma) {
    uint32_t r = (uint32_t)poly_deg(gamma);
    if (r == 0) throw std::invalid_argument("Gamma must have positive degree");
    if (!is_squarefree(*F, gamma)) throw std::invalid_argument("Gamma must be square-free");
    KeyInstance key;
    key.kind = KeyInstance::Kind::goppa;
    key.F = F;
    key.r = r;
    key.gamma = gamma;
    key.sm.x = std::move(x);
    key.sm.y.resize(key.sm.x.size());
    for (size_t i = 0; i < key.sm.x.size(); ++i) {
        elem g = poly_eval(*F, gamma, key.sm.x[i]);
        if (g == 0) throw std::invalid_argument("Gamma vanishes on the support");
        key.sm.y[i] = F->inv(g);
    }
    if (F->q == 2) {
        // binary square-free Gamma gives the same code as Gamma^2; publish
        // the order-2r presentation, n - k still comes out as r*m
        SupportMultiplier sq;
        sq.x = key.sm.x;
        sq.y.resize(key.sm.y.size());
        for (size_t i = 0; i < sq.y.size(); ++i) sq.y[i] = F->mul(key.sm.y[i], key.sm.y[i]);
        key.pub = alternant(F, sq, 2 * r);
    } else {
        key.pub = alternant(F, key.sm, r);
    }
    return key;
}

LinearCode random_code(Field F, size_t n, size_t k, Rng& rng) {
    if (k > n) throw std::invalid_argument("dimension exceeds length");
    // draw k x n over GF(q) until full rank
    for (int tries = 0; tries < 100; ++tries) {
        Mat G(k, n);
        for (auto& v : G.a) {
            uint64_t idx = rng.below(F->q);
            // subfield elements enumerated through the GF(p)-basis
            elem val = 0;
            for (size_t u = 0; u < F->a; ++u) {
                val = F->add(val, F->mul_int(F->subfield_basis()[u], idx % F->p));
                idx /= F->p;
            }
            v = val;
        }
        if (mat_rank(*F, G) == k) return make_code(F, G, true);
    }
    throw retry_cap_error("random code rank deficient repeatedly");
}

namespace {

std::vector<elem> random_distinct(const FieldCtx& F, size_t n, Rng& rng) {
    if (n > F.size) throw std::invalid_argument("support longer than the field");
    if (n * 2 >= F.size) {
        // dense case: partial Fisher-Yates over the whole field
        std::vector<elem> all(F.size);
        for (uint32_t i = 0; i < F.size; ++i) all[i] = i;
        for (size_t i = 0; i < n; ++i)
            std::swap(all[i], all[i + rng.below(F.size - i)]);
        all.resize(n);
        return all;
    }
    std::set<elem> seen;
    std::vector<elem> out;
    while (out.size() < n) {
        elem v = F.random_element(rng);
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

} // namespace

KeyInstance random_key(Field F, KeyInstance::Kind kind, uint32_t r, size_t n, Rng& rng) {
    size_t s = (size_t)r * F->m;
    if (n <= s) throw std::invalid_argument("length must exceed r*m");
    for (int tries = 0; tries < 20; ++tries) {
        KeyInstance key;
        if (kind == KeyInstance::Kind::alternant) {
            SupportMultiplier sm;
            sm.x = random_distinct(*F, n, rng);
            sm.y.resize(n);
            for (auto& v : sm.y) v = F->random_nonzero(rng);
            key = alternant_key(F, std::move(sm), r);
        } else {
            std::vector<elem> x = random_distinct(*F, n, rng);
            Poly gamma;
            bool ok = false;
            for (uint64_t g_tries = 0; g_tries < 64ULL * r * F->e; ++g_tries) {
                gamma.c.assign(r + 1, 0);
                for (uint32_t i = 0; i < r; ++i) gamma.c[i] = F->random_element(rng);
                gamma.c[r] = 1;
                if (!is_squarefree(*F, gamma)) continue;
                bool vanishes = false;
                for (elem xi : x)
                    if (poly_eval(*F, gamma, xi) == 0) { vanishes = true; break; }
                if (!vanishes) { ok = true; break; }
            }
            if (!ok) throw retry_cap_error("no usable Gamma found");
            key = goppa_key(F, std::move(x), gamma);
        }
        if (key.pub.dim() == n - s) return key;
    }
    throw degenerate_error("public code dimension off n - r*m after 20 samples");
}

Mat canonical_dual_basis(const KeyInstance& key) {
    const FieldCtx& F = *key.F;
    size_t r = key.r, m = F.m, n = key.sm.n();
    Mat A(r * m, n);
    for (uint64_t l = 0; l < m; ++l) {
        Mat Hl = grs_power_rows(F, key.sm, r, l);
        for (size_t a = 0; a < r; ++a)
            A.set_row(l * r + a, Hl.row(a));
    }
    return A;
}

Mat frobenius_closed_basis(const LinearCode& C, uint64_t seed) {
    Rng rng(derive_seed(seed, 0xb0b));
    const FieldCtx& F = *C.F;
    size_t k = C.dim(), m = F.m, n = C.n();
    if (k % m != 0) throw std::invalid_argument("dimension not a multiple of m");
    size_t r = k / m;
    // draw b_1..b_r in C at random; the q-power orbit of each stays in C
    // because C is spanned by subfield vectors
    for (int tries = 0; tries < 100; ++tries) {
        Mat B(k, n);
        std::vector<std::vector<elem>> seedrows(r, std::vector<elem>(n, 0));
        for (size_t i = 0; i < r; ++i) {
            for (size_t g = 0; g < k; ++g) {
                elem c = F.random_element(rng);
                if (c == 0) continue;
                for (size_t col = 0; col < n; ++col)
                    seedrows[i][col] = F.add(seedrows[i][col], F.mul(c, C.gen.at(g, col)));
            }
        }
        for (size_t j = 0; j < m; ++j)
            for (size_t i = 0; i < r; ++i) {
                for (size_t col = 0; col < n; ++col)
                    B.at(j * r + i, col) = F.frobenius(seedrows[i][col], j);
            }
        if (mat_rank(F, B) == k) return B;
    }
    throw retry_cap_error("no full-rank Frobenius basis found");
}

} // namespace altrel
