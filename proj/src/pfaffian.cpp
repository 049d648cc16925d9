#include "altrel/pfaffian.hpp"

#include <algorithm>
#include <chrono>

namespace altrel {

std::vector<PfaffQuadric> pfaffian_quadrics(size_t s) {
    std::vector<PfaffQuadric> out;
    if (s < 4) return out;
    out.reserve(s * (s - 1) * (s - 2) * (s - 3) / 24);
    for (uint32_t i = 0; i < s; ++i)
        for (uint32_t j = i + 1; j < s; ++j)
            for (uint32_t k = j + 1; k < s; ++k)
                for (uint32_t l = k + 1; l < s; ++l)
                    out.push_back(PfaffQuadric{{
                        {(uint32_t)pair_lt_index(s, i, j), (uint32_t)pair_lt_index(s, k, l)},
                        {(uint32_t)pair_lt_index(s, i, k), (uint32_t)pair_lt_index(s, j, l)},
                        {(uint32_t)pair_lt_index(s, i, l), (uint32_t)pair_lt_index(s, j, k)},
                    }});
    return out;
}

PfaffianSystem build_system(Field F, const LinearCode& pub, uint64_t seed) {
    if (pub.F != F) throw std::invalid_argument("field mismatch");
    LinearCode ext = extend_field(dual(pub));
    Mat B = frobenius_closed_basis(ext, seed);
    MatRelCode rc = quad_rel_code(F, B);
    PfaffianSystem sys;
    sys.F = std::move(F);
    sys.s = ext.dim();
    sys.n = pub.n();
    sys.k = pub.dim();
    sys.forms = annihilator_forms(sys.F, rc);
    return sys;
}

// ---------------- big binomials and series predictions ----------------

namespace {

BigInt bi_binom(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i; // exact at every step
    }
    return r;
}

// Hilbert values for degrees 0..d with the vanishing cascade applied
std::vector<BigInt> hf_random_sequence(uint64_t s, uint64_t k, uint64_t d) {
    std::vector<BigInt> nar(d + 1), ck(d + 1), out(d + 1);
    for (uint64_t j = 0; j <= d; ++j) nar[j] = narayana_hf(s, j);
    for (uint64_t i = 0; i <= d; ++i) ck[i] = bi_binom(k, i);
    bool dead = false;
    for (uint64_t dd = 0; dd <= d; ++dd) {
        if (dead) { out[dd] = 0; continue; }
        BigInt raw = 0;
        for (uint64_t i = 0; i <= dd; ++i) {
            BigInt term = ck[i] * nar[dd - i];
            raw += (i % 2) ? -term : term;
        }
        out[dd] = raw > 0 ? raw : BigInt(0);
        if (dd >= 1 && out[dd] == 0) dead = true;
    }
    return out;
}

} // namespace

BigInt narayana_hf(uint64_t s, uint64_t d) {
    if (d == 0) return 1;
    if (s == 0) return 0;
    return bi_binom(s + d - 1, d + 1) * bi_binom(s + d - 1, d) / BigInt(s + d - 1);
}

BigInt hf_random_prediction(uint64_t s, uint64_t k, uint64_t d) {
    return hf_random_sequence(s, k, d)[d];
}

uint32_t dreg_random(uint64_t s, uint64_t k) {
    // incremental binomials keep the scan over degrees quadratic overall
    std::vector<BigInt> nar{1}, ck{1};
    BigInt b_up = 0, b_dn = 1; // C(s+d-1, d+1), C(s+d-1, d) as d grows
    for (uint64_t d = 1; d <= s * s + 1; ++d) {
        uint64_t n = s + d - 1;
        if (d == 1) {
            b_up = bi_binom(n, 2);
            b_dn = bi_binom(n, 1);
        } else {
            // C(n, d+1) = C(n-1, d) * n / (d+1), C(n, d) = C(n-1, d-1) * n / d
            b_up = b_up * n / (d + 1);
            b_dn = b_dn * n / d;
        }
        nar.push_back(s == 0 ? BigInt(0) : b_up * b_dn / BigInt(n));
        ck.push_back(ck.back() * BigInt(k >= d ? k - d + 1 : 0) / BigInt(d));
        BigInt raw = 0;
        for (uint64_t i = 0; i <= d; ++i) {
            BigInt term = ck[i] * nar[d - i];
            raw += (i % 2) ? -term : term;
        }
        if (raw <= 0) return (uint32_t)d;
    }
    throw budget_error("random prediction never vanishes below s^2");
}

BigInt goppa_hf_lower_bound(uint64_t r, uint64_t m, uint64_t d) {
    BigInt c = bi_binom(r + d - 2, d);
    return BigInt(m) * (c * c - bi_binom(r + d - 2, d + 1) * bi_binom(r + d - 2, d - 1));
}

// ---------------- Macaulay ranks ----------------

namespace {

// substituted quadric: entries c * m_u m_w on free variables u <= w
struct SparseQuad {
    std::vector<std::array<uint32_t, 2>> uw;
    std::vector<elem> coef;
};

// colex rank of a sorted multiset over [0,v); bijective onto [0, C(v+d-1,d))
struct MonoRank {
    std::vector<std::vector<uint64_t>> binom; // binom[n][k], k <= dmax+1
    MonoRank(uint64_t v, uint64_t dmax) {
        uint64_t nmax = v + dmax;
        binom.assign(nmax + 1, std::vector<uint64_t>(dmax + 2, 0));
        for (uint64_t n = 0; n <= nmax; ++n) {
            binom[n][0] = 1;
            for (uint64_t k = 1; k <= dmax + 1 && k <= n; ++k)
                binom[n][k] = (n == k) ? 1 : binom[n - 1][k - 1] + binom[n - 1][k];
        }
    }
    uint64_t rank(const uint32_t* mono, size_t d) const {
        uint64_t r = 0;
        for (size_t t = 0; t < d; ++t) r += binom[mono[t] + t][t + 1];
        return r;
    }
};

// ascending multisets of fixed size over [0,v); returns false when exhausted
bool next_multiset(std::vector<uint32_t>& m, uint32_t v) {
    if (m.empty()) return false;
    size_t i = m.size();
    while (i-- > 0)
        if (m[i] + 1 < v) {
            uint32_t val = m[i] + 1;
            for (size_t j = i; j < m.size(); ++j) m[j] = val;
            return true;
        }
    return false;
}

std::vector<SparseQuad> substituted_quadrics(const PfaffianSystem& sys) {
    const FieldCtx& F = *sys.F;
    size_t nvars = sys.forms.nvars;
    size_t v = sys.dim_cmat();
    // free variable numbering and per-variable substitution lists
    std::vector<int64_t> free_of(nvars, -1);
    std::vector<int64_t> form_of(nvars, -1);
    for (size_t i = 0; i < sys.forms.t(); ++i) form_of[sys.forms.lead[i]] = (int64_t)i;
    size_t fslot = 0;
    for (size_t u = 0; u < nvars; ++u)
        if (form_of[u] < 0) free_of[u] = (int64_t)fslot++;
    // lead variable -> sparse combination of free variables
    std::vector<std::vector<std::pair<uint32_t, elem>>> sub(sys.forms.t());
    for (size_t i = 0; i < sys.forms.t(); ++i) {
        const auto& f = sys.forms.forms[i];
        for (size_t u = 0; u < nvars; ++u) {
            if (u == sys.forms.lead[i] || f[u] == 0) continue;
            sub[i].push_back({(uint32_t)free_of[u], F.neg(f[u])});
        }
    }

    auto quads = pfaffian_quadrics(sys.s);
    std::vector<SparseQuad> out;
    out.reserve(quads.size());
    size_t npairs = v * (v + 1) / 2;
    std::vector<elem> scratch(npairs, 0);
    std::vector<uint32_t> touched;
    auto bump = [&](uint32_t u, uint32_t w, elem c) {
        if (u > w) std::swap(u, w);
        size_t idx = pair_le_index(v, u, w);
        if (scratch[idx] == 0 && c != 0) touched.push_back((uint32_t)idx);
        scratch[idx] = F.add(scratch[idx], c);
    };
    for (const auto& q : quads) {
        touched.clear();
        for (size_t term = 0; term < q.size(); ++term) {
            const auto& mono = q[term];
            // pfaffian sign pattern + - +; in characteristic 2 all terms are +
            elem sgn = term == 1 ? F.neg(F.scalar(1)) : F.scalar(1);
            uint32_t x = mono[0], y = mono[1];
            bool xf = form_of[x] < 0, yf = form_of[y] < 0;
            if (xf && yf) {
                bump((uint32_t)free_of[x], (uint32_t)free_of[y], sgn);
            } else if (xf || yf) {
                uint32_t fr = (uint32_t)(xf ? free_of[x] : free_of[y]);
                for (auto& [u, c] : sub[xf ? form_of[y] : form_of[x]])
                    bump(fr, u, F.mul(sgn, c));
            } else {
                for (auto& [u, cu] : sub[form_of[x]])
                    for (auto& [w, cw] : sub[form_of[y]]) bump(u, w, F.mul(sgn, F.mul(cu, cw)));
            }
        }
        SparseQuad sq;
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (uint32_t idx : touched) {
            if (scratch[idx] == 0) continue;
            // invert the pair index to recover (u, w)
            uint32_t u = 0;
            size_t base = 0;
            while (base + (v - u) <= idx) { base += v - u; ++u; }
            uint32_t w = (uint32_t)(u + (idx - base));
            sq.uw.push_back({u, w});
            sq.coef.push_back(scratch[idx]);
        }
        for (uint32_t idx : touched) scratch[idx] = 0;
        out.push_back(std::move(sq));
    }
    return out;
}

void check_macaulay_budget(const FieldCtx& F, const BigInt& cols, const BigInt& rows,
                           uint64_t budget_mb) {
    if (rows > (1u << 26)) throw budget_error("Macaulay row count beyond cap");
    if (cols > (1u << 26)) throw budget_error("Macaulay column count beyond cap");
    uint64_t c = (uint64_t)cols;
    // pivot storage dominates: one bit-plane set (or dense row) per pivot
    BigInt bytes = F.p == 2 && F.size <= (1u << 16)
                       ? BigInt(c) * F.e * (((uint64_t)c + 63) / 64) * 8
                       : BigInt(c) * c * 4;
    if (bytes > BigInt(budget_mb) << 20) throw budget_error("Macaulay memory beyond budget");
}

} // namespace

uint64_t macaulay_hf(const PfaffianSystem& sys, uint32_t d, uint64_t budget_mb) {
    const FieldCtx& F = *sys.F;
    size_t v = sys.dim_cmat();
    if (d == 0) return 1;
    if (v == 0) return 0;
    if (d == 1) return v;

    BigInt cols_bi = bi_binom(v + d - 1, d);
    BigInt rows_bi = bi_binom(sys.s, 4) * bi_binom(v + d - 3, d - 2);
    check_macaulay_budget(F, cols_bi, rows_bi, budget_mb);
    uint64_t cols = (uint64_t)cols_bi;

    auto quads = substituted_quadrics(sys);
    MonoRank ranker(v, d);
    RankAccumulator acc(sys.F, cols);

    std::vector<uint32_t> mu(d - 2, 0); // multiplier monomial, degree d-2
    std::vector<elem> row(cols);
    std::vector<uint32_t> mono(d);
    bool more = true;
    while (more) {
        for (const auto& sq : quads) {
            std::fill(row.begin(), row.end(), 0);
            for (size_t t = 0; t < sq.uw.size(); ++t) {
                // merge mu with the pair, keeping the monomial sorted
                std::copy(mu.begin(), mu.end(), mono.begin());
                mono[d - 2] = sq.uw[t][0];
                mono[d - 1] = sq.uw[t][1];
                std::sort(mono.begin(), mono.end());
                uint64_t cidx = ranker.rank(mono.data(), d);
                row[cidx] = F.add(row[cidx], sq.coef[t]);
            }
            acc.add_row(row);
        }
        if (acc.rank() == cols) return 0; // quotient already dead
        more = next_multiset(mu, (uint32_t)v);
    }
    return cols - acc.rank();
}

uint64_t macaulay_hf_direct(const PfaffianSystem& sys, uint32_t d, uint64_t budget_mb) {
    const FieldCtx& F = *sys.F;
    size_t N = sys.forms.nvars;
    if (d == 0) return 1;
    BigInt cols_bi = bi_binom(N + d - 1, d);
    BigInt rows_bi = BigInt(sys.forms.t()) * bi_binom(N + d - 2, d - 1);
    if (d >= 2) rows_bi += bi_binom(sys.s, 4) * bi_binom(N + d - 3, d - 2);
    check_macaulay_budget(F, cols_bi, rows_bi, budget_mb);
    uint64_t cols = (uint64_t)cols_bi;

    MonoRank ranker(N, d);
    RankAccumulator acc(sys.F, cols);
    std::vector<elem> row(cols);
    std::vector<uint32_t> mono(d);

    // linear forms times all monomials of degree d-1
    std::vector<uint32_t> mu(d - 1, 0);
    bool more = true;
    while (more) {
        for (const auto& f : sys.forms.forms) {
            std::fill(row.begin(), row.end(), 0);
            for (uint32_t u = 0; u < N; ++u) {
                if (f[u] == 0) continue;
                std::copy(mu.begin(), mu.end(), mono.begin());
                mono[d - 1] = u;
                std::sort(mono.begin(), mono.end());
                uint64_t cidx = ranker.rank(mono.data(), d);
                row[cidx] = F.add(row[cidx], f[u]);
            }
            acc.add_row(row);
        }
        more = next_multiset(mu, (uint32_t)N);
    }
    // quadrics times all monomials of degree d-2
    if (d >= 2) {
        auto quads = pfaffian_quadrics(sys.s);
        mu.assign(d - 2, 0);
        more = true;
        while (more) {
            for (const auto& q : quads) {
                std::fill(row.begin(), row.end(), 0);
                for (size_t term = 0; term < q.size(); ++term) {
                    const auto& mn = q[term];
                    elem sgn = term == 1 ? F.neg(F.scalar(1)) : F.scalar(1);
                    std::copy(mu.begin(), mu.end(), mono.begin());
                    mono[d - 2] = mn[0];
                    mono[d - 1] = mn[1];
                    std::sort(mono.begin(), mono.end());
                    uint64_t cidx = ranker.rank(mono.data(), d);
                    row[cidx] = F.add(row[cidx], sgn);
                }
                acc.add_row(row);
            }
            more = next_multiset(mu, (uint32_t)N);
        }
    }
    return cols - acc.rank();
}

DistinguishResult distinguish(Field F, const LinearCode& pub, uint32_t d, uint64_t seed,
                              uint64_t budget_mb) {
    auto t0 = std::chrono::steady_clock::now();
    PfaffianSystem sys = build_system(F, pub, seed);
    DistinguishResult res;
    res.n = sys.n;
    res.k = sys.k;
    res.s = sys.s;
    res.d = d;
    res.hf = macaulay_hf(sys, d, budget_mb);
    res.hf_random = hf_random_prediction(sys.s, sys.k, d);
    res.distinguished = BigInt(res.hf) != res.hf_random;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace altrel
