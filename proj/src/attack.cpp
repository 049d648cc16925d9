#include "altrel/attack.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace altrel {

namespace {

// entrywise D2 + w*D1
Mat pencil_at(const FieldCtx& F, const Mat& D1, const Mat& D2, elem w) {
    Mat M(D1.rows, D1.cols);
    for (size_t i = 0; i < M.a.size(); ++i) M.a[i] = F.add(D2.a[i], F.mul(w, D1.a[i]));
    return M;
}

Mat random_span_element(const FieldCtx& F, const std::vector<Mat>& mats, Rng& rng) {
    Mat M(mats[0].rows, mats[0].cols);
    for (const Mat& B : mats) {
        elem c = F.random_element(rng);
        if (c == 0) continue;
        for (size_t i = 0; i < M.a.size(); ++i) M.a[i] = F.add(M.a[i], F.mul(c, B.a[i]));
    }
    return M;
}

} // namespace

std::vector<elem> dickson_shift(const FieldCtx& F, const std::vector<elem>& v,
                                uint32_t r, uint32_t m, uint32_t i) {
    if (v.size() != (size_t)r * m) throw std::invalid_argument("vector is not r*m long");
    i %= m;
    std::vector<elem> out(v.size());
    for (uint32_t u = 0; u < m; ++u)
        for (uint32_t t = 0; t < r; ++t)
            out[(size_t)((u + i) % m) * r + t] = F.frobenius(v[(size_t)u * r + t], i);
    return out;
}

Mat dickson_shift(const FieldCtx& F, const Mat& M, uint32_t r, uint32_t m, uint32_t i) {
    size_t s = (size_t)r * m;
    if (M.rows != s || M.cols != s) throw std::invalid_argument("matrix is not rm x rm");
    i %= m;
    Mat out(s, s);
    for (uint32_t u = 0; u < m; ++u)
        for (uint32_t t = 0; t < r; ++t) {
            size_t row = (size_t)u * r + t, srow = (size_t)((u + i) % m) * r + t;
            for (uint32_t v = 0; v < m; ++v)
                for (uint32_t w = 0; w < r; ++w)
                    out.at(srow, (size_t)((v + i) % m) * r + w) =
                        F.frobenius(M.at(row, (size_t)v * r + w), i);
        }
    return out;
}

uint32_t AttackState::target_rank() const {
    uint32_t s = r * m;
    if (F->char2()) return s - 2;
    return r == 3 ? s - 3 : s - 1;
}

AttackState attack_setup(Field Fp, const LinearCode& pub, uint32_t r, uint64_t seed) {
    const FieldCtx& F = *Fp;
    LinearCode ext = extend_field(dual(pub));
    if (ext.dim() != (size_t)r * F.m)
        throw degenerate_error("extended dual dimension does not match r*m");
    AttackState st(Fp, r, F.m);
    st.basis = frobenius_closed_basis(ext, seed);
    MatRelCode rc = quad_rel_code(Fp, st.basis);
    st.matcode = std::move(rc.mats);
    if (st.matcode.size() < 2)
        throw degenerate_error("matrix relation code too small to draw pencils");
    return st;
}

RankDefective sample_rank_defective(AttackState& st, uint32_t target_rank, Rng& rng,
                                    size_t cap) {
    const FieldCtx& F = *st.F;
    size_t s = (size_t)st.r * st.m;
    if (F.size < s + 1) throw degenerate_error("field too small to interpolate the pencil");
    std::vector<elem> xs(s + 1), ys(s + 1);
    for (size_t i = 0; i <= s; ++i) xs[i] = F.from_int(i);
    for (size_t tries = 0; tries < cap; ++tries) {
        ++st.pencil_draws;
        Mat D1 = random_span_element(F, st.matcode, rng);
        Mat D2 = random_span_element(F, st.matcode, rng);
        bool all_zero = true;
        for (size_t i = 0; i <= s; ++i) {
            ys[i] = mat_det(F, pencil_at(F, D1, D2, xs[i]));
            all_zero = all_zero && ys[i] == 0;
        }
        if (all_zero) continue; // degenerate pencil, det vanishes identically
        Poly det = poly_interpolate(F, xs, ys);
        if (poly_deg(det) < 1) continue;
        for (elem w : poly_roots(F, det)) {
            Mat M = pencil_at(F, D1, D2, w);
            if (mat_rank(F, M) != target_rank) continue; // deeper drop than generic
            Mat K = kernel_basis(F, M); // symmetric or alternating, so two-sided
            return {std::move(M), std::move(K)};
        }
    }
    throw retry_cap_error("no pencil root of the target rank found");
}

void grow_s_aux(AttackState& st, Rng& rng) {
    const FieldCtx& F = *st.F;
    size_t target = (size_t)(st.r - 1) * st.m;
    size_t cap = 20u * st.r;
    for (size_t round = 0; round < cap && st.s_aux.dim() < target; ++round) {
        RankDefective rd = sample_rank_defective(st, st.target_rank(), rng);
        for (size_t kv = 0; kv < rd.kernel.rows && st.s_aux.dim() < target; ++kv)
            for (uint32_t l = 0; l < st.m && st.s_aux.dim() < target; ++l)
                st.s_aux.add(dickson_shift(F, rd.kernel.row(kv), st.r, st.m, l));
    }
    if (st.s_aux.dim() != target)
        throw retry_cap_error("auxiliary kernel space did not reach (r-1)m");
}

std::optional<uint32_t> align_shift(const AttackState& st, const std::vector<elem>& u1,
                                    const std::vector<elem>& u2) {
    // with S_aux holding r-1 of the r kernel directions in every block, a
    // shift of u2 stays inside span(S_aux, u1) exactly when it lands in u1's
    // block; any other block contributes a fresh direction
    IncrementalSpan base = st.s_aux;
    base.add(u1);
    std::optional<uint32_t> found;
    for (uint32_t l = 0; l < st.m; ++l) {
        auto cand = dickson_shift(*st.F, u2, st.r, st.m, l);
        if (st.s_aux.contains(cand)) return std::nullopt; // collapsed into S_aux
        if (!base.contains(cand)) continue;
        if (found) return std::nullopt; // ambiguous
        found = l;
    }
    return found;
}

Mat build_v(AttackState& st, Rng& rng) {
    const FieldCtx& F = *st.F;
    size_t cap = 20u * st.r;
    IncrementalSpan V(st.F, (size_t)st.r * st.m);
    std::vector<elem> u1;
    for (size_t round = 0; round < cap && V.dim() < st.r; ++round) {
        RankDefective rd = sample_rank_defective(st, st.target_rank(), rng);
        std::vector<elem> u = rd.kernel.row(0);
        if (st.s_aux.contains(u)) continue;
        if (u1.empty()) {
            u1 = u;
            // a 2-dim kernel (char 2) sits entirely in one block, so both
            // generators join V at once
            for (size_t kv = 0; kv < rd.kernel.rows && V.dim() < st.r; ++kv)
                V.add(rd.kernel.row(kv));
            continue;
        }
        auto l = align_shift(st, u1, u);
        if (!l) continue;
        for (size_t kv = 0; kv < rd.kernel.rows && V.dim() < st.r; ++kv)
            V.add(dickson_shift(F, rd.kernel.row(kv), st.r, st.m, *l));
    }
    if (V.dim() != st.r) throw retry_cap_error("aligned kernel space did not reach dim r");
    st.v_space = V.basis();
    return st.v_space;
}

Mat recover_block(const AttackState& st, const Mat& V) {
    const FieldCtx& F = *st.F;
    // V^perp maps through the basis onto the sum of the other m-1 GRS blocks;
    // intersecting its iterated shifts (q-power plus block rotation) leaves
    // the one block every term contains
    Mat D = kernel_basis(F, V);
    LinearCode G = make_code(st.F, D, false);
    for (uint32_t step = 1; step + 1 < st.m; ++step) {
        Mat Dn(D.rows, D.cols);
        for (size_t i = 0; i < D.rows; ++i)
            Dn.set_row(i, dickson_shift(F, D.row(i), st.r, st.m, 1));
        D = Dn;
        G = intersect(G, make_code(st.F, D, false));
    }
    if (G.dim() != st.r) throw degenerate_error("block intersection has the wrong dimension");
    return mat_mul(F, G.gen, st.basis);
}

SupportMultiplier sidelnikov_shestakov(Field Fp, const Mat& G_in) {
    const FieldCtx& F = *Fp;
    size_t r = G_in.rows, n = G_in.cols;
    if (r < 3 || n < r + 3) throw std::invalid_argument("need 3 <= r <= n-3");
    Mat G = G_in;
    std::vector<size_t> piv;
    if (rref(F, G, &piv) != r) throw degenerate_error("generator matrix is not full rank");
    std::vector<bool> is_piv(n, false);
    for (size_t c : piv) is_piv[c] = true;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < n; ++c)
        if (!is_piv[c]) free_cols.push_back(c);

    // systematic rows are y_c * beta_i * prod_{j != i} (x_c - x_{piv_j}), so
    // the ratio of rows 0 and 1 is a Moebius image of the support
    std::vector<elem> u(n, 0);
    for (size_t c : free_cols) {
        if (G.at(0, c) == 0 || G.at(1, c) == 0)
            throw degenerate_error("zero ratio entry, not a GRS generator");
        u[c] = F.div(G.at(0, c), G.at(1, c));
    }

    for (size_t c : free_cols)
        for (size_t j = 2; j < r; ++j)
            if (G.at(j, c) == 0)
                throw degenerate_error("zero ratio entry, not a GRS generator");

    // place the support at x = 1/(lambda*u + 1): pivot 0 (u = infinity) goes
    // to 0, pivot 1 (u = 0) goes to 1, everything else stays finite. The
    // chart pole can still land on one of the unseen pivot supports, which
    // shows up as a cross-ratio inconsistency, so each admissible lambda is
    // tried in turn before the input is declared non-GRS.
    for (uint64_t t = 1; t < F.size; ++t) {
        elem lambda = F.from_int(t);
        bool ok = true;
        for (size_t c : free_cols)
            if (F.add(F.mul(lambda, u[c]), 1) == 0) { ok = false; break; }
        if (!ok) continue;

        std::vector<elem> x(n, 0);
        x[piv[1]] = 1;
        for (size_t c : free_cols) x[c] = F.inv(F.add(F.mul(lambda, u[c]), 1));

        // remaining pivot supports and row scales from the row-0/row-j
        // ratios: ratio * x_c = rho * (x_c - xi) must hold on every column
        std::vector<elem> rho(r, 0);
        rho[0] = 1;
        rho[1] = F.neg(F.inv(lambda));
        for (size_t j = 2; j < r && ok; ++j) {
            std::vector<elem> tv(n, 0);
            for (size_t c : free_cols) tv[c] = F.mul(F.div(G.at(0, c), G.at(j, c)), x[c]);
            size_t c1 = free_cols[0], c2 = free_cols[1];
            elem rj = F.div(F.sub(tv[c1], tv[c2]), F.sub(x[c1], x[c2]));
            if (rj == 0) { ok = false; break; }
            elem sigma = F.sub(F.mul(rj, x[c1]), tv[c1]);
            elem xi = F.div(sigma, rj);
            for (size_t k = 2; k < free_cols.size() && ok; ++k) {
                size_t c = free_cols[k];
                if (F.mul(rj, F.sub(x[c], xi)) != tv[c]) ok = false;
            }
            x[piv[j]] = xi;
            rho[j] = rj;
        }
        if (!ok) continue;

        std::vector<elem> sorted = x;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;

        // multiplier: free columns and pivot 0 through row 0 with beta_0 = 1,
        // pivot j through its own unit entry with beta_j = 1/rho_j
        std::vector<elem> y(n, 0);
        for (size_t c = 0; c < n; ++c) {
            if (is_piv[c] && c != piv[0]) continue;
            elem prod = 1;
            for (size_t j = 1; j < r; ++j) prod = F.mul(prod, F.sub(x[c], x[piv[j]]));
            y[c] = F.div(G.at(0, c), prod); // G.at(0, piv[0]) = 1
        }
        for (size_t j = 1; j < r; ++j) {
            elem prod = 1;
            for (size_t k = 0; k < r; ++k)
                if (k != j) prod = F.mul(prod, F.sub(x[piv[j]], x[piv[k]]));
            y[piv[j]] = F.div(rho[j], prod);
        }
        elem scale = F.inv(y[piv[0]]);
        for (elem& v : y) v = F.mul(v, scale);

        SupportMultiplier sm{std::move(x), std::move(y)};
        if (!code_eq(grs(Fp, sm, r), make_code(Fp, G_in, false))) continue;
        return sm;
    }
    throw degenerate_error("cross-ratio inconsistency, not a GRS generator");
}

bool verify_key(const LinearCode& pub, const SupportMultiplier& sm, uint32_t r) {
    try {
        validate_support(*pub.F, sm);
    } catch (const std::exception&) {
        return false;
    }
    return code_eq(alternant(pub.F, sm, r), pub);
}

AttackResult full_attack(Field Fp, const LinearCode& pub, uint32_t r, uint64_t seed) {
    const FieldCtx& F = *Fp;
    if (r < 3) throw std::invalid_argument("attack needs r >= 3");
    if (F.char2() && r % 2) throw std::invalid_argument("characteristic 2 needs even r");
    auto t0 = std::chrono::steady_clock::now();
    size_t draws = 0;
    for (uint32_t restart = 0; restart < 10; ++restart) {
        std::optional<AttackState> st;
        try {
            st = attack_setup(Fp, pub, r, derive_seed(seed, 2 * restart));
            Rng rng(derive_seed(seed, 2 * restart + 1));
            Mat V;
            if (!F.char2() && r == 3) {
                // deficient blocks vanish outright for r = 3, so one sample's
                // 3-dim kernel is already the whole block
                RankDefective rd = sample_rank_defective(*st, st->target_rank(), rng);
                V = rd.kernel;
                st->v_space = V;
            } else {
                grow_s_aux(*st, rng);
                V = build_v(*st, rng);
            }
            Mat G = recover_block(*st, V);
            st->recovered.push_back(G);
            SupportMultiplier sm = sidelnikov_shestakov(Fp, G);
            draws += st->pencil_draws;
            for (uint32_t j = 0; j < F.m; ++j) {
                SupportMultiplier smj;
                smj.x.reserve(sm.n());
                smj.y.reserve(sm.n());
                for (elem v : sm.x) smj.x.push_back(F.frobenius(v, j));
                for (elem v : sm.y) smj.y.push_back(F.frobenius(v, j));
                if (!verify_key(pub, smj, r)) continue;
                AttackResult res;
                res.key = alternant_key(Fp, std::move(smj), r);
                res.frob_power = j;
                res.restarts = restart;
                res.pencil_draws = draws;
                res.seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                return res;
            }
        } catch (const degenerate_error&) {
            if (st) draws += st->pencil_draws;
        } catch (const retry_cap_error&) {
            if (st) draws += st->pencil_draws;
        }
    }
    throw retry_cap_error("key recovery failed after 10 restarts");
}

} // namespace altrel
