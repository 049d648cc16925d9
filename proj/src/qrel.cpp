#include "altrel/qrel.hpp"

#include <stdexcept>

namespace altrel {

size_t pair_le_index(size_t k, size_t i, size_t j) {
    // pairs (0,0)..(0,k-1),(1,1)..: offset of row i is i*k - i(i-1)/2
    return i * k - i * (i - 1) / 2 + (j - i);
}

size_t pair_lt_index(size_t k, size_t i, size_t j) {
    return i * (k - 1) - i * (i - 1) / 2 + (j - i - 1);
}

MatRelCode quad_rel_code(Field F, const Mat& V) {
    size_t k = V.rows, n = V.cols;
    size_t npairs = k * (k + 1) / 2;
    Mat S(n, npairs);
    for (size_t t = 0; t < n; ++t)
        for (size_t i = 0; i < k; ++i) {
            elem vi = V.at(i, t);
            if (vi == 0) continue;
            for (size_t j = i; j < k; ++j)
                S.at(t, pair_le_index(k, i, j)) = F->mul(vi, V.at(j, t));
        }
    Mat K = kernel_basis(*F, S);
    MatRelCode rc;
    rc.F = F;
    rc.k = k;
    rc.n = n;
    for (size_t r = 0; r < K.rows; ++r) {
        rc.rel.push_back(K.row(r));
        rc.mats.push_back(rel_to_mat(*F, rc.rel.back(), k));
    }
    return rc;
}

Mat rel_to_mat(const FieldCtx& F, const std::vector<elem>& rel, size_t k) {
    if (rel.size() != k * (k + 1) / 2) throw std::invalid_argument("relation length mismatch");
    Mat M(k, k);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i; j < k; ++j) {
            elem c = rel[pair_le_index(k, i, j)];
            if (i == j) {
                // polar form doubles the diagonal; vanishes in characteristic 2
                M.at(i, i) = F.mul_int(c, 2);
            } else {
                M.at(i, j) = c;
                M.at(j, i) = c;
            }
        }
    }
    return M;
}

std::vector<elem> mat_upper_coords(const Mat& M) {
    size_t k = M.rows;
    std::vector<elem> v(k * (k - 1) / 2);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            v[pair_lt_index(k, i, j)] = M.at(i, j);
    return v;
}

std::vector<Mat> congruence_transport(const FieldCtx& F, const std::vector<Mat>& mats, const Mat& P) {
    std::vector<Mat> out;
    out.reserve(mats.size());
    Mat Pt = transpose(P);
    for (const Mat& M : mats)
        out.push_back(mat_mul(F, Pt, mat_mul(F, M, P)));
    return out;
}

LinearForms annihilator_forms(Field F, const MatRelCode& rc) {
    if (!F->char2())
        throw std::invalid_argument("annihilator forms are defined on the zero-diagonal case");
    size_t s = rc.k;
    size_t nvars = s * (s - 1) / 2;
    Mat M((size_t)rc.mats.size(), nvars);
    for (size_t r = 0; r < rc.mats.size(); ++r)
        M.set_row(r, mat_upper_coords(rc.mats[r]));
    Mat K = kernel_basis(*F, M); // rows: forms f with sum_v f_v M_v = 0
    LinearForms lf;
    lf.s = s;
    lf.nvars = nvars;
    for (size_t r = 0; r < K.rows; ++r) {
        auto row = K.row(r);
        size_t lead = nvars;
        for (size_t j = 0; j < nvars; ++j)
            if (row[j]) { lead = j; break; }
        if (lead == nvars) continue;
        lf.forms.push_back(std::move(row));
        lf.lead.push_back(lead);
    }
    return lf;
}

std::vector<Mat> block_relation_basis(const FieldCtx& F, size_t r) {
    std::vector<Mat> out;
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < a; ++b)
            for (size_t c = 0; c <= a; ++c) {
                // a + b = c + d with a > c >= d > b
                size_t cd = a + b;
                if (cd < c) continue;
                size_t d = cd - c;
                if (!(a > c && c >= d && d > b)) continue;
                if (c >= r || d >= r) continue;
                Mat M(r, r);
                M.at(a, b) = 1;
                M.at(b, a) = 1;
                if (F.char2()) {
                    if (c != d) {
                        M.at(c, d) = 1;
                        M.at(d, c) = 1;
                    }
                } else {
                    if (c != d) {
                        M.at(c, d) = F.neg(1);
                        M.at(d, c) = F.neg(1);
                    } else {
                        M.at(c, c) = F.neg(F.mul_int(1, 2));
                    }
                }
                out.push_back(std::move(M));
            }
    return out;
}

std::vector<uint64_t> rank_census_blocks(Field F, size_t r, uint64_t budget) {
    auto gens = block_relation_basis(*F, r);
    size_t nvars = F->char2() ? r * (r - 1) / 2 : r * (r + 1) / 2;
    IncrementalSpan span(F, nvars);
    for (const Mat& M : gens) {
        std::vector<elem> v;
        if (F->char2()) {
            v = mat_upper_coords(M);
        } else {
            v.resize(nvars);
            for (size_t i = 0; i < r; ++i)
                for (size_t j = i; j < r; ++j)
                    v[pair_le_index(r, i, j)] = M.at(i, j);
        }
        span.add(std::move(v));
    }
    size_t dim = span.dim();
    // the whole span gets enumerated, so keep |F|^dim within budget
    uint64_t total = 1;
    for (size_t i = 0; i < dim; ++i) {
        total *= F->size; // dim*24 bits at most, no overflow before the check
        if (total > budget) throw budget_error("rank census span too large");
    }
    Mat B = span.basis();
    std::vector<uint64_t> hist(r + 1, 0);
    std::vector<elem> coef(dim, 0);
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t t = idx;
        for (size_t i = 0; i < dim; ++i) { coef[i] = (elem)(t % F->size); t /= F->size; }
        Mat M(r, r);
        for (size_t i = 0; i < dim; ++i) {
            if (coef[i] == 0) continue;
            for (size_t u = 0; u < r; ++u)
                for (size_t v = u + (F->char2() ? 1 : 0); v < r; ++v) {
                    elem base = F->char2() ? B.at(i, pair_lt_index(r, u, v))
                                           : B.at(i, pair_le_index(r, u, v));
                    if (base == 0) continue;
                    elem add = F->mul(coef[i], base);
                    M.at(u, v) = F->add(M.at(u, v), add);
                    if (u != v) M.at(v, u) = F->add(M.at(v, u), add);
                }
        }
        ++hist[mat_rank(*F, M)];
    }
    return hist;
}

size_t low_rank_space_dim(const KeyInstance& key) {
    const Field& F = key.F;
    if (!F->char2())
        throw std::invalid_argument("low-rank subspace construction needs characteristic 2");
    size_t r = key.r, m = F->m, s = r * m;

    Mat A = canonical_dual_basis(key);
    MatRelCode rc = quad_rel_code(F, A);
    IncrementalSpan span(F, s * (s - 1) / 2);
    for (const Mat& M : rc.mats) span.add(mat_upper_coords(M));

    // cross shape in the first Frobenius block: entries (0,a) with a even for
    // a generic alternant key, every a for a binary square-free Goppa key
    std::vector<size_t> offsets;
    bool goppa_binary = key.kind == KeyInstance::Kind::goppa && F->q == 2;
    for (size_t a = 1; a < r; ++a)
        if (goppa_binary || a % 2 == 0) offsets.push_back(a);

    std::vector<Mat> basis;
    for (size_t a : offsets) {
        Mat M(s, s);
        M.at(0, a) = 1;
        M.at(a, 0) = 1;
        if (!span.contains(mat_upper_coords(M)))
            throw degenerate_error("low-rank candidate escapes the matrix relation code");
        if (mat_rank(*F, M) > 2) throw std::logic_error("cross matrix rank exceeds 2");
        basis.push_back(std::move(M));
    }
    // spot-check combinations stay at rank <= 2
    Rng rng(derive_seed(0x10f, s));
    for (int it = 0; it < 10 && !basis.empty(); ++it) {
        Mat M(s, s);
        for (const Mat& Bm : basis) {
            elem c = F->random_element(rng);
            for (size_t i = 0; i < s * s; ++i) M.a[i] = F->add(M.a[i], F->mul(c, Bm.a[i]));
        }
        if (mat_rank(*F, M) > 2) throw std::logic_error("low-rank space contains a high-rank combination");
    }
    return basis.size();
}

} // namespace altrel
