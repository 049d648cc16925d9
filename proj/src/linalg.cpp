#include "altrel/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace altrel {

Mat mat_identity(size_t k) {
    Mat I(k, k);
    for (size_t i = 0; i < k; ++i) I.at(i, i) = 1;
    return I;
}

Mat transpose(const Mat& M) {
    Mat T(M.cols, M.rows);
    for (size_t i = 0; i < M.rows; ++i)
        for (size_t j = 0; j < M.cols; ++j) T.at(j, i) = M.at(i, j);
    return T;
}

Mat mat_mul(const FieldCtx& F, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul shape mismatch");
    Mat C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            elem aik = A.at(i, k);
            if (aik == 0) continue;
            for (size_t j = 0; j < B.cols; ++j) {
                elem b = B.at(k, j);
                if (b) C.at(i, j) = F.add(C.at(i, j), F.mul(aik, b));
            }
        }
    return C;
}

Mat mat_stack(const Mat& A, const Mat& B) {
    if (A.rows == 0) return B;
    if (B.rows == 0) return A;
    if (A.cols != B.cols) throw std::invalid_argument("mat_stack width mismatch");
    Mat S(A.rows + B.rows, A.cols);
    std::copy(A.a.begin(), A.a.end(), S.a.begin());
    std::copy(B.a.begin(), B.a.end(), S.a.begin() + A.a.size());
    return S;
}

std::vector<elem> mat_vec(const FieldCtx& F, const Mat& A, const std::vector<elem>& v) {
    if (A.cols != v.size()) throw std::invalid_argument("mat_vec shape mismatch");
    std::vector<elem> r(A.rows, 0);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            if (A.at(i, j) && v[j]) r[i] = F.add(r[i], F.mul(A.at(i, j), v[j]));
    return r;
}

std::vector<elem> vec_mat(const FieldCtx& F, const std::vector<elem>& v, const Mat& A) {
    if (A.rows != v.size()) throw std::invalid_argument("vec_mat shape mismatch");
    std::vector<elem> r(A.cols, 0);
    for (size_t i = 0; i < A.rows; ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < A.cols; ++j)
            if (A.at(i, j)) r[j] = F.add(r[j], F.mul(v[i], A.at(i, j)));
    }
    return r;
}

size_t rref(const FieldCtx& F, Mat& M, std::vector<size_t>* pivots) {
    size_t rank = 0;
    if (pivots) pivots->clear();
    for (size_t col = 0; col < M.cols && rank < M.rows; ++col) {
        size_t piv = rank;
        while (piv < M.rows && M.at(piv, col) == 0) ++piv;
        if (piv == M.rows) continue;
        if (piv != rank)
            for (size_t j = 0; j < M.cols; ++j) std::swap(M.at(rank, j), M.at(piv, j));
        elem ic = F.inv(M.at(rank, col));
        if (ic != 1)
            for (size_t j = col; j < M.cols; ++j) M.at(rank, j) = F.mul(M.at(rank, j), ic);
        for (size_t r = 0; r < M.rows; ++r) {
            if (r == rank) continue;
            elem c = M.at(r, col);
            if (c == 0) continue;
            for (size_t j = col; j < M.cols; ++j)
                M.at(r, j) = F.sub(M.at(r, j), F.mul(c, M.at(rank, j)));
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

size_t mat_rank(const FieldCtx& F, Mat M) { return rref(F, M); }

elem mat_det(const FieldCtx& F, Mat M) {
    if (M.rows != M.cols) throw std::invalid_argument("determinant of a non-square matrix");
    elem det = 1;
    for (size_t col = 0; col < M.cols; ++col) {
        size_t piv = col;
        while (piv < M.rows && M.at(piv, col) == 0) ++piv;
        if (piv == M.rows) return 0;
        if (piv != col) {
            for (size_t j = col; j < M.cols; ++j) std::swap(M.at(col, j), M.at(piv, j));
            det = F.neg(det);
        }
        det = F.mul(det, M.at(col, col));
        elem ic = F.inv(M.at(col, col));
        for (size_t r = col + 1; r < M.rows; ++r) {
            elem c = M.at(r, col);
            if (c == 0) continue;
            elem f = F.mul(c, ic);
            for (size_t j = col; j < M.cols; ++j)
                M.at(r, j) = F.sub(M.at(r, j), F.mul(f, M.at(col, j)));
        }
    }
    return det;
}

Mat kernel_basis(const FieldCtx& F, const Mat& M) {
    Mat R = M;
    std::vector<size_t> pivots;
    size_t rank = rref(F, R, &pivots);
    std::vector<bool> is_piv(M.cols, false);
    for (size_t c : pivots) is_piv[c] = true;
    Mat K(M.cols - rank, M.cols);
    size_t kr = 0;
    for (size_t fc = 0; fc < M.cols; ++fc) {
        if (is_piv[fc]) continue;
        K.at(kr, fc) = 1;
        for (size_t r = 0; r < rank; ++r)
            K.at(kr, pivots[r]) = F.neg(R.at(r, fc));
        ++kr;
    }
    rref(F, K); // canonical form
    return K;
}

Mat row_space(const FieldCtx& F, Mat M) {
    size_t rank = rref(F, M);
    M.rows = rank;
    M.a.resize(rank * M.cols);
    return M;
}

bool same_row_space(const FieldCtx& F, const Mat& A, const Mat& B) {
    return row_space(F, A) == row_space(F, B);
}

std::optional<std::vector<elem>> solve(const FieldCtx& F, const Mat& A, const std::vector<elem>& b) {
    if (A.rows != b.size()) throw std::invalid_argument("solve shape mismatch");
    Mat aug(A.rows, A.cols + 1);
    for (size_t i = 0; i < A.rows; ++i) {
        for (size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    std::vector<size_t> pivots;
    size_t rank = rref(F, aug, &pivots);
    for (size_t r = 0; r < rank; ++r)
        if (pivots[r] == A.cols) return std::nullopt; // pivot in the rhs column
    std::vector<elem> x(A.cols, 0);
    for (size_t r = 0; r < rank; ++r) x[pivots[r]] = aug.at(r, A.cols);
    return x;
}

Mat rand_matrix(const FieldCtx& F, size_t r, size_t c, Rng& rng) {
    Mat M(r, c);
    for (auto& v : M.a) v = F.random_element(rng);
    return M;
}

Mat rand_invertible(const FieldCtx& F, size_t k, Rng& rng) {
    for (int tries = 0; tries < 100; ++tries) {
        Mat M = rand_matrix(F, k, k, rng);
        if (mat_rank(F, M) == k) return M;
    }
    throw retry_cap_error("no invertible matrix found");
}

// ---------------- IncrementalSpan ----------------

void IncrementalSpan::reduce(std::vector<elem>& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        elem c = v[pivots_[r]];
        if (c == 0) continue;
        const auto& row = rows_[r];
        for (size_t j = pivots_[r]; j < cols_; ++j)
            if (row[j]) v[j] = F_->sub(v[j], F_->mul(c, row[j]));
    }
}

bool IncrementalSpan::add(std::vector<elem> v) {
    if (v.size() != cols_) throw std::invalid_argument("IncrementalSpan width mismatch");
    reduce(v);
    size_t lead = cols_;
    for (size_t j = 0; j < cols_; ++j)
        if (v[j]) { lead = j; break; }
    if (lead == cols_) return false;
    elem ic = F_->inv(v[lead]);
    if (ic != 1)
        for (size_t j = lead; j < cols_; ++j) v[j] = F_->mul(v[j], ic);
    // eliminate the new pivot from the stored rows to keep full reduction
    for (size_t r = 0; r < rows_.size(); ++r) {
        elem c = rows_[r][lead];
        if (c == 0) continue;
        for (size_t j = lead; j < cols_; ++j)
            if (v[j]) rows_[r][j] = F_->sub(rows_[r][j], F_->mul(c, v[j]));
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, lead);
    return true;
}

bool IncrementalSpan::contains(std::vector<elem> v) const {
    if (v.size() != cols_) throw std::invalid_argument("IncrementalSpan width mismatch");
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](elem c) { return c == 0; });
}

Mat IncrementalSpan::basis() const {
    Mat B(rows_.size(), cols_);
    for (size_t i = 0; i < rows_.size(); ++i) B.set_row(i, rows_[i]);
    return B;
}

// ---------------- Gf2eEliminator ----------------

Gf2eEliminator::Gf2eEliminator(Field F, size_t cols)
    : F_(std::move(F)), cols_(cols), e_(F_->e), L_((cols + 63) / 64), ewords_(e_ * L_),
      pivot_of_col_(cols, -1) {
    if (F_->p != 2 || F_->size > (1u << 16))
        throw std::invalid_argument("Gf2eEliminator needs a characteristic-2 table field");
}

elem Gf2eEliminator::coeff(const std::vector<uint64_t>& planes, size_t j) const {
    elem c = 0;
    size_t w = j >> 6, s = j & 63;
    for (size_t b = 0; b < e_; ++b)
        c |= (elem)((planes[b * L_ + w] >> s) & 1) << b;
    return c;
}

void Gf2eEliminator::axpy(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src, elem c) const {
    // dst += c * src, carried out plane by plane: multiplying by c sends
    // basis plane j to the planes flagged in mcol[j]
    for (size_t j = 0; j < e_; ++j) {
        elem cj = F_->mul(c, (elem)1 << j);
        const uint64_t* s = src.data() + j * L_;
        for (size_t b = 0; cj; ++b, cj >>= 1) {
            if (cj & 1) {
                uint64_t* d = dst.data() + b * L_;
                for (size_t w = 0; w < L_; ++w) d[w] ^= s[w];
            }
        }
    }
}

void Gf2eEliminator::scale(std::vector<uint64_t>& planes, elem c) const {
    std::vector<uint64_t> tmp(ewords_, 0);
    axpy(tmp, planes, c);
    planes.swap(tmp);
}

bool Gf2eEliminator::add_row(const std::vector<elem>& row) {
    if (row.size() != cols_) throw std::invalid_argument("row width mismatch");
    std::vector<uint64_t> planes(ewords_, 0);
    for (size_t j = 0; j < cols_; ++j) {
        elem v = row[j];
        if (!v) continue;
        size_t w = j >> 6, s = j & 63;
        for (size_t b = 0; v; ++b, v >>= 1)
            if (v & 1) planes[b * L_ + w] |= 1ULL << s;
    }
    for (size_t j = 0; j < cols_; ++j) {
        elem c = coeff(planes, j);
        if (c == 0) continue;
        int32_t piv = pivot_of_col_[j];
        if (piv >= 0) {
            axpy(planes, pivrows_[piv], c); // char 2: add is subtract
        } else {
            if (c != 1) scale(planes, F_->inv(c));
            pivot_of_col_[j] = (int32_t)pivrows_.size();
            pivrows_.push_back(std::move(planes));
            return true;
        }
    }
    return false;
}

// ---------------- RankAccumulator ----------------

RankAccumulator::RankAccumulator(Field F, size_t cols) {
    if (F->p == 2 && F->size <= (1u << 16))
        fast_.emplace(F, cols);
    else
        slow_.emplace(F, cols);
}

bool RankAccumulator::add_row(const std::vector<elem>& row) {
    return fast_ ? fast_->add_row(row) : slow_->add(row);
}

size_t RankAccumulator::rank() const {
    return fast_ ? fast_->rank() : slow_->dim();
}

} // namespace altrel
