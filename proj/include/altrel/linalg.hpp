#pragma once

// Dense linear algebra over a FieldCtx. Everything is row-major and small
// except the rank accumulation used by the Hilbert function computations,
// which gets a bitsliced characteristic-2 fast path.

#include <cstdint>
#include <optional>
#include <vector>

#include "altrel/gf.hpp"

namespace altrel {

struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<elem> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}

    elem& at(size_t i, size_t j) { return a[i * cols + j]; }
    elem at(size_t i, size_t j) const { return a[i * cols + j]; }
    std::vector<elem> row(size_t i) const {
        return std::vector<elem>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
    }
    void set_row(size_t i, const std::vector<elem>& v) {
        std::copy(v.begin(), v.end(), a.begin() + i * cols);
    }
    bool operator==(const Mat& o) const = default;
};

Mat mat_identity(size_t k);
Mat transpose(const Mat& M);
Mat mat_mul(const FieldCtx& F, const Mat& A, const Mat& B);
Mat mat_stack(const Mat& A, const Mat& B); // rows of A then rows of B
std::vector<elem> mat_vec(const FieldCtx& F, const Mat& A, const std::vector<elem>& v);
std::vector<elem> vec_mat(const FieldCtx& F, const std::vector<elem>& v, const Mat& A);

// in-place reduced row echelon form; returns rank, optionally the pivot columns
size_t rref(const FieldCtx& F, Mat& M, std::vector<size_t>* pivots = nullptr);
size_t mat_rank(const FieldCtx& F, Mat M);

// determinant of a square matrix, 0 when singular
elem mat_det(const FieldCtx& F, Mat M);

// rows of the result span { v : M v^T = 0 }, returned in reduced form
Mat kernel_basis(const FieldCtx& F, const Mat& M);

// drop zero rows and put the row space in canonical reduced form
Mat row_space(const FieldCtx& F, Mat M);

bool same_row_space(const FieldCtx& F, const Mat& A, const Mat& B);

// solve A x = b, empty if inconsistent
std::optional<std::vector<elem>> solve(const FieldCtx& F, const Mat& A, const std::vector<elem>& b);

Mat rand_matrix(const FieldCtx& F, size_t r, size_t c, Rng& rng);
Mat rand_invertible(const FieldCtx& F, size_t k, Rng& rng);

// Maintains a growing reduced basis of a subspace; used wherever vectors are
// fed in one at a time and we care about when the dimension jumps.
class IncrementalSpan {
public:
    IncrementalSpan(Field F, size_t cols) : F_(std::move(F)), cols_(cols) {}

    bool add(std::vector<elem> v); // true if the dimension grew
    bool contains(std::vector<elem> v) const;
    size_t dim() const { return rows_.size(); }
    size_t cols() const { return cols_; }
    Mat basis() const;

private:
    void reduce(std::vector<elem>& v) const;
    Field F_;
    size_t cols_;
    std::vector<std::vector<elem>> rows_; // reduced, ordered by pivot column
    std::vector<size_t> pivots_;
};

// Incremental rank over GF(2^e) with log tables, rows stored as e bit-planes.
// An AXPY touches e*e machine-word streams instead of per-entry multiplies,
// which is what makes the big Macaulay ranks affordable.
class Gf2eEliminator {
public:
    Gf2eEliminator(Field F, size_t cols);

    bool add_row(const std::vector<elem>& row);
    size_t rank() const { return pivrows_.size(); }
    size_t memory_bytes() const { return pivrows_.size() * ewords_ * 8; }

private:
    elem coeff(const std::vector<uint64_t>& planes, size_t j) const;
    void axpy(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src, elem c) const;
    void scale(std::vector<uint64_t>& planes, elem c) const;

    Field F_;
    size_t cols_, e_, L_, ewords_;
    std::vector<std::vector<uint64_t>> pivrows_;
    std::vector<int32_t> pivot_of_col_;
};

// Rank of a row stream; dispatches to the bitsliced path when the field
// allows it, otherwise plain elimination.
class RankAccumulator {
public:
    RankAccumulator(Field F, size_t cols);
    bool add_row(const std::vector<elem>& row);
    size_t rank() const;

private:
    std::optional<Gf2eEliminator> fast_;
    std::optional<IncrementalSpan> slow_;
};

} // namespace altrel
