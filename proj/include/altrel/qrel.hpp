#pragma once

// Quadratic relationships between the rows of a basis of the extended dual:
// the relation code (coefficient vectors), its matrix form, congruence
// transport between bases, and the rank census of the structured block
// relation space.

#include "altrel/codes.hpp"

namespace altrel {

// lex index of the pair (i,j) with i <= j among all such pairs below k
size_t pair_le_index(size_t k, size_t i, size_t j);
// lex index of the pair (i,j) with i < j
size_t pair_lt_index(size_t k, size_t i, size_t j);

struct MatRelCode {
    Field F;
    size_t k = 0, n = 0;
    // relation coefficient vectors c with sum_{i<=j} c_ij (v_i * v_j) = 0,
    // coordinates in pair_le order
    std::vector<std::vector<elem>> rel;
    // polar-form matrices: symmetric, diagonal 2c_ii in odd characteristic,
    // zero diagonal in characteristic 2
    std::vector<Mat> mats;
};

MatRelCode quad_rel_code(Field F, const Mat& V);
Mat rel_to_mat(const FieldCtx& F, const std::vector<elem>& rel, size_t k);

// strict upper triangle in pair_lt order; determines a matrix of either
// symmetry type up to its diagonal
std::vector<elem> mat_upper_coords(const Mat& M);

// M -> P^T M P applied to the whole list; carries the matrix code of one
// basis B = P A onto the matrix code of A
std::vector<Mat> congruence_transport(const FieldCtx& F, const std::vector<Mat>& mats, const Mat& P);

// reduced basis of the linear forms on the strict-upper coordinates that
// vanish on every matrix of the code; characteristic 2 only, where the
// matrices carry no diagonal information
struct LinearForms {
    size_t s = 0;                         // matrix side
    size_t nvars = 0;                     // s(s-1)/2
    std::vector<std::vector<elem>> forms; // reduced rows
    std::vector<size_t> lead;             // pivot variable of each form
    size_t t() const { return forms.size(); }
};

LinearForms annihilator_forms(Field F, const MatRelCode& rc);

// The relations x^a y * x^b y = x^c y * x^d y inside one Frobenius block,
// written as r x r matrices on the indices a > c >= d > b with a+b = c+d.
std::vector<Mat> block_relation_basis(const FieldCtx& F, size_t r);

// histogram of matrix ranks over the span of the block relations; counts all
// |F|^dim span elements including zero, index = rank 0..r
std::vector<uint64_t> rank_census_blocks(Field F, size_t r, uint64_t budget = 1u << 24);

// dimension of the verified subspace of rank<=2 matrices inside the matrix
// relation code of the canonical basis; characteristic 2 keys
size_t low_rank_space_dim(const KeyInstance& key);

} // namespace altrel
