#pragma once

// Code constructions over the tower GF(q) <= GF(q^m): generalized
// Reed-Solomon codes, their subfield subcodes (alternant, Goppa), duals,
// Schur products, and the bases of the extended dual that the quadratic
// relation machinery consumes.

#include <optional>

#include "altrel/linalg.hpp"

namespace altrel {

// support x (distinct), column multiplier y (nonzero), over the big field
struct SupportMultiplier {
    std::vector<elem> x, y;
    size_t n() const { return x.size(); }
};

void validate_support(const FieldCtx& F, const SupportMultiplier& sm);

struct LinearCode {
    Field F;
    Mat gen;        // canonical reduced generator matrix
    bool subfield;  // true: codewords and scalars live in GF(q)

    size_t n() const { return gen.cols; }
    size_t dim() const { return gen.rows; }
};

// rows spanned, reduced; zero rows dropped
LinearCode make_code(Field F, const Mat& rows, bool subfield);
bool code_eq(const LinearCode& A, const LinearCode& B);

// GRS_k(x,y) = { (y_i f(x_i))_i : deg f < k } over the big field
LinearCode grs(Field F, const SupportMultiplier& sm, size_t k);

// y' with GRS_k(x,y)^dual = GRS_{n-k}(x,y'), i.e. y'_i = 1/(y_i prod_{j!=i}(x_i-x_j))
SupportMultiplier grs_dual_multiplier(const FieldCtx& F, const SupportMultiplier& sm);

// Alt_r(x,y) = GRS_r(x,y)^dual intersected with GF(q)^n
LinearCode alternant(Field F, const SupportMultiplier& sm, size_t r);

LinearCode dual(const LinearCode& C);
LinearCode extend_field(const LinearCode& C); // same generators, scalars in the big field
LinearCode schur_product(const LinearCode& C, const LinearCode& D);
size_t schur_square_dim(const LinearCode& C);
LinearCode intersect(const LinearCode& C, const LinearCode& D);

struct KeyInstance {
    enum class Kind { alternant, goppa };
    Kind kind;
    Field F;
    uint32_t r;            // alternant order; for Goppa keys, deg(Gamma)
    SupportMultiplier sm;  // canonical multiplier: y, or 1/Gamma(x) for Goppa
    std::optional<Poly> gamma;
    LinearCode pub;        // the published GF(q) code, dimension n - r*m
};

KeyInstance alternant_key(Field F, SupportMultiplier sm, uint32_t r);

// y_i = Gamma(x_i)^-1, with the classical binary twist: for q = 2 a
// square-free Gamma yields the same code as Gamma^2, so the public code is
// the order-2r alternant with y_i = Gamma(x_i)^-2 while n - k stays r*m
KeyInstance goppa_key(Field F, std::vector<elem> x, const Poly& gamma);

// uniform support/multiplier (or square-free Gamma) resampled until the
// public dimension is exactly n - r*m; throws degenerate_error after 20 tries
KeyInstance random_key(Field F, KeyInstance::Kind kind, uint32_t r, size_t n, Rng& rng);

// uniform [n, n-r*m] code over GF(q), the null model the tables compare against
LinearCode random_code(Field F, size_t n, size_t k, Rng& rng);

// rows (y_i x_i^a)^(q^l) for a < r, l < m, in row order l*r + a; a basis of
// the extended dual of the public code when the key is non-degenerate
Mat canonical_dual_basis(const KeyInstance& key);

// ordered basis (b_1..b_r, b_1^q..b_r^q, ..., b_1^{q^{m-1}}..b_r^{q^{m-1}})
// with b_1..b_r drawn at random from C; retries until full rank, cap 100
Mat frobenius_closed_basis(const LinearCode& C, uint64_t seed);

} // namespace altrel
