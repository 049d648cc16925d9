#pragma once

// Key recovery from a distinguishable public code. The matrix relation code
// of a Frobenius-shaped basis B of the extended dual is, up to congruence by
// the change of basis, block diagonal with m blocks of size r. Rank-defective
// elements found through pencils det(w*D1 + D2) have kernels supported on a
// single block; collecting r of them that share a block (via the auxiliary
// space and Dickson shifts), dualising, and intersecting the Frobenius shifts
// cuts out one GRS block, which Sidelnikov-Shestakov turns into a support and
// multiplier pair for the public alternant code.

#include "altrel/qrel.hpp"

namespace altrel {

// Blockwise Dickson shift by i: vectors v -> v^(q^i) S^i, matrices
// M -> (S^T)^i M^(q^i) S^i, where S is the right r-cyclic block shift.
// Kernels and the matrix relation code are stable under it.
std::vector<elem> dickson_shift(const FieldCtx& F, const std::vector<elem>& v,
                                uint32_t r, uint32_t m, uint32_t i);
Mat dickson_shift(const FieldCtx& F, const Mat& M, uint32_t r, uint32_t m, uint32_t i);

struct RankDefective {
    Mat mat;    // element of the matrix relation code with rank exactly the target
    Mat kernel; // kernel basis rows; dim 1 (odd char), 2 (char 2), 3 (odd char r=3)
};

struct AttackState {
    Field F;
    uint32_t r = 0, m = 0;
    Mat basis;                  // Frobenius-shaped basis B of the extended dual, rm x n
    std::vector<Mat> matcode;   // basis of the matrix relation code of B
    IncrementalSpan s_aux;      // kernel shifts, grown to dim (r-1)m
    Mat v_space;                // r kernel vectors sharing one block
    std::vector<Mat> recovered; // GRS block generators found so far
    size_t pencil_draws = 0;

    AttackState(Field Fp, uint32_t r_, uint32_t m_)
        : F(std::move(Fp)), r(r_), m(m_), s_aux(F, (size_t)r_ * m_) {}

    // rm-1 in odd characteristic (rm-3 when r=3: deficient blocks vanish
    // outright), rm-2 in characteristic 2 where ranks are even
    uint32_t target_rank() const;
};

// extended dual, Frobenius-shaped basis, matrix relation code
AttackState attack_setup(Field F, const LinearCode& pub, uint32_t r, uint64_t seed);

// Draw pencils D1, D2 from the matrix relation code, interpolate
// det(w*D1 + D2) from its values at the first rm+1 field elements, and scan
// the roots for an element of the exact target rank. Retries up to cap pairs.
RankDefective sample_rank_defective(AttackState& st, uint32_t target_rank, Rng& rng,
                                    size_t cap = 200);

// Accumulate all m Dickson shifts of sampled kernel vectors until the
// auxiliary space reaches dim (r-1)m; cap 20r samples.
void grow_s_aux(AttackState& st, Rng& rng);

// The unique l such that dim(S_aux + <u1, shift(u2, l)>) = (r-1)m + 1, which
// holds exactly when shift(u2, l) lies in the same block as u1. Empty when no
// or multiple l pass (non-generic sample; caller resamples).
std::optional<uint32_t> align_shift(const AttackState& st, const std::vector<elem>& u1,
                                    const std::vector<elem>& u2);

// Collect r aligned kernel vectors (kernel pairs count double in char 2);
// cap 20r samples. Returns the r x rm basis and stores it in the state.
Mat build_v(AttackState& st, Rng& rng);

// D = V^perp, intersected with its m-2 iterated shifts D^(q)S, then mapped
// through the basis: the result generates one GRS block as a length-n code.
Mat recover_block(const AttackState& st, const Mat& V);

// Support recovery for a GRS generator matrix: systematic form, support from
// row ratios (a Moebius image), remaining pivots by consistency across all
// columns, multiplier from the systematic unit entries. Output normalized to
// x[0] = 0, x[1] = 1, y[0] = 1 on the pivot coordinates. Throws
// degenerate_error when the input is not a GRS generator.
SupportMultiplier sidelnikov_shestakov(Field F, const Mat& G);

// true iff the order-r alternant code of (x', y') equals the public code
bool verify_key(const LinearCode& pub, const SupportMultiplier& sm, uint32_t r);

struct AttackResult {
    KeyInstance key;
    uint32_t frob_power = 0; // Frobenius twist applied to the recovered pair
    uint32_t restarts = 0;   // end-to-end retries consumed
    size_t pencil_draws = 0;
    double seconds = 0.0;
};

// Full pipeline with up to 10 restarts on fresh bases. Requires r >= 3 and
// odd characteristic or characteristic 2 with even r; the public code must be
// square-distinguishable for the stages to have the assumed block structure.
AttackResult full_attack(Field F, const LinearCode& pub, uint32_t r, uint64_t seed);

} // namespace altrel
