#pragma once

// Closed-form side of the story: square-distinguishability thresholds, the
// dual-square dimension bounds, rank counts for symmetric and alternating
// matrices, the GV-style existence thresholds for low-rank elements in the
// matrix code of a random code, and the cost estimates the parameter table is
// built from. Everything integer-valued is computed in exact big integers;
// logarithms are taken last.

#include "altrel/pfaffian.hpp"

namespace altrel {

struct ParamSet {
    uint64_t n = 0;
    uint32_t q = 0, m = 0, r = 0;

    uint64_t s() const { return (uint64_t)r * m; }
    int64_t k() const { return (int64_t)n - (int64_t)s(); }
    double rate() const { return (double)k() / (double)n; }
};

// throws invalid_argument unless rm < n <= q^m and r >= 2
void validate_params(const ParamSet& p);

// largest i with q^i <= r-1, i.e. floor(log_q(r-1)); r >= 2
uint32_t e_alternant(uint32_t q, uint32_t r);
// 1 + min { i >= 0 : r <= (q-1)^2 q^i }
uint32_t e_goppa(uint32_t q, uint32_t r);

struct DistVerdict {
    bool distinguishable = false;
    uint32_t e = 0;         // the e_A or e_G entering the threshold
    int64_t threshold = 0;  // distinguishable iff n > threshold
};

DistVerdict square_dist_alternant(const ParamSet& p);
DistVerdict square_dist_goppa(const ParamSet& p);

// upper bound min(n, threshold expression) on the GF(q)-dimension of the
// square of the dual code
int64_t mt22_sq_dual_bound(const ParamSet& p, KeyInstance::Kind kind);

// number of t x t symmetric matrices of the given rank over GF(q)
BigInt count_sym_rank(uint32_t t, uint32_t rank, uint64_t q);
// same with zero diagonal (alternating); odd ranks do not occur
BigInt count_skew_rank(uint32_t t, uint32_t rank, uint64_t q);

// whether the matrix code of a random [n, rm] code is expected to contain
// rank <= d elements; requires C(rm+1,2) > n
bool gv_rank_threshold(const ParamSet& p, uint32_t d, bool skew);

// log2 of C(q^m, n) * (1/r) * sum_{a | r} mu(a) q^(m r / a): support guessing
// times the count of monic irreducible degree-r polynomials
double keyattack_log2(const ParamSet& p);

enum class CostMode { dense, sparse };

// log2 cost of the degree-d_reg kernel check on the Macaulay matrix;
// sparse = Wiedemann on the structured rows (no omega), dense = generic
// linear algebra with exponent omega
double dist_cost_log2(const ParamSet& p, uint32_t d_reg, CostMode mode, double omega = 2.81);

struct SublinearPoint {
    double key = 0;     // rm
    double message = 0; // (1-alpha) rm
    double dist = 0;    // 4 alpha c (rm)^2 / n * log2 n
};

// exponents at length n in the regime rm = n^alpha, alpha in [1/2, 1)
SublinearPoint sublinear_exponents(double alpha, double c, uint64_t n);

// accurate log2 of a positive big integer
double big_log2(const BigInt& x);

} // namespace altrel
