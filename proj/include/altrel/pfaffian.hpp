#pragma once

// Rank-condition modeling on the matrix relation code: every 4x4 Pfaffian of
// the unknown skew matrix vanishes on the low-rank locus. The resulting
// quadratic system is compared degree by degree against the Hilbert function
// a random code would produce.

#include <boost/multiprecision/cpp_int.hpp>

#include "altrel/qrel.hpp"

namespace altrel {

using BigInt = boost::multiprecision::cpp_int;

// the three products m_ij*m_kl, m_ik*m_jl, m_il*m_jk for i<j<k<l, written as
// index pairs into the strict-upper variables; the middle product carries the
// minus sign of the 4x4 pfaffian, which is also +1 in characteristic 2
using PfaffQuadric = std::array<std::array<uint32_t, 2>, 3>;
std::vector<PfaffQuadric> pfaffian_quadrics(size_t s);

struct PfaffianSystem {
    Field F;
    size_t s = 0;        // matrix side, r*m
    size_t n = 0, k = 0; // public code length and dimension
    LinearForms forms;   // t linear constraints on the s(s-1)/2 variables
    size_t dim_cmat() const { return forms.nvars - forms.t(); }
};

// extended dual of the public code -> random basis -> matrix relation code
// -> its annihilator; everything the degree-d computation needs
PfaffianSystem build_system(Field F, const LinearCode& pub, uint64_t seed);

// Hilbert function of the quadric system at degree d. The t linear forms are
// eliminated by substitution, which matches the full Macaulay construction
// row for row (macaulay_hf_direct exists to check exactly that).
uint64_t macaulay_hf(const PfaffianSystem& sys, uint32_t d, uint64_t budget_mb = 8192);

// dense Macaulay matrix over all s(s-1)/2 variables, linear rows included;
// only viable for small s
uint64_t macaulay_hf_direct(const PfaffianSystem& sys, uint32_t d, uint64_t budget_mb = 8192);

// coefficient of the Narayana-type generating series
BigInt narayana_hf(uint64_t s, uint64_t d);

// Hilbert function a random [n, k=n-s] public code is expected to produce:
// alternating binomial combination of narayana_hf, clamped at zero, and
// locked at zero for every degree past the first vanishing one
BigInt hf_random_prediction(uint64_t s, uint64_t k, uint64_t d);

// first degree where the random prediction vanishes
uint32_t dreg_random(uint64_t s, uint64_t k);

// proved excess of the Goppa Hilbert function over the generic alternant one
BigInt goppa_hf_lower_bound(uint64_t r, uint64_t m, uint64_t d);

struct DistinguishResult {
    size_t n = 0, k = 0, s = 0;
    uint32_t d = 0;
    uint64_t hf = 0;      // observed Hilbert function value
    BigInt hf_random;     // prediction for a random code
    bool distinguished = false;
    double seconds = 0.0;
};

DistinguishResult distinguish(Field F, const LinearCode& pub, uint32_t d, uint64_t seed,
                              uint64_t budget_mb = 8192);

} // namespace altrel
