#pragma once

// Finite field tower GF(p) < GF(q) < GF(q^m), q = p^a, built as
// GF(p)[z]/(f) with f the canonical degree-(a*m) irreducible over GF(p).
//
// An element is stored as uint32_t holding sum c_i * p^i where c_i are the
// coefficients of its residue polynomial, so the integer encoding and the
// coefficient vector over GF(p) are the same thing.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "altrel/errors.hpp"

namespace altrel {

using elem = uint32_t;

// Deterministic RNG. All randomized routines take an explicit generator or
// seed so runs reproduce bit for bit.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}
    uint64_t next() { return gen_(); }
    // uniform in [0, n)
    uint64_t below(uint64_t n);

private:
    std::mt19937_64 gen_;
};

// Stable stream split: child seed from (seed, tag) without sharing state.
uint64_t derive_seed(uint64_t seed, uint64_t tag);

class FieldCtx;
using Field = std::shared_ptr<const FieldCtx>;

// Builds GF(p^(a*m)) with designated subfield GF(p^a). Rejects non-prime p,
// a*m*log2(p) > 24, and degenerate a=0 or m=0.
Field make_field(uint32_t p, uint32_t a, uint32_t m);

class FieldCtx {
public:
    uint32_t p;        // characteristic
    uint32_t a;        // subfield degree over GF(p)
    uint32_t m;        // extension degree over the subfield
    uint32_t e;        // a*m, degree over GF(p)
    uint64_t q;        // p^a, subfield size
    uint32_t size;     // p^e, field size
    std::vector<uint32_t> modulus; // f coefficients, modulus[i] is the z^i term

    elem add(elem x, elem y) const;
    elem sub(elem x, elem y) const;
    elem neg(elem x) const;
    elem mul(elem x, elem y) const;
    elem inv(elem x) const; // throws degenerate_error on 0
    elem div(elem x, elem y) const { return mul(x, inv(y)); }
    elem pow(elem x, uint64_t k) const;
    elem mul_int(elem x, uint64_t k) const; // x times the GF(p) image of k

    // x -> x^(q^j); j is reduced mod m since q^m is the identity
    elem frobenius(elem x, uint64_t j) const;
    bool in_subfield(elem x) const { return frobenius(x, 1) == x; }

    elem from_int(uint64_t v) const;
    elem scalar(uint32_t c) const { return c % p; } // GF(p) constant
    elem random_element(Rng& rng) const { return static_cast<elem>(rng.below(size)); }
    elem random_nonzero(Rng& rng) const { return static_cast<elem>(1 + rng.below(size - 1)); }

    // GF(p)-basis of the subfield GF(q) inside the big field, a elements
    const std::vector<elem>& subfield_basis() const { return sub_basis_; }

    bool char2() const { return p == 2; }

private:
    friend Field make_field(uint32_t, uint32_t, uint32_t);
    FieldCtx() = default;
    void init();

    elem mul_slow(elem x, elem y) const; // polynomial product mod f, no tables
    elem mul_p_scalar(elem x, uint32_t c) const;

    bool tables_ = false;           // log/exp only when size <= 2^16
    std::vector<uint16_t> log_;
    std::vector<uint32_t> exp_;
    std::vector<elem> frob_q_;      // x -> x^q table when tables_ is on
    std::vector<elem> sub_basis_;
    std::vector<uint64_t> p_pow_;   // p^0 .. p^e
};

// --- polynomials over the big field, coefficient c[i] multiplies z^i ---

struct Poly {
    std::vector<elem> c;
    Poly() = default;
    explicit Poly(std::vector<elem> cc) : c(std::move(cc)) {}
};

int poly_deg(const Poly& f); // deg 0 polynomial -> 0, zero polynomial -> -1
void poly_trim(Poly& f);
bool poly_is_zero(const Poly& f);
Poly poly_from(std::initializer_list<elem> cs);

Poly poly_add(const FieldCtx& F, const Poly& f, const Poly& g);
Poly poly_sub(const FieldCtx& F, const Poly& f, const Poly& g);
Poly poly_mul(const FieldCtx& F, const Poly& f, const Poly& g);
Poly poly_scale(const FieldCtx& F, const Poly& f, elem s);
// divides f by g, returns quotient, stores remainder; g must be nonzero
Poly poly_divmod(const FieldCtx& F, const Poly& f, const Poly& g, Poly& rem);
Poly poly_mod(const FieldCtx& F, const Poly& f, const Poly& g);
Poly poly_gcd(const FieldCtx& F, Poly f, Poly g); // monic output
Poly poly_deriv(const FieldCtx& F, const Poly& f);
Poly poly_monic(const FieldCtx& F, const Poly& f);
elem poly_eval(const FieldCtx& F, const Poly& f, elem x);
// unique polynomial of degree < xs.size() through the points (xs_i, ys_i)
Poly poly_interpolate(const FieldCtx& F, const std::vector<elem>& xs, const std::vector<elem>& ys);
// base^k mod modp, k up to 2^63
Poly poly_powmod(const FieldCtx& F, const Poly& base, uint64_t k, const Poly& modp);

// All distinct roots of f in the field, ascending by integer encoding.
std::vector<elem> poly_roots(const FieldCtx& F, const Poly& f);

bool poly_is_irreducible(const FieldCtx& F, const Poly& f);
bool is_squarefree(const FieldCtx& F, const Poly& f);

// Uniform monic irreducible of degree r; gives up after 64*r*e draws.
Poly random_irreducible(const FieldCtx& F, uint32_t r, Rng& rng);

} // namespace altrel
