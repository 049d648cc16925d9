#include "altrel/gf.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace altrel {

uint64_t Rng::below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    // rejection sampling keeps the draw unbiased
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do { v = gen_(); } while (v >= lim);
    return v % n;
}

uint64_t derive_seed(uint64_t seed, uint64_t tag) {
    // splitmix64 finalizer over the combined value
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint32_t> prime_divisors(uint32_t n) {
    std::vector<uint32_t> out;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// ---- polynomials over GF(p) as digit vectors, used only to find the field
// modulus before any FieldCtx exists ----

using GpPoly = std::vector<uint32_t>;

void gp_trim(GpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int gp_deg(const GpPoly& f) { return (int)f.size() - 1; }

GpPoly gp_mul(const GpPoly& a, const GpPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    GpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (uint32_t)((r[i + j] + (uint64_t)a[i] * b[j]) % p);
    }
    gp_trim(r);
    return r;
}

// remainder of a mod monic f
GpPoly gp_mod(GpPoly a, const GpPoly& f, uint32_t p) {
    gp_trim(a);
    int df = gp_deg(f);
    while (gp_deg(a) >= df) {
        uint32_t c = a.back();
        int shift = gp_deg(a) - df;
        if (c != 0) {
            for (int i = 0; i <= df; ++i) {
                uint64_t t = (uint64_t)c * f[i] % p;
                a[i + shift] = (uint32_t)((a[i + shift] + p - t) % p);
            }
        }
        a.pop_back();
        gp_trim(a);
    }
    return a;
}

GpPoly gp_mulmod(const GpPoly& a, const GpPoly& b, const GpPoly& f, uint32_t p) {
    return gp_mod(gp_mul(a, b, p), f, p);
}

GpPoly gp_powmod(GpPoly base, uint64_t k, const GpPoly& f, uint32_t p) {
    GpPoly r{1};
    base = gp_mod(std::move(base), f, p);
    while (k) {
        if (k & 1) r = gp_mulmod(r, base, f, p);
        base = gp_mulmod(base, base, f, p);
        k >>= 1;
    }
    return r;
}

GpPoly gp_sub(GpPoly a, const GpPoly& b, uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    gp_trim(a);
    return a;
}

uint32_t gp_inv_scalar(uint32_t c, uint32_t p) {
    // p is prime, Fermat
    uint32_t r = 1;
    uint64_t b = c % p;
    uint32_t k = p - 2;
    while (k) {
        if (k & 1) r = (uint32_t)(r * b % p);
        b = b * b % p;
        k >>= 1;
    }
    return r;
}

GpPoly gp_gcd(GpPoly a, GpPoly b, uint32_t p) {
    gp_trim(a);
    gp_trim(b);
    while (!b.empty()) {
        GpPoly bm = b;
        uint32_t lc = gp_inv_scalar(bm.back(), p);
        for (auto& c : bm) c = (uint32_t)((uint64_t)c * lc % p);
        GpPoly r = gp_mod(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint32_t lc = gp_inv_scalar(a.back(), p);
        for (auto& c : a) c = (uint32_t)((uint64_t)c * lc % p);
    }
    return a;
}

// Rabin test for a monic f over GF(p)
bool gp_irreducible(const GpPoly& f, uint32_t p) {
    int d = gp_deg(f);
    if (d < 1) return false;
    if (d == 1) return true;
    // chain z^(p^i) mod f
    std::vector<GpPoly> chain((size_t)d + 1);
    chain[0] = GpPoly{0, 1};
    for (int i = 1; i <= d; ++i)
        chain[i] = gp_powmod(chain[i - 1], p, f, p);
    if (gp_sub(chain[d], GpPoly{0, 1}, p) != GpPoly{}) return false;
    for (uint32_t ell : prime_divisors((uint32_t)d)) {
        GpPoly g = gp_gcd(f, gp_sub(chain[d / ell], GpPoly{0, 1}, p), p);
        if (gp_deg(g) != 0) return false;
    }
    return true;
}

} // namespace

Field make_field(uint32_t p, uint32_t a, uint32_t m) {
    if (!is_prime_u32(p)) throw std::invalid_argument("p must be prime");
    if (a == 0 || m == 0) throw std::invalid_argument("a and m must be positive");
    uint32_t e = a * m;
    // size cap: p^e must fit in 24 bits
    uint64_t size = 1;
    for (uint32_t i = 0; i < e; ++i) {
        size *= p;
        if (size > (1u << 24)) throw std::invalid_argument("field too large, p^(a*m) > 2^24");
    }

    auto F = std::shared_ptr<FieldCtx>(new FieldCtx());
    F->p = p;
    F->a = a;
    F->m = m;
    F->e = e;
    F->size = (uint32_t)size;
    uint64_t q = 1;
    for (uint32_t i = 0; i < a; ++i) q *= p;
    F->q = q;

    // canonical modulus: monic degree-e polynomial over GF(p) whose
    // lower-coefficient vector has the least integer encoding sum c_i p^i
    if (e == 1) {
        F->modulus = {0, 1};
    } else {
        uint64_t pe = size; // p^e
        bool found = false;
        for (uint64_t v = 0; v < pe; ++v) {
            GpPoly f(e + 1, 0);
            uint64_t t = v;
            for (uint32_t i = 0; i < e; ++i) {
                f[i] = (uint32_t)(t % p);
                t /= p;
            }
            f[e] = 1;
            if (gp_irreducible(f, p)) {
                F->modulus = f;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no irreducible modulus found");
    }

    F->init();
    return F;
}

void FieldCtx::init() {
    p_pow_.resize(e + 1);
    p_pow_[0] = 1;
    for (uint32_t i = 1; i <= e; ++i) p_pow_[i] = p_pow_[i - 1] * p;

    tables_ = size <= (1u << 16);
    if (tables_) {
        // find a multiplicative generator using slow arithmetic
        auto ord_primes = prime_divisors(size - 1);
        elem g = 0;
        for (elem cand = 2; cand < size; ++cand) {
            bool ok = true;
            for (uint32_t ell : ord_primes) {
                // cand^((size-1)/ell) via slow square and multiply
                uint64_t k = (size - 1) / ell;
                elem r = 1, b = cand;
                while (k) {
                    if (k & 1) r = mul_slow(r, b);
                    b = mul_slow(b, b);
                    k >>= 1;
                }
                if (r == 1) { ok = false; break; }
            }
            if (ok) { g = cand; break; }
        }
        if (g == 0 && size > 2) throw std::logic_error("no generator found");
        if (size == 2) g = 1;

        exp_.resize(2 * (size - 1));
        log_.assign(size, 0);
        elem cur = 1;
        for (uint32_t i = 0; i < size - 1; ++i) {
            exp_[i] = cur;
            exp_[i + (size - 1)] = cur;
            log_[cur] = (uint16_t)i;
            cur = mul_slow(cur, g);
        }
        if (cur != 1) throw std::logic_error("generator order mismatch");

        frob_q_.resize(size);
        uint64_t qm = q % (size - 1);
        frob_q_[0] = 0;
        for (uint32_t x = 1; x < size; ++x)
            frob_q_[x] = exp_[(uint32_t)(((uint64_t)log_[x] * qm) % (size - 1))];
    }

    // GF(p)-basis of the subfield: kernel of x -> x^q - x acting on digit
    // vectors. Small Gaussian elimination over GF(p).
    {
        std::vector<std::vector<uint32_t>> M(e, std::vector<uint32_t>(e, 0));
        for (uint32_t j = 0; j < e; ++j) {
            elem bj = (elem)p_pow_[j];
            elem img = sub(frobenius(bj, 1), bj);
            for (uint32_t i = 0; i < e; ++i)
                M[i][j] = (uint32_t)(img / p_pow_[i] % p);
        }
        // row reduce, track pivot columns
        std::vector<int> pivot_col;
        size_t rank = 0;
        for (uint32_t col = 0; col < e && rank < e; ++col) {
            size_t piv = rank;
            while (piv < e && M[piv][col] == 0) ++piv;
            if (piv == e) continue;
            std::swap(M[rank], M[piv]);
            uint32_t ic = gp_inv_scalar(M[rank][col], p);
            for (uint32_t c2 = 0; c2 < e; ++c2)
                M[rank][c2] = (uint32_t)((uint64_t)M[rank][c2] * ic % p);
            for (size_t r2 = 0; r2 < e; ++r2) {
                if (r2 == rank || M[r2][col] == 0) continue;
                uint32_t f = M[r2][col];
                for (uint32_t c2 = 0; c2 < e; ++c2)
                    M[r2][c2] = (uint32_t)((M[r2][c2] + (uint64_t)(p - f) * M[rank][c2]) % p);
            }
            pivot_col.push_back((int)col);
            ++rank;
        }
        std::vector<bool> is_piv(e, false);
        for (int c : pivot_col) is_piv[c] = true;
        for (uint32_t fc = 0; fc < e; ++fc) {
            if (is_piv[fc]) continue;
            // free column fc -> kernel vector
            uint64_t v = p_pow_[fc];
            for (size_t r2 = 0; r2 < rank; ++r2) {
                uint32_t coef = M[r2][fc];
                if (coef) v += (uint64_t)((p - coef) % p) * p_pow_[pivot_col[r2]];
            }
            sub_basis_.push_back((elem)v);
        }
        std::sort(sub_basis_.begin(), sub_basis_.end());
        if (sub_basis_.size() != a) throw std::logic_error("subfield basis dimension mismatch");
    }
}

elem FieldCtx::add(elem x, elem y) const {
    if (p == 2) return x ^ y;
    elem r = 0;
    for (uint32_t i = 0; i < e && (x || y); ++i) {
        r += (elem)(((x % p) + (y % p)) % p * p_pow_[i]);
        x /= p;
        y /= p;
    }
    return r;
}

elem FieldCtx::neg(elem x) const {
    if (p == 2) return x;
    elem r = 0;
    for (uint32_t i = 0; i < e && x; ++i) {
        elem d = x % p;
        if (d) r += (elem)((p - d) * p_pow_[i]);
        x /= p;
    }
    return r;
}

elem FieldCtx::sub(elem x, elem y) const {
    if (p == 2) return x ^ y;
    return add(x, neg(y));
}

elem FieldCtx::mul_p_scalar(elem x, uint32_t c) const {
    c %= p;
    if (c == 0) return 0;
    if (c == 1) return x;
    elem r = 0;
    for (uint32_t i = 0; i < e && x; ++i) {
        r += (elem)((x % p) * c % p * p_pow_[i]);
        x /= p;
    }
    return r;
}

elem FieldCtx::mul_slow(elem x, elem y) const {
    if (x == 0 || y == 0) return 0;
    if (p == 2) {
        // carry-less product then reduction by the modulus bitmask
        uint64_t acc = 0;
        uint64_t xx = x;
        for (uint32_t i = 0; i < e; ++i)
            if ((y >> i) & 1) acc ^= xx << i;
        uint64_t fbits = 0;
        for (uint32_t i = 0; i <= e; ++i)
            if (modulus[i]) fbits |= 1ULL << i;
        for (int i = 2 * (int)e - 2; i >= (int)e; --i)
            if ((acc >> i) & 1) acc ^= fbits << (i - e);
        return (elem)acc;
    }
    // digit convolution, then reduce powers z^e.. with the modulus
    uint32_t xd[32], yd[32];
    uint64_t accd[64] = {0};
    elem t = x;
    for (uint32_t i = 0; i < e; ++i) { xd[i] = t % p; t /= p; }
    t = y;
    for (uint32_t i = 0; i < e; ++i) { yd[i] = t % p; t /= p; }
    for (uint32_t i = 0; i < e; ++i) {
        if (!xd[i]) continue;
        for (uint32_t j = 0; j < e; ++j)
            accd[i + j] = (accd[i + j] + (uint64_t)xd[i] * yd[j]) % p;
    }
    for (int i = 2 * (int)e - 2; i >= (int)e; --i) {
        uint64_t c = accd[i] % p;
        if (!c) continue;
        accd[i] = 0;
        for (uint32_t j = 0; j < e; ++j)
            accd[i - e + j] = (accd[i - e + j] + c * (p - modulus[j])) % p;
    }
    elem r = 0;
    for (uint32_t i = 0; i < e; ++i) r += (elem)(accd[i] % p * p_pow_[i]);
    return r;
}

elem FieldCtx::mul(elem x, elem y) const {
    if (x == 0 || y == 0) return 0;
    if (tables_) {
        return exp_[(uint32_t)log_[x] + log_[y]];
    }
    if (e == 1) return (elem)((uint64_t)x * y % p);
    return mul_slow(x, y);
}

elem FieldCtx::inv(elem x) const {
    if (x == 0) throw degenerate_error("inverse of zero");
    if (tables_) return exp_[(size - 1) - log_[x]];
    return pow(x, size - 2);
}

elem FieldCtx::pow(elem x, uint64_t k) const {
    if (x == 0) return k == 0 ? 1 : 0;
    if (tables_) {
        uint64_t lk = (uint64_t)log_[x] * (k % (size - 1)) % (size - 1);
        return exp_[(uint32_t)lk];
    }
    k %= (size - 1);
    elem r = 1, b = x;
    while (k) {
        if (k & 1) r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
    }
    return r;
}

elem FieldCtx::mul_int(elem x, uint64_t k) const {
    return mul_p_scalar(x, (uint32_t)(k % p));
}

elem FieldCtx::frobenius(elem x, uint64_t j) const {
    j %= m;
    if (j == 0 || x == 0 || x == 1) return x;
    if (tables_) {
        elem r = x;
        for (uint64_t i = 0; i < j; ++i) r = frob_q_[r];
        return r;
    }
    uint64_t k = 1;
    for (uint64_t i = 0; i < j; ++i) k *= q; // q^j <= q^m = size, fits
    return pow(x, k);
}

elem FieldCtx::from_int(uint64_t v) const {
    if (v >= size) throw std::invalid_argument("element encoding out of range");
    return (elem)v;
}

// ---------------- polynomials over the big field ----------------

int poly_deg(const Poly& f) {
    int d = (int)f.c.size() - 1;
    while (d >= 0 && f.c[d] == 0) --d;
    return d;
}

void poly_trim(Poly& f) {
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

bool poly_is_zero(const Poly& f) { return poly_deg(f) < 0; }

Poly poly_from(std::initializer_list<elem> cs) {
    Poly f{std::vector<elem>(cs)};
    poly_trim(f);
    return f;
}

Poly poly_add(const FieldCtx& F, const Poly& f, const Poly& g) {
    Poly r = f;
    if (r.c.size() < g.c.size()) r.c.resize(g.c.size(), 0);
    for (size_t i = 0; i < g.c.size(); ++i) r.c[i] = F.add(r.c[i], g.c[i]);
    poly_trim(r);
    return r;
}

Poly poly_sub(const FieldCtx& F, const Poly& f, const Poly& g) {
    Poly r = f;
    if (r.c.size() < g.c.size()) r.c.resize(g.c.size(), 0);
    for (size_t i = 0; i < g.c.size(); ++i) r.c[i] = F.sub(r.c[i], g.c[i]);
    poly_trim(r);
    return r;
}

Poly poly_mul(const FieldCtx& F, const Poly& f, const Poly& g) {
    if (poly_is_zero(f) || poly_is_zero(g)) return {};
    Poly r;
    r.c.assign(f.c.size() + g.c.size() - 1, 0);
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        for (size_t j = 0; j < g.c.size(); ++j)
            if (g.c[j]) r.c[i + j] = F.add(r.c[i + j], F.mul(f.c[i], g.c[j]));
    }
    poly_trim(r);
    return r;
}

Poly poly_scale(const FieldCtx& F, const Poly& f, elem s) {
    if (s == 0) return {};
    Poly r = f;
    for (auto& c : r.c) c = F.mul(c, s);
    poly_trim(r);
    return r;
}

Poly poly_divmod(const FieldCtx& F, const Poly& f, const Poly& g, Poly& rem) {
    int dg = poly_deg(g);
    if (dg < 0) throw std::invalid_argument("division by zero polynomial");
    rem = f;
    poly_trim(rem);
    Poly quo;
    int df = poly_deg(rem);
    if (df < dg) return quo;
    quo.c.assign(df - dg + 1, 0);
    elem lcinv = F.inv(g.c[dg]);
    while ((df = poly_deg(rem)) >= dg) {
        elem coef = F.mul(rem.c[df], lcinv);
        int shift = df - dg;
        quo.c[shift] = coef;
        for (int i = 0; i <= dg; ++i)
            rem.c[i + shift] = F.sub(rem.c[i + shift], F.mul(coef, g.c[i]));
        poly_trim(rem);
    }
    return quo;
}

Poly poly_mod(const FieldCtx& F, const Poly& f, const Poly& g) {
    Poly rem;
    poly_divmod(F, f, g, rem);
    return rem;
}

Poly poly_monic(const FieldCtx& F, const Poly& f) {
    int d = poly_deg(f);
    if (d < 0) return {};
    return poly_scale(F, f, F.inv(f.c[d]));
}

Poly poly_gcd(const FieldCtx& F, Poly f, Poly g) {
    poly_trim(f);
    poly_trim(g);
    while (!poly_is_zero(g)) {
        Poly r = poly_mod(F, f, g);
        f = std::move(g);
        g = std::move(r);
    }
    return poly_monic(F, f);
}

Poly poly_deriv(const FieldCtx& F, const Poly& f) {
    Poly r;
    if (f.c.size() <= 1) return r;
    r.c.assign(f.c.size() - 1, 0);
    for (size_t i = 1; i < f.c.size(); ++i)
        r.c[i - 1] = F.mul_int(f.c[i], i);
    poly_trim(r);
    return r;
}

elem poly_eval(const FieldCtx& F, const Poly& f, elem x) {
    elem r = 0;
    for (size_t i = f.c.size(); i-- > 0;)
        r = F.add(F.mul(r, x), f.c[i]);
    return r;
}

Poly poly_interpolate(const FieldCtx& F, const std::vector<elem>& xs, const std::vector<elem>& ys) {
    size_t n = xs.size();
    if (n == 0 || ys.size() != n) throw std::invalid_argument("interpolation point mismatch");
    // N = prod (z - x_j), then Lagrange basis N/(z - x_i) by synthetic division
    Poly N = poly_from({1});
    for (elem x : xs) N = poly_mul(F, N, poly_from({F.neg(x), 1}));
    std::vector<elem> acc(n, 0);
    std::vector<elem> quo(n);
    for (size_t i = 0; i < n; ++i) {
        elem carry = N.c[n];
        for (size_t j = n; j-- > 0;) {
            quo[j] = carry;
            carry = F.add(N.c[j], F.mul(carry, xs[i]));
        }
        // carry is N(x_i) = 0 for distinct nodes; the scale is N'(x_i) = Q(x_i)
        elem den = 0;
        for (size_t j = n; j-- > 0;) den = F.add(F.mul(den, xs[i]), quo[j]);
        if (den == 0) throw std::invalid_argument("interpolation nodes not distinct");
        elem c = F.div(ys[i], den);
        for (size_t j = 0; j < n; ++j) acc[j] = F.add(acc[j], F.mul(c, quo[j]));
    }
    Poly out(std::move(acc));
    poly_trim(out);
    return out;
}

Poly poly_powmod(const FieldCtx& F, const Poly& base, uint64_t k, const Poly& modp) {
    Poly r = poly_from({1});
    Poly b = poly_mod(F, base, modp);
    while (k) {
        if (k & 1) r = poly_mod(F, poly_mul(F, r, b), modp);
        b = poly_mod(F, poly_mul(F, b, b), modp);
        k >>= 1;
    }
    return r;
}

namespace {

Poly poly_z() { return Poly({std::vector<elem>{0, 1}}); }

// split a product of distinct monic linear factors into roots
void split_linear(const FieldCtx& F, const Poly& g, std::vector<elem>& roots, Rng& rng) {
    int d = poly_deg(g);
    if (d <= 0) return;
    if (d == 1) {
        roots.push_back(F.neg(F.mul(g.c[0], F.inv(g.c[1]))));
        return;
    }
    uint64_t tries = 0, cap = 64ULL * (uint64_t)d * F.e + 64;
    for (;;) {
        if (++tries > cap) throw retry_cap_error("equal-degree splitting stalled");
        Poly u;
        u.c.resize(d);
        for (int i = 0; i < d; ++i) u.c[i] = F.random_element(rng);
        poly_trim(u);
        if (poly_is_zero(u)) continue;
        Poly w;
        if (F.char2()) {
            // trace map over GF(2): u + u^2 + u^4 + ... has image {0,1} on
            // each root, so gcd cuts the factor set roughly in half
            Poly t = poly_mod(F, u, g);
            Poly acc = t;
            for (uint32_t i = 1; i < F.e; ++i) {
                t = poly_mod(F, poly_mul(F, t, t), g);
                acc = poly_add(F, acc, t);
            }
            w = poly_gcd(F, g, acc);
        } else {
            Poly s = poly_powmod(F, u, (F.size - 1) / 2, g);
            s = poly_sub(F, s, poly_from({1}));
            w = poly_gcd(F, g, s);
        }
        int dw = poly_deg(w);
        if (dw > 0 && dw < d) {
            Poly rest;
            Poly quo = poly_divmod(F, g, w, rest);
            split_linear(F, w, roots, rng);
            split_linear(F, quo, roots, rng);
            return;
        }
    }
}

} // namespace

std::vector<elem> poly_roots(const FieldCtx& F, const Poly& f) {
    if (poly_is_zero(f)) throw std::invalid_argument("roots of the zero polynomial");
    std::vector<elem> roots;
    if (poly_deg(f) == 0) return roots;
    if (F.size <= (1u << 16)) {
        for (uint32_t x = 0; x < F.size; ++x)
            if (poly_eval(F, f, x) == 0) roots.push_back(x);
        return roots;
    }
    // gcd with z^Q - z keeps exactly the linear factors, one per root
    Poly zq = poly_powmod(F, poly_z(), F.size, f);
    Poly g = poly_gcd(F, f, poly_sub(F, zq, poly_z()));
    Rng rng(derive_seed(0x726f6f74u, F.size));
    split_linear(F, g, roots, rng);
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool poly_is_irreducible(const FieldCtx& F, const Poly& f) {
    int r = poly_deg(f);
    if (r < 1) return false;
    if (r == 1) return true;
    // chain z^(Q^i) mod f by repeated Q-th powers
    std::vector<Poly> chain((size_t)r + 1);
    chain[0] = poly_z();
    for (int i = 1; i <= r; ++i)
        chain[i] = poly_powmod(F, chain[i - 1], F.size, f);
    if (!poly_is_zero(poly_sub(F, chain[r], poly_z()))) return false;
    for (uint32_t ell : prime_divisors((uint32_t)r)) {
        Poly g = poly_gcd(F, f, poly_sub(F, chain[r / ell], poly_z()));
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

bool is_squarefree(const FieldCtx& F, const Poly& f) {
    int d = poly_deg(f);
    if (d < 0) return false;
    if (d == 0) return true;
    Poly df = poly_deriv(F, f);
    if (poly_is_zero(df)) return false; // p-th power in characteristic p
    return poly_deg(poly_gcd(F, f, df)) == 0;
}

Poly random_irreducible(const FieldCtx& F, uint32_t r, Rng& rng) {
    if (r == 0) throw std::invalid_argument("degree must be positive");
    uint64_t cap = 64ULL * r * F.e;
    for (uint64_t tries = 0; tries < cap; ++tries) {
        Poly f;
        f.c.resize(r + 1);
        for (uint32_t i = 0; i < r; ++i) f.c[i] = F.random_element(rng);
        f.c[r] = 1;
        if (poly_is_irreducible(F, f)) return f;
    }
    throw retry_cap_error("no irreducible polynomial found within draw cap");
}

} // namespace altrel
