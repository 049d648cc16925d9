#include "altrel/estimate.hpp"

#include "altrel/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace altrel {

namespace {

BigInt bpow(uint64_t base, uint64_t e) {
    BigInt b = base, acc = 1;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

BigInt binom_big(const BigInt& n, uint64_t k) {
    if (n < 0 || k > n) return 0;
    BigInt acc = 1;
    for (uint64_t i = 0; i < k; ++i) {
        acc *= n - i;
        acc /= i + 1; // exact: C(n,i+1) is an integer
    }
    return acc;
}

int moebius(uint32_t a) {
    int mu = 1;
    for (uint32_t p = 2; p * p <= a; ++p) {
        if (a % p) continue;
        a /= p;
        if (a % p == 0) return 0;
        mu = -mu;
    }
    if (a > 1) mu = -mu;
    return mu;
}

int64_t choose2(int64_t t) { return t * (t - 1) / 2; }

// (m/2) * inner, where inner is guaranteed even whenever m is odd
int64_t half_m_times(uint32_t m, int64_t inner) {
    int64_t v = (int64_t)m * inner;
    if (v % 2 != 0) throw std::logic_error("threshold correction is not an integer");
    return v / 2;
}

} // namespace

void validate_params(const ParamSet& p) {
    if (p.q < 2 || p.m == 0 || p.r < 2) throw std::invalid_argument("need q >= 2, m >= 1, r >= 2");
    if ((int64_t)p.n <= (int64_t)p.s()) throw std::invalid_argument("need n > r*m");
    if (BigInt(p.n) > bpow(p.q, p.m)) throw std::invalid_argument("need n <= q^m");
}

uint32_t e_alternant(uint32_t q, uint32_t r) {
    if (r < 2) throw std::invalid_argument("e_alternant needs r >= 2");
    uint32_t e = 0;
    uint64_t pw = q;
    while (pw <= r - 1) {
        ++e;
        pw *= q;
    }
    return e;
}

uint32_t e_goppa(uint32_t q, uint32_t r) {
    if (r < 1) throw std::invalid_argument("e_goppa needs r >= 1");
    uint32_t i = 0;
    uint64_t cap = (uint64_t)(q - 1) * (q - 1);
    while (cap < r) {
        ++i;
        cap *= q;
    }
    return i + 1;
}

DistVerdict square_dist_alternant(const ParamSet& p) {
    validate_params(p);
    DistVerdict v;
    v.e = e_alternant(p.q, p.r);
    // sum_{i<=e} geometric part: 2 (q^{e+1} - 1)/(q - 1)
    int64_t geo = 2 * (int64_t)((bpow(p.q, v.e + 1) - 1) / (p.q - 1)).convert_to<int64_t>();
    int64_t inner = (int64_t)(2 * v.e + 1) * p.r - geo;
    v.threshold = choose2((int64_t)p.s() + 1) - half_m_times(p.m, (int64_t)(p.r - 1) * inner);
    v.distinguishable = (int64_t)p.n > v.threshold;
    return v;
}

DistVerdict square_dist_goppa(const ParamSet& p) {
    validate_params(p);
    DistVerdict v;
    if (p.r < p.q - 1) {
        v.e = 0;
        v.threshold =
            choose2((int64_t)p.s() + 1) - half_m_times(p.m, (int64_t)(p.r - 1) * (p.r - 2));
    } else {
        v.e = e_goppa(p.q, p.r);
        int64_t tail = 2 * (int64_t)(p.q - 1) * (int64_t)bpow(p.q, v.e - 1).convert_to<int64_t>();
        int64_t inner = (int64_t)(2 * v.e + 1) * p.r - tail - 1;
        v.threshold = choose2((int64_t)p.s() + 1) - half_m_times(p.m, (int64_t)p.r * inner);
    }
    v.distinguishable = (int64_t)p.n > v.threshold;
    return v;
}

int64_t mt22_sq_dual_bound(const ParamSet& p, KeyInstance::Kind kind) {
    DistVerdict v = kind == KeyInstance::Kind::goppa ? square_dist_goppa(p)
                                                     : square_dist_alternant(p);
    return std::min((int64_t)p.n, v.threshold);
}

BigInt count_sym_rank(uint32_t t, uint32_t rank, uint64_t q) {
    if (rank > t) throw std::invalid_argument("rank exceeds matrix side");
    uint32_t s = rank / 2;
    BigInt num = 1, den = 1;
    for (uint32_t i = 1; i <= s; ++i) {
        num *= bpow(q, 2 * i);
        den *= bpow(q, 2 * i) - 1;
    }
    for (uint32_t i = 0; i < rank; ++i) num *= bpow(q, t - i) - 1;
    if (num % den != 0) throw std::logic_error("symmetric rank count is not an integer");
    return num / den;
}

BigInt count_skew_rank(uint32_t t, uint32_t rank, uint64_t q) {
    if (rank > t) throw std::invalid_argument("rank exceeds matrix side");
    if (rank % 2) return 0;
    uint32_t s = rank / 2;
    BigInt num = 1, den = 1;
    for (uint32_t i = 1; i <= s; ++i) {
        num *= bpow(q, 2 * i - 2);
        den *= bpow(q, 2 * i) - 1;
    }
    for (uint32_t i = 0; i < rank; ++i) num *= bpow(q, t - i) - 1;
    if (num % den != 0) throw std::logic_error("alternating rank count is not an integer");
    return num / den;
}

bool gv_rank_threshold(const ParamSet& p, uint32_t d, bool skew) {
    validate_params(p);
    int64_t s = (int64_t)p.s();
    if (choose2(s + 1) <= (int64_t)p.n)
        throw std::invalid_argument("matrix code is not below the full space");
    int64_t dd = skew ? (int64_t)d + 1 : (int64_t)d;
    return (int64_t)p.n <= dd * s - choose2(dd);
}

double big_log2(const BigInt& x) {
    if (x <= 0) throw std::invalid_argument("log2 of a non-positive value");
    size_t b = boost::multiprecision::msb(x);
    if (b <= 52) return std::log2(x.convert_to<double>());
    BigInt top = x >> (b - 52);
    return std::log2(top.convert_to<double>()) + (double)(b - 52);
}

double keyattack_log2(const ParamSet& p) {
    validate_params(p);
    BigInt supports = binom_big(bpow(p.q, p.m), p.n);
    BigInt irr = 0;
    for (uint32_t a = 1; a <= p.r; ++a) {
        if (p.r % a) continue;
        irr += moebius(a) * bpow(p.q, (uint64_t)p.m * (p.r / a));
    }
    if (irr % p.r != 0) throw std::logic_error("irreducible count is not an integer");
    irr /= p.r;
    return big_log2(supports) + big_log2(irr);
}

double dist_cost_log2(const ParamSet& p, uint32_t d_reg, CostMode mode, double omega) {
    validate_params(p);
    if (d_reg == 0) throw std::invalid_argument("need d_reg >= 1");
    int64_t nvars = choose2((int64_t)p.s());
    if (mode == CostMode::sparse) {
        // Wiedemann: 3 (nvars - k + 1) sparse products, each C(nvars + d - 1, d)
        // rows of weight <= 3
        BigInt cols = binom_big(BigInt(nvars) + d_reg - 1, d_reg);
        return std::log2(3.0) + big_log2(BigInt(nvars - p.k() + 1)) + 2 * big_log2(cols);
    }
    // dense elimination after substituting the linear forms away
    BigInt cols = binom_big(BigInt(nvars - p.k()) + d_reg - 1, d_reg);
    BigInt quadrics = binom_big(BigInt((int64_t)p.s()), 4) * d_reg;
    return big_log2(quadrics) + omega * big_log2(cols);
}

SublinearPoint sublinear_exponents(double alpha, double c, uint64_t n) {
    if (!(alpha >= 0.5 && alpha < 1)) throw std::invalid_argument("need alpha in [1/2, 1)");
    if (n < 2) throw std::invalid_argument("need n >= 2");
    SublinearPoint pt;
    double rm = std::ceil(std::pow((double)n, alpha));
    pt.key = rm;
    pt.message = (1 - alpha) * rm;
    pt.dist = 4 * alpha * c * rm * rm / (double)n * std::log2((double)n);
    return pt;
}

} // namespace altrel
