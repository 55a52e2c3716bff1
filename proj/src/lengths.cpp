#include <divlen/lengths.hpp>

#include <stdexcept>

namespace divlen::lengths {

using qarith::bracket;
using qarith::snumb;

Int SqrExpansion::reconstruct() const {
    Int sum = leading * pow_int(q, r);
    for (long i = 0; i < r; ++i) sum += Int(digits[i]) * snumb(r, i, q);
    return sum;
}

SqrExpansion sqr_expand(const Int& n, long q, long r) {
    if (q < 2 || r < 0) throw std::domain_error("sqr_expand: need q >= 2, r >= 0");
    SqrExpansion e;
    e.q = q;
    e.r = r;
    e.n = n;
    e.digits.resize(r);
    Int m = n;
    for (long i = 0; i < r; ++i) {
        Int a = mod_nonneg(m, q);
        e.digits[i] = (int)a.convert_to<long>();
        m = (m - a * bracket(r - i + 1, q)) / q;
    }
    e.leading = m;
    return e;
}

bool multiset_feasible(const Int& n, long q, long r) {
    if (n < 0) return false;
    return sqr_expand(n, q, r).leading >= 0;
}

Int frobenius(long q, long r) {
    // r*q^{r+1} - [r+1]_q; equals -1 for r = 0.
    return Int(r) * pow_int(q, r + 1) - bracket(r + 1, q);
}

std::optional<Int> floor_qr(const Int& a, const Int& b, long q, long r) {
    if (b == 0) throw std::domain_error("floor_qr: b must not be zero");
    if (b < 0) throw std::domain_error("floor_qr: negative b has no finite bracket");
    Int n = floor_div(a, b);
    while (true) {
        if (multiset_feasible(a - n * b, q, r)) return n;
        --n;
        // a - n*b grows by b each step; it passes frobenius(q,r) after
        // finitely many steps and every larger value is feasible.
    }
}

std::optional<Int> ceil_qr(const Int& a, const Int& b, long q, long r) {
    if (b == 0) throw std::domain_error("ceil_qr: b must not be zero");
    if (b < 0) throw std::domain_error("ceil_qr: negative b has no finite bracket");
    Int n = -floor_div(-a, b);  // ceil(a/b)
    while (true) {
        if (multiset_feasible(n * b - a, q, r)) return n;
        ++n;
    }
}

std::optional<Int> floor_qr_lambda(const Int& a, const Int& b, long q, long r,
                                   const std::function<bool(const Int&)>& excluded,
                                   const Int& no_exclusions_above) {
    if (b == 0) throw std::domain_error("floor_qr_lambda: b must not be zero");
    if (b < 0) throw std::domain_error("floor_qr_lambda: negative b has no finite bracket");
    (void)q;
    (void)r;
    Int n = floor_div(a, b);
    while (true) {
        Int len = a - n * b;
        if (len > no_exclusions_above || !excluded(len)) return n;
        --n;
    }
}

Int projective_realizable_above(long q, long r) {
    // [r+1]_q and q^{r+1} are coprime, so every integer beyond the classical
    // two-coin Frobenius number is a non-negative combination and hence the
    // cardinality of a projective q^r-divisible set.
    Int x = bracket(r + 1, q), y = pow_int(q, r + 1);
    return x * y - x - y;
}

DivisorDecomposition ward_decompose(const Int& delta, long q) {
    if (delta < 1) throw std::domain_error("ward_decompose: Delta must be >= 1");
    long p;
    int m;
    if (!qarith::prime_power(q, &p, &m)) throw std::domain_error("ward_decompose: q not a prime power");
    DivisorDecomposition d;
    d.delta = delta;
    d.q = q;
    d.s = delta;
    d.e = 0;
    while (d.s % p == 0) {
        d.s /= p;
        ++d.e;
    }
    d.integral_exponent = (d.e % m == 0);
    d.r = d.integral_exponent ? d.e / m : 0;
    return d;
}

DeltaFeasibility delta_feasible(const Int& n, const Int& delta, long q) {
    DivisorDecomposition d = ward_decompose(delta, q);
    if (!d.integral_exponent) return DeltaFeasibility::UnsupportedFractionalExponent;
    if (n < 0 || n % d.s != 0) return DeltaFeasibility::Infeasible;
    return multiset_feasible(n / d.s, q, d.r) ? DeltaFeasibility::Feasible : DeltaFeasibility::Infeasible;
}

const std::vector<long>& fractional_gaps_q4_r_half() {
    static const std::vector<long> gaps = {1, 3};
    return gaps;
}

const std::vector<long>& fractional_gaps_q4_r_three_halves() {
    static const std::vector<long> gaps = {1,  2,  3,  4,  5,  6,  7,  9,  11, 12, 13,
                                           14, 15, 17, 19, 22, 23, 25, 27, 33, 35, 43};
    return gaps;
}

}  // namespace divlen::lengths
