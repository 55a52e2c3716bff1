#pragma once

#include <divlen/ints.hpp>
#include <divlen/qarith.hpp>

#include <functional>
#include <optional>
#include <vector>

namespace divlen::lengths {

// S_q(r)-adic expansion n = sum_i digits[i]*s_q(r,i) + leading*q^r with
// digits in [0,q-1].  The sign of `leading` decides existence of a
// q^r-divisible multiset of cardinality n.
struct SqrExpansion {
    long q = 2;
    long r = 0;
    Int n;
    std::vector<int> digits;  // a_0..a_{r-1}
    Int leading;              // a_r

    Int reconstruct() const;
    bool feasible() const { return n >= 0 && leading >= 0; }
};

SqrExpansion sqr_expand(const Int& n, long q, long r);

// True iff a q^r-divisible multiset of points of cardinality n exists over F_q.
bool multiset_feasible(const Int& n, long q, long r);

// Largest n that is not the cardinality of any q^r-divisible multiset (-1 if none).
Int frobenius(long q, long r);

// Sharpened rounding: maximal n with a - n*b a feasible q^r-divisible
// cardinality (nullopt encodes -infinity); ceil_qr is the minimal n with
// n*b - a feasible (nullopt encodes +infinity).  b must be positive.
std::optional<Int> floor_qr(const Int& a, const Int& b, long q, long r);
std::optional<Int> ceil_qr(const Int& a, const Int& b, long q, long r);

// Multiplicity-bounded variant.  `excluded` must return true only for
// cardinalities that provably admit no q^r-divisible multiset with maximum
// point multiplicity <= lambda (Open counts as attainable, which keeps the
// bracket a valid upper bound).  `no_exclusions_above` is a bound past which
// `excluded` is known to be false, guaranteeing termination.
std::optional<Int> floor_qr_lambda(const Int& a, const Int& b, long q, long r,
                                   const std::function<bool(const Int&)>& excluded,
                                   const Int& no_exclusions_above);

// Every cardinality above this bound is realizable by combinations of
// [r+1]_q-point subspaces and q^{r+1}-point affine subspaces, projectively.
Int projective_realizable_above(long q, long r);

// Delta = s * p^e with gcd(s, q) = 1; r = e/m may be fractional.
struct DivisorDecomposition {
    Int delta;
    long q = 2;
    Int s;
    long e = 0;
    bool integral_exponent = false;  // m | e
    long r = 0;                      // e/m when integral
};

DivisorDecomposition ward_decompose(const Int& delta, long q);

enum class DeltaFeasibility { Feasible, Infeasible, UnsupportedFractionalExponent };

// Existence of a Delta-divisible multiset of cardinality n over F_q, via
// Ward's reduction to the q^r-divisible case.  Fractional e/m is an open
// problem and reports UnsupportedFractionalExponent.
DeltaFeasibility delta_feasible(const Int& n, const Int& delta, long q);

// Fractional-exponent feasible sets for q=4, shipped as data only: the
// non-realizable cardinalities for 4^(1/2) and 4^(3/2) over F_4.
const std::vector<long>& fractional_gaps_q4_r_half();
const std::vector<long>& fractional_gaps_q4_r_three_halves();

}  // namespace divlen::lengths
