#pragma once

#include <divlen/ints.hpp>

#include <cstdint>
#include <memory>
#include <vector>

namespace divlen::qarith {

// [v]_q = (q^v - 1)/(q - 1), the number of points of PG(v-1,q).
Int bracket(long v, long q);

// Gaussian binomial coefficient, exact product formula; 0 outside 0 <= k <= v.
Int qbin(long v, long k, long q);

// s_q(r,i) = q^i + q^{i+1} + ... + q^r, the base numbers of the S_q(r) system.
Int snumb(long r, long i, long q);

// Krawtchouk polynomial K_i(j) for parameters (n,q).
Int krawtchouk(long i, const Int& j, const Int& n, long q);

// ---------------------------------------------------------------------------
// Finite field F_q, q = p^m, elements encoded as c_0 + p*c_1 + ... + p^{m-1}*c_{m-1}.
// Immutable after construction; multiplication runs on dense log/antilog tables.
// ---------------------------------------------------------------------------
class Gf {
  public:
    // modulus holds c_0..c_{m-1} of the monic modulus x^m + c_{m-1}x^{m-1} + ... + c_0.
    // An empty modulus selects the lexicographically smallest irreducible.
    Gf(long p, int m, std::vector<int> modulus = {});

    // Cached field with default modulus for a prime power q <= 2^16.
    static const Gf& of(long q);

    long q() const { return q_; }
    long p() const { return p_; }
    int m() const { return m_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;
    int div(int a, int b) const;
    int pow(int a, long e) const;

    // Scales v so that its first non-zero coordinate is 1.  Rejects zero vectors.
    std::vector<int> normalize_point(std::vector<int> v) const;

    int dot(const std::vector<int>& a, const std::vector<int>& b) const;

  private:
    long p_;
    int m_;
    long q_;
    std::vector<int> modulus_;
    std::vector<int> log_;   // log_[a] for a != 0
    std::vector<int> exp_;   // exp_[i] = g^i, i in [0, q-1)
    std::vector<int> add_lo_;  // digitwise addition table for a+b when q is small is
                               // not stored; addition works on base-p digits directly.

    int mul_poly(int a, int b) const;  // schoolbook fallback used during table build
    void build_tables();
};

// Element-with-handle view, convenient in tests and small call sites.
struct Fel {
    const Gf* f = nullptr;
    int v = 0;

    friend Fel operator+(Fel a, Fel b) { return {a.f, a.f->add(a.v, b.v)}; }
    friend Fel operator-(Fel a, Fel b) { return {a.f, a.f->sub(a.v, b.v)}; }
    friend Fel operator*(Fel a, Fel b) { return {a.f, a.f->mul(a.v, b.v)}; }
    friend Fel operator/(Fel a, Fel b) { return {a.f, a.f->div(a.v, b.v)}; }
    friend bool operator==(Fel a, Fel b) { return a.v == b.v; }
};

bool is_prime(long n);

// Is n = p^m for some prime p?  Returns (p, m) when it is.
bool prime_power(long n, long* p_out = nullptr, int* m_out = nullptr);

// Packs a coordinate vector over F_q into a 64-bit key (base-q digits).
std::uint64_t pack_vec(const std::vector<int>& v, long q);
std::vector<int> unpack_vec(std::uint64_t key, long q, int len);

}  // namespace divlen::qarith
