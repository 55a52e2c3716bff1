#include <divlen/qarith.hpp>

#include <map>
#include <mutex>
#include <stdexcept>

namespace divlen::qarith {

Int bracket(long v, long q) {
    if (v < 0 || q < 2) throw std::domain_error("bracket: need v >= 0 and q >= 2");
    return (pow_int(q, v) - 1) / (q - 1);
}

Int qbin(long v, long k, long q) {
    if (q < 2) throw std::domain_error("qbin: need q >= 2");
    if (k < 0 || v < 0 || k > v) return 0;
    if (k > v - k) k = v - k;
    Int num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= pow_int(q, v - i) - 1;
        den *= pow_int(q, k - i) - 1;
    }
    Int r = num / den;
    if (r * den != num) throw std::logic_error("qbin: inexact division");
    return r;
}

Int snumb(long r, long i, long q) {
    if (i < 0 || i > r) throw std::domain_error("snumb: need 0 <= i <= r");
    return (pow_int(q, r + 1) - pow_int(q, i)) / (q - 1);
}

Int krawtchouk(long i, const Int& j, const Int& n, long q) {
    if (i < 0 || Int(i) > n) throw std::domain_error("krawtchouk: need 0 <= i <= n");
    Int sum = 0;
    for (long s = 0; s <= i; ++s) {
        Int term = binomial(n - j, i - s) * binomial(j, s) * pow_int(q - 1, i - s);
        sum += (s % 2 == 0) ? term : -term;
    }
    return sum;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool prime_power(long n, long* p_out, int* m_out) {
    if (n < 2) return false;
    long p = n;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    long x = n;
    int m = 0;
    while (x % p == 0) {
        x /= p;
        ++m;
    }
    if (x != 1) return false;
    if (p_out) *p_out = p;
    if (m_out) *m_out = m;
    return true;
}

namespace {

// Polynomials over F_p, coefficient vectors c_0..c_d, for the modulus check.
using Poly = std::vector<int>;

Poly poly_mod(Poly a, const Poly& b, long p) {
    while (a.size() >= b.size() && !a.empty()) {
        if (a.back() == 0) {
            a.pop_back();
            continue;
        }
        long lead_inv = 1;
        for (long t = 1; t < p; ++t)
            if (t * b.back() % p == 1) lead_inv = t;
        long c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            long v = a[shift + i] - c * b[i];
            a[shift + i] = (int)mod_nonneg(Int(v), Int(p)).convert_to<long>();
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

bool divides(const Poly& d, Poly target, long p) { return poly_mod(std::move(target), d, p).empty(); }

// Monic irreducible test by trial division with all monic polynomials of
// degree up to deg/2.
bool poly_irreducible(const Poly& f, long p) {
    long deg = (long)f.size() - 1;
    if (deg <= 0) return false;
    for (long d = 1; 2 * d <= deg; ++d) {
        long count = 1;
        for (long i = 0; i < d; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            long c = code;
            for (long i = 0; i < d; ++i) {
                g[i] = (int)(c % p);
                c /= p;
            }
            g[d] = 1;
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

Poly default_modulus(long p, int m) {
    long count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    // Lexicographic order on (c_{m-1},...,c_0) gives x^2+x+1 for F_4,
    // x^3+x+1 for F_8 and x^2+1 for F_9.
    for (long code = 0; code < count; ++code) {
        Poly f(m + 1, 0);
        long c = code;
        for (int i = 0; i < m; ++i) {
            f[i] = (int)(c % p);
            c /= p;
        }
        f[m] = 1;
        if (poly_irreducible(f, p)) return Poly(f.begin(), f.end() - 1);
    }
    throw std::logic_error("default_modulus: no irreducible polynomial found");
}

}  // namespace

Gf::Gf(long p, int m, std::vector<int> modulus) : p_(p), m_(m) {
    if (!is_prime(p)) throw std::domain_error("Gf: p must be prime");
    if (m < 1) throw std::domain_error("Gf: m must be >= 1");
    q_ = 1;
    for (int i = 0; i < m; ++i) {
        q_ *= p;
        if (q_ > (1L << 16)) throw std::domain_error("Gf: q > 2^16 unsupported");
    }
    if (modulus.empty()) modulus = default_modulus(p, m);
    if ((int)modulus.size() != m) throw std::domain_error("Gf: modulus must list c_0..c_{m-1}");
    Poly full(modulus.begin(), modulus.end());
    full.push_back(1);
    if (m > 1 && !poly_irreducible(full, p)) throw std::domain_error("Gf: modulus is reducible");
    modulus_ = std::move(modulus);
    build_tables();
}

const Gf& Gf::of(long q) {
    static std::map<long, std::unique_ptr<Gf>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) {
        long p;
        int m;
        if (!prime_power(q, &p, &m)) throw std::domain_error("Gf::of: q is not a prime power");
        it = cache.emplace(q, std::make_unique<Gf>(p, m)).first;
    }
    return *it->second;
}

int Gf::add(int a, int b) const {
    if (m_ == 1) return (int)((a + b) % p_);
    int r = 0, mult = 1;
    for (int i = 0; i < m_; ++i) {
        int da = (int)(a % p_), db = (int)(b % p_);
        r += (int)((da + db) % p_) * mult;
        a /= (int)p_;
        b /= (int)p_;
        mult *= (int)p_;
    }
    return r;
}

int Gf::neg(int a) const {
    if (m_ == 1) return (int)((p_ - a) % p_);
    int r = 0, mult = 1;
    for (int i = 0; i < m_; ++i) {
        int da = (int)(a % p_);
        r += (int)((p_ - da) % p_) * mult;
        a /= (int)p_;
        mult *= (int)p_;
    }
    return r;
}

int Gf::sub(int a, int b) const { return add(a, neg(b)); }

int Gf::mul_poly(int a, int b) const {
    // coefficients of a*b before reduction
    std::vector<int> prod(2 * m_ - 1, 0);
    std::vector<int> da(m_), db(m_);
    for (int i = 0; i < m_; ++i) {
        da[i] = a % (int)p_;
        a /= (int)p_;
        db[i] = b % (int)p_;
        b /= (int)p_;
    }
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) prod[i + j] = (int)((prod[i + j] + (long)da[i] * db[j]) % p_);
    // reduce by x^m = -modulus_
    for (int d = 2 * m_ - 2; d >= m_; --d) {
        int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < m_; ++i) {
            long v = prod[d - m_ + i] - (long)c * modulus_[i];
            prod[d - m_ + i] = (int)mod_nonneg(Int(v), Int(p_)).convert_to<long>();
        }
    }
    int r = 0, mult = 1;
    for (int i = 0; i < m_; ++i) {
        r += prod[i] * mult;
        mult *= (int)p_;
    }
    return r;
}

void Gf::build_tables() {
    log_.assign(q_, -1);
    exp_.assign(q_ - 1, 0);
    // find a generator of the multiplicative group
    for (long g = 1; g < q_; ++g) {
        long x = g;
        long order = 1;
        while (x != 1) {
            x = mul_poly((int)x, (int)g);
            ++order;
            if (order > q_ - 1) break;
        }
        if (order == q_ - 1) {
            long v = 1;
            for (long i = 0; i < q_ - 1; ++i) {
                exp_[i] = (int)v;
                log_[v] = (int)i;
                v = mul_poly((int)v, (int)g);
            }
            return;
        }
    }
    throw std::logic_error("Gf: no generator found");
}

int Gf::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    long e = (long)log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
}

int Gf::inv(int a) const {
    if (a == 0) throw std::domain_error("Gf::inv: zero has no inverse");
    long e = (q_ - 1 - log_[a]) % (q_ - 1);
    return exp_[e];
}

int Gf::div(int a, int b) const { return mul(a, inv(b)); }

int Gf::pow(int a, long e) const {
    if (a == 0) {
        if (e < 0) throw std::domain_error("Gf::pow: zero to negative power");
        return e == 0 ? 1 : 0;
    }
    long le = ((long)log_[a] * (e % (q_ - 1))) % (q_ - 1);
    if (le < 0) le += q_ - 1;
    return exp_[le];
}

std::vector<int> Gf::normalize_point(std::vector<int> v) const {
    for (int& x : v) {
        if (x != 0) {
            if (x == 1) return v;
            int s = inv(x);
            for (int& y : v) y = mul(y, s);
            return v;
        }
    }
    throw std::domain_error("normalize_point: zero vector");
}

int Gf::dot(const std::vector<int>& a, const std::vector<int>& b) const {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = add(s, mul(a[i], b[i]));
    return s;
}

std::uint64_t pack_vec(const std::vector<int>& v, long q) {
    std::uint64_t key = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) key = key * (std::uint64_t)q + (std::uint64_t)*it;
    return key;
}

std::vector<int> unpack_vec(std::uint64_t key, long q, int len) {
    std::vector<int> v(len);
    for (int i = 0; i < len; ++i) {
        v[i] = (int)(key % (std::uint64_t)q);
        key /= (std::uint64_t)q;
    }
    return v;
}

}  // namespace divlen::qarith
