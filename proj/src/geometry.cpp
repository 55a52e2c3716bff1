#include <divlen/geometry.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace divlen::geom {

using qarith::Gf;
using qarith::pack_vec;
using qarith::unpack_vec;

Int PointMultiset::cardinality() const {
    Int s = 0;
    for (const auto& [p, c] : mult) s += c;
    return s;
}

Int PointMultiset::multiplicity(const std::vector<int>& pt) const {
    const Gf& f = Gf::of(q);
    auto it = mult.find(pack_vec(f.normalize_point(pt), q));
    return it == mult.end() ? Int(0) : it->second;
}

void PointMultiset::add(const std::vector<int>& pt, const Int& c) {
    const Gf& f = Gf::of(q);
    std::uint64_t key = pack_vec(f.normalize_point(pt), q);
    Int& m = mult[key];
    m += c;
    if (m == 0) mult.erase(key);
    if (m < 0) throw std::domain_error("PointMultiset: negative multiplicity");
}

long PointMultiset::max_multiplicity() const {
    Int best = 0;
    for (const auto& [p, c] : mult) best = std::max(best, c);
    return best.convert_to<long>();
}

std::vector<std::vector<int>> PointMultiset::support() const {
    std::vector<std::vector<int>> pts;
    pts.reserve(mult.size());
    for (const auto& [p, c] : mult) pts.push_back(unpack_vec(p, q, (int)v));
    return pts;
}

long GeneratorMatrix::effective_length() const {
    long eff = 0;
    for (long j = 0; j < n(); ++j) {
        for (long i = 0; i < k(); ++i)
            if (rows[i][j] != 0) {
                ++eff;
                break;
            }
    }
    return eff;
}

std::vector<std::uint64_t> enumerate_points(long v, long q) {
    Int count = qarith::bracket(v, q);
    if (count > kHyperplaneBudget)
        throw std::runtime_error("enumerate_points: [v]_q exceeds the enumeration budget");
    std::vector<std::uint64_t> pts;
    pts.reserve(count.convert_to<std::size_t>());
    // first non-zero coordinate equals 1; coordinates after it run freely
    std::vector<int> vec(v, 0);
    for (long lead = 0; lead < v; ++lead) {
        std::fill(vec.begin(), vec.end(), 0);
        vec[lead] = 1;
        long tail = v - lead - 1;
        Int total = pow_int(q, tail);
        for (Int code = 0; code < total; ++code) {
            Int c = code;
            for (long i = 0; i < tail; ++i) {
                vec[lead + 1 + i] = (int)(c % q).convert_to<long>();
                c /= q;
            }
            pts.push_back(pack_vec(vec, q));
        }
    }
    return pts;
}

PointMultiset multiset_from_matrix(const GeneratorMatrix& g, long* zero_columns) {
    PointMultiset m;
    m.q = g.q;
    m.v = g.k();
    long zeros = 0;
    for (long j = 0; j < g.n(); ++j) {
        std::vector<int> col(g.k());
        bool nonzero = false;
        for (long i = 0; i < g.k(); ++i) {
            col[i] = g.rows[i][j];
            nonzero |= col[i] != 0;
        }
        if (!nonzero) {
            ++zeros;
            continue;
        }
        m.add(col, 1);
    }
    if (zero_columns) *zero_columns = zeros;
    return m;
}

GeneratorMatrix matrix_from_multiset(const PointMultiset& m) {
    GeneratorMatrix g;
    g.q = m.q;
    g.rows.assign(m.v, {});
    for (const auto& [key, c] : m.mult) {
        std::vector<int> pt = unpack_vec(key, m.q, (int)m.v);
        for (Int i = 0; i < c; ++i)
            for (long r = 0; r < m.v; ++r) g.rows[r].push_back(pt[r]);
    }
    return g;
}

mw::WeightDistribution weight_distribution_bruteforce(const GeneratorMatrix& g, long budget) {
    const Gf& f = Gf::of(g.q);
    long k = g.k(), n = g.n();
    Int total = pow_int(g.q, k);
    if (total > budget) throw std::runtime_error("weight_distribution_bruteforce: q^k exceeds the budget");

    std::vector<std::vector<int>> cols(n, std::vector<int>(k));
    for (long j = 0; j < n; ++j)
        for (long i = 0; i < k; ++i) cols[j][i] = g.rows[i][j];

    mw::WeightDistribution w;
    w.q = g.q;
    w.n = n;
    w.k = k;
    w.A.assign(n + 1, 0);
    std::vector<int> h(k, 0);
    for (Int code = 0; code < total; ++code) {
        Int c = code;
        for (long i = 0; i < k; ++i) {
            h[i] = (int)(c % g.q).convert_to<long>();
            c /= g.q;
        }
        long weight = 0;
        for (long j = 0; j < n; ++j)
            if (f.dot(h, cols[j]) != 0) ++weight;
        w.A[weight] += 1;
    }
    // the all-zero message contributed A_0 = 1; rank defects would show up as A_0 > 1
    return w;
}

long dim_span(const PointMultiset& m) {
    const Gf& f = Gf::of(m.q);
    std::vector<std::vector<int>> basis;
    for (const auto& pt : m.support()) {
        std::vector<int> vec = pt;
        for (const auto& b : basis) {
            int lead = -1;
            for (std::size_t i = 0; i < b.size(); ++i)
                if (b[i] != 0) {
                    lead = (int)i;
                    break;
                }
            if (lead >= 0 && vec[lead] != 0) {
                int factor = f.div(vec[lead], b[lead]);
                for (std::size_t i = 0; i < vec.size(); ++i) vec[i] = f.sub(vec[i], f.mul(factor, b[i]));
            }
        }
        if (std::any_of(vec.begin(), vec.end(), [](int x) { return x != 0; })) basis.push_back(vec);
    }
    return (long)basis.size();
}

mw::Spectrum spectrum_bruteforce(const PointMultiset& m, long budget) {
    if (m.v < 2) throw std::runtime_error("spectrum_bruteforce: needs ambient dimension >= 2");
    const Gf& f = Gf::of(m.q);
    Int nh = qarith::bracket(m.v, m.q);
    if (nh > budget) throw std::runtime_error("spectrum_bruteforce: [v]_q exceeds the budget");
    auto pts = m.support();
    std::vector<Int> cnt(pts.size());
    {
        std::size_t i = 0;
        for (const auto& [key, c] : m.mult) cnt[i++] = c;
    }
    Int n = m.cardinality();
    std::map<Int, Int> hist;
    for (std::uint64_t hkey : enumerate_points(m.v, m.q)) {
        std::vector<int> h = unpack_vec(hkey, m.q, (int)m.v);
        Int s = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (f.dot(h, pts[i]) == 0) s += cnt[i];
        hist[s] += 1;
    }
    mw::Spectrum sp;
    sp.q = m.q;
    sp.n = n.convert_to<long>();
    sp.k = dim_span(m);
    long smax = hist.empty() ? 0 : hist.rbegin()->first.convert_to<long>();
    sp.a.assign(smax + 1, 0);
    for (const auto& [i, c] : hist) sp.a[i.convert_to<long>()] = c;
    return sp;
}

bool is_divisible(const PointMultiset& m, const Int& delta, long budget) {
    Int n = m.cardinality();
    if (m.mult.empty()) return true;
    if (m.v == 1) return n % delta == 0;
    const Gf& f = Gf::of(m.q);
    Int nh = qarith::bracket(m.v, m.q);
    if (nh > budget) throw std::runtime_error("is_divisible: [v]_q exceeds the budget");
    auto pts = m.support();
    std::vector<Int> cnt;
    cnt.reserve(pts.size());
    for (const auto& [key, c] : m.mult) cnt.push_back(c);
    for (std::uint64_t hkey : enumerate_points(m.v, m.q)) {
        std::vector<int> h = unpack_vec(hkey, m.q, (int)m.v);
        Int s = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (f.dot(h, pts[i]) == 0) s += cnt[i];
        if ((n - s) % delta != 0) return false;
    }
    return true;
}

Int max_divisibility(const PointMultiset& m, long budget) {
    Int n = m.cardinality();
    if (m.mult.empty()) return 0;  // divisible by everything
    if (m.v == 1) return n;
    const Gf& f = Gf::of(m.q);
    Int nh = qarith::bracket(m.v, m.q);
    if (nh > budget) throw std::runtime_error("max_divisibility: [v]_q exceeds the budget");
    auto pts = m.support();
    std::vector<Int> cnt;
    cnt.reserve(pts.size());
    for (const auto& [key, c] : m.mult) cnt.push_back(c);
    Int g = 0;
    for (std::uint64_t hkey : enumerate_points(m.v, m.q)) {
        std::vector<int> h = unpack_vec(hkey, m.q, (int)m.v);
        Int s = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (f.dot(h, pts[i]) == 0) s += cnt[i];
        g = boost::multiprecision::gcd(g, n - s);
    }
    return g;
}

PointMultiset simplex(long k, long q) {
    PointMultiset m;
    m.q = q;
    m.v = k;
    for (std::uint64_t key : enumerate_points(k, q)) m.mult[key] = 1;
    return m;
}

PointMultiset affine(long k, long q) {
    if (k < 2) throw std::domain_error("affine: need k >= 2");
    PointMultiset m;
    m.q = q;
    m.v = k;
    // complement of the hyperplane x_1 = 0: normalized points with x_1 = 1
    std::vector<int> vec(k, 0);
    vec[0] = 1;
    Int total = pow_int(q, k - 1);
    for (Int code = 0; code < total; ++code) {
        Int c = code;
        for (long i = 1; i < k; ++i) {
            vec[i] = (int)(c % q).convert_to<long>();
            c /= q;
        }
        m.mult[pack_vec(vec, q)] = 1;
    }
    return m;
}

PointMultiset projective_base(long k) {
    if (k < 2) throw std::domain_error("projective_base: need k >= 2");
    PointMultiset m;
    m.q = 2;
    m.v = k;
    for (long i = 0; i < k; ++i) {
        std::vector<int> e(k, 0);
        e[i] = 1;
        m.add(e);
    }
    m.add(std::vector<int>(k, 1));
    return m;
}

PointMultiset repeat(const PointMultiset& m, const Int& t) {
    PointMultiset r = m;
    if (t == 0) {
        r.mult.clear();
        return r;
    }
    for (auto& [key, c] : r.mult) c *= t;
    return r;
}

PointMultiset disjoint_sum(const PointMultiset& a, const PointMultiset& b) {
    if (a.q != b.q) throw std::domain_error("disjoint_sum: mixed fields");
    PointMultiset r;
    r.q = a.q;
    r.v = a.v + b.v;
    for (const auto& [key, c] : a.mult) {
        std::vector<int> pt = unpack_vec(key, a.q, (int)a.v);
        pt.resize(r.v, 0);
        r.add(pt, c);
    }
    for (const auto& [key, c] : b.mult) {
        std::vector<int> pt(r.v, 0);
        std::vector<int> src = unpack_vec(key, b.q, (int)b.v);
        for (long i = 0; i < b.v; ++i) pt[a.v + i] = src[i];
        r.add(pt, c);
    }
    return r;
}

PointMultiset overlap_sum(const PointMultiset& a, const PointMultiset& b) {
    if (a.q != b.q) throw std::domain_error("overlap_sum: mixed fields");
    PointMultiset r;
    r.q = a.q;
    r.v = std::max(a.v, b.v);
    for (const auto& [key, c] : a.mult) {
        std::vector<int> pt = unpack_vec(key, a.q, (int)a.v);
        pt.resize(r.v, 0);
        r.add(pt, c);
    }
    for (const auto& [key, c] : b.mult) {
        std::vector<int> pt = unpack_vec(key, b.q, (int)b.v);
        pt.resize(r.v, 0);
        r.add(pt, c);
    }
    return r;
}

PointMultiset complement(const PointMultiset& m, const Int& lambda) {
    if (Int(m.max_multiplicity()) > lambda)
        throw std::domain_error("complement: lambda below the maximum point multiplicity");
    PointMultiset r;
    r.q = m.q;
    r.v = m.v;
    for (std::uint64_t key : enumerate_points(m.v, m.q)) {
        auto it = m.mult.find(key);
        Int c = lambda - (it == m.mult.end() ? Int(0) : it->second);
        if (c != 0) r.mult[key] = c;
    }
    return r;
}

namespace {

PointMultiset cone_impl(long s, const PointMultiset& base, long r, bool with_vertex) {
    if (s < 1) throw std::domain_error("cone: vertex dimension must be >= 1");
    if (base.max_multiplicity() > 1) throw std::domain_error("cone: base must be a set of points");
    long q = base.q;
    Int nb = base.cardinality();
    if (!with_vertex && nb % pow_int(q, r + 1) != 0)
        throw std::domain_error("cone_minus_vertex: requires #B = 0 mod q^{r+1}");
    if (with_vertex && mod_nonneg(nb * (q - 1) + 1, pow_int(q, r + 1)) != 0)
        throw std::domain_error("cone_with_vertex: requires #B (q-1) = -1 mod q^{r+1}");
    PointMultiset m;
    m.q = q;
    m.v = s + base.v;
    // points of <B,X> \ X: (x | b) with b a support point of the base, x free in F_q^s
    Int xs = pow_int(q, s);
    for (const auto& b : base.support()) {
        std::vector<int> pt(m.v, 0);
        for (long i = 0; i < base.v; ++i) pt[s + i] = b[i];
        for (Int code = 0; code < xs; ++code) {
            Int c = code;
            for (long i = 0; i < s; ++i) {
                pt[i] = (int)(c % q).convert_to<long>();
                c /= q;
            }
            m.add(pt, 1);
        }
    }
    if (with_vertex) {
        for (std::uint64_t key : enumerate_points(s, q)) {
            std::vector<int> pt = unpack_vec(key, q, (int)s);
            pt.resize(m.v, 0);
            m.add(pt, 1);
        }
    }
    return m;
}

}  // namespace

PointMultiset cone_minus_vertex(long s, const PointMultiset& base, long r) { return cone_impl(s, base, r, false); }
PointMultiset cone_with_vertex(long s, const PointMultiset& base, long r) { return cone_impl(s, base, r, true); }

PointMultiset switching(const PointMultiset& m, const std::vector<std::vector<int>>& space_basis) {
    long q = m.q;
    long r = (long)space_basis.size();
    if (r < 1) throw std::domain_error("switching: empty subspace");
    const Gf& f = Gf::of(q);

    // all points of S, and the containment check
    std::vector<std::vector<int>> s_points;
    {
        Int total = pow_int(q, r);
        for (Int code = 1; code < total; ++code) {
            std::vector<int> pt(m.v, 0);
            Int c = code;
            bool first = true;
            std::vector<int> coeff(r);
            for (long i = 0; i < r; ++i) {
                coeff[i] = (int)(c % q).convert_to<long>();
                c /= q;
            }
            for (long i = 0; i < r; ++i) {
                if (coeff[i] == 0) continue;
                for (long j = 0; j < m.v; ++j) pt[j] = f.add(pt[j], f.mul(coeff[i], space_basis[i][j]));
                first = false;
            }
            (void)first;
            std::vector<int> norm = f.normalize_point(pt);
            if (std::find(s_points.begin(), s_points.end(), norm) == s_points.end()) s_points.push_back(norm);
        }
    }
    for (const auto& pt : s_points)
        if (m.multiplicity(pt) != 1) throw std::domain_error("switching: S must lie in the support with multiplicity 1");

    PointMultiset out;
    out.q = q;
    out.v = m.v + (q - 1);
    for (const auto& [key, c] : m.mult) {
        std::vector<int> pt = unpack_vec(key, q, (int)m.v);
        pt.resize(out.v, 0);
        out.add(pt, c);
    }
    // T_i = <S, e_{v+i}>; add chi_{T_i} and subtract q * chi_S
    for (long i = 1; i <= q - 1; ++i) {
        // points of T_i not in S: alpha * e_{v+i} + s with alpha != 0, s in span(S)
        Int total = pow_int(q, r);
        for (long alpha = 1; alpha < q; ++alpha) {
            for (Int code = 0; code < total; ++code) {
                std::vector<int> pt(out.v, 0);
                Int c = code;
                for (long bi = 0; bi < r; ++bi) {
                    int coeff = (int)(c % q).convert_to<long>();
                    c /= q;
                    if (coeff == 0) continue;
                    for (long j = 0; j < m.v; ++j) pt[j] = f.add(pt[j], f.mul(coeff, space_basis[bi][j]));
                }
                pt[m.v + i - 1] = alpha;
                std::vector<int> norm = f.normalize_point(pt);
                if (norm[m.v + i - 1] != 0 || true) {
                    // alpha != 0 keeps the point outside S automatically
                }
                out.add(pt, 1);
            }
        }
        // chi_{T_i} also contains the points of S once each
        for (const auto& pt : s_points) {
            std::vector<int> p2 = pt;
            p2.resize(out.v, 0);
            out.add(p2, 1);
        }
    }
    for (const auto& pt : s_points) {
        std::vector<int> p2 = pt;
        p2.resize(out.v, 0);
        out.add(p2, -Int(q));
    }
    return out;
}

std::vector<std::vector<std::vector<int>>> desarguesian_spread(long v, long t, long q) {
    if (v % t != 0) throw std::domain_error("desarguesian_spread: t must divide v");
    if (!qarith::is_prime(q)) throw std::domain_error("desarguesian_spread: q must be prime");
    long ext = 1;
    for (long i = 0; i < t; ++i) ext *= q;
    const Gf& big = Gf::of(ext);
    long w = v / t;  // dimension over the extension field

    auto expand = [&](const std::vector<int>& x) {
        // F_{q^t}^w -> F_q^v via base-q digits of each coordinate
        std::vector<int> out(v);
        for (long i = 0; i < w; ++i) {
            int c = x[i];
            for (long d = 0; d < t; ++d) {
                out[i * t + d] = c % (int)q;
                c /= (int)q;
            }
        }
        return out;
    };

    std::vector<std::vector<std::vector<int>>> spread;
    for (std::uint64_t key : enumerate_points(w, ext)) {
        std::vector<int> x = unpack_vec(key, ext, (int)w);
        std::vector<std::vector<int>> basis;
        for (long d = 0; d < t; ++d) {
            // multiply x by the basis element with encoding q^d
            int beta = 1;
            for (long j = 0; j < d; ++j) beta *= (int)q;
            std::vector<int> bx(w);
            for (long i = 0; i < w; ++i) bx[i] = big.mul(beta, x[i]);
            basis.push_back(expand(bx));
        }
        spread.push_back(std::move(basis));
    }
    return spread;
}

GeneratorMatrix concatenate_simplex(const GeneratorMatrix& g, long l) {
    const Gf& big = Gf::of(g.q);
    long p = big.p();
    if (big.m() != l) throw std::domain_error("concatenate_simplex: l must equal the extension degree of the field");
    long k = g.k(), n = g.n();
    GeneratorMatrix out;
    out.q = p;
    out.rows.assign(k * l, {});

    auto expand = [&](int c) {
        std::vector<int> digits(l);
        for (long d = 0; d < l; ++d) {
            digits[d] = c % (int)p;
            c /= (int)p;
        }
        return digits;
    };

    for (long j = 0; j < n; ++j) {
        std::vector<int> col(k);
        for (long i = 0; i < k; ++i) col[i] = g.rows[i][j];
        // the point <col> over F_{q} expands to the [l]_p points of an l-space over F_p
        std::set<std::vector<int>> newcols;
        for (long alpha = 1; alpha < g.q; ++alpha) {
            std::vector<int> scaled(k * l);
            for (long i = 0; i < k; ++i) {
                auto digits = expand(big.mul((int)alpha, col[i]));
                for (long d = 0; d < l; ++d) scaled[i * l + d] = digits[d];
            }
            newcols.insert(Gf::of(p).normalize_point(scaled));
        }
        for (const auto& c2 : newcols)
            for (long rr = 0; rr < k * l; ++rr) out.rows[rr].push_back(c2[rr]);
    }
    return out;
}

GeneratorMatrix interpret_over_extension(const GeneratorMatrix& g, long l) {
    const Gf& f = Gf::of(g.q);
    if (f.m() != 1) throw std::domain_error("interpret_over_extension: base field must be prime");
    long ext = 1;
    for (long i = 0; i < l; ++i) ext *= g.q;
    GeneratorMatrix out = g;
    out.q = ext;  // encodings of F_p elements are valid F_{p^l} encodings
    return out;
}

PointMultiset ovoid(long q) {
    const Gf& f = Gf::of(q);
    // irreducible y^2 + c1 y + c0 over F_q
    int c1 = -1, c0 = -1;
    for (int a = 0; a < q && c1 < 0; ++a)
        for (int b = 1; b < q && c1 < 0; ++b) {
            bool has_root = false;
            for (int y = 0; y < q; ++y)
                if (f.add(f.add(f.mul(y, y), f.mul(a, y)), b) == 0) has_root = true;
            if (!has_root) {
                c1 = a;
                c0 = b;
            }
        }
    if (c1 < 0) throw std::logic_error("ovoid: no irreducible quadratic found");
    PointMultiset m;
    m.q = q;
    m.v = 4;
    m.add({0, 1, 0, 0});
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            int norm = f.add(f.add(f.mul(a, a), f.mul(c1, f.mul(a, b))), f.mul(c0, f.mul(b, b)));
            m.add({1, f.neg(norm), a, b});
        }
    return m;
}

IncidenceMatrix incidence_matrix(long v, long q, long k, long budget) {
    Int nspaces = qarith::qbin(v, k, q);
    Int npoints = qarith::bracket(v, q);
    if (nspaces > budget || npoints > budget)
        throw std::runtime_error("incidence_matrix: size exceeds the budget");
    const Gf& f = Gf::of(q);
    auto pts = enumerate_points(v, q);
    std::map<std::uint64_t, long> point_index;
    for (std::size_t i = 0; i < pts.size(); ++i) point_index[pts[i]] = (long)i;

    IncidenceMatrix inc;
    inc.v = v;
    inc.q = q;
    inc.k = k;
    inc.a.assign(pts.size(), {});

    // enumerate k-spaces as row-reduced echelon bases
    std::vector<long> pivots(k);
    std::vector<std::vector<int>> basis(k, std::vector<int>(v));
    long count = 0;

    std::function<void(long, long)> choose_pivots = [&](long idx, long start) {
        if (idx == k) {
            // free positions: non-pivot columns right of each pivot
            std::vector<std::pair<long, long>> free_pos;  // (row, col)
            for (long r = 0; r < k; ++r)
                for (long c = pivots[r] + 1; c < v; ++c)
                    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_pos.emplace_back(r, c);
            Int total = pow_int(q, (long)free_pos.size());
            for (Int code = 0; code < total; ++code) {
                for (long r = 0; r < k; ++r) {
                    std::fill(basis[r].begin(), basis[r].end(), 0);
                    basis[r][pivots[r]] = 1;
                }
                Int cc = code;
                for (const auto& [r, c] : free_pos) {
                    basis[r][c] = (int)(cc % q).convert_to<long>();
                    cc /= q;
                }
                // column of the incidence matrix: points in the row space
                long col = count++;
                Int nels = pow_int(q, k);
                std::set<long> members;
                for (Int m2 = 1; m2 < nels; ++m2) {
                    Int e = m2;
                    std::vector<int> vec(v, 0);
                    for (long r = 0; r < k; ++r) {
                        int coeff = (int)(e % q).convert_to<long>();
                        e /= q;
                        if (coeff == 0) continue;
                        for (long c = 0; c < v; ++c) vec[c] = f.add(vec[c], f.mul(coeff, basis[r][c]));
                    }
                    members.insert(point_index.at(pack_vec(f.normalize_point(vec), q)));
                }
                for (auto& rowvec : inc.a) rowvec.push_back(0);
                for (long pi : members) inc.a[pi][col] = 1;
            }
            return;
        }
        for (long c = start; c < v; ++c) {
            pivots[idx] = c;
            choose_pivots(idx + 1, c + 1);
        }
    };
    choose_pivots(0, 0);
    if (Int(count) != nspaces) throw std::logic_error("incidence_matrix: enumeration mismatch");
    return inc;
}

RankProfile rank_mod(const std::vector<std::vector<Int>>& a, const Int& m) {
    long rows = (long)a.size();
    long cols = rows ? (long)a[0].size() : 0;
    std::vector<std::vector<Int>> d = a;
    // left transform: U * A_original ~ current d under column ops
    std::vector<std::vector<Int>> u(rows, std::vector<Int>(rows, 0));
    for (long i = 0; i < rows; ++i) u[i][i] = 1;

    auto row_sub = [&](long dst, long src, const Int& f) {
        for (long j = 0; j < cols; ++j) d[dst][j] -= f * d[src][j];
        for (long j = 0; j < rows; ++j) u[dst][j] -= f * u[src][j];
    };
    auto col_sub = [&](long dst, long src, const Int& f) {
        for (long i = 0; i < rows; ++i) d[i][dst] -= f * d[i][src];
    };
    auto row_swap = [&](long i, long j) {
        std::swap(d[i], d[j]);
        std::swap(u[i], u[j]);
    };
    auto col_swap = [&](long i, long j) {
        for (long r = 0; r < rows; ++r) std::swap(d[r][i], d[r][j]);
    };

    long t = 0;
    long lim = std::min(rows, cols);
    while (t < lim) {
        // smallest non-zero pivot in the trailing block
        long pi = -1, pj = -1;
        Int best = 0;
        for (long i = t; i < rows; ++i)
            for (long j = t; j < cols; ++j) {
                if (d[i][j] == 0) continue;
                Int v = boost::multiprecision::abs(d[i][j]);
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        if (d[t][t] < 0) {
            for (long j = 0; j < cols; ++j) d[t][j] = -d[t][j];
            for (long j = 0; j < rows; ++j) u[t][j] = -u[t][j];
        }
        bool clean = true;
        for (long i = t + 1; i < rows; ++i) {
            if (d[i][t] == 0) continue;
            Int f = floor_div(d[i][t], d[t][t]);
            if (f != 0) row_sub(i, t, f);
            if (d[i][t] != 0) clean = false;
        }
        for (long j = t + 1; j < cols; ++j) {
            if (d[t][j] == 0) continue;
            Int f = floor_div(d[t][j], d[t][t]);
            if (f != 0) col_sub(j, t, f);
            if (d[t][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; pick a new pivot
        ++t;
    }

    // enforce the divisibility chain d_i | d_{i+1}
    auto negate_row = [&](long i) {
        for (long j = 0; j < cols; ++j) d[i][j] = -d[i][j];
        for (long j = 0; j < rows; ++j) u[i][j] = -u[i][j];
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (long i = 0; i + 1 < t; ++i) {
            long j = i + 1;
            if (d[j][j] % d[i][i] == 0) continue;
            changed = true;
            // fold column j into column i, then gcd the 2x2 block exactly
            col_sub(i, j, -1);  // col_i += col_j: entry (j,i) becomes d_j
            while (d[j][i] != 0) {
                Int f = d[i][i] / d[j][i];  // truncated: remainder shrinks in absolute value
                if (f != 0) row_sub(i, j, f);
                row_swap(i, j);
            }
            // block is now [[g, y], [0, z]] with g = gcd(d_i, d_j) and g | y
            Int y = d[i][j];
            if (y != 0) col_sub(j, i, y / d[i][i]);
            if (d[i][i] < 0) negate_row(i);
            if (d[j][j] < 0) negate_row(j);
        }
    }

    RankProfile rp;
    rp.diag.assign(rows, 0);
    for (long i = 0; i < std::min(rows, cols); ++i) rp.diag[i] = d[i][i];
    rp.rank = 0;
    for (long i = 0; i < rows; ++i)
        if (rp.diag[i] % m != 0) ++rp.rank;
    rp.kernel_dim = rows - rp.rank;
    for (long i = 0; i < rows; ++i) {
        if (rp.diag[i] % m != 0) continue;
        std::vector<Int> gen(rows);
        for (long j = 0; j < rows; ++j) gen[j] = mod_nonneg(u[i][j], m);
        rp.kernel.push_back(std::move(gen));
    }
    return rp;
}

}  // namespace divlen::geom
