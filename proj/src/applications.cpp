#include <divlen/applications.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace divlen::apps {

using qarith::bracket;

Int spread_lower_bound(long q, long v, long t) {
    if (t < 1 || v < t) throw std::domain_error("spread_lower_bound: need 1 <= t <= v");
    if (v % t == 0) return bracket(v, q) / bracket(t, q);
    long s = v % t;
    return (pow_int(q, v) - pow_int(q, t + s)) / (pow_int(q, t) - 1) + 1;
}

std::optional<Int> drake_freeman_bound(long q, long v, long t) {
    if (t < 1 || v <= t) return std::nullopt;
    long s = v % t;
    if (s == 0) return std::nullopt;
    Int qt = pow_int(q, t), qs = pow_int(q, s);
    Int S = 1 + 4 * qt * (qt - qs);
    Int c = 2 * qt - 2 * qs + 1;
    Int x = isqrt(S);
    Int theta = floor_div(x - c, 2);  // max theta with (2 theta + c)^2 <= S
    if (theta < 0) theta = 0;
    return (pow_int(q, v) - qs) / (qt - 1) - theta - 1;
}

std::optional<Int> parametric_bound_2(long q, long v, long t, long* best_y) {
    if (t < 1 || v <= t) return std::nullopt;
    long s = v % t;
    if (s == 0) return std::nullopt;
    long k = (v - s) / t;
    if (k < 2) return std::nullopt;
    Int z = bracket(s, q) + 1 - t;
    if (z < 0 || t <= s) return std::nullopt;
    Int l = (pow_int(q, v - t) - pow_int(q, s)) / (pow_int(q, t) - 1);

    std::optional<Int> best;
    long ylo = std::max(s, 2L);
    for (long y = ylo; y <= t; ++y) {
        Int lam = pow_int(q, y);
        Int inner = lam - (z + y - 1) * (q - 1) - 1;
        Int D = 1 + 4 * lam * inner;
        if (D < 0) continue;
        Int w = floor_div(1 + isqrt(D), 2);  // floor((1 + sqrt(D)) / 2)
        Int term = lam - w;                  // ceil(lam - 1/2 - sqrt(D)/2)
        Int bound = l * pow_int(q, t) + term;
        if (!best || bound < *best) {
            best = bound;
            if (best_y) *best_y = y;
        }
    }
    return best;
}

std::optional<Int> parametric_bound_3(long q, long v, long t) {
    if (t < 1 || v <= t) return std::nullopt;
    long s = v % t;
    if (s == 0) return std::nullopt;
    long k = (v - s) / t;
    if (k < 2) return std::nullopt;
    if (Int(t) <= bracket(s, q)) return std::nullopt;  // z = 0 requires t > [s]_q
    Int l = (pow_int(q, v - t) - pow_int(q, s)) / (pow_int(q, t) - 1);
    return l * pow_int(q, t) + 1;
}

Int divisible_spread_bound(long q, long v, long t) {
    excl::Classifier& cl = excl::shared_classifier(q);
    auto excluded = [&](const Int& len) { return cl.excluded(t - 1, len); };
    auto bound = lengths::floor_qr_lambda(bracket(v, q), bracket(t, q), q, t - 1, excluded,
                                          lengths::projective_realizable_above(q, t - 1));
    return *bound;
}

SpreadBoundReport spread_bound_report(long q, long v, long t) {
    SpreadBoundReport rep;
    rep.q = q;
    rep.v = v;
    rep.t = t;
    rep.lower = spread_lower_bound(q, v, t);
    rep.uppers.push_back({"counting", floor_div(bracket(v, q), bracket(t, q)), ""});
    if (auto b = drake_freeman_bound(q, v, t)) rep.uppers.push_back({"drake-freeman", *b, ""});
    long y = 0;
    if (auto b = parametric_bound_2(q, v, t, &y))
        rep.uppers.push_back({"parametric-2", *b, "y=" + std::to_string(y)});
    if (auto b = parametric_bound_3(q, v, t)) rep.uppers.push_back({"parametric-3", *b, "z=0"});
    {
        Int b = divisible_spread_bound(q, v, t);
        Int hole = bracket(v, q) - (b + 1) * bracket(t, q);
        std::string params;
        if (hole >= 0) {
            auto cert = excl::shared_classifier(q).certificate(t - 1, hole);
            params = "first excluded hole length " + hole.str() +
                     (cert ? " via " + excl::certificate_kind(*cert) : "");
        }
        rep.uppers.push_back({"divisible", b, params});
    }
    rep.best_upper = rep.uppers.front().value;
    rep.best_method = rep.uppers.front().method;
    for (const auto& u : rep.uppers)
        if (u.value < rep.best_upper) {
            rep.best_upper = u.value;
            rep.best_method = u.method;
        }
    return rep;
}

Int pack_bound(long q, long v, long k, const Int& lambda) {
    if (lambda == 0) return 0;
    return *lengths::floor_qr(lambda * bracket(v, q), bracket(k, q), q, k - 1);
}

Int cover_bound(long q, long v, long k, const Int& lambda) {
    if (lambda == 0) return 0;
    return *lengths::ceil_qr(lambda * bracket(v, q), bracket(k, q), q, k - 1);
}

Int johnson_step(long q, long v, long d, long k, const Int& a_prev) {
    (void)d;
    if (a_prev == 0) return 0;
    return *lengths::floor_qr(a_prev * bracket(v, q), bracket(k, q), q, k - 1);
}

VspType VspType::parse(long q, long v, const std::string& text) {
    VspType t;
    t.q = q;
    t.v = v;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        auto caret = token.find('^');
        long d;
        Int m;
        if (caret == std::string::npos) {
            d = std::stol(token);
            m = 1;
        } else {
            d = std::stol(token.substr(0, caret));
            m = Int(token.substr(caret + 1));
        }
        if (d < 1 || d > v) throw std::invalid_argument("vsp type: dimension out of range: " + token);
        if (m < 0) throw std::invalid_argument("vsp type: negative multiplicity: " + token);
        if (m > 0) t.mult[d] += m;
    }
    return t;
}

std::string VspType::str() const {
    std::ostringstream out;
    for (auto it = mult.rbegin(); it != mult.rend(); ++it) {
        if (out.tellp() > 0) out << " ";
        out << it->first << "^" << it->second.str();
    }
    return out.str();
}

const std::vector<DisjointUnionFact>& disjoint_union_facts() {
    static const std::vector<DisjointUnionFact> facts = {
        {2, 2, 14, 3, 2},  // 2^2-divisible, 14 points: two disjoint planes
    };
    return facts;
}

const MultisetFoldFact& fold_fact_12_points() {
    static const MultisetFoldFact fact{2, 3, 12, 2, 4};  // 2^3-divisible multiset of 12 points: 4-fold line
    return fact;
}

VspVerdict vsp_feasible(const VspType& type) {
    long q = type.q, v = type.v;

    // packing condition
    Int covered = 0;
    for (const auto& [d, m] : type.mult) covered += m * bracket(d, q);
    if (covered != bracket(v, q))
        return {false, "point count: covers " + covered.str() + " of " + bracket(v, q).str() + " points"};

    // dimension condition
    for (const auto& [d1, m1] : type.mult)
        for (const auto& [d2, m2] : type.mult) {
            if (d1 > d2 || d1 + d2 <= v) continue;
            Int pairs = (d1 == d2) ? m1 : m1 + m2;
            if (pairs > 1)
                return {false, "dimension condition: " + std::to_string(d1) + "-spaces and " +
                                   std::to_string(d2) + "-spaces must intersect"};
        }

    std::vector<std::pair<long, Int>> dims(type.mult.begin(), type.mult.end());  // ascending

    // prefix divisibility: points inside the elements of dimension <= d_s form
    // a q^{d_{s+1}-1}-divisible set
    excl::Classifier& cl = excl::shared_classifier(q);
    Int prefix = 0;
    for (std::size_t s = 0; s + 1 < dims.size(); ++s) {
        prefix += dims[s].second * bracket(dims[s].first, q);
        long level = dims[s + 1].first - 1;
        if (prefix > 0 && cl.excluded(level, prefix))
            return {false, "prefix divisibility: no q^" + std::to_string(level) + "-divisible set of " +
                               prefix.str() + " points"};
    }

    if (dims.size() >= 2) {
        long d1 = dims[0].first, d2 = dims[1].first;
        Int n1 = dims[0].second;
        Int qd = pow_int(q, d2 - d1);
        bool divides = (n1 % qd == 0);
        if (!divides && d2 < 2 * d1) {
            if (n1 < pow_int(q, d1) + 1) return {false, "tail condition (i)"};
        } else if (!divides && d2 >= 2 * d1) {
            bool alt = (d2 % d1 == 0) && n1 == (pow_int(q, d2) - 1) / (pow_int(q, d1) - 1);
            if (!(n1 > 2 * qd || alt)) return {false, "tail condition (ii)"};
        } else if (divides && d2 < 2 * d1) {
            if (n1 < pow_int(q, d2) - pow_int(q, d1) + qd) return {false, "tail condition (iii)"};
        } else {
            if (n1 < pow_int(q, d2)) return {false, "tail condition (iv)"};
        }

        // sharpened tail bounds for the q^{d2-d1}-divisible set of d1-spaces
        long k = d1, r = d2 - d1;
        if (n1 < pow_int(q, k) + 1) return {false, "sharpened tail (i)"};
        if (r >= k) {
            if (r % k == 0) {
                if (n1 < (pow_int(q, k + r) - 1) / (pow_int(q, k) - 1)) return {false, "sharpened tail (i)"};
            } else {
                long a = r / k;
                if (n1 < (pow_int(q, (a + 2) * k) - 1) / (pow_int(q, k) - 1)) return {false, "sharpened tail (i)"};
            }
        }
        if (n1 % pow_int(q, r) == 0) {
            Int need = (r < k) ? pow_int(q, k + r) - pow_int(q, k) + pow_int(q, r) : pow_int(q, k + r);
            if (n1 < need) return {false, "sharpened tail (ii)"};
        }
    }

    // structural facts: a prefix that must consist of disjoint subspaces caps
    // the number of its large-dimension members
    prefix = 0;
    for (std::size_t s = 0; s + 1 < dims.size(); ++s) {
        prefix += dims[s].second * bracket(dims[s].first, q);
        long tnext = dims[s + 1].first;
        for (const auto& fact : disjoint_union_facts()) {
            if (fact.q != q || fact.level_r != tnext - 1 || fact.npoints != prefix ||
                fact.space_dim != tnext)
                continue;
            Int large = 0;
            for (std::size_t i = 0; i <= s; ++i)
                if (2 * dims[i].first > tnext) large += dims[i].second;
            if (large > fact.parts)
                return {false, "disjoint-union classification: at most " + fact.parts.str() + " parts of dimension " +
                                   std::to_string(tnext)};
        }
    }

    return {true, ""};
}

Int ward_dimension_bound(long q, const Int& delta, long b, long m) {
    long p;
    int f;
    if (!qarith::prime_power(q, &p, &f)) throw std::domain_error("ward_dimension_bound: bad q");
    auto vd = vp(delta, p);
    if (!vd) throw std::domain_error("ward_dimension_bound: Delta = 0");
    Int bm = binomial(b, m);
    auto vb = vp(bm, p);
    if (!vb) throw std::domain_error("ward_dimension_bound: binom(b,m) = 0");
    Int rhs = Int(m) * (*vd + f) + *vb;
    return floor_div(rhs, f);
}

CheckResult dodunekov_check(const mw::WeightDistribution& dist, long a) {
    if (dist.q != 2) throw std::domain_error("dodunekov_check: binary codes only");
    Int delta = pow_int(2, a);
    long k = dist.k;
    Int T = 0;
    for (long i = 0; Int(i) * 2 * delta <= dist.n; ++i) T += dist.count((long)(Int(i) * 2 * delta).convert_to<long>());

    Int alpha = std::min<Int>(Int(k - a - 1), Int(a + 1));
    Int beta = Int((k - a + 1) / 2);
    Int tmax = std::max(alpha, beta);

    if (T % pow_int(2, (k - 1) / (a + 1)) != 0)
        return {false, "T = " + T.str() + " not divisible by 2^" + std::to_string((k - 1) / (a + 1))};
    if (T < pow_int(2, k - a)) {
        bool ok = false;
        for (Int t = 1; t <= tmax && t <= k - a; ++t)
            if (T == pow_int(2, k - a) - pow_int(2, (Int(k - a) - t).convert_to<long>())) ok = true;
        if (!ok) return {false, "T = " + T.str() + " has no valid 2^{k-a} - 2^{k-a-t} form"};
    }
    if (T > pow_int(2, k) - pow_int(2, k - a)) {
        bool ok = false;
        for (Int t = 0; t <= tmax && t <= k - a; ++t)
            if (T == pow_int(2, k) - pow_int(2, k - a) + pow_int(2, (Int(k - a) - t).convert_to<long>())) ok = true;
        if (!ok) {
            // report the offending t
            Int rest = T - pow_int(2, k) + pow_int(2, k - a);
            std::string detail = "T = " + T.str();
            for (Int t = 0; t <= Int(k - a); ++t)
                if (rest == pow_int(2, (Int(k - a) - t).convert_to<long>()))
                    detail += ": t = " + t.str() + " exceeds max{alpha,beta} = " + tmax.str();
            return {false, detail};
        }
    }
    return {true, "T = " + T.str()};
}

CheckResult even_subcode_check(const mw::WeightDistribution& dist) {
    if (dist.q != 2) throw std::domain_error("even_subcode_check: binary codes only");
    Int even = 0;
    for (long i = 0; i <= dist.n; i += 2) even += dist.A[i];
    if (even == pow_int(2, dist.k) || even == pow_int(2, dist.k - 1)) return {true, even.str()};
    return {false, "even-weight count " + even.str() + " not in {2^{k-1}, 2^k}"};
}

std::set<Int> spanned_by_min_weight_counts(const Int& delta, long q, const Int& max_weight) {
    long p;
    int f;
    if (!qarith::prime_power(q, &p, &f)) throw std::domain_error("spanned_by_min_weight_counts: bad q");
    long a = 0;
    {
        Int d = delta;
        while (d % q == 0) {
            d /= q;
            ++a;
        }
    }

    struct Component {
        Int a_delta;
        Int max_weight;
    };
    std::vector<Component> comps;
    // (i) Delta/q^{k-1}-fold repetitions of simplex codes: all weights Delta
    for (long k = 1; k <= a + 1; ++k) comps.push_back({pow_int(q, k) - 1, delta});
    if (q == 2) {
        // (ii) Delta/2^{k-2}-fold first-order Reed-Muller codes: weights Delta, 2 Delta
        for (long k = 3; k <= a + 2; ++k) comps.push_back({pow_int(2, k) - 2, 2 * delta});
        // (iii) Delta/2-fold parity-check codes of dimension k >= 4
        if (a >= 1) {
            for (long k = 4;; ++k) {
                Int fold = delta / 2;
                Int maxw = fold * ((k + 1) % 2 == 0 ? k + 1 : k);
                if (maxw > max_weight) break;
                comps.push_back({binomial(k + 1, 2), maxw});
            }
        }
    }

    std::set<Int> counts;
    counts.insert(0);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].max_weight > max_weight) continue;
        counts.insert(comps[i].a_delta);
        for (std::size_t j = i; j < comps.size(); ++j) {
            if (comps[i].max_weight + comps[j].max_weight > max_weight) continue;
            counts.insert(comps[i].a_delta + comps[j].a_delta);
        }
    }
    return counts;
}

}  // namespace divlen::apps
