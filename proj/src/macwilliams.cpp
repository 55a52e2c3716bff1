#include <divlen/macwilliams.hpp>
#include <divlen/qarith.hpp>

#include <algorithm>
#include <stdexcept>

namespace divlen {

namespace {

// Reduced row echelon form over Rat; returns pivot column per row (-1 none).
std::vector<int> rref(std::vector<std::vector<Rat>>& m) {
    std::vector<int> pivots;
    std::size_t rows = m.size();
    if (rows == 0) return pivots;
    std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rat inv = m[r][c];
        for (auto& x : m[r]) x /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back((int)c);
        ++r;
    }
    return pivots;
}

}  // namespace

bool LinearSystem::equality_rows_equivalent(const LinearSystem& other) const {
    auto pack = [](const LinearSystem& s) {
        std::vector<std::vector<Rat>> m;
        for (const auto& row : s.rows) {
            if (row.rel != Rel::Eq) continue;
            std::vector<Rat> v = row.coeffs;
            v.push_back(row.rhs);
            m.push_back(std::move(v));
        }
        return m;
    };
    if (vars != other.vars) return false;
    auto a = pack(*this), b = pack(other);
    rref(a);
    rref(b);
    auto nonzero = [](const std::vector<std::vector<Rat>>& m) {
        std::vector<std::vector<Rat>> out;
        for (const auto& row : m)
            if (std::any_of(row.begin(), row.end(), [](const Rat& x) { return x != 0; })) out.push_back(row);
        return out;
    };
    return nonzero(a) == nonzero(b);
}

}  // namespace divlen

namespace divlen::mw {

using qarith::bracket;
using qarith::krawtchouk;

void WeightDistribution::validate() const {
    if ((long)A.size() != n + 1) throw std::invalid_argument("weight distribution: size mismatch");
    if (A[0] != 1) throw std::invalid_argument("weight distribution: A_0 must be 1");
    Int sum = 0;
    for (const Int& a : A) {
        if (a < 0) throw std::invalid_argument("weight distribution: negative count");
        sum += a;
    }
    if (sum != pow_int(q, k)) throw std::invalid_argument("weight distribution: counts do not sum to q^k");
    for (long i = 1; i <= n; ++i)
        if (A[i] % (q - 1) != 0) throw std::invalid_argument("weight distribution: (q-1) does not divide A_i");
}

WeightDistribution macwilliams_transform(const WeightDistribution& w) {
    WeightDistribution dual;
    dual.q = w.q;
    dual.n = w.n;
    dual.k = w.n - w.k;
    dual.A.assign(w.n + 1, 0);
    Int qk = pow_int(w.q, w.k);
    for (long i = 0; i <= w.n; ++i) {
        Int sum = 0;
        for (long j = 0; j <= w.n; ++j) {
            if (w.A[j] == 0) continue;
            sum += krawtchouk(i, j, w.n, w.q) * w.A[j];
        }
        if (sum % qk != 0) throw std::invalid_argument("macwilliams_transform: inexact division, invalid distribution");
        dual.A[i] = sum / qk;
    }
    return dual;
}

LinearSystem first_t_system(const FirstTParams& p) {
    if (p.t < 1 || Int(p.t) > p.n + 1) throw std::domain_error("first_t_system: need 1 <= t <= n+1");
    LinearSystem sys;
    std::vector<Int> weights;
    if (p.weights) {
        weights = *p.weights;
    } else {
        for (Int w = p.delta; w <= p.n; w += p.delta) weights.push_back(w);
    }
    std::vector<int> a_idx;
    for (const Int& w : weights) {
        if (p.forbidden_weights.count(w)) continue;
        a_idx.push_back(sys.add_var("A_" + w.str()));
    }
    std::vector<Int> kept_weights;
    for (const Int& w : weights)
        if (!p.forbidden_weights.count(w)) kept_weights.push_back(w);

    std::vector<int> b_idx(p.t, -1);  // index of B_j (or x_j in dimension-free mode)
    bool dim_free = !p.k.has_value();
    for (long j = 1; j < p.t; ++j) {
        if (j == 1 && p.full_length) continue;
        if (j == 2 && p.projective) continue;
        b_idx[j] = sys.add_var(dim_free ? "x_" + std::to_string(j) : "B_" + std::to_string(j));
    }
    int y_idx = dim_free ? sys.add_var("y") : -1;

    for (long i = 0; i < p.t; ++i) {
        auto& row = sys.add_row(Rel::Eq, 0, "mw_" + std::to_string(i));
        for (std::size_t w = 0; w < kept_weights.size(); ++w)
            row.coeffs[a_idx[w]] = Rat(binomial(p.n - kept_weights[w], i));
        Int bn = binomial(p.n, i);
        if (dim_free) {
            Int scale = pow_int(p.q, p.t - 1 - i);
            row.coeffs[y_idx] = Rat(-scale * bn);
            for (long j = 3; j <= i; ++j)
                if (b_idx[j] >= 0) row.coeffs[b_idx[j]] = Rat(-scale * binomial(p.n - j, i - j));
            row.rhs = Rat(-bn);
        } else {
            Rat scale = Rat(pow_int(p.q, *p.k)) / Rat(pow_int(p.q, i));
            for (long j = 1; j <= i; ++j)
                if (b_idx[j] >= 0) row.coeffs[b_idx[j]] = -scale * Rat(binomial(p.n - j, i - j));
            row.rhs = scale * Rat(bn) - Rat(bn);
        }
    }
    return sys;
}

LinearSystem power_moments_q2(const Int& n, long k, long t, const std::vector<Int>& weights) {
    if (t < 1 || t > 5) throw std::domain_error("power_moments_q2: need 1 <= t <= 5");
    LinearSystem sys;
    std::vector<int> a_idx;
    for (const Int& w : weights) a_idx.push_back(sys.add_var("A_" + w.str()));
    std::vector<int> b_idx(5, -1);
    for (long j = 1; j < t; ++j) b_idx[j] = sys.add_var("B_" + std::to_string(j));

    Rat p2k = Rat(pow_int(2, k));
    auto half = [&](long d) { return p2k / Rat(pow_int(2, d)); };  // 2^{k-d}

    for (long s = 0; s < t; ++s) {
        auto& row = sys.add_row(Rel::Eq, 0, "pm_" + std::to_string(s));
        for (std::size_t w = 0; w < weights.size(); ++w) row.coeffs[a_idx[w]] = Rat(pow_int(weights[w], s));
        switch (s) {
            case 0:
                row.rhs = p2k - 1;
                break;
            case 1:
                row.coeffs[b_idx[1]] = half(1);
                row.rhs = half(1) * Rat(n);
                break;
            case 2:
                row.coeffs[b_idx[1]] = half(1) * Rat(n);
                row.coeffs[b_idx[2]] = -half(1);
                row.rhs = half(1) * Rat(n * (n + 1)) / 2;
                break;
            case 3:
                row.coeffs[b_idx[1]] = half(2) * Rat(3 * n * n + 3 * n - 2) / 2;
                row.coeffs[b_idx[2]] = -half(2) * Rat(3 * n);
                row.coeffs[b_idx[3]] = half(2) * 3;
                row.rhs = half(2) * Rat(n * n * (n + 3)) / 2;
                break;
            case 4:
                // B_1 coefficient as forced by the first five MacWilliams
                // equations: 4n(n^2 + 3n - 2).
                row.coeffs[b_idx[1]] = half(4) * Rat(4 * n * (n * n + 3 * n - 2));
                row.coeffs[b_idx[2]] = -half(4) * Rat(4 * (3 * n * n + 3 * n - 4));
                row.coeffs[b_idx[3]] = half(4) * Rat(24 * n);
                row.coeffs[b_idx[4]] = -half(4) * 24;
                row.rhs = half(4) * Rat(n * n * n * n + 6 * n * n * n + 3 * n * n - 2 * n);
                break;
        }
    }
    return sys;
}

LinearSystem standard_equations(const Int& n, long q, long k, const std::vector<Int>& indices,
                                const std::map<long, Int>& lambda_counts) {
    if (k < 2) throw std::domain_error("standard_equations: need k >= 2");
    LinearSystem sys;
    std::vector<int> idx;
    for (const Int& i : indices) idx.push_back(sys.add_var("a_" + i.str()));

    Int pair_term = 0;
    for (const auto& [j, lam] : lambda_counts) pair_term += binomial(j, 2) * lam;

    auto& r1 = sys.add_row(Rel::Eq, Rat(bracket(k, q)), "std_1");
    for (std::size_t i = 0; i < indices.size(); ++i) r1.coeffs[idx[i]] = 1;
    auto& r2 = sys.add_row(Rel::Eq, Rat(n * bracket(k - 1, q)), "std_2");
    for (std::size_t i = 0; i < indices.size(); ++i) r2.coeffs[idx[i]] = Rat(indices[i]);
    auto& r3 = sys.add_row(Rel::Eq, Rat(binomial(n, 2) * bracket(k - 2, q) + pow_int(q, k - 2) * pair_term), "std_3");
    for (std::size_t i = 0; i < indices.size(); ++i) r3.coeffs[idx[i]] = Rat(binomial(indices[i], 2));
    return sys;
}

Spectrum spectrum_from_distribution(const WeightDistribution& w) {
    w.validate();
    Spectrum s;
    s.q = w.q;
    s.k = w.k;
    s.n = w.n;
    long smax = 0;
    for (long i = 1; i <= w.n; ++i)
        if (w.A[i] != 0) smax = std::max(smax, w.n - i);
    s.a.assign(smax + 1, 0);
    for (long i = 1; i <= w.n; ++i) {
        if (w.A[i] == 0) continue;
        s.a[w.n - i] = w.A[i] / (w.q - 1);
    }
    return s;
}

WeightDistribution distribution_from_spectrum(const Spectrum& s) {
    if ((long)s.a.size() > s.n && s.a[s.n] != 0)
        throw std::invalid_argument("distribution_from_spectrum: a_n > 0 means a non-spanning multiset");
    WeightDistribution w;
    w.q = s.q;
    w.k = s.k;
    w.n = s.n;
    w.A.assign(s.n + 1, 0);
    w.A[0] = 1;
    for (long j = 0; j < (long)s.a.size(); ++j) {
        if (s.a[j] == 0) continue;
        w.A[s.n - j] = (s.q - 1) * s.a[j];
    }
    w.validate();
    return w;
}

std::vector<std::map<std::string, Int>> enumerate_integer_solutions(const LinearSystem& sys,
                                                                    const EnumerateOptions& opt) {
    const std::size_t nv = sys.vars.size();

    // Eliminate the equalities exactly; densest rows first, pivot on the
    // lowest-index remaining variable (mirrors the hand eliminations).
    std::vector<std::vector<Rat>> eq;
    for (const auto& row : sys.rows) {
        if (row.rel != Rel::Eq) continue;
        std::vector<Rat> v = row.coeffs;
        v.push_back(row.rhs);
        eq.push_back(std::move(v));
    }
    const std::vector<std::vector<Rat>> original_rows = eq;
    std::stable_sort(eq.begin(), eq.end(), [](const auto& a, const auto& b) {
        auto dens = [](const std::vector<Rat>& r) {
            return std::count_if(r.begin(), r.end() - 1, [](const Rat& x) { return x != 0; });
        };
        return dens(a) > dens(b);
    });

    std::vector<int> pivot_of_row;
    std::vector<bool> is_pivot(nv, false);
    for (std::size_t r = 0; r < eq.size(); ++r) {
        int pc = -1;
        for (std::size_t c = 0; c < nv; ++c)
            if (!is_pivot[c] && eq[r][c] != 0) {
                pc = (int)c;
                break;
            }
        if (pc < 0) {
            bool consistent = (eq[r][nv] == 0);
            if (!consistent) return {};  // 0 = nonzero: no solutions
            pivot_of_row.push_back(-1);
            continue;
        }
        Rat inv = eq[r][pc];
        for (auto& x : eq[r]) x /= inv;
        for (std::size_t i = 0; i < eq.size(); ++i) {
            if (i == r || eq[i][pc] == 0) continue;
            Rat f = eq[i][pc];
            for (std::size_t j = 0; j <= nv; ++j) eq[i][j] -= f * eq[r][j];
        }
        pivot_of_row.push_back(pc);
        is_pivot[pc] = true;
    }

    std::vector<int> free_vars;
    for (std::size_t c = 0; c < nv; ++c)
        if (!is_pivot[c]) free_vars.push_back((int)c);
    if ((long)free_vars.size() > opt.max_free_vars)
        throw std::runtime_error("enumerate_integer_solutions: too many free variables");

    // Interval propagation over the equality rows to bound every variable.
    struct Bound {
        std::optional<Rat> lo, hi;
    };
    std::vector<Bound> bound(nv);
    for (std::size_t c = 0; c < nv; ++c) {
        auto it = opt.lower.find(sys.vars[c]);
        bound[c].lo = (it != opt.lower.end()) ? Rat(it->second) : Rat(0);
        auto iu = opt.upper.find(sys.vars[c]);
        if (iu != opt.upper.end()) bound[c].hi = Rat(iu->second);
    }
    std::vector<std::vector<Rat>> prop_rows = original_rows;
    prop_rows.insert(prop_rows.end(), eq.begin(), eq.end());
    for (int round = 0; round < 40; ++round) {
        bool changed = false;
        for (const auto& row : prop_rows) {
            for (std::size_t v = 0; v < nv; ++v) {
                if (row[v] == 0) continue;
                // v = (rhs - sum_{u != v} c_u * u) / c_v
                Rat lo_sum = 0, hi_sum = 0;
                bool lo_ok = true, hi_ok = true;
                for (std::size_t u = 0; u < nv; ++u) {
                    if (u == v || row[u] == 0) continue;
                    const Rat& c = row[u];
                    auto& blo = (c > 0) ? bound[u].lo : bound[u].hi;
                    auto& bhi = (c > 0) ? bound[u].hi : bound[u].lo;
                    if (blo)
                        hi_sum += c * *blo;  // minimal contribution -> maximal v
                    else
                        hi_ok = false;
                    if (bhi)
                        lo_sum += c * *bhi;
                    else
                        lo_ok = false;
                }
                auto update = [&](std::optional<Rat>& tgt, const Rat& val, bool improve_lo) {
                    if (!tgt || (improve_lo ? val > *tgt : val < *tgt)) {
                        tgt = val;
                        changed = true;
                    }
                };
                if (row[v] > 0) {
                    if (hi_ok) update(bound[v].hi, (row[nv] - hi_sum) / row[v], false);
                    if (lo_ok) update(bound[v].lo, (row[nv] - lo_sum) / row[v], true);
                } else {
                    if (hi_ok) update(bound[v].lo, (row[nv] - hi_sum) / row[v], true);
                    if (lo_ok) update(bound[v].hi, (row[nv] - lo_sum) / row[v], false);
                }
            }
        }
        if (!changed) break;
    }
    for (int f : free_vars)
        if (!bound[f].lo || !bound[f].hi)
            throw std::runtime_error("enumerate_integer_solutions: unbounded free variable " + sys.vars[f]);

    auto div_step = [&](int v) {
        auto it = opt.divisibility.find(sys.vars[v]);
        return (it != opt.divisibility.end()) ? it->second : Int(1);
    };

    std::vector<std::map<std::string, Int>> solutions;
    std::vector<Int> value(nv, 0);
    long nodes = 0;

    auto emit_if_valid = [&]() {
        // back-substitute pivots
        for (std::size_t r = 0; r < eq.size(); ++r) {
            int pc = pivot_of_row[r];
            if (pc < 0) continue;
            Rat acc = eq[r][nv];
            for (int f : free_vars)
                if (eq[r][f] != 0) acc -= eq[r][f] * Rat(value[f]);
            if (boost::multiprecision::denominator(acc) != 1) return;
            value[pc] = boost::multiprecision::numerator(acc);
        }
        for (std::size_t v = 0; v < nv; ++v) {
            if (bound[v].lo && Rat(value[v]) < *bound[v].lo) return;
            if (bound[v].hi && Rat(value[v]) > *bound[v].hi) return;
            if (value[v] % div_step((int)v) != 0) return;
        }
        for (const auto& row : sys.rows) {
            Rat acc = 0;
            for (std::size_t v = 0; v < nv; ++v)
                if (row.coeffs[v] != 0) acc += row.coeffs[v] * Rat(value[v]);
            bool ok = (row.rel == Rel::Eq)   ? acc == row.rhs
                      : (row.rel == Rel::Le) ? acc <= row.rhs
                                             : acc >= row.rhs;
            if (!ok) return;
        }
        std::map<std::string, Int> sol;
        for (std::size_t v = 0; v < nv; ++v) sol[sys.vars[v]] = value[v];
        solutions.push_back(std::move(sol));
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t fi) {
        if (++nodes > opt.max_nodes) throw std::runtime_error("enumerate_integer_solutions: search space too large");
        if (fi == free_vars.size()) {
            emit_if_valid();
            return;
        }
        int v = free_vars[fi];
        Int step = div_step(v);
        Int lo = boost::multiprecision::numerator(*bound[v].lo) / boost::multiprecision::denominator(*bound[v].lo);
        while (Rat(lo) < *bound[v].lo) ++lo;
        lo = ((lo + step - 1) / step) * step;  // bounds here are >= 0 throughout
        for (Int x = lo; Rat(x) <= *bound[v].hi; x += step) {
            value[v] = x;
            dfs(fi + 1);
        }
    };
    dfs(0);
    return solutions;
}

std::vector<DivisibleSolution> enumerate_divisible_distributions(long q, const Int& delta, const Int& n,
                                                                 long k_min, long k_max, bool projective,
                                                                 long t) {
    std::vector<DivisibleSolution> out;
    for (long k = k_min; k <= k_max; ++k) {
        FirstTParams p;
        p.n = n;
        p.q = q;
        p.delta = delta;
        p.t = t;
        p.k = k;
        p.full_length = true;
        p.projective = projective;
        LinearSystem sys = first_t_system(p);
        EnumerateOptions opt;
        for (const auto& v : sys.vars) opt.divisibility[v] = (v[0] == 'A') ? Int(q - 1) : Int(1);
        for (const auto& sol : enumerate_integer_solutions(sys, opt)) {
            WeightDistribution w;
            w.q = q;
            w.n = n.convert_to<long>();
            w.k = k;
            w.A.assign(w.n + 1, 0);
            w.A[0] = 1;
            for (const auto& [name, val] : sol)
                if (name[0] == 'A') w.A[Int(name.substr(2)).convert_to<long>()] = val;
            try {
                w.validate();
                WeightDistribution dual = macwilliams_transform(w);
                bool ok = dual.A[0] == 1 && dual.A[1] == 0 && (!projective || dual.A[2] == 0);
                for (const Int& b : dual.A)
                    if (b < 0) ok = false;
                if (ok) out.push_back(DivisibleSolution{k, w, dual});
            } catch (const std::invalid_argument&) {
                // solution of the truncated system that is not a genuine distribution
            }
        }
    }
    return out;
}

}  // namespace divlen::mw
