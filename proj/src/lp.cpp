#include <divlen/lp.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace divlen::lp {

RationalLinearProgram RationalLinearProgram::feasibility(LinearSystem s) {
    RationalLinearProgram lp;
    lp.objective.assign(s.vars.size(), 0);
    lp.sys = std::move(s);
    lp.maximize = true;
    return lp;
}

RationalLinearProgram RationalLinearProgram::optimize(LinearSystem s, const std::string& var, bool maximize) {
    RationalLinearProgram lp;
    lp.objective.assign(s.vars.size(), 0);
    int idx = s.var_index(var);
    if (idx < 0) throw std::invalid_argument("optimize: unknown variable " + var);
    lp.objective[idx] = 1;
    lp.sys = std::move(s);
    lp.maximize = maximize;
    return lp;
}

namespace {

struct Standardized {
    // columns: structural user columns (one per non-negative var, two per free
    // var), then slack columns, then artificial columns, then the rhs.
    std::vector<std::vector<Rat>> T;  // m rows, width cols+1
    std::vector<Rat> cost;            // phase-2 cost (minimization), width cols
    std::vector<int> basis;           // basic column per row
    long m = 0;
    long n_struct = 0;  // structural + slack columns
    long cols = 0;      // n_struct + m artificials
    std::vector<int> row_sign;                  // +-1 applied to user row i
    std::vector<std::pair<int, int>> var_cols;  // user var -> (plus col, minus col or -1)
};

Standardized standardize(const RationalLinearProgram& lp) {
    const auto& sys = lp.sys;
    const long nv = (long)sys.vars.size();
    const long m = (long)sys.rows.size();
    Standardized s;
    s.m = m;
    s.row_sign.assign(m, 1);
    s.var_cols.resize(nv);

    std::vector<bool> is_free(nv, false);
    for (const auto& name : lp.free_vars) {
        int i = sys.var_index(name);
        if (i >= 0) is_free[i] = true;
    }

    long col = 0;
    for (long j = 0; j < nv; ++j) {
        s.var_cols[j].first = (int)col++;
        s.var_cols[j].second = is_free[j] ? (int)col++ : -1;
    }
    long slack_base = col;
    long n_slack = 0;
    for (long i = 0; i < m; ++i)
        if (sys.rows[i].rel != Rel::Eq) ++n_slack;
    s.n_struct = slack_base + n_slack;
    s.cols = s.n_struct + m;

    s.T.assign(m, std::vector<Rat>(s.cols + 1, 0));
    long slack = slack_base;
    for (long i = 0; i < m; ++i) {
        const auto& row = sys.rows[i];
        for (long j = 0; j < nv; ++j) {
            if (row.coeffs[j] == 0) continue;
            s.T[i][s.var_cols[j].first] = row.coeffs[j];
            if (s.var_cols[j].second >= 0) s.T[i][s.var_cols[j].second] = -row.coeffs[j];
        }
        if (row.rel == Rel::Le)
            s.T[i][slack++] = 1;
        else if (row.rel == Rel::Ge)
            s.T[i][slack++] = -1;
        s.T[i][s.cols] = row.rhs;
        if (s.T[i][s.cols] < 0) {
            for (auto& x : s.T[i]) x = -x;
            s.row_sign[i] = -1;
        }
        s.T[i][s.n_struct + i] = 1;  // artificial
    }
    s.basis.resize(m);
    for (long i = 0; i < m; ++i) s.basis[i] = (int)(s.n_struct + i);

    s.cost.assign(s.cols, 0);
    for (long j = 0; j < nv; ++j) {
        Rat c = (j < (long)lp.objective.size()) ? lp.objective[j] : Rat(0);
        if (lp.maximize) c = -c;  // simplex below minimizes
        s.cost[s.var_cols[j].first] = c;
        if (s.var_cols[j].second >= 0) s.cost[s.var_cols[j].second] = -c;
    }
    return s;
}

// One phase of the primal simplex, minimizing `cost` with Bland's rule.
// allowed[j] = false blocks a column from entering.  Returns the entering
// column of an unbounded direction, or -1 at optimum.
int run_simplex(Standardized& s, const std::vector<Rat>& cost, const std::vector<bool>& allowed) {
    while (true) {
        // y = c_B B^{-1} read through the artificial columns is not needed
        // here; reduced costs are computed column by column.
        std::vector<Rat> cb(s.m);
        for (long i = 0; i < s.m; ++i) cb[i] = cost[s.basis[i]];
        int enter = -1;
        for (long j = 0; j < s.cols; ++j) {
            if (!allowed[j]) continue;
            bool basic = false;
            for (long i = 0; i < s.m; ++i)
                if (s.basis[i] == j) basic = true;
            if (basic) continue;
            Rat red = cost[j];
            for (long i = 0; i < s.m; ++i)
                if (s.T[i][j] != 0 && cb[i] != 0) red -= cb[i] * s.T[i][j];
            if (red < 0) {
                enter = (int)j;
                break;  // Bland: smallest improving index
            }
        }
        if (enter < 0) return -1;
        int leave = -1;
        Rat best_ratio;
        for (long i = 0; i < s.m; ++i) {
            if (s.T[i][enter] <= 0) continue;
            Rat ratio = s.T[i][s.cols] / s.T[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && s.basis[i] < s.basis[leave])) {
                leave = (int)i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return enter;  // unbounded direction
        // pivot
        Rat piv = s.T[leave][enter];
        for (auto& x : s.T[leave]) x /= piv;
        for (long i = 0; i < s.m; ++i) {
            if (i == leave || s.T[i][enter] == 0) continue;
            Rat f = s.T[i][enter];
            for (long j = 0; j <= s.cols; ++j) s.T[i][j] -= f * s.T[leave][j];
        }
        s.basis[leave] = enter;
    }
}

Rat objective_value(const Standardized& s, const std::vector<Rat>& cost) {
    Rat v = 0;
    for (long i = 0; i < s.m; ++i)
        if (cost[s.basis[i]] != 0) v += cost[s.basis[i]] * s.T[i][s.cols];
    return v;
}

// Dual vector y_i = c_B B^{-1} e_i, read off the artificial columns.
std::vector<Rat> dual_from_tableau(const Standardized& s, const std::vector<Rat>& cost) {
    std::vector<Rat> y(s.m, 0);
    for (long i = 0; i < s.m; ++i) {
        Rat acc = 0;
        for (long r = 0; r < s.m; ++r)
            if (cost[s.basis[r]] != 0 && s.T[r][s.n_struct + i] != 0)
                acc += cost[s.basis[r]] * s.T[r][s.n_struct + i];
        y[i] = acc;
    }
    return y;
}

std::map<std::string, Rat> extract_primal(const RationalLinearProgram& lp, const Standardized& s) {
    std::map<std::string, Rat> primal;
    std::vector<Rat> val(s.cols, 0);
    for (long i = 0; i < s.m; ++i) val[s.basis[i]] = s.T[i][s.cols];
    for (std::size_t j = 0; j < lp.sys.vars.size(); ++j) {
        Rat v = val[s.var_cols[j].first];
        if (s.var_cols[j].second >= 0) v -= val[s.var_cols[j].second];
        primal[lp.sys.vars[j]] = v;
    }
    return primal;
}

bool primal_feasible(const RationalLinearProgram& lp, const std::map<std::string, Rat>& primal) {
    std::vector<bool> is_free(lp.sys.vars.size(), false);
    for (const auto& name : lp.free_vars) {
        int i = lp.sys.var_index(name);
        if (i >= 0) is_free[i] = true;
    }
    for (std::size_t j = 0; j < lp.sys.vars.size(); ++j) {
        auto it = primal.find(lp.sys.vars[j]);
        if (it == primal.end()) return false;
        if (!is_free[j] && it->second < 0) return false;
    }
    for (const auto& row : lp.sys.rows) {
        Rat acc = 0;
        for (std::size_t j = 0; j < lp.sys.vars.size(); ++j)
            if (row.coeffs[j] != 0) acc += row.coeffs[j] * primal.at(lp.sys.vars[j]);
        bool ok = (row.rel == Rel::Eq) ? acc == row.rhs : (row.rel == Rel::Le) ? acc <= row.rhs : acc >= row.rhs;
        if (!ok) return false;
    }
    return true;
}

std::string row_key(const LinearSystem& sys, std::size_t i) {
    return sys.rows[i].name.empty() ? "row_" + std::to_string(i) : sys.rows[i].name;
}

bool verify_optimal(const RationalLinearProgram& lp, const Optimal& opt) {
    if (!primal_feasible(lp, opt.primal)) return false;
    Rat obj = 0;
    for (std::size_t j = 0; j < lp.sys.vars.size(); ++j)
        if (lp.objective[j] != 0) obj += lp.objective[j] * opt.primal.at(lp.sys.vars[j]);
    if (obj != opt.value) return false;

    // dual feasibility and strong duality, exact
    std::vector<bool> is_free(lp.sys.vars.size(), false);
    for (const auto& name : lp.free_vars) {
        int i = lp.sys.var_index(name);
        if (i >= 0) is_free[i] = true;
    }
    Rat dual_obj = 0;
    for (std::size_t i = 0; i < lp.sys.rows.size(); ++i) {
        Rat mu = opt.dual.at(row_key(lp.sys, i));
        if (lp.maximize) {
            if (lp.sys.rows[i].rel == Rel::Le && mu < 0) return false;
            if (lp.sys.rows[i].rel == Rel::Ge && mu > 0) return false;
        } else {
            if (lp.sys.rows[i].rel == Rel::Le && mu > 0) return false;
            if (lp.sys.rows[i].rel == Rel::Ge && mu < 0) return false;
        }
        dual_obj += mu * lp.sys.rows[i].rhs;
    }
    if (dual_obj != opt.value) return false;
    for (std::size_t j = 0; j < lp.sys.vars.size(); ++j) {
        Rat acc = 0;
        for (std::size_t i = 0; i < lp.sys.rows.size(); ++i)
            if (lp.sys.rows[i].coeffs[j] != 0) acc += opt.dual.at(row_key(lp.sys, i)) * lp.sys.rows[i].coeffs[j];
        Rat c = lp.objective[j];
        if (is_free[j]) {
            if (acc != c) return false;
        } else if (lp.maximize) {
            if (acc < c) return false;
        } else {
            if (acc > c) return false;
        }
    }
    return true;
}

}  // namespace

bool certify_infeasible(const RationalLinearProgram& lp, const std::map<std::string, Rat>& multipliers) {
    const auto& sys = lp.sys;
    std::vector<bool> is_free(sys.vars.size(), false);
    for (const auto& name : lp.free_vars) {
        int i = sys.var_index(name);
        if (i >= 0) is_free[i] = true;
    }
    Rat rhs = 0;
    std::vector<Rat> combined(sys.vars.size(), 0);
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        auto it = multipliers.find(row_key(sys, i));
        Rat mu = (it == multipliers.end()) ? Rat(0) : it->second;
        if (mu == 0) continue;
        if (sys.rows[i].rel == Rel::Le && mu > 0) return false;
        if (sys.rows[i].rel == Rel::Ge && mu < 0) return false;
        for (std::size_t j = 0; j < sys.vars.size(); ++j)
            if (sys.rows[i].coeffs[j] != 0) combined[j] += mu * sys.rows[i].coeffs[j];
        rhs += mu * sys.rows[i].rhs;
    }
    // combined row reads  sum_j combined[j] x_j >= rhs
    for (std::size_t j = 0; j < sys.vars.size(); ++j) {
        if (is_free[j] && combined[j] != 0) return false;
        if (!is_free[j] && combined[j] > 0) return false;
    }
    return rhs > 0;
}

LpOutcome solve(const RationalLinearProgram& lp) {
    Standardized s = standardize(lp);

    // Phase 1: drive the artificials to zero.
    std::vector<Rat> phase1_cost(s.cols, 0);
    for (long i = 0; i < s.m; ++i) phase1_cost[s.n_struct + i] = 1;
    std::vector<bool> all_allowed(s.cols, true);
    int dir = run_simplex(s, phase1_cost, all_allowed);
    (void)dir;  // phase 1 is never unbounded (cost bounded below by 0)
    Rat w = objective_value(s, phase1_cost);
    if (w > 0) {
        std::vector<Rat> y = dual_from_tableau(s, phase1_cost);
        Infeasible inf;
        for (long i = 0; i < s.m; ++i) inf.farkas[row_key(lp.sys, i)] = Rat(s.row_sign[i]) * y[i];
        if (!certify_infeasible(lp, inf.farkas)) throw std::logic_error("lp::solve: Farkas certificate failed self-check");
        return inf;
    }

    // Drive leftover artificials out of the basis: a degenerate pivot on any
    // structural entry of their row.  Rows that stay all-zero are redundant
    // and can never constrain phase 2.
    for (long i = 0; i < s.m; ++i) {
        if (s.basis[i] < s.n_struct) continue;
        int piv = -1;
        for (long j = 0; j < s.n_struct && piv < 0; ++j)
            if (s.T[i][j] != 0) piv = (int)j;
        if (piv < 0) continue;
        Rat pv = s.T[i][piv];
        for (auto& x : s.T[i]) x /= pv;
        for (long r = 0; r < s.m; ++r) {
            if (r == i || s.T[r][piv] == 0) continue;
            Rat f = s.T[r][piv];
            for (long j = 0; j <= s.cols; ++j) s.T[r][j] -= f * s.T[i][j];
        }
        s.basis[i] = piv;
    }

    // Phase 2 on the structural columns only.
    std::vector<bool> allowed(s.cols, false);
    for (long j = 0; j < s.n_struct; ++j) allowed[j] = true;
    int enter = run_simplex(s, s.cost, allowed);
    if (enter >= 0) {
        // unbounded: d = e_enter - basic column values
        std::vector<Rat> d(s.cols, 0);
        d[enter] = 1;
        for (long i = 0; i < s.m; ++i) d[s.basis[i]] = -s.T[i][enter];
        Unbounded unb;
        for (std::size_t j = 0; j < lp.sys.vars.size(); ++j) {
            Rat v = d[s.var_cols[j].first];
            if (s.var_cols[j].second >= 0) v -= d[s.var_cols[j].second];
            unb.ray[lp.sys.vars[j]] = v;
        }
        // exact self-check: the ray respects every row and improves the objective
        std::vector<bool> is_free(lp.sys.vars.size(), false);
        for (const auto& name : lp.free_vars) {
            int i = lp.sys.var_index(name);
            if (i >= 0) is_free[i] = true;
        }
        Rat improve = 0;
        for (std::size_t j = 0; j < lp.sys.vars.size(); ++j) {
            const Rat& rj = unb.ray[lp.sys.vars[j]];
            if (!is_free[j] && rj < 0) throw std::logic_error("lp::solve: ray leaves the non-negative cone");
            if (j < lp.objective.size()) improve += lp.objective[j] * rj;
        }
        if (lp.maximize ? improve <= 0 : improve >= 0) throw std::logic_error("lp::solve: ray does not improve");
        for (const auto& row : lp.sys.rows) {
            Rat acc = 0;
            for (std::size_t j = 0; j < lp.sys.vars.size(); ++j)
                if (row.coeffs[j] != 0) acc += row.coeffs[j] * unb.ray[lp.sys.vars[j]];
            bool ok = (row.rel == Rel::Eq) ? acc == 0 : (row.rel == Rel::Le) ? acc <= 0 : acc >= 0;
            if (!ok) throw std::logic_error("lp::solve: ray violates a constraint");
        }
        return unb;
    }

    Optimal opt;
    opt.primal = extract_primal(lp, s);
    opt.value = 0;
    for (std::size_t j = 0; j < lp.sys.vars.size(); ++j)
        if (lp.objective[j] != 0) opt.value += lp.objective[j] * opt.primal[lp.sys.vars[j]];
    std::vector<Rat> y = dual_from_tableau(s, s.cost);
    for (long i = 0; i < s.m; ++i) {
        Rat mu = Rat(s.row_sign[i]) * y[i];
        if (lp.maximize) mu = -mu;
        opt.dual[row_key(lp.sys, i)] = mu;
    }
    if (!verify_optimal(lp, opt)) throw std::logic_error("lp::solve: optimality certificate failed self-check");
    return opt;
}

namespace {

Int floor_to_multiple(const Rat& v, const Int& mod) {
    Int num = boost::multiprecision::numerator(v);
    Int den = boost::multiprecision::denominator(v);
    return floor_div(num, den * mod) * mod;
}

Int ceil_to_multiple(const Rat& v, const Int& mod) {
    Int num = boost::multiprecision::numerator(v);
    Int den = boost::multiprecision::denominator(v);
    return -floor_div(-num, den * mod) * mod;
}

}  // namespace

TightenResult tighten_bounds(const LinearSystem& sys, const std::map<std::string, Int>& int_vars,
                             long max_rounds) {
    TightenResult res;
    LinearSystem work = sys;
    std::map<std::string, int> ub_row, lb_row;

    for (const auto& [name, mod] : int_vars) {
        (void)mod;
        res.bounds[name] = VarBounds{Int(0), std::nullopt};
    }

    for (res.rounds = 1; res.rounds <= max_rounds; ++res.rounds) {
        bool changed = false;
        for (const auto& [name, mod] : int_vars) {
            int vi = work.var_index(name);
            if (vi < 0) continue;
            for (bool maximize : {true, false}) {
                auto outcome = solve(RationalLinearProgram::optimize(work, name, maximize));
                if (std::holds_alternative<Infeasible>(outcome)) {
                    res.infeasible = true;
                    res.farkas = std::get<Infeasible>(outcome).farkas;
                    return res;
                }
                if (std::holds_alternative<Unbounded>(outcome)) continue;
                Rat val = std::get<Optimal>(outcome).value;
                auto& b = res.bounds[name];
                if (maximize) {
                    Int ub = floor_to_multiple(val, mod);
                    if (!b.ub || ub < *b.ub) {
                        b.ub = ub;
                        changed = true;
                        auto it = ub_row.find(name);
                        if (it == ub_row.end()) {
                            auto& row = work.add_row(Rel::Le, Rat(ub), "ub_" + name);
                            row.coeffs[vi] = 1;
                            ub_row[name] = (int)work.rows.size() - 1;
                        } else {
                            work.rows[it->second].rhs = Rat(ub);
                        }
                    }
                } else {
                    Int lb = ceil_to_multiple(val, mod);
                    if (lb > b.lb) {
                        b.lb = lb;
                        changed = true;
                        auto it = lb_row.find(name);
                        if (it == lb_row.end()) {
                            auto& row = work.add_row(Rel::Ge, Rat(lb), "lb_" + name);
                            row.coeffs[vi] = 1;
                            lb_row[name] = (int)work.rows.size() - 1;
                        } else {
                            work.rows[it->second].rhs = Rat(lb);
                        }
                    }
                }
            }
        }
        if (!changed) return res;
    }
    res.hit_round_limit = true;
    return res;
}

DivisibleOutcome divisible_feasible(const DivisibleQuery& query) {
    mw::FirstTParams p;
    p.n = query.n;
    p.q = query.q;
    p.delta = query.delta;
    p.t = query.t;
    p.k = query.k;
    p.full_length = true;
    p.projective = query.projective;
    p.forbidden_weights = query.forbidden_weights;

    DivisibleOutcome out;
    out.sys = mw::first_t_system(p);

    auto feas = solve(RationalLinearProgram::feasibility(out.sys));
    if (std::holds_alternative<Infeasible>(feas)) {
        out.feasible = false;
        out.reason = "farkas";
        out.farkas = std::get<Infeasible>(feas).farkas;
        return out;
    }
    out.model = std::get<Optimal>(feas).primal;

    if (query.tighten) {
        std::map<std::string, Int> int_vars;
        for (const auto& v : out.sys.vars)
            int_vars[v] = (v[0] == 'A' || v[0] == 'B') ? Int(query.q - 1) : Int(1);
        auto t = tighten_bounds(out.sys, int_vars);
        if (t.infeasible) {
            out.feasible = false;
            out.reason = "rounding";
            out.farkas = t.farkas;
            return out;
        }
    }

    if (query.power_check && !query.k.has_value()) {
        auto up = solve(RationalLinearProgram::optimize(out.sys, "y", true));
        auto lo = solve(RationalLinearProgram::optimize(out.sys, "y", false));
        if (std::holds_alternative<Optimal>(up) && std::holds_alternative<Optimal>(lo)) {
            Rat hi = std::get<Optimal>(up).value, low = std::get<Optimal>(lo).value;
            if (hi == low) {
                // y stands for q^{k-t+1}; a pinned non-power value is a contradiction
                bool power = false;
                if (boost::multiprecision::denominator(hi) == 1) {
                    Int v = boost::multiprecision::numerator(hi);
                    while (v > 1 && v % query.q == 0) v /= query.q;
                    power = (v == 1);
                }
                if (!power) {
                    out.feasible = false;
                    out.reason = "power-of-p";
                    out.pinned_y = hi;
                    return out;
                }
            }
        }
    }
    return out;
}

}  // namespace divlen::lp
