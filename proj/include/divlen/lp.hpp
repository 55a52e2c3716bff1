#pragma once

#include <divlen/linsys.hpp>
#include <divlen/macwilliams.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace divlen::lp {

// Exact-rational linear program over the rows of a LinearSystem.
// Variables are non-negative unless listed in `free_vars`.
struct RationalLinearProgram {
    LinearSystem sys;
    std::vector<Rat> objective;  // size = sys.vars.size(); defaults to zero
    bool maximize = true;
    std::vector<std::string> free_vars;

    static RationalLinearProgram feasibility(LinearSystem s);
    static RationalLinearProgram optimize(LinearSystem s, const std::string& var, bool maximize);
};

struct Optimal {
    Rat value;
    std::map<std::string, Rat> primal;
    std::map<std::string, Rat> dual;  // one multiplier per named row
};

struct Infeasible {
    std::map<std::string, Rat> farkas;  // row name -> multiplier
};

struct Unbounded {
    std::map<std::string, Rat> ray;  // improving feasible direction
};

using LpOutcome = std::variant<Optimal, Infeasible, Unbounded>;

// Two-phase primal simplex with Bland's smallest-index anti-cycling rule.
// Every returned outcome is re-verified internally with exact arithmetic.
LpOutcome solve(const RationalLinearProgram& lp);

// Re-derives the contradiction from the multipliers alone: the combined row
// must have non-positive coefficients on all non-negative variables, zero on
// free ones, and a positive right-hand side.
bool certify_infeasible(const RationalLinearProgram& lp, const std::map<std::string, Rat>& multipliers);

struct VarBounds {
    Int lb;
    std::optional<Int> ub;
};

struct TightenResult {
    bool infeasible = false;
    std::map<std::string, Rat> farkas;      // set when infeasible
    std::map<std::string, VarBounds> bounds;
    long rounds = 0;
    bool hit_round_limit = false;
};

// Iterative integer rounding: maximize/minimize each listed variable, round
// to the nearest admissible multiple, re-add the bound, repeat to a fixpoint.
TightenResult tighten_bounds(const LinearSystem& sys, const std::map<std::string, Int>& int_vars,
                             long max_rounds = 50);

struct DivisibleQuery {
    long q = 2;
    Int delta;
    Int n;
    std::optional<long> k;  // empty = dimension-free relaxation
    bool projective = true;
    long t = 4;
    bool power_check = false;   // reject a uniquely pinned y that is no q-power
    bool tighten = false;       // also run the integer-rounding loop
    std::set<Int> forbidden_weights;
};

struct DivisibleOutcome {
    bool feasible = true;
    std::string reason;                    // "farkas", "rounding", "power-of-p"
    std::map<std::string, Rat> farkas;     // for reason == "farkas"
    std::optional<Rat> pinned_y;           // for reason == "power-of-p"
    std::map<std::string, Rat> model;      // a rational solution when feasible
    LinearSystem sys;
};

// Existence relaxation for a Delta-divisible (projective) code of effective
// length n: first t MacWilliams equations, LP feasibility, optional integer
// rounding and the power-of-p post-filter on a pinned y = q^{k-t+1}.
DivisibleOutcome divisible_feasible(const DivisibleQuery& query);

}  // namespace divlen::lp
