#pragma once

#include <divlen/exclusion.hpp>
#include <divlen/lengths.hpp>
#include <divlen/macwilliams.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace divlen::apps {

// --- partial spread bounds --------------------------------------------------

Int spread_lower_bound(long q, long v, long t);

// Upper bounds; nullopt when the criterion's preconditions fail.
std::optional<Int> drake_freeman_bound(long q, long v, long t);
std::optional<Int> parametric_bound_2(long q, long v, long t, long* best_y = nullptr);
std::optional<Int> parametric_bound_3(long q, long v, long t);

// floor_qr_lambda with lambda = 1 against the projective classification at
// level q^{t-1}; descends through the levels on demand.
Int divisible_spread_bound(long q, long v, long t);

struct UpperBound {
    std::string method;
    Int value;
    std::string params;
};

struct SpreadBoundReport {
    long q = 2, v = 0, t = 1;
    Int lower;
    std::vector<UpperBound> uppers;
    Int best_upper;
    std::string best_method;
};

SpreadBoundReport spread_bound_report(long q, long v, long t);

// --- packings, coverings, Johnson step ---------------------------------------

Int pack_bound(long q, long v, long k, const Int& lambda);
Int cover_bound(long q, long v, long k, const Int& lambda);
Int johnson_step(long q, long v, long d, long k, const Int& a_prev);

// --- vector space partitions --------------------------------------------------

struct VspType {
    long q = 2;
    long v = 0;
    std::map<long, Int> mult;  // dimension -> multiplicity

    // Parses "4^16 3^1 2^2 1^2"; omitted dimensions mean multiplicity zero.
    static VspType parse(long q, long v, const std::string& text);
    std::string str() const;
};

struct VspVerdict {
    bool pass = true;
    std::string reason;  // first violated condition
};

VspVerdict vsp_feasible(const VspType& type);

// Classification facts wired into vsp_feasible (each re-checked in the tests
// from the standard equations): every 2^2-divisible set of 14 points over F_2
// is two disjoint planes; every 2^3-divisible multiset of 12 points over F_2
// is a 4-fold line.
struct DisjointUnionFact {
    long q;
    long level_r;    // divisibility q^level_r
    Int npoints;
    long space_dim;  // dimension of the parts
    Int parts;
};
const std::vector<DisjointUnionFact>& disjoint_union_facts();

struct MultisetFoldFact {
    long q;
    long level_r;
    Int npoints;
    long space_dim;
    Int fold;
};
const MultisetFoldFact& fold_fact_12_points();

// --- dimension-side conditions -------------------------------------------------

// Largest k with k v_p(q) <= m (v_p(Delta) + v_p(q)) + v_p(binom(b, m)).
Int ward_dimension_bound(long q, const Int& delta, long b, long m);

struct CheckResult {
    bool pass = true;
    std::string detail;
};

// Weight-divisible-by-2Delta count conditions for binary codes, Delta = 2^a.
CheckResult dodunekov_check(const mw::WeightDistribution& dist, long a);
CheckResult even_subcode_check(const mw::WeightDistribution& dist);

// A_Delta values attainable by direct sums (at most two summands) of the
// classified minimum-weight-spanned components, total maximum weight bounded.
std::set<Int> spanned_by_min_weight_counts(const Int& delta, long q, const Int& max_weight);

}  // namespace divlen::apps
