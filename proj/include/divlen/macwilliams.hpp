#pragma once

#include <divlen/ints.hpp>
#include <divlen/linsys.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace divlen::mw {

// Weight distribution A_0..A_n of an [n,k]_q-code.
struct WeightDistribution {
    long q = 2;
    long n = 0;
    long k = 0;
    std::vector<Int> A;  // size n+1

    Int count(long w) const { return (w >= 0 && w <= n) ? A[w] : Int(0); }
    void validate() const;  // A_0 = 1, sum = q^k, A_i >= 0, (q-1) | A_i for i >= 1
};

// Hyperplane spectrum a_0..a_s of a multiset of n points in PG(k-1,q).
struct Spectrum {
    long q = 2;
    long k = 0;
    long n = 0;
    std::vector<Int> a;  // size s+1
};

// Dual weight distribution via the Krawtchouk form of the MacWilliams identity.
// Throws if some q^k * B_i division is inexact (invalid input distribution).
WeightDistribution macwilliams_transform(const WeightDistribution& w);

struct FirstTParams {
    Int n;
    long q = 2;
    Int delta = 1;
    long t = 4;
    std::optional<long> k;       // fixed dimension; empty selects dimension-free mode
    bool full_length = true;     // fixes B_1 = 0
    bool projective = false;     // fixes B_2 = 0
    std::set<Int> forbidden_weights;
    std::optional<std::vector<Int>> weights;  // default: multiples of delta in [delta, n]
};

// First t MacWilliams equations over variables {A_w}, {B_j}.  In
// dimension-free mode q^{k-i} is rewritten as q^{t-1-i} * y with y = q^{k-t+1}
// and the products y*B_j are replaced by fresh non-negative variables x_j.
LinearSystem first_t_system(const FirstTParams& p);

// Binary power moments (eq_pm_0 .. eq_pm_4 style), t <= 5.
LinearSystem power_moments_q2(const Int& n, long k, long t, const std::vector<Int>& weights);

// Standard equations over spectrum variables a_i, i in `indices`.
// lambda_counts[j] = number of points of multiplicity j (sets: lambda_1 = n).
LinearSystem standard_equations(const Int& n, long q, long k, const std::vector<Int>& indices,
                                const std::map<long, Int>& lambda_counts);

Spectrum spectrum_from_distribution(const WeightDistribution& w);
WeightDistribution distribution_from_spectrum(const Spectrum& s);

struct EnumerateOptions {
    std::map<std::string, Int> divisibility;  // value of var must be divisible by this
    std::map<std::string, Int> lower;         // default 0
    std::map<std::string, Int> upper;         // optional
    long max_free_vars = 8;
    long max_nodes = 20'000'000;
};

// All non-negative integer solutions of the system (equalities eliminated
// exactly, bounded back-substitution over the free variables).
std::vector<std::map<std::string, Int>> enumerate_integer_solutions(const LinearSystem& sys,
                                                                    const EnumerateOptions& opt = {});

struct DivisibleSolution {
    long k = 0;
    WeightDistribution dist;
    WeightDistribution dual;
};

// Non-negative integral solutions of the MacWilliams system for a
// Delta-divisible [n,k]_q code, per dimension k in [k_min, k_max]; a solution
// must give a non-negative integral full dual distribution with B_1 = 0 and,
// if projective, B_2 = 0.
std::vector<DivisibleSolution> enumerate_divisible_distributions(long q, const Int& delta, const Int& n,
                                                                 long k_min, long k_max, bool projective,
                                                                 long t = 4);

}  // namespace divlen::mw
