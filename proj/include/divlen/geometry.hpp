#pragma once

#include <divlen/ints.hpp>
#include <divlen/macwilliams.hpp>
#include <divlen/qarith.hpp>

#include <cstdint>
#include <map>
#include <vector>

namespace divlen::geom {

inline constexpr long kCodewordBudget = 1L << 24;
inline constexpr long kHyperplaneBudget = 1L << 22;

// Multiset of points of PG(v-1,q); keys are normalized coordinate vectors
// packed in base q.
struct PointMultiset {
    long q = 2;
    long v = 1;
    std::map<std::uint64_t, Int> mult;

    Int cardinality() const;
    Int multiplicity(const std::vector<int>& pt) const;
    void add(const std::vector<int>& pt, const Int& c = 1);
    long max_multiplicity() const;
    std::vector<std::vector<int>> support() const;
};

struct GeneratorMatrix {
    long q = 2;
    std::vector<std::vector<int>> rows;  // k rows of n encoded entries

    long k() const { return (long)rows.size(); }
    long n() const { return rows.empty() ? 0 : (long)rows[0].size(); }
    long effective_length() const;
};

std::vector<std::uint64_t> enumerate_points(long v, long q);  // normalized, packed

PointMultiset multiset_from_matrix(const GeneratorMatrix& g, long* zero_columns = nullptr);
GeneratorMatrix matrix_from_multiset(const PointMultiset& m);

mw::WeightDistribution weight_distribution_bruteforce(const GeneratorMatrix& g,
                                                      long budget = kCodewordBudget);
mw::Spectrum spectrum_bruteforce(const PointMultiset& m, long budget = kHyperplaneBudget);
bool is_divisible(const PointMultiset& m, const Int& delta, long budget = kHyperplaneBudget);
Int max_divisibility(const PointMultiset& m, long budget = kHyperplaneBudget);  // gcd of n - M(H)
long dim_span(const PointMultiset& m);

// --- constructions -------------------------------------------------------

// All [k]_q points of PG(k-1,q); q^{k-1}-divisible.
PointMultiset simplex(long k, long q);

// Affine k-space chi_V - chi_H, q^{k-1} points, q^{k-2}-divisible.
PointMultiset affine(long k, long q);

// Binary projective base: e_1..e_k and the all-ones point; 2-divisible, k >= 2.
PointMultiset projective_base(long k);

PointMultiset repeat(const PointMultiset& m, const Int& t);
PointMultiset disjoint_sum(const PointMultiset& a, const PointMultiset& b);
PointMultiset overlap_sum(const PointMultiset& a, const PointMultiset& b);  // common ambient
PointMultiset complement(const PointMultiset& m, const Int& lambda);

// Cone over a q^r-divisible base set with an s-dimensional vertex space.
// Without the vertex requires #B = 0 mod q^{r+1}; with the vertex requires
// #B(q-1) = -1 mod q^{r+1}.  Both checked.
PointMultiset cone_minus_vertex(long s, const PointMultiset& base, long r);
PointMultiset cone_with_vertex(long s, const PointMultiset& base, long r);

// Switching: replaces the r-space spanned by `space_basis` (contained in the
// support of m with multiplicity one) by q-1 fresh affine (r+1)-spaces.  The
// ambient space grows by q-1 coordinates.
PointMultiset switching(const PointMultiset& m, const std::vector<std::vector<int>>& space_basis);

// Desarguesian t-spread of PG(v-1,q), q prime, t | v; each element is a basis.
std::vector<std::vector<std::vector<int>>> desarguesian_spread(long v, long t, long q);

// Concatenation with the l-dimensional simplex code: an [n,k]_{q^l} generator
// matrix becomes an [n*[l]_q, kl]_q one (q = characteristic of the field of g).
GeneratorMatrix concatenate_simplex(const GeneratorMatrix& g, long l);

// Reads a matrix over F_p as a matrix over F_{p^l} (Baer-subspace viewpoint).
GeneratorMatrix interpret_over_extension(const GeneratorMatrix& g, long l);

// Elliptic quadric: q^2+1 points in PG(3,q), q-divisible, no 3 collinear.
PointMultiset ovoid(long q);

// --- incidence matrices --------------------------------------------------

struct IncidenceMatrix {
    long v = 0, q = 2, k = 1;
    std::vector<std::vector<int>> a;  // [points][k-spaces], 0/1
};

IncidenceMatrix incidence_matrix(long v, long q, long k, long budget = kHyperplaneBudget);

struct RankProfile {
    std::vector<Int> diag;                  // Smith normal form diagonal
    long rank = 0;                          // #{d_i != 0 mod m}
    long kernel_dim = 0;                    // rows - rank
    std::vector<std::vector<Int>> kernel;   // generators of the left kernel mod m
};

// Rank profile of A over Z/m via the Smith normal form over Z; the kernel
// generators y satisfy y^T A = 0 mod m.
RankProfile rank_mod(const std::vector<std::vector<Int>>& a, const Int& m);

}  // namespace divlen::geom
