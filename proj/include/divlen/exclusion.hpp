#pragma once

#include <divlen/ints.hpp>
#include <divlen/lengths.hpp>
#include <divlen/lp.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace divlen::excl {

// --- certificates ---------------------------------------------------------

struct IntervalCert {
    long a = 0, b = 0;  // n inside [(a(q-1)+b)[r+1]_q + a + 1, (a(q-1)+b+1)[r+1]_q - 1]
};
struct ExpansionCert {
    Int leading;  // negative leading coefficient of the S_q(r)-adic expansion
};
struct LinearCert {
    Int u, m;  // u = least attainable hyperplane multiplicity, n = u + m*Delta, u(q-1) >= m*Delta
};
struct QuadraticCert {
    Int u, m, tau;
    char law = 'a';  // 'a': tau < 0, 'b': divisibility, 'c': m >= 2 and tau = 0
};
struct CubicCert {
    Int t, h, g2;  // h >= 0, g2 < 0, n/Delta outside [t, t+1]
};
struct DescentCert {
    std::vector<Int> residues;  // all hyperplane candidates below n/q, each excluded at level r-1
};
struct LpCert {
    long t = 4;
    std::string reason;  // "farkas" or "power-of-p"
    std::map<std::string, Rat> farkas;
    std::optional<Rat> pinned_y;
};
struct SporadicCert {
    std::string citation;
};

using ExclusionCertificate =
    std::variant<IntervalCert, ExpansionCert, LinearCert, QuadraticCert, CubicCert, DescentCert, LpCert, SporadicCert>;

std::string certificate_kind(const ExclusionCertificate& c);

enum class Status { Realizable, Excluded, Open };

struct LengthStatus {
    Int n;
    Status status = Status::Open;
    std::optional<ExclusionCertificate> certificate;
    std::string witness;  // base-example decomposition for Realizable entries
};

// --- configuration --------------------------------------------------------

struct BaseExample {
    Int n;
    std::string witness;
};

struct SporadicExclusion {
    long q = 2;
    long r = 0;
    Int n;
    std::string citation;
};

struct ClassifyConfig {
    bool lp_enabled = true;
    long lp_t = 4;
    std::vector<std::tuple<long, long, Int>> lp_t5_instances;  // (q, r, n) handled with t = 5 + power check
    std::vector<SporadicExclusion> sporadics;
};

ClassifyConfig default_config();
std::vector<SporadicExclusion> shipped_sporadic_exclusions();  // data/sporadic_exclusions.json

// Base-example cardinalities for the projective tables, one list per (q,r):
// geometric constructions plus two-weight / distance-optimal code lengths.
std::vector<BaseExample> default_base_examples(long q, long r);

// --- the exclusion oracle ---------------------------------------------------

// Memoized, recursive non-existence prover for projective q^r-divisible
// cardinalities.  Criteria run in the fixed order: interval, linear (with
// attainable-value pruning), quadratic, cubic, hyperplane descent,
// dimension-free LP, sporadic table.
class Classifier {
  public:
    Classifier(long q, ClassifyConfig cfg);

    long q() const { return q_; }
    const ClassifyConfig& config() const { return cfg_; }

    bool excluded(long r, const Int& n);
    std::optional<ExclusionCertificate> certificate(long r, const Int& n);

    // Re-checks a certificate from scratch (closed forms re-evaluated,
    // Farkas multipliers re-verified, descent residues re-queried).
    bool verify(long r, const Int& n, const ExclusionCertificate& cert);

  private:
    long q_;
    ClassifyConfig cfg_;
    std::map<long, std::map<Int, std::optional<ExclusionCertificate>>> memo_;

    std::optional<ExclusionCertificate> run_chain(long r, const Int& n);
};

// Shared default-config classifier per field size (memo persists).
Classifier& shared_classifier(long q);

// --- individual criteria (also used by the certificate verifier) -----------

std::optional<IntervalCert> interval_exclusion(const Int& n, long q, long r);

// All m with m = n (mod q^r), 0 <= m < n, m attainable at level q^{r-1}
// according to `lower_excluded` (projective: level r-1 classifier; multiset:
// S-adic expansion).
std::vector<Int> attainable_hyperplane_values(const Int& n, long q, long r,
                                              const std::function<bool(const Int&)>& lower_excluded,
                                              const Int& scan_limit);

Int tau(const Int& u, const Int& delta, const Int& m, long q);

std::optional<QuadraticCert> quadratic_condition(const Int& n, long q, const Int& delta);
std::optional<CubicCert> cubic_condition(const Int& n, long q, const Int& delta);

// --- classification tables --------------------------------------------------

std::vector<LengthStatus> classify_projective(long q, long r, const Int& n_max, const ClassifyConfig& cfg,
                                              const std::vector<BaseExample>& bases);
std::vector<LengthStatus> classify_projective(long q, long r, const Int& n_max);  // defaults

// lambda = 0 encodes "unbounded multiplicity" (the plain multiset case).
std::vector<LengthStatus> classify_multiset_lambda(long q, long r, long lambda, const Int& n_max);

// Interval-compressed rendering, e.g. "{7,8} u {14...}".
std::string render_status_set(const std::vector<LengthStatus>& table, Status which);

}  // namespace divlen::excl
