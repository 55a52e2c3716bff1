#include <divlen/fixtures.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace divlen::fixtures {

namespace {

std::string data_dir() { return DIVLEN_DATA_DIR; }

std::map<long, Int> we(std::initializer_list<std::pair<long, long>> items) {
    std::map<long, Int> m;
    for (const auto& [w, c] : items) m[w] = c;
    return m;
}

}  // namespace

const std::vector<FixtureInfo>& registry() {
    static const std::vector<FixtureInfo> fixtures = {
        {"rm-16-5", "rm-16-5.txt", 2, 5, 16, 16, 8, true, we({{8, 30}, {16, 1}}), {},
         "first-order Reed-Muller code of length 16"},
        {"example-6-3-f3", "example-6-3-f3.txt", 3, 3, 6, 5, 1, false, {}, {},
         "ternary toy generator matrix with one zero column"},
        {"code-50-8", "code-50-8.txt", 2, 8, 50, 50, 8, true, we({{16, 5}, {24, 210}, {32, 40}}), {},
         "the projective 8-divisible [50,8] code"},
        {"search-50-8", "search-50-8.txt", 2, 8, 50, 50, 8, true, we({{16, 5}, {24, 210}, {32, 40}}), {},
         "length-50 matrix from the prescribed-automorphism search"},
        {"code-74-12", "code-74-12.txt", 2, 12, 74, 74, 8, true,
         we({{8, 3}, {24, 60}, {32, 1423}, {40, 2585}, {48, 24}}), {}, "8-divisible [74,12] code"},
        {"code-161-10", "code-161-10.txt", 2, 10, 161, 161, 16, true, we({{64, 50}, {80, 886}, {96, 87}}), {},
         "16-divisible [161,10] code"},
        {"code-162-10", "code-162-10.txt", 2, 10, 162, 162, 16, true,
         we({{32, 1}, {64, 30}, {80, 890}, {96, 102}}), {}, "16-divisible [162,10] code"},
        {"code-195-10", "code-195-10.txt", 2, 10, 195, 195, 16, true, we({{80, 33}, {96, 855}, {112, 135}}), {},
         "16-divisible [195,10] code"},
        {"code-197-10", "code-197-10.txt", 2, 10, 197, 197, 16, true, we({{80, 10}, {96, 837}, {112, 176}}), {},
         "16-divisible [197,10] code"},
        {"code-41-5-q5", "code-41-5-q5.txt", 5, 5, 41, 41, 5, true, we({{25, 4}, {30, 1360}, {35, 1760}}), {},
         "5-divisible [41,5] code over F_5"},
        {"code-46-5-q5", "code-46-5-q5.txt", 5, 5, 46, 46, 5, true,
         we({{25, 4}, {30, 60}, {35, 1860}, {40, 1200}}), {}, "5-divisible [46,5] code over F_5"},
        {"code-141-4-q7", "code-141-4-q7.txt", 7, 4, 141, 141, 7, true,
         we({{112, 30}, {119, 1692}, {126, 672}, {133, 6}}), {}, "7-divisible [141,4] code over F_7"},
        {"holes-17-6", "holes-17-6.txt", 2, 6, 17, 17, 4, true, {}, {}, "17-point hole configuration, dimension 6"},
        {"holes-17-7", "holes-17-7.txt", 2, 7, 17, 17, 4, true, {}, {}, "17-point hole configuration, dimension 7"},
        {"holes-17-8", "holes-17-8.txt", 2, 8, 17, 17, 4, true, {}, {}, "17-point hole configuration, dimension 8"},
        {"hill-cap", "hill-cap.txt", 3, 6, 56, 56, 9, true, we({{36, 616}, {45, 112}}), {},
         "the Hill cap [56,6] two-weight code over F_3"},
        {"cylinder-64-4-q8", "cylinder-64-4-q8.txt", 8, 4, 64, 64, 8, true, {},
         we({{0, 29}, {8, 528}, {16, 28}}), "8-divisible non-cylinder set of 64 points in PG(3,8)"},
    };
    return fixtures;
}

const FixtureInfo& info(const std::string& id) {
    for (const auto& f : registry())
        if (f.id == id) return f;
    throw std::invalid_argument("unknown fixture: " + id);
}

geom::GeneratorMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture file " + path);
    long q, k, n;
    if (!(in >> q >> k >> n)) throw std::runtime_error("bad fixture header in " + path);
    geom::GeneratorMatrix g;
    g.q = q;
    g.rows.assign(k, std::vector<int>(n));
    long count = 0;
    char c;
    while (count < k * n && in.get(c)) {
        if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
        if (c < '0' || c > '9') throw std::runtime_error("bad symbol in fixture " + path);
        int val = c - '0';
        if (val >= q) throw std::runtime_error("symbol out of field range in " + path);
        g.rows[count / n][count % n] = val;
        ++count;
    }
    if (count != k * n) throw std::runtime_error("truncated fixture " + path);
    return g;
}

geom::GeneratorMatrix load_fixture(const std::string& id) {
    return load_matrix(data_dir() + "/fixtures/" + info(id).file);
}

FixtureReport verify_fixture(const std::string& id) {
    const FixtureInfo& fi = info(id);
    geom::GeneratorMatrix g = load_fixture(id);
    FixtureReport rep;
    rep.id = id;
    rep.n = g.n();
    rep.effective_n = g.effective_length();
    rep.length_ok = (rep.n == fi.n) && (rep.effective_n == fi.effective_n);

    geom::PointMultiset m = geom::multiset_from_matrix(g);
    rep.rank = geom::dim_span(m);
    rep.rank_ok = (rep.rank == fi.k);
    rep.max_multiplicity = m.max_multiplicity();
    rep.projective_ok = !fi.projective || rep.max_multiplicity == 1;

    mw::WeightDistribution w = geom::weight_distribution_bruteforce(g);
    for (long i = 1; i <= w.n; ++i)
        if (w.A[i] != 0) rep.enumerator[i] = w.A[i];

    rep.divisible_ok = true;
    for (const auto& [weight, cnt] : rep.enumerator) {
        (void)cnt;
        if (Int(weight) % fi.delta != 0) rep.divisible_ok = false;
    }
    rep.max_divisibility = 0;
    for (const auto& [weight, cnt] : rep.enumerator) {
        (void)cnt;
        rep.max_divisibility = boost::multiprecision::gcd(rep.max_divisibility, Int(weight));
    }

    rep.enumerator_ok = fi.enumerator.empty() || rep.enumerator == fi.enumerator;

    rep.spectrum_ok = true;
    if (!fi.spectrum.empty()) {
        mw::Spectrum sp = geom::spectrum_bruteforce(m);
        for (const auto& [i, cnt] : fi.spectrum) {
            Int have = (i < (long)sp.a.size()) ? sp.a[i] : Int(0);
            if (have != cnt) rep.spectrum_ok = false;
        }
        Int total = 0;
        for (const Int& c : sp.a) total += c;
        if (total != qarith::bracket(m.v, m.q)) rep.spectrum_ok = false;
    }

    rep.ok = rep.length_ok && rep.rank_ok && rep.projective_ok && rep.divisible_ok && rep.enumerator_ok &&
             rep.spectrum_ok;
    return rep;
}

}  // namespace divlen::fixtures
