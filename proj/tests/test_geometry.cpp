#include <divlen/fixtures.hpp>
#include <divlen/geometry.hpp>

#include <doctest.h>

#include <set>

using namespace divlen;
using namespace divlen::geom;

TEST_CASE("matrix to multiset correspondence with zero columns") {
    auto g = fixtures::load_fixture("example-6-3-f3");
    CHECK(g.n() == 6);
    CHECK(g.effective_length() == 5);
    long zeros = 0;
    auto m = multiset_from_matrix(g, &zeros);
    CHECK(zeros == 1);
    CHECK(m.cardinality() == 5);
    CHECK(dim_span(m) == 3);

    auto g2 = matrix_from_multiset(m);
    auto m2 = multiset_from_matrix(g2);
    CHECK(m2.mult == m.mult);
}

TEST_CASE("brute-force weight distribution of tiny codes") {
    GeneratorMatrix id1;
    id1.q = 2;
    id1.rows = {{1}};
    auto w = weight_distribution_bruteforce(id1);
    CHECK(w.A == std::vector<Int>{1, 1});

    auto m = simplex(3, 2);
    auto w7 = weight_distribution_bruteforce(matrix_from_multiset(m));
    CHECK(w7.A[4] == 7);
    CHECK(w7.A[0] == 1);
}

TEST_CASE("all shipped fixtures verify") {
    for (const auto& fi : fixtures::registry()) {
        auto rep = fixtures::verify_fixture(fi.id);
        CHECK_MESSAGE(rep.ok, fi.id);
        CHECK_MESSAGE(rep.length_ok, fi.id);
        CHECK_MESSAGE(rep.rank_ok, fi.id);
        CHECK_MESSAGE(rep.projective_ok, fi.id);
        CHECK_MESSAGE(rep.divisible_ok, fi.id);
        CHECK_MESSAGE(rep.enumerator_ok, fi.id);
        CHECK_MESSAGE(rep.spectrum_ok, fi.id);
    }
}

TEST_CASE("weight distribution matches (q-1)-scaled spectrum on fixtures") {
    for (const std::string id : {"rm-16-5", "hill-cap", "holes-17-6"}) {
        auto g = fixtures::load_fixture(id);
        auto m = multiset_from_matrix(g);
        auto w = weight_distribution_bruteforce(g);
        auto sp = spectrum_bruteforce(m);
        for (long i = 1; i <= w.n; ++i) {
            Int a = (w.n - i < (long)sp.a.size()) ? sp.a[w.n - i] : Int(0);
            CHECK(w.A[i] == (w.q - 1) * a);
        }
    }
}

TEST_CASE("cylinder counterexample spectrum") {
    auto m = multiset_from_matrix(fixtures::load_fixture("cylinder-64-4-q8"));
    CHECK(m.cardinality() == 64);
    CHECK(m.max_multiplicity() == 1);
    auto sp = spectrum_bruteforce(m);
    CHECK(sp.a[0] == 29);
    CHECK(sp.a[8] == 528);
    CHECK(sp.a[16] == 28);
    CHECK(is_divisible(m, 8));
}

TEST_CASE("basic constructions meet their contracts") {
    for (long q : {2L, 3L, 4L}) {
        for (long k = 2; k <= 4; ++k) {
            auto s = simplex(k, q);
            CHECK(s.cardinality() == qarith::bracket(k, q));
            CHECK(s.max_multiplicity() == 1);
            CHECK(is_divisible(s, pow_int(q, k - 1)));

            auto a = affine(k, q);
            CHECK(a.cardinality() == pow_int(q, k - 1));
            CHECK(a.max_multiplicity() == 1);
            CHECK(is_divisible(a, pow_int(q, k - 2)));
        }
    }
    for (long k = 2; k <= 6; ++k) {
        auto b = projective_base(k);
        CHECK(b.cardinality() == k + 1);
        CHECK(is_divisible(b, 2));
    }
}

TEST_CASE("repetition, sums and complements") {
    auto line = simplex(2, 2);
    auto rep1 = repeat(line, 1);
    CHECK(rep1.cardinality() == 3);
    CHECK(is_divisible(rep1, 2));
    auto rep2 = repeat(line, 2);
    CHECK(is_divisible(rep2, 4));

    auto two = disjoint_sum(simplex(3, 2), simplex(3, 2));
    CHECK(two.cardinality() == 14);
    CHECK(two.v == 6);
    CHECK(is_divisible(two, 4));

    auto aff = affine(4, 2);
    PointMultiset embedded;
    embedded.q = 2;
    embedded.v = 5;
    for (const auto& pt : aff.support()) {
        auto p2 = pt;
        p2.resize(5, 0);
        embedded.add(p2);
    }
    auto comp = complement(embedded, 1);
    CHECK(comp.cardinality() == 31 - 8);
    CHECK(is_divisible(comp, 4));
}

TEST_CASE("cone constructions") {
    auto cone15 = cone_with_vertex(1, projective_base(6), 1);
    CHECK(cone15.cardinality() == 15);
    CHECK(cone15.max_multiplicity() == 1);
    CHECK(is_divisible(cone15, 4));

    auto cone16 = cone_minus_vertex(1, projective_base(7), 1);
    CHECK(cone16.cardinality() == 16);
    CHECK(cone16.max_multiplicity() == 1);
    CHECK(is_divisible(cone16, 4));

    CHECK_THROWS_AS(cone_minus_vertex(1, projective_base(6), 1), std::domain_error);
}

TEST_CASE("switching along a spread of PG(3,2)") {
    auto spread = desarguesian_spread(4, 2, 2);
    REQUIRE(spread.size() == 5);
    {
        PointMultiset cover;
        cover.q = 2;
        cover.v = 4;
        const auto& f = qarith::Gf::of(2);
        for (const auto& basis : spread)
            for (int c = 1; c < 4; ++c) {
                std::vector<int> pt(4, 0);
                for (int i = 0; i < 2; ++i)
                    if (c >> i & 1)
                        for (int j = 0; j < 4; ++j) pt[j] = f.add(pt[j], basis[i][j]);
                cover.add(pt);
            }
        CHECK(cover.cardinality() == 15);
        CHECK(cover.max_multiplicity() == 1);
    }

    PointMultiset m = simplex(4, 2);
    std::vector<Int> sizes = {m.cardinality()};
    for (std::size_t j = 0; j < spread.size(); ++j) {
        std::vector<std::vector<int>> basis = spread[j];
        for (auto& vec : basis) vec.resize(m.v, 0);
        m = switching(m, basis);
        CHECK(m.max_multiplicity() == 1);
        CHECK(is_divisible(m, 4));
        sizes.push_back(m.cardinality());
    }
    CHECK(sizes == std::vector<Int>{15, 16, 17, 18, 19, 20});
}

TEST_CASE("the affine-union switching sets of sizes 49, 129, 321") {
    for (long r : {3L, 4L, 5L}) {
        long v = 2 * r + 1;
        PointMultiset m;
        m.q = 2;
        m.v = v;
        for (long i = 1; i <= r; ++i) {
            for (long mask = 0; mask < (1L << (r + 1)); ++mask) {
                std::vector<int> pt(v, 0);
                pt[i + r] = 1;
                for (long b = 0; b <= r; ++b)
                    if (mask >> b & 1) pt[i - 1 + b] ^= 1;
                m.add(pt);
            }
        }
        CHECK(m.cardinality() == Int(r) * pow_int(2, r + 1));
        CHECK(m.max_multiplicity() == 1);
        CHECK(is_divisible(m, pow_int(2, r)));
        std::vector<std::vector<int>> sbasis;
        for (long i = r + 2; i <= 2 * r + 1; ++i) {
            std::vector<int> e(v, 0);
            e[i - 1] = 1;
            sbasis.push_back(e);
        }
        auto sw = switching(m, sbasis);
        CHECK(sw.cardinality() == Int(r) * pow_int(2, r + 1) + 1);
        CHECK(sw.max_multiplicity() == 1);
        CHECK(is_divisible(sw, pow_int(2, r)));
    }
}

TEST_CASE("ovoid and its simplex concatenation") {
    auto o = ovoid(4);
    CHECK(o.cardinality() == 17);
    CHECK(o.max_multiplicity() == 1);
    CHECK(is_divisible(o, 4));
    auto sp = spectrum_bruteforce(o);
    for (long i = 0; i < (long)sp.a.size(); ++i)
        if (sp.a[i] != 0) CHECK((i == 1 || i == 5));

    auto g = matrix_from_multiset(o);
    auto cat = concatenate_simplex(g, 2);
    CHECK(cat.q == 2);
    CHECK(cat.n() == 51);
    CHECK(cat.k() == 8);
    auto m = multiset_from_matrix(cat);
    CHECK(m.cardinality() == 51);
    CHECK(m.max_multiplicity() == 1);
    CHECK(is_divisible(m, 8));
    auto w = weight_distribution_bruteforce(cat);
    std::set<long> weights;
    for (long i = 1; i <= w.n; ++i)
        if (w.A[i] != 0) weights.insert(i);
    CHECK(weights == std::set<long>{24, 32});
}

TEST_CASE("Baer plane: the binary simplex read over F_4 is 2-divisible") {
    GeneratorMatrix g = matrix_from_multiset(simplex(3, 2));
    auto over4 = interpret_over_extension(g, 2);
    CHECK(over4.q == 4);
    auto m = multiset_from_matrix(over4);
    CHECK(m.cardinality() == 7);
    CHECK(is_divisible(m, 2));
    auto sp = spectrum_bruteforce(m);
    CHECK(sp.a[1] == 14);
    CHECK(sp.a[3] == 7);
}

TEST_CASE("hyperplane restrictions inherit divisibility and obey averaging") {
    const auto& f2 = qarith::Gf::of(2);
    for (auto m : {simplex(4, 2), affine(5, 2), cone_with_vertex(1, projective_base(6), 1)}) {
        Int n = m.cardinality();
        Int delta = max_divisibility(m);
        auto pts = m.support();
        bool light = false;
        for (std::uint64_t hkey : enumerate_points(m.v, m.q)) {
            auto h = qarith::unpack_vec(hkey, m.q, (int)m.v);
            Int inside = 0;
            for (const auto& p : pts)
                if (f2.dot(h, p) == 0) inside += m.multiplicity(p);
            if (2 * inside < n) light = true;
            if (delta >= 4) CHECK(mod_nonneg(inside - n, delta / 2) == 0);
        }
        CHECK(light);
    }
}

TEST_CASE("incidence ranks and kernels of small geometries") {
    auto to_int = [](const IncidenceMatrix& inc) {
        std::vector<std::vector<Int>> a(inc.a.size());
        for (std::size_t i = 0; i < inc.a.size(); ++i) a[i].assign(inc.a[i].begin(), inc.a[i].end());
        return a;
    };

    auto pg22 = to_int(incidence_matrix(3, 2, 2));
    auto r2 = rank_mod(pg22, 2);
    CHECK(r2.rank == 4);
    CHECK(r2.kernel_dim == 3);
    for (const auto& gen : r2.kernel) {
        for (std::size_t col = 0; col < pg22[0].size(); ++col) {
            Int acc = 0;
            for (std::size_t row = 0; row < pg22.size(); ++row) acc += gen[row] * pg22[row][col];
            CHECK(acc % 2 == 0);
        }
    }
    auto rbig = rank_mod(pg22, Int(1000003));
    CHECK(rbig.rank == 7);
    CHECK(rbig.kernel_dim == 0);

    auto pg32 = to_int(incidence_matrix(4, 2, 3));
    auto s2 = rank_mod(pg32, 2);
    CHECK(s2.rank == 5);
    CHECK(s2.kernel_dim == 10);
    auto s4 = rank_mod(pg32, 4);
    CHECK(s4.rank == 11);
    CHECK(s4.kernel_dim == 4);
    for (const auto& gen : s4.kernel) {
        for (std::size_t col = 0; col < pg32[0].size(); ++col) {
            Int acc = 0;
            for (std::size_t row = 0; row < pg32.size(); ++row) acc += gen[row] * pg32[row][col];
            CHECK(acc % 4 == 0);
        }
    }
}

TEST_CASE("incidence matrix row/column sums") {
    auto inc = incidence_matrix(4, 2, 2);
    Int row_sum = 0, col_sum = 0;
    for (int x : inc.a[0]) row_sum += x;
    for (const auto& row : inc.a) col_sum += row[0];
    CHECK(row_sum == qarith::qbin(3, 1, 2));
    CHECK(col_sum == qarith::bracket(2, 2));
}

TEST_CASE("lambda-complement preserves divisibility for multiplicity 2") {
    auto dbl = repeat(simplex(3, 2), 2);
    PointMultiset emb;
    emb.q = 2;
    emb.v = 4;
    for (const auto& pt : dbl.support()) {
        auto p = pt;
        p.resize(4, 0);
        emb.add(p, 2);
    }
    CHECK(is_divisible(emb, 4));
    auto comp = complement(emb, 2);
    CHECK(is_divisible(comp, 4));
}

TEST_CASE("enumeration budgets are enforced") {
    GeneratorMatrix big;
    big.q = 2;
    big.rows.assign(26, std::vector<int>(3, 1));
    CHECK_THROWS_AS(weight_distribution_bruteforce(big), std::runtime_error);
    CHECK_THROWS_AS(enumerate_points(25, 2), std::runtime_error);
}
