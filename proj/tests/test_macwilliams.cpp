#include <divlen/macwilliams.hpp>
#include <divlen/qarith.hpp>

#include <doctest.h>

#include <algorithm>

using namespace divlen;
using namespace divlen::mw;

namespace {

WeightDistribution make_dist(long q, long n, long k, std::initializer_list<std::pair<long, long>> weights) {
    WeightDistribution w;
    w.q = q;
    w.n = n;
    w.k = k;
    w.A.assign(n + 1, 0);
    w.A[0] = 1;
    for (const auto& [weight, count] : weights) w.A[weight] = count;
    return w;
}

}  // namespace

TEST_CASE("MacWilliams transform on the even [13,5] solutions") {
    auto w1 = make_dist(2, 13, 5, {{6, 24}, {8, 3}, {10, 4}});
    auto b1 = macwilliams_transform(w1);
    CHECK(b1.A == std::vector<Int>{1, 0, 0, 4, 30, 57, 36, 36, 57, 30, 4, 0, 0, 1});

    auto w2 = make_dist(2, 13, 5, {{6, 23}, {8, 6}, {10, 1}, {12, 1}});
    auto b2 = macwilliams_transform(w2);
    CHECK(b2.A == std::vector<Int>{1, 0, 0, 2, 40, 39, 46, 46, 39, 40, 2, 0, 0, 1});
}

TEST_CASE("transform of the trivial code is the full-space distribution") {
    WeightDistribution w;
    w.q = 3;
    w.n = 6;
    w.k = 0;
    w.A.assign(7, 0);
    w.A[0] = 1;
    auto dual = macwilliams_transform(w);
    for (long i = 0; i <= 6; ++i) CHECK(dual.A[i] == binomial(6, i) * pow_int(2, i));
}

TEST_CASE("transform is an involution") {
    for (auto w : {make_dist(2, 13, 5, {{6, 24}, {8, 3}, {10, 4}}),
                   make_dist(2, 7, 3, {{4, 7}}),
                   make_dist(3, 13, 3, {{9, 26}})}) {
        auto dual = macwilliams_transform(w);
        CHECK(dual.k == w.n - w.k);
        auto back = macwilliams_transform(dual);
        CHECK(back.A == w.A);
        CHECK(back.k == w.k);
    }
}

TEST_CASE("first_t_system with t = 1 is the count equation") {
    FirstTParams p;
    p.n = 20;
    p.q = 3;
    p.delta = 3;
    p.t = 1;
    p.k = 4;
    LinearSystem sys = first_t_system(p);
    REQUIRE(sys.rows.size() == 1);
    for (const auto& c : sys.rows[0].coeffs) CHECK(c == 1);
    CHECK(sys.rows[0].rhs == Rat(pow_int(3, 4) - 1));
}

TEST_CASE("first_t_system reproduces the even [13,5,6] example system") {
    FirstTParams p;
    p.n = 13;
    p.q = 2;
    p.delta = 2;
    p.t = 4;
    p.k = 5;
    p.full_length = false;
    p.projective = false;
    p.weights = std::vector<Int>{6, 8, 10, 12};  // even weights of a [13,5,6] code
    LinearSystem sys = first_t_system(p);
    REQUIRE(sys.vars == std::vector<std::string>{"A_6", "A_8", "A_10", "A_12", "B_1", "B_2", "B_3"});

    // the displayed system, in power-moment shape
    LinearSystem shown;
    for (const auto& v : sys.vars) shown.add_var(v);
    shown.add_row(Rel::Eq, 31, "row1").coeffs = {1, 1, 1, 1, 0, 0, 0};
    shown.add_row(Rel::Eq, 208, "row2").coeffs = {6, 8, 10, 12, 16, 0, 0};
    shown.add_row(Rel::Eq, 1456, "row3").coeffs = {36, 64, 100, 144, 208, -16, 0};
    shown.add_row(Rel::Eq, 10816, "row4").coeffs = {216, 512, 1000, 1728, 2176, -312, 24};
    CHECK(sys.equality_rows_equivalent(shown));
}

TEST_CASE("power moments are row-equivalent to the first t MacWilliams equations") {
    std::vector<Int> weights = {6, 8, 10, 12};
    for (long t : {2L, 3L, 4L, 5L}) {
        FirstTParams p;
        p.n = 13;
        p.q = 2;
        p.delta = 2;
        p.t = t;
        p.k = 5;
        p.full_length = false;
        p.projective = false;
        p.weights = weights;
        LinearSystem a = first_t_system(p);
        LinearSystem b = power_moments_q2(13, 5, t, weights);
        CHECK(a.equality_rows_equivalent(b));
    }
}

TEST_CASE("power moments hold on the simplex code") {
    // [7,3]_2 simplex: A_4 = 7; dual Hamming distribution B = (1,0,0,7,7,0,0,1)
    LinearSystem sys = power_moments_q2(7, 3, 5, {4});
    std::map<std::string, Rat> value = {{"A_4", 7}, {"B_1", 0}, {"B_2", 0}, {"B_3", 7}, {"B_4", 7}};
    for (const auto& row : sys.rows) {
        Rat acc = 0;
        for (std::size_t j = 0; j < sys.vars.size(); ++j) acc += row.coeffs[j] * value.at(sys.vars[j]);
        CHECK(acc == row.rhs);
    }
}

TEST_CASE("standard equations: 2[r+1]_q points force the two-subspace spectrum") {
    // q = 2, r = 2: 14 points, hyperplane multiplicities in {2, 6, 10}
    for (long k = 4; k <= 8; ++k) {
        // multiplicity 2 is pruned: a 2-divisible set of 2 points does not exist
        LinearSystem sys = standard_equations(14, 2, k, {6, 10}, {{1, 14}});
        auto sols = enumerate_integer_solutions(sys);
        if (k == 6) {
            REQUIRE(sols.size() == 1);
            CHECK(sols[0].at("a_6") == 49);   // (q^{r+1}-1)[r+1]_q
            CHECK(sols[0].at("a_10") == 14);  // 2[r+1]_q
        } else {
            CHECK(sols.empty());
        }
    }
}

TEST_CASE("standard equations: 21 points on 7 lines") {
    // 2-divisible set of 7 lines: hyperplane multiplicities 9 or 13
    long solutions = 0;
    for (long k = 4; k <= 9; ++k) {
        LinearSystem sys = standard_equations(21, 2, k, {9, 13}, {{1, 21}});
        auto sols = enumerate_integer_solutions(sys);
        if (!sols.empty()) {
            ++solutions;
            CHECK(k == 6);
            REQUIRE(sols.size() == 1);
            CHECK(sols[0].at("a_9") == 42);
            // three disjoint planes: 3 * [3]_2 = 21 hyperplanes contain one of them
            CHECK(sols[0].at("a_13") == 21);
        }
    }
    CHECK(solutions == 1);
}

TEST_CASE("standard equations with n = 0") {
    LinearSystem sys = standard_equations(0, 3, 4, {0}, {});
    auto sols = enumerate_integer_solutions(sys);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].at("a_0") == qarith::bracket(4, 3));
}

TEST_CASE("spectrum / distribution conversion") {
    auto simplex = make_dist(2, 7, 3, {{4, 7}});
    auto sp = spectrum_from_distribution(simplex);
    REQUIRE((long)sp.a.size() == 4);
    CHECK(sp.a[3] == 7);
    auto back = distribution_from_spectrum(sp);
    CHECK(back.A == simplex.A);

    auto hill = make_dist(3, 56, 6, {{36, 616}, {45, 112}});
    auto hs = spectrum_from_distribution(hill);
    CHECK(hs.a[20] == 308);
    CHECK(hs.a[11] == 56);

    Spectrum bad;
    bad.q = 2;
    bad.k = 3;
    bad.n = 7;
    bad.a.assign(8, 0);
    bad.a[7] = 1;  // a_n > 0: non-spanning
    CHECK_THROWS_AS(distribution_from_spectrum(bad), std::invalid_argument);
}

TEST_CASE("even [13,5,6] has exactly two integral solutions") {
    FirstTParams p;
    p.n = 13;
    p.q = 2;
    p.delta = 2;
    p.t = 4;
    p.k = 5;
    p.full_length = false;
    p.projective = false;
    p.weights = std::vector<Int>{6, 8, 10, 12};
    LinearSystem sys = first_t_system(p);
    auto sols = enumerate_integer_solutions(sys);
    REQUIRE(sols.size() == 2);
    auto tuple = [](const std::map<std::string, Int>& s) {
        return std::vector<Int>{s.at("B_1"), s.at("B_2"), s.at("B_3"), s.at("A_6"),
                                s.at("A_8"), s.at("A_10"), s.at("A_12")};
    };
    std::vector<std::vector<Int>> got = {tuple(sols[0]), tuple(sols[1])};
    std::sort(got.begin(), got.end());
    std::vector<std::vector<Int>> expect = {{0, 0, 2, 23, 6, 1, 1}, {0, 0, 4, 24, 3, 4, 0}};
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
}

TEST_CASE("divisibility of returned solutions by q-1") {
    auto sols = enumerate_divisible_distributions(3, 3, 13, 1, 4, false);
    CHECK(!sols.empty());
    for (const auto& s : sols)
        for (long i = 1; i <= s.dist.n; ++i) CHECK(s.dist.A[i] % 2 == 0);
}

TEST_CASE("projective 4-divisible 17-point solutions sit in dimensions 6..8") {
    auto sols = enumerate_divisible_distributions(2, 4, 17, 1, 17, true);
    REQUIRE(sols.size() == 3);
    std::vector<long> ks;
    for (const auto& s : sols) ks.push_back(s.k);
    std::sort(ks.begin(), ks.end());
    CHECK(ks == std::vector<long>{6, 7, 8});
    for (const auto& s : sols) {
        CHECK(s.dual.A[1] == 0);
        CHECK(s.dual.A[2] == 0);
    }
}

TEST_CASE("no projective 8-divisible [52,10] distribution") {
    auto sols = enumerate_divisible_distributions(2, 8, 52, 10, 10, true);
    CHECK(sols.empty());
}
