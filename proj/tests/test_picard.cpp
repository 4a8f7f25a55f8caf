#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dpcodes/picard.hpp"

using namespace dpc;

TEST_CASE("intersection pairing") {
    DivClass K3 = canonical_class(3), K4 = canonical_class(4), K5 = canonical_class(5);
    CHECK(intersect(K3, K3) == 6);
    CHECK(intersect(K4, K4) == 5);
    CHECK(intersect(K5, K5) == 4);
    DivClass e1{{0, 1, 0, 0, 0, 0}}, e2{{0, 0, 1, 0, 0, 0}};
    CHECK(intersect(e1, e2) == 0);
    CHECK(intersect(e1, e1) == -1);
    CHECK_THROWS_AS(intersect(K3, K5), std::invalid_argument);
}

TEST_CASE("adjunction genus") {
    DivClass K = canonical_class(5);
    DivClass minusK{{3, -1, -1, -1, -1, -1}};
    CHECK(adjunction_genus(minusK, K) == 1);
    DivClass e1{{0, 1, 0, 0, 0, 0}};
    CHECK(adjunction_genus(e1, K) == 0);
    DivClass conic{{2, -1, -1, -1, -1, -1}};
    CHECK(adjunction_genus(conic, K) == 0);
    DivClass line{{1, 0, 0, 0, 0, 0}};  // E0.(E0+K) = 1 - 3 = -2 -> genus 0
    CHECK(adjunction_genus(line, K) == 0);
    // malformed data: odd pairing value is flagged
    DivClass fakeK{{0, 1, 0, 0, 0, 0}};
    CHECK_THROWS_AS(adjunction_genus(line, fakeK), std::invalid_argument);
}

TEST_CASE("predicted point counts") {
    CHECK(predicted_points(4, dp6_frobenius_printed()) == 13);
    CHECK(predicted_points(3, dp5_frobenius_printed()) == 10);
    FrobAction id4{IntMat::identity(4), LatticeBasis::E};
    CHECK(predicted_points(2, id4) == 13);  // split surface: trace 4
}

TEST_CASE("orthogonal basis matches the printed F-bases") {
    DivClass Lt{{1, -1, -1, 0, 0, 0}};
    DivClass Ct{{2, -1, -1, -1, -1, -1}};
    auto dp6 = orthogonal_basis({Lt, Ct});
    REQUIRE(dp6.size() == 4);
    CHECK(dp6[0] == DivClass{{3, -2, -1, -1, -1, -1}});
    CHECK(dp6[1] == DivClass{{1, -1, 0, -1, 0, 0}});
    CHECK(dp6[2] == DivClass{{1, -1, 0, 0, -1, 0}});
    CHECK(dp6[3] == DivClass{{1, -1, 0, 0, 0, -1}});

    auto dp5 = orthogonal_basis({Ct});
    REQUIRE(dp5.size() == 5);
    CHECK(dp5[0] == DivClass{{3, -2, -1, -1, -1, -1}});
    for (int i = 1; i <= 4; ++i) {
        DivClass expect{{1, -1, 0, 0, 0, 0}};
        expect.a[i + 1] = -1;
        CHECK(dp5[i] == expect);
    }
    // defining properties
    for (auto& set : {dp6, dp5})
        for (size_t i = 0; i < set.size(); ++i)
            for (size_t j = i + 1; j < set.size(); ++j) CHECK(intersect(set[i], set[j]) == 0);
    CHECK(intersect(dp6[0], dp6[0]) == 1);
    CHECK(intersect(dp6[1], dp6[1]) == -1);
}

TEST_CASE("bounds and Griesmer feasibility") {
    CHECK(bounds(4).hws == 9);
    CHECK(bounds(5).hws == 10);
    CHECK(bounds(7).hws == 13);
    CHECK(bounds(8).hws == 14);
    CHECK(bounds(9).hws == 16);
    CHECK(bounds(2).reducible_cap == 2);
    CHECK(griesmer_feasible(4, 13, 7, 5));   // 5+2+1+1+1+1+1 = 12 <= 13
    CHECK_FALSE(griesmer_feasible(4, 11, 7, 5));
}

TEST_CASE("expected parameters") {
    auto p67 = expected_parameters("6_6", 7);
    CHECK(p67.n == 43);
    CHECK(p67.k == 7);
    CHECK(p67.d_lower == 30);
    auto p59 = expected_parameters("5_7", 9);
    CHECK(p59.n == 82);
    CHECK(p59.k == 6);
    CHECK(p59.d_lower == 66);
    auto p41 = expected_parameters("4_1", 5);
    CHECK(p41.n == 16);
    CHECK(p41.k == 5);
    CHECK(p41.d_lower == 6);
    CHECK_THROWS_AS(expected_parameters("6_6", 3), std::invalid_argument);
    CHECK_THROWS_AS(expected_parameters("5_7", 2), std::invalid_argument);
    CHECK_THROWS_AS(expected_parameters("4_1", 3), std::invalid_argument);
}

TEST_CASE("type tables carry verified Frobenius actions") {
    const std::vector<std::pair<int, std::vector<int64_t>>> expected_traces = {
        {6, {4, 2, 2, 1, 0, -1}}, {5, {5, 3, 2, 1, 0, 1, 0}}, {4, {-2, 0, 1}}};
    for (auto& [degree, traces] : expected_traces) {
        const auto& table = type_table(degree);
        REQUIRE(table.size() == traces.size());
        for (size_t i = 0; i < table.size(); ++i) {
            const auto& t = table[i];
            CHECK(t.trace == traces[i]);
            CHECK(t.action.matrix.trace() == traces[i]);
            CHECK(preserves_intersection(t.action.matrix));
            CHECK(fixes_canonical(t.action.matrix));
            auto cp = charpoly(t.action.matrix);
            std::vector<int64_t> expect{1};
            for (int n : t.cyclotomic_factors) expect = poly_mul_i64(expect, cyclotomic(n));
            CHECK(cp == expect);
            CHECK(root_one_multiplicity(cp) == t.picard_rank);
        }
    }
}

TEST_CASE("printed rank-one matrices") {
    auto m6 = dp6_frobenius_printed();
    CHECK(m6.matrix.trace() == -1);
    CHECK(preserves_intersection(m6.matrix));
    CHECK(fixes_canonical(m6.matrix));
    auto cp6 = charpoly(m6.matrix);
    CHECK(root_one_multiplicity(cp6) == 1);  // Picard rank one
    CHECK(cp6 == poly_mul_i64(poly_mul_i64(cyclotomic(1), cyclotomic(2)), cyclotomic(3)));

    auto m5 = dp5_frobenius_printed();
    CHECK(m5.matrix.trace() == 0);
    CHECK(preserves_intersection(m5.matrix));
    CHECK(fixes_canonical(m5.matrix));
    CHECK(root_one_multiplicity(charpoly(m5.matrix)) == 1);
    CHECK(charpoly(m5.matrix) == poly_mul_i64(cyclotomic(1), cyclotomic(5)));
}

TEST_CASE("printed matrices agree with the orbit permutation action") {
    // the degree-6 construction permutes E1..E5 by (E1 E2)(E3 E4 E5); its
    // restriction to the F-sublattice must be the printed 4x4 matrix
    auto Fb = orthogonal_basis({DivClass{{1, -1, -1, 0, 0, 0}}, DivClass{{2, -1, -1, -1, -1, -1}}});
    IntMat perm{6, std::vector<int64_t>(36, 0)};
    perm.at(0, 0) = 1;
    perm.at(2, 1) = 1;  // E1 -> E2
    perm.at(1, 2) = 1;  // E2 -> E1
    perm.at(4, 3) = 1;  // E3 -> E4
    perm.at(5, 4) = 1;  // E4 -> E5
    perm.at(3, 5) = 1;  // E5 -> E3
    auto printed = dp6_frobenius_printed().matrix;
    for (int j = 0; j < 4; ++j) {
        auto img = perm.apply(Fb[j].a);
        std::vector<int64_t> acc(6, 0);
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 6; ++c) acc[c] += printed.at(i, j) * Fb[i].a[c];
        CHECK(img == acc);
    }
    // degree 5: E1..E5 cycled by (E1 E2 E3 E4 E5)
    auto Fb5 = orthogonal_basis({DivClass{{2, -1, -1, -1, -1, -1}}});
    IntMat perm5{6, std::vector<int64_t>(36, 0)};
    perm5.at(0, 0) = 1;
    for (int i = 1; i <= 5; ++i) perm5.at(i % 5 + 1, i) = 1;  // E_i -> E_{i+1}
    auto printed5 = dp5_frobenius_printed().matrix;
    for (int j = 0; j < 5; ++j) {
        auto img = perm5.apply(Fb5[j].a);
        std::vector<int64_t> acc(6, 0);
        for (int i = 0; i < 5; ++i)
            for (int c = 0; c < 6; ++c) acc[c] += printed5.at(i, j) * Fb5[i].a[c];
        CHECK(img == acc);
    }
}
