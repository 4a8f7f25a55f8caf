#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dpcodes/codes.hpp"

using namespace dpc;

namespace {

// the printed 5x31 generator matrix over F_5 of the worked example
LinearCode paper_example_code() {
    auto f5 = FieldCtx::make(5, 1);
    const std::vector<std::vector<int64_t>> rows = {
        {1, 3, 0, 4, 3, 3, 1, 3, 1, 2, 0, 4, 2, 1, 2, 3, 3, 0, 3, 2, 3, 0, 1, 0, 2, 1, 1, 4, 2, 3, 1},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 1, 2, 3, 2, 0},
        {0, 0, 1, 2, 2, 2, 4, 4, 4, 1, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 2, 1, 1, 1, 3, 4, 1, 3, 1, 1, 0},
        {1, 3, 4, 0, 1, 3, 0, 1, 4, 0, 3, 3, 1, 0, 2, 0, 4, 0, 0, 1, 4, 1, 2, 3, 1, 1, 1, 1, 1, 0, 0},
        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0}};
    return LinearCode::from_int_rows(f5, rows, "printed example");
}

}  // namespace

TEST_CASE("reduce") {
    auto f5 = FieldCtx::make(5, 1);
    auto id3 = LinearCode::from_int_rows(f5, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(reduce(id3).dimension == 3);
    auto dup = LinearCode::from_int_rows(f5, {{1, 2, 3}, {2, 4, 6}, {0, 0, 1}});
    CHECK(reduce(dup).dimension == 2);
    CHECK(reduce(paper_example_code()).dimension == 5);
    CHECK_THROWS_AS(reduce(LinearCode::from_int_rows(f5, {{0, 0}, {0, 0}})), std::invalid_argument);
}

TEST_CASE("minimum distance") {
    auto f5 = FieldCtx::make(5, 1);
    auto rep = LinearCode::from_int_rows(f5, {{1, 1, 1, 1, 1, 1, 1}});
    CHECK(min_distance(rep) == 7);
    CHECK(min_distance(paper_example_code()) == 21);

    auto f4 = FieldCtx::make(2, 2);
    // [4,2] simplex-ish code over F_4: all weights 3
    auto c = LinearCode::from_int_rows(f4, {{1, 0, 1, 1}, {0, 1, 1, 0}});
    CHECK(min_distance(c) == 2);
}

TEST_CASE("weight distribution conventions") {
    auto f5 = FieldCtx::make(5, 1);
    auto code = paper_example_code();
    auto dist = weight_distribution(code);
    CHECK(dist.begin()->first == min_distance(code));
    int64_t total = 0;
    for (auto& [w, c] : dist) total += c;
    CHECK(total == (3125 - 1) / 4);  // projective classes
    // Singleton bound
    CHECK(5 + 21 <= 31 + 1);
}

TEST_CASE("min distance is worker-count independent") {
    auto code = paper_example_code();
    CHECK(min_distance(code, 4) == 21);
    auto d1 = weight_distribution(code, 1);
    auto d4 = weight_distribution(code, 4);
    CHECK(d1 == d4);
}

TEST_CASE("puncture") {
    auto code = paper_example_code();
    auto same = puncture(code, {});
    CHECK(same.n == code.n);
    CHECK(same.gen == code.gen);
    auto p = puncture(code, {0, 5, 30});
    CHECK(p.n == 28);
    CHECK(reduce(p).dimension == 5);
    std::vector<size_t> all(code.n);
    for (size_t i = 0; i < code.n; ++i) all[i] = i;
    CHECK_THROWS_AS(puncture(code, all), std::invalid_argument);

    // puncturing a zero column leaves the weight distribution unchanged
    auto f5 = FieldCtx::make(5, 1);
    auto withzero = LinearCode::from_int_rows(f5, {{1, 0, 2}, {3, 0, 1}});
    CHECK(weight_distribution(withzero) == weight_distribution(puncture(withzero, {1})));
}

TEST_CASE("monomial maps") {
    auto f5 = FieldCtx::make(5, 1);
    auto code = paper_example_code();
    auto id = MonomialMap::identity_map(f5, code.n);
    CHECK(is_automorphism(code, id));
    CHECK(map_order(id) == 1);

    auto lam = global_scalar_map(f5, code.n, fe_from_int(f5, 2));
    CHECK(is_automorphism(code, lam));
    CHECK(map_order(lam) == 4);  // 2 has order 4 in F_5^*

    // a random transposition is almost surely not an automorphism
    MonomialMap swap01 = MonomialMap::identity_map(f5, code.n);
    std::swap(swap01.perm[0], swap01.perm[1]);
    CHECK_FALSE(is_automorphism(code, swap01));

    // automorphism status is invariant under composing with a global scalar
    CHECK(is_automorphism(code, compose(swap01, lam)) == is_automorphism(code, swap01));
    CHECK(is_automorphism(code, compose(id, lam)));
}

TEST_CASE("best known snapshot") {
    auto table = load_best_known(std::string(DPCODES_DATA_DIR) + "/best_known.json");
    auto v = compare_best_known(65, 6, 8, 51, table);
    REQUIRE(v.paper_era_best.has_value());
    CHECK(*v.paper_era_best == 50);
    CHECK(v.verdict == "beats");
    auto v2 = compare_best_known(82, 6, 9, 66, table);
    CHECK(*v2.paper_era_best == 65);
    CHECK(v2.verdict == "beats");
    auto v3 = compare_best_known(31, 5, 5, 21, table);
    CHECK(v3.verdict == "attains");
    auto v4 = compare_best_known(999, 3, 5, 1, table);
    CHECK(v4.verdict == "no reference data");
    auto v5 = compare_best_known(31, 5, 5, 19, table);
    CHECK(v5.verdict == "below");
}

TEST_CASE("reference automorphism-group orders factor as 6(q^2-q+1)(q-1)") {
    for (uint64_t q : {4, 5, 7}) {
        auto ord = dp6_code_automorphism_order(q);
        REQUIRE(ord.has_value());
        int64_t qq = static_cast<int64_t>(q);
        CHECK(*ord == 6 * (qq * qq - qq + 1) * (qq - 1));
    }
    CHECK_FALSE(dp6_code_automorphism_order(9).has_value());
}

TEST_CASE("enumeration guard") {
    auto f5 = FieldCtx::make(5, 1);
    // k = 25 over F_5: ~3e17 projective messages, far beyond the guard
    std::vector<std::vector<int64_t>> rows(25, std::vector<int64_t>(26, 0));
    for (int i = 0; i < 25; ++i) {
        rows[i][i] = 1;
        rows[i][25] = 1;
    }
    auto big = LinearCode::from_int_rows(f5, rows);
    CHECK_THROWS_AS(min_distance(big), guard_error);
}

TEST_CASE("matrix output formats") {
    auto code = paper_example_code();
    auto text = emit_matrix_text(code);
    CHECK(text.substr(0, 31) == "1304331312042123303230102114231");
    auto f4 = FieldCtx::make(2, 2);
    auto c4 = LinearCode::from_int_rows(f4, {{1, 0}, {0, 1}});
    CHECK_THROWS_AS(emit_matrix_text(c4), std::invalid_argument);
    CHECK(emit_matrix_json(c4).find("\"modulus\"") != std::string::npos);
}
