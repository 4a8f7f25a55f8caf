#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dpcodes/io.hpp"
#include "dpcodes/surfaces.hpp"

using namespace dpc;

namespace {
FieldCtxPtr field(uint64_t q) {
    auto [p, m] = split_prime_power(q);
    return FieldCtx::make(p, m);
}
}  // namespace

TEST_CASE("dp6 build invariants") {
    CHECK_THROWS_WITH_AS(build_dp6(field(3), 1),
                         doctest::Contains("q >= 4"), std::invalid_argument);
    for (uint64_t q : {4, 5}) {
        auto m = build_dp6(field(q), 1);
        CHECK(m.sextics.size() == 7);
        CHECK(m.off_points.size() + 2 == q * q - q + 1);
        // L and C have no common rational point and q+1 points each (checked
        // in the build); the representatives lie on their curves
        CHECK(evaluate(m.L, m.l_rep).is_zero());
        CHECK(evaluate(m.C, m.c_rep).is_zero());
        // the line really passes through the orbit points
        HomForm L_ext = embed_form(m.orbit2.tower, m.L);
        for (const auto& p : m.orbit2.points) CHECK(evaluate(L_ext, p).is_zero());
        // the sextics vanish triply / doubly along the orbits
        for (const auto& f : m.sextics.forms) {
            for (const auto& p : m.orbit2.points)
                CHECK(vanishes_to_order(embed_form(m.orbit2.tower, f), p, 3));
            for (const auto& p : m.orbit3.points)
                CHECK(vanishes_to_order(embed_form(m.orbit3.tower, f), p, 2));
        }
    }
}

TEST_CASE("dp6 code at q=4 and q=5") {
    auto c4 = dp6_code(build_dp6(field(4), 1));
    CHECK(c4.n == 13);
    CHECK(reduce(c4).dimension == 7);
    CHECK(min_distance(c4) == 5);

    auto c5 = dp6_code(build_dp6(field(5), 1));
    CHECK(c5.n == 21);
    CHECK(reduce(c5).dimension == 7);
    CHECK(min_distance(c5) == 11);
}

TEST_CASE("dp6 isometry class is seed-independent at q=4") {
    auto d1 = weight_distribution(dp6_code(build_dp6(field(4), 1)));
    for (uint64_t seed : {2, 3}) {
        auto d = weight_distribution(dp6_code(build_dp6(field(4), seed)));
        CHECK(d == d1);
    }
}

TEST_CASE("dp5 isometry class is seed-independent at q=3 and q=4") {
    for (uint64_t q : {3, 4}) {
        auto d1 = weight_distribution(dp5_code(build_dp5(field(q), 1)));
        for (uint64_t seed : {2, 3})
            CHECK(weight_distribution(dp5_code(build_dp5(field(q), seed))) == d1);
    }
}

TEST_CASE("dp5 build and code") {
    CHECK_THROWS_AS(build_dp5(field(2), 1), std::invalid_argument);
    for (uint64_t q : {3, 4}) {
        auto m = build_dp5(field(q), 1);
        CHECK(m.basis.size() == 6);
        CHECK(m.conic_positions.size() == q + 1);
        auto code = dp5_code(m);
        CHECK(code.n == q * q + 1);
        CHECK(reduce(code).dimension == 6);
        // the kept conic column is (0,..,0,*) with a nonzero last entry
        size_t col = 0;
        while (m.column_positions[col] != m.r1_pos) ++col;
        for (int i = 0; i < 5; ++i) CHECK(code.at(i, col).is_zero());
        CHECK_FALSE(code.at(5, col).is_zero());
    }
    CHECK(min_distance(dp5_code(build_dp5(field(3), 1))) == 3);
    CHECK(min_distance(dp5_code(build_dp5(field(4), 1))) == 8);
}

TEST_CASE("dp5 embedding matches the code columns up to scaling") {
    for (uint64_t q : {3, 4}) {
        auto m = build_dp5(field(q), 1);
        auto pts = dp5_embed(m);
        CHECK(pts.size() == q * q + 1);
        // conic points collapse to (0 : .. : 0 : 1)
        std::vector<FieldElem> last(6, fe_zero(m.q_ctx));
        last[5] = fe_one(m.q_ctx);
        ProjPoint collapse(m.q_ctx, last);
        CHECK(std::count(pts.begin(), pts.end(), collapse) == 1);
        // normalized column multiset == embedded point multiset
        auto code = dp5_code(m);
        std::multiset<std::string> cols, imgs;
        for (size_t j = 0; j < code.n; ++j)
            cols.insert(ProjPoint(m.q_ctx, code.column(j)).to_text());
        for (const auto& p : pts) imgs.insert(p.to_text());
        CHECK(cols == imgs);
    }
}

TEST_CASE("flynn: the worked example, explicit inputs") {
    auto ctx = field(5);
    Poly f2 = Poly::from_ints(ctx, {2, 4, 1});
    Poly f3 = Poly::from_ints(ctx, {3, 3, 0, 1});
    auto m = flynn_build_explicit(ctx, {f2, f3}, "x");
    CHECK(m.f == Poly::from_ints(ctx, {1, 3, 0, 0, 4, 1}));
    CHECK(m.pencil == "3[-1]2[-1]");
    CHECK(m.type_label == "4_3");
    CHECK(m.points.size() == 31);
    CHECK(verify_flynn_identity(m));
    auto code = dp4_code(m);
    CHECK(code.n == 31);
    CHECK(min_distance(code) == 21);

    // delta_i must be a non-square: x mod f2 with f2 = x^2+1 is a square in F_25
    Poly sq = Poly::from_ints(ctx, {1, 0, 1});
    CHECK_THROWS_AS(flynn_build_explicit(ctx, {sq, f3}, "x"), std::invalid_argument);
    CHECK_THROWS_AS(flynn_build_explicit(ctx, {f2, f2}, "x"), std::invalid_argument);
}

TEST_CASE("flynn seeded builds round-trip their type") {
    for (auto& [q, label] : std::vector<std::pair<uint64_t, const char*>>{
             {3, "4_2"}, {3, "4_3"}, {5, "4_1"}, {5, "4_2"}, {5, "4_3"}, {7, "4_3"}}) {
        auto m = flynn_build(field(q), label, 1);
        CHECK(m.type_label == label);
        CHECK(m.pencil == type_by_label(label).pencil);
        CHECK(verify_flynn_identity(m));
        int64_t expected = predicted_points(q, type_by_label(label).action);
        CHECK(static_cast<int64_t>(m.points.size()) == expected);
    }
    CHECK_THROWS_AS(flynn_build(field(3), "4_1", 1), std::invalid_argument);
    CHECK_THROWS_AS(flynn_build(field(4), "4_3", 1), std::invalid_argument);
}

TEST_CASE("oracle redundancy for the small instances") {
    // zero-count-by-sections agrees with codeword enumeration for q <= 4
    for (uint64_t q : {3, 4}) {
        auto m = build_dp5(field(q), 1);
        CHECK(min_distance(dp5_code(m)) ==
              oracle_min_distance_by_sections(m.basis.forms, m.column_points()));
    }
    auto m6 = build_dp6(field(4), 1);
    CHECK(min_distance(dp6_code(m6)) ==
          oracle_min_distance_by_sections(m6.sextics.forms, m6.column_points()));
}

TEST_CASE("pencil type: swap symmetry and the F8 fixture") {
    auto ctx = field(5);
    auto m = flynn_build(ctx, "4_3", 2);
    CHECK(verify_pencil_type(m.Q3, m.Q4) == verify_pencil_type(m.Q4, m.Q3));

    auto qp = load_quadric_pair(std::string(DPCODES_DATA_DIR) + "/f8_quadrics.txt");
    CHECK(verify_pencil_type(qp.Qa, qp.Qb) == "3[-1]2[-1]");
    auto pts = enumerate_surface_points({qp.Qa, qp.Qb}, qp.ctx, 4);
    CHECK(pts.size() == 73);
}

TEST_CASE("pencil type is invariant under change of pencil basis") {
    // the type classifies the family lambda Qa + mu Qb, not the chosen pair
    auto check_mixes = [](const FieldCtxPtr& ctx, const HomForm& qa, const HomForm& qb) {
        std::string base = verify_pencil_type(qa, qb);
        SplitMix64 rng(0x90125);
        int tried = 0;
        while (tried < 5) {
            FieldElem a = fe_from_rank(ctx, rng.next() % ctx->size);
            FieldElem b = fe_from_rank(ctx, rng.next() % ctx->size);
            FieldElem c = fe_from_rank(ctx, rng.next() % ctx->size);
            FieldElem d = fe_from_rank(ctx, rng.next() % ctx->size);
            if ((a * d - b * c).is_zero()) continue;
            HomForm qa2 = qa.scaled(a) + qb.scaled(b);
            HomForm qb2 = qa.scaled(c) + qb.scaled(d);
            CHECK(verify_pencil_type(qa2, qb2) == base);
            ++tried;
        }
    };
    auto m = flynn_build(field(5), "4_3", 1);
    check_mixes(m.q_ctx, m.Q3, m.Q4);
    auto qp = load_quadric_pair(std::string(DPCODES_DATA_DIR) + "/f8_quadrics.txt");
    check_mixes(qp.ctx, qp.Qa, qp.Qb);
}

TEST_CASE("pencil type rejects a singular pair") {
    auto ctx = field(5);
    // x0^2 and x1^2: every member is a double hyperplane (radical dim > 1)
    HomForm qa(ctx, 5, 2), qb(ctx, 5, 2);
    qa.set({2, 0, 0, 0, 0}, fe_one(ctx));
    qb.set({0, 2, 0, 0, 0}, fe_one(ctx));
    CHECK_THROWS_AS(verify_pencil_type(qa, qb), std::invalid_argument);
}

TEST_CASE("model JSON round trips through the deterministic rebuild") {
    auto m5 = build_dp5(field(3), 1);
    auto tmp = std::string("/tmp/dpc_model_dp5.json");
    {
        std::ofstream out(tmp);
        out << model_to_json(m5);
    }
    auto loaded = load_model_json(tmp);
    CHECK(std::holds_alternative<PlaneModelDP5>(loaded));
    CHECK(model_to_json(std::get<PlaneModelDP5>(loaded)) == model_to_json(m5));

    auto m4 = flynn_build(field(5), "4_3", 1);
    auto tmp4 = std::string("/tmp/dpc_model_dp4.json");
    {
        std::ofstream out(tmp4);
        out << model_to_json(m4);
    }
    auto loaded4 = load_model_json(tmp4);
    CHECK(std::holds_alternative<QuadricModelDP4>(loaded4));

    // extension-field coefficients survive the round trip too
    auto m49 = flynn_build(field(9), "4_2", 1);
    auto tmp49 = std::string("/tmp/dpc_model_dp4_q9.json");
    {
        std::ofstream out(tmp49);
        out << model_to_json(m49);
    }
    auto loaded49 = load_model_json(tmp49);
    CHECK(std::get<QuadricModelDP4>(loaded49).Q3 == m49.Q3);

    auto m6 = build_dp6(field(4), 1);
    auto tmp6 = std::string("/tmp/dpc_model_dp6.json");
    {
        std::ofstream out(tmp6);
        out << model_to_json(m6);
    }
    auto loaded6 = load_model_json(tmp6);
    CHECK(std::holds_alternative<PlaneModelDP6>(loaded6));
}
