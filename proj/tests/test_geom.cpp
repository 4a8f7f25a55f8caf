#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dpcodes/geom.hpp"

using namespace dpc;

namespace {
ProjPoint pt(const FieldCtxPtr& ctx, std::vector<int64_t> cs) {
    std::vector<FieldElem> v;
    for (int64_t c : cs) v.push_back(fe_from_int(ctx, c));
    return ProjPoint(ctx, v);
}
}  // namespace

TEST_CASE("projective enumeration order and counts") {
    auto f2 = FieldCtx::make(2, 1);
    auto pts = enumerate_projective(f2, 1);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == pt(f2, {1, 0}));
    CHECK(pts[1] == pt(f2, {1, 1}));
    CHECK(pts[2] == pt(f2, {0, 1}));

    auto f5 = FieldCtx::make(5, 1);
    CHECK(enumerate_projective(f5, 2).size() == 31);

    auto f9 = FieldCtx::make(3, 2);
    CHECK(enumerate_projective(f9, 4).size() == 7381);  // (9^5 - 1) / 8

    auto f5_12 = FieldCtx::make(5, 12);  // |F| ~ 2.4e8 exceeds the guard already at r = 1
    CHECK_THROWS_AS(enumerate_projective(f5_12, 1), guard_error);
}

TEST_CASE("point normalization and equality") {
    auto f5 = FieldCtx::make(5, 1);
    CHECK(pt(f5, {2, 4, 0}) == pt(f5, {1, 2, 0}));
    CHECK(pt(f5, {0, 3, 3}) == pt(f5, {0, 1, 1}));
    CHECK_THROWS_AS(pt(f5, {0, 0, 0}), std::invalid_argument);
    CHECK(ProjPoint::parse(f5, pt(f5, {2, 4, 1}).to_text()) == pt(f5, {2, 4, 1}));
}

TEST_CASE("evaluate the split-model cubics at a sample point") {
    auto f5 = FieldCtx::make(5, 1);
    // y0 = xy(x-z) etc.; frozen values at (1:2:3)
    HomForm y0(f5, 3, 3);
    y0.set({2, 1, 0}, fe_from_int(f5, 1));
    y0.set({1, 1, 1}, fe_from_int(f5, -1));
    CHECK(evaluate(y0, pt(f5, {1, 1, 1})).is_zero());  // base point
    CHECK(evaluate(y0, pt(f5, {1, 2, 3})) == fe_from_int(f5, 1));
}

TEST_CASE("line, collinearity, conic") {
    auto f5 = FieldCtx::make(5, 1);
    HomForm l = line_through(pt(f5, {1, 0, 0}), pt(f5, {0, 1, 0}));
    HomForm z(f5, 3, 1);
    z.set({0, 0, 1}, fe_one(f5));
    CHECK(l == z);
    CHECK(collinear(pt(f5, {1, 0, 0}), pt(f5, {0, 1, 0}), pt(f5, {1, 1, 0})));
    CHECK_FALSE(collinear(pt(f5, {1, 0, 0}), pt(f5, {0, 1, 0}), pt(f5, {0, 0, 1})));
    CHECK_THROWS_AS(line_through(pt(f5, {1, 2, 3}), pt(f5, {2, 4, 6})), std::invalid_argument);

    // five points (1 : t : t^2) lie on xz - y^2
    std::vector<ProjPoint> on_conic;
    for (int t = 0; t < 5; ++t) on_conic.push_back(pt(f5, {1, t, t * t}));
    CHECK(conic_through(on_conic) == standard_conic(f5));
    on_conic[4] = pt(f5, {1, 1, 0});
    on_conic[3] = pt(f5, {1, 2, 0});  // three collinear points now
    CHECK_THROWS_AS(conic_through(on_conic), std::invalid_argument);
}

TEST_CASE("pick_orbits") {
    for (uint64_t q : {4, 3, 5}) {
        auto [p, m] = split_prime_power(q);
        auto ctx = FieldCtx::make(p, m);
        auto orbits = pick_orbits(ctx, {2, 3}, 1);
        REQUIRE(orbits.size() == 2);
        CHECK(orbits[0].points.size() == 2);
        CHECK(orbits[1].points.size() == 3);
        for (const auto& orb : orbits) {
            HomForm conic = standard_conic(orb.ext);
            for (const auto& pnt : orb.points) CHECK(evaluate(conic, pnt).is_zero());
            // sigma-consecutive conjugates
            for (size_t i = 0; i + 1 < orb.points.size(); ++i) {
                std::vector<FieldElem> frob;
                for (const auto& c : orb.points[i].coords()) frob.push_back(frobenius(c, q, 1));
                CHECK(ProjPoint(orb.ext, frob) == orb.points[i + 1]);
            }
        }
        auto orbit5 = pick_orbits(ctx, {5}, 1);
        CHECK(orbit5[0].points.size() == 5);
        CHECK(orbits_in_general_position(orbit5));
    }
}

TEST_CASE("orbit relabelings keep the representative convention") {
    auto ctx = FieldCtx::make(3, 1);
    auto orb = pick_orbits(ctx, {5}, 1)[0];
    auto cyc = orb.cycled(2);
    CHECK(cyc.points[0] == orb.points[2]);
    CHECK(cyc.points[4] == orb.points[1]);
    CHECK(cyc.t == cyc.points[0].coords()[1]);  // still (1 : t : t^2)
    auto rev = orb.reversed();
    CHECK(rev.points[0] == orb.points[0]);
    CHECK(rev.points[1] == orb.points[4]);
    CHECK(rev.points[4] == orb.points[1]);
    // reversed order is sigma^-1-consecutive
    for (size_t i = 0; i + 1 < 5; ++i) {
        std::vector<FieldElem> frob;
        for (const auto& c : rev.points[i + 1].coords()) frob.push_back(frobenius(c, 3, 1));
        CHECK(ProjPoint(rev.ext, frob) == rev.points[i]);
    }
}

TEST_CASE("linear systems: the three dimension counts") {
    for (uint64_t q : {3, 4, 5}) {
        auto [p, m] = split_prime_power(q);
        auto ctx = FieldCtx::make(p, m);
        auto orbit5 = pick_orbits(ctx, {5}, 1)[0];
        CHECK(linear_system(ctx, 3, 5, {{orbit5, 2}}).size() == 6);
        CHECK(linear_system(ctx, 3, 3, {{orbit5, 1}}).size() == 5);
        auto orbits23 = pick_orbits(ctx, {2, 3}, 1);
        CHECK(linear_system(ctx, 3, 6, {{orbits23[0], 3}, {orbits23[1], 2}}).size() == 7);
    }
}

TEST_CASE("linear system forms vanish at every conjugate, to the right order") {
    auto ctx = FieldCtx::make(2, 2);  // q = 4: exercises small characteristic
    auto orbits = pick_orbits(ctx, {2, 3}, 7);
    auto sys = linear_system(ctx, 3, 6, {{orbits[0], 3}, {orbits[1], 2}});
    REQUIRE(sys.size() == 7);
    for (const auto& f : sys.forms) {
        for (const auto& pnt : orbits[0].points)
            CHECK(vanishes_to_order(embed_form(orbits[0].tower, f), pnt, 3));
        for (const auto& pnt : orbits[1].points)
            CHECK(vanishes_to_order(embed_form(orbits[1].tower, f), pnt, 2));
    }
    // Galois stability: coefficientwise Frobenius fixes forms over GF(q)
    for (const auto& f : sys.forms) CHECK(frobenius_form(f, 4) == f);
}

TEST_CASE("restructured quintic basis") {
    auto ctx = FieldCtx::make(3, 1);
    auto orbit = pick_orbits(ctx, {5}, 1)[0];
    auto quintics = linear_system(ctx, 3, 5, {{orbit, 2}});
    auto cubics = linear_system(ctx, 3, 3, {{orbit, 1}});
    HomForm conic = standard_conic(ctx);
    auto basis = restructure_quintic_basis(quintics, conic, cubics);
    REQUIRE(basis.size() == 6);
    // spans the same space as the raw system
    std::vector<std::vector<FieldElem>> rows;
    for (const auto& f : quintics.forms) rows.push_back(f.dense());
    for (const auto& f : basis.forms) rows.push_back(f.dense());
    CHECK(Mat::from_rows(ctx, rows).rank() == 6);
    // the completion is not divisible by the conic, the first five are
    CHECK_FALSE(reduce_by(basis.forms[5], conic).is_zero());
    for (int i = 0; i < 5; ++i) CHECK(reduce_by(basis.forms[i], conic).is_zero());
    // first five vanish at every rational conic point
    for (const auto& p : enumerate_projective(ctx, 2)) {
        if (!evaluate(conic, p).is_zero()) continue;
        for (int i = 0; i < 5; ++i) CHECK(evaluate(basis.forms[i], p).is_zero());
    }
}

TEST_CASE("form arithmetic, reduction and text round trip") {
    auto f5 = FieldCtx::make(5, 1);
    HomForm conic = standard_conic(f5);
    HomForm l(f5, 3, 1);
    l.set({1, 0, 0}, fe_from_int(f5, 2));
    l.set({0, 0, 1}, fe_from_int(f5, 3));
    HomForm prod = conic * l;
    CHECK(prod.degree == 3);
    CHECK(reduce_by(prod, conic).is_zero());
    CHECK(reduce_by(prod + l * l * l, conic) == reduce_by(l * l * l, conic));
    CHECK(HomForm::parse(f5, prod.to_text()) == prod);
    CHECK(prod.normalized().coeffs.begin()->second.is_one());
}
