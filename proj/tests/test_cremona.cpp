#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>

#include "dpcodes/cremona.hpp"
#include "dpcodes/io.hpp"

using namespace dpc;

namespace {
FieldCtxPtr field(uint64_t q) {
    auto [p, m] = split_prime_power(q);
    return FieldCtx::make(p, m);
}
}  // namespace

TEST_CASE("split model cubics: frozen values at (1:2:3) over GF(5)") {
    auto f5 = FieldCtx::make(5, 1);
    auto cubics = split_model_cubics(f5);
    ProjPoint p(f5, {fe_from_int(f5, 1), fe_from_int(f5, 2), fe_from_int(f5, 3)});
    const std::vector<int64_t> expected{1, 2, 3, 1, 3, 2};
    for (int i = 0; i < 6; ++i) CHECK(evaluate(cubics[i], p) == fe_from_int(f5, expected[i]));
    // base points of the system
    for (const auto& f : cubics) {
        CHECK(evaluate(f, ProjPoint(f5, {fe_one(f5), fe_zero(f5), fe_zero(f5)})).is_zero());
        CHECK(evaluate(f, ProjPoint(f5, {fe_one(f5), fe_one(f5), fe_one(f5)})).is_zero());
    }
}

TEST_CASE("split model: the rotation fixes the anticanonical image") {
    // S0 o delta == (xyz) * (D o S0) as maps, checked at sample points
    auto ctx = FieldCtx::make(7, 2);  // a comfortably large sample field
    auto cubics = split_model_cubics(ctx);
    IntMat D = quintic_rotation_matrix();
    SplitMix64 rng(99);
    int checked = 0;
    while (checked < 20) {
        std::vector<FieldElem> c{fe_from_rank(ctx, rng.next() % ctx->size),
                                 fe_from_rank(ctx, rng.next() % ctx->size),
                                 fe_from_rank(ctx, rng.next() % ctx->size)};
        if (c[0].is_zero() || c[1].is_zero() || c[2].is_zero()) continue;
        ProjPoint p(ctx, c);
        ProjPoint dp = split_cremona_map(p);
        bool degenerate = false;
        for (const auto& f : cubics)
            if (evaluate(f, p).is_zero()) degenerate = true;
        if (degenerate) continue;
        std::vector<FieldElem> lhs, rhs(6, fe_zero(ctx));
        for (const auto& f : cubics) lhs.push_back(evaluate(f, dp));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                rhs[i] = rhs[i] + fe_from_int(ctx, D.at(i, j)) * evaluate(cubics[j], p);
        CHECK(ProjPoint(ctx, lhs) == ProjPoint(ctx, rhs));
        ++checked;
    }
    // D^5 is proportional to the identity (it is an order-5 action)
    IntMat D5 = D * D * D * D * D;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(D5.at(i, j) == (i == j ? D5.at(0, 0) : 0));
}

TEST_CASE("phi sends the contracted lines to the expected points") {
    for (uint64_t q : {3, 4}) {
        auto m = build_dp5(field(q), 1);
        auto d = synthesize_order5(m);
        const auto& ext = d.ext;
        // points on the line (p1 p5), excluding p1 and p5
        const auto& p1 = d.pts[0];
        const auto& p5 = d.pts[4];
        ProjPoint q4(ext, {fe_one(ext), fe_one(ext), fe_one(ext)});
        int hits = 0;
        for (uint64_t r = 0; r < ext->size && hits < 3; ++r) {
            // p = p1 + t p5
            FieldElem t = fe_from_rank(ext, r);
            if (t.is_zero()) continue;
            std::vector<FieldElem> cs;
            for (int i = 0; i < 3; ++i) cs.push_back(p1.coords()[i] + t * p5.coords()[i]);
            bool zero = std::all_of(cs.begin(), cs.end(),
                                    [](const FieldElem& x) { return x.is_zero(); });
            if (zero) continue;
            ProjPoint p(ext, cs);
            CHECK(apply_phi(d, p) == q4);
            ++hits;
        }
        CHECK(hits == 3);
        // Phi contracts (p1 p2): images of distinct points coincide
        std::vector<ProjPoint> imgs;
        for (uint64_t r = 1; r < ext->size && imgs.size() < 2; ++r) {
            FieldElem t = fe_from_rank(ext, r);
            std::vector<FieldElem> cs;
            for (int i = 0; i < 3; ++i) cs.push_back(p1.coords()[i] + t * d.pts[1].coords()[i]);
            ProjPoint p(ext, cs);
            if (p == p1 || p == d.pts[1]) continue;
            imgs.push_back(apply_phi(d, p));
        }
        REQUIRE(imgs.size() == 2);
        CHECK(imgs[0] == imgs[1]);
    }
}

TEST_CASE("alpha identities") {
    auto m = build_dp5(field(3), 1);
    auto d = synthesize_order5(m);
    auto l = [&](int i, int j) { return d.lines.at({i, j}); };
    CHECK(l(1, 2).scaled(d.u) * l(3, 5) - l(1, 3).scaled(d.w) * l(2, 5) ==
          (l(1, 5) * l(2, 3)).scaled(d.alpha0));
    CHECK(l(1, 4).scaled(d.u) * l(3, 5) - l(1, 3).scaled(d.v) * l(4, 5) ==
          (l(1, 5) * l(3, 4)).scaled(d.alpha1));
    CHECK(l(1, 2).scaled(d.v) * l(4, 5) - l(1, 4).scaled(d.w) * l(2, 5) ==
          (l(1, 5) * l(2, 4)).scaled(d.alpha2));
    CHECK_FALSE(d.alpha0.is_zero());
    CHECK_FALSE(d.alpha1.is_zero());
    CHECK_FALSE(d.alpha2.is_zero());
    // the defining triple equality for u, v, w
    auto lv = [&](int i, int j, const ProjPoint& at) { return evaluate(d.lines.at({i, j}), at); };
    FieldElem ea = d.u * lv(1, 2, d.pts[4]) * lv(1, 4, d.pts[4]) * lv(3, 5, d.pts[0]);
    FieldElem eb = d.v * lv(1, 2, d.pts[4]) * lv(1, 3, d.pts[4]) * lv(4, 5, d.pts[0]);
    FieldElem ec = d.w * lv(1, 3, d.pts[4]) * lv(1, 4, d.pts[4]) * lv(2, 5, d.pts[0]);
    CHECK(ea == eb);
    CHECK(eb == ec);
}

TEST_CASE("the image quintics recover S0 o Phi at sampled points") {
    auto m = build_dp5(field(3), 1);
    auto d = synthesize_order5(m);
    auto cubics = split_model_cubics(d.ext);
    SplitMix64 rng(5);
    int checked = 0;
    while (checked < 50) {
        std::vector<FieldElem> cs{fe_from_rank(d.ext, rng.next() % d.ext->size),
                                  fe_from_rank(d.ext, rng.next() % d.ext->size),
                                  fe_one(d.ext)};
        ProjPoint p(d.ext, cs);
        bool bad = false;
        for (int i = 1; i <= 5 && !bad; ++i)
            for (int j = i + 1; j <= 5 && !bad; ++j)
                if (evaluate(d.lines.at({i, j}), p).is_zero()) bad = true;
        if (bad) continue;
        ProjPoint phi_p = apply_phi(d, p);
        std::vector<FieldElem> lhs, rhs;
        for (const auto& f : cubics) lhs.push_back(evaluate(f, phi_p));
        for (const auto& g : d.image_quintics) rhs.push_back(evaluate(g, p));
        CHECK(ProjPoint(d.ext, lhs) == ProjPoint(d.ext, rhs));
        ++checked;
    }
    CHECK(d.expand.det() != fe_zero(d.ext));
}

TEST_CASE("automorphism JSON replay") {
    auto m = build_dp5(field(3), 1);
    auto code = dp5_code(m);
    auto d = synthesize_order5(m);
    auto mono = induced_monomial(d.A, code);
    const std::string tmp = "/tmp/dpc_auto5.json";
    {
        std::ofstream out(tmp);
        out << automorphism_to_json(d.A, mono);
    }
    auto loaded = load_automorphism_json(tmp);
    CHECK(loaded.A == d.A);
    CHECK(loaded.map.perm == mono.perm);
    CHECK(is_automorphism(code, loaded.map));
    CHECK(map_order(loaded.map) == 5);
}

TEST_CASE("synthesized automorphism: rationality, order, code action") {
    for (uint64_t q : {3, 4, 5}) {
        auto m = build_dp5(field(q), 1);
        auto code = dp5_code(m);
        auto d = synthesize_order5(m);
        Mat A5 = d.A * d.A * d.A * d.A * d.A;
        CHECK(A5 == Mat::identity(m.q_ctx, 6));
        auto mono = induced_monomial(d.A, code);
        CHECK(map_order(mono) == 5);
        CHECK(is_automorphism(code, mono));
        // fixed points of the induced permutation: q^2 + 1 mod 5 of them
        int fixed = 0;
        for (size_t j = 0; j < mono.perm.size(); ++j) fixed += mono.perm[j] == j;
        CHECK(fixed % 5 == static_cast<int>((q * q + 1) % 5));
        // scale-covariance: the permutation is independent of rescaling A
        Mat A2(m.q_ctx, 6, 6);
        FieldElem two = fe_from_int(m.q_ctx, q == 4 ? 0 : 2);
        if (two.is_zero()) {
            // char 2: use the generator instead
            two = fe_generator(m.q_ctx);
        }
        for (size_t i = 0; i < 6; ++i)
            for (size_t j = 0; j < 6; ++j) A2.at(i, j) = two * d.A.at(i, j);
        auto mono2 = induced_monomial(A2, code);
        CHECK(mono2.perm == mono.perm);
    }
}
