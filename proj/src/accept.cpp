#include "dpcodes/accept.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

#include "dpcodes/cremona.hpp"
#include "dpcodes/io.hpp"
#include "dpcodes/picard.hpp"
#include "dpcodes/surfaces.hpp"

namespace dpc::accept {

namespace {

constexpr uint64_t kDefaultSeed = 1;

FieldCtxPtr field(uint64_t q) {
    auto [p, m] = split_prime_power(q);
    return FieldCtx::make(p, m);
}

struct Check {
    std::ostringstream detail;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "] ";
        }
    }
};

// ---- criterion 1: the worked F_5 type 4_3 example -------------------------

Check criterion1(const std::string&) {
    Check c;
    auto ctx = field(5);
    Poly f2 = Poly::from_ints(ctx, {2, 4, 1});
    Poly f3 = Poly::from_ints(ctx, {3, 3, 0, 1});
    auto m = flynn_build_explicit(ctx, {f2, f3}, "x");
    c.expect(m.f == Poly::from_ints(ctx, {1, 3, 0, 0, 4, 1}), "f = x^5+4x^4+3x+1");
    // the two displayed quadrics, coefficient for coefficient
    HomForm q3(ctx, 5, 2), q4(ctx, 5, 2);
    auto set = [&](HomForm& f, std::initializer_list<std::pair<std::vector<uint8_t>, int>> cs) {
        for (auto& [e, v] : cs) f.set(e, fe_from_int(ctx, v));
    };
    set(q3, {{{0, 2, 0, 0, 0}, 1},
             {{1, 0, 1, 0, 0}, 2},
             {{0, 0, 0, 2, 0}, 2},
             {{0, 0, 1, 0, 1}, 4},
             {{0, 0, 0, 1, 1}, 2},
             {{0, 0, 0, 0, 2}, 1}});
    set(q4, {{{0, 1, 1, 0, 0}, 2},
             {{0, 0, 2, 0, 0}, 1},
             {{1, 0, 0, 1, 0}, 2},
             {{0, 1, 0, 1, 0}, 2},
             {{0, 0, 1, 1, 0}, 2},
             {{0, 0, 0, 2, 0}, 1},
             {{1, 0, 0, 0, 1}, 2},
             {{0, 1, 0, 0, 1}, 2},
             {{0, 0, 1, 0, 1}, 2},
             {{0, 0, 0, 1, 1}, 1},
             {{0, 0, 0, 0, 2}, 4}});
    c.expect(m.Q3 == q3, "Q3 matches the displayed quadric");
    c.expect(m.Q4 == q4, "Q4 matches the displayed quadric");
    c.expect(m.points.size() == 31, "31 rational points");
    auto code = dp4_code(m);
    c.expect(code.n == 31 && reduce(code).dimension == 5, "code is [31,5]");
    c.expect(min_distance(code) == 21, "minimum distance 21");
    c.detail << "F_5 type 4_3 example: Q3/Q4 exact, 31 points, [31,5,21]";
    return c;
}

// ---- criterion 2: Table 5 -------------------------------------------------

Check criterion2(const std::string&) {
    Check c;
    struct Row {
        uint64_t q;
        const char* label;
        int64_t n, k, d;
    };
    const std::vector<Row> rows = {
        {3, "4_2", 10, 5, 3},  {3, "4_3", 13, 5, 6},  {5, "4_1", 16, 5, 6},
        {5, "4_2", 26, 5, 16}, {5, "4_3", 31, 5, 21}, {7, "4_1", 36, 5, 23},
        {7, "4_2", 50, 5, 37}, {7, "4_3", 57, 5, 44}, {9, "4_1", 64, 5, 48},
        {9, "4_2", 82, 5, 66}, {9, "4_3", 91, 5, 75},
    };
    // the minimum distance varies with the isomorphism class inside a type,
    // so scan seeds deterministically for an instance with the tabled d
    constexpr uint64_t kSeedScan = 40;
    for (const auto& r : rows) {
        bool found = false;
        std::set<int64_t> observed;
        for (uint64_t seed = 1; seed <= kSeedScan && !found; ++seed) {
            auto m = flynn_build(field(r.q), r.label, seed);
            auto code = dp4_code(m);
            int64_t d = min_distance(code);
            observed.insert(d);
            if (static_cast<int64_t>(code.n) == r.n &&
                static_cast<int64_t>(reduce(code).dimension) == r.k && d == r.d) {
                found = true;
                c.detail << "q=" << r.q << " " << r.label << " [" << r.n << "," << r.k << ","
                         << r.d << "] at seed " << seed << "; ";
            }
        }
        if (!found) {
            std::ostringstream what;
            what << "q=" << r.q << " " << r.label << " expected d=" << r.d << ", observed {";
            for (int64_t d : observed) what << " " << d;
            what << " } across " << kSeedScan << " seeds";
            c.expect(false, what.str());
        }
    }
    bool rejected = false;
    try {
        flynn_build(field(3), "4_1", kDefaultSeed);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    c.expect(rejected, "(3, 4_1) rejected as nonexistent");
    c.detail << "(3,4_1) rejected";
    return c;
}

// ---- criterion 3: the F_8 fixture ------------------------------------------

Check criterion3(const std::string& data_dir) {
    Check c;
    auto qp = load_quadric_pair(data_dir + "/f8_quadrics.txt");
    std::string type = verify_pencil_type(qp.Qa, qp.Qb);
    c.expect(type == "3[-1]2[-1]", "pencil type 3[-1]2[-1], got " + type);
    auto pts = enumerate_surface_points({qp.Qa, qp.Qb}, qp.ctx, 4);
    c.expect(pts.size() == 73, "73 rational points");
    std::vector<std::vector<FieldElem>> rows(5);
    for (int i = 0; i < 5; ++i)
        for (const auto& p : pts) rows[i].push_back(p.coords()[i]);
    auto code = LinearCode::from_rows(qp.ctx, rows, "f8 fixture");
    c.expect(reduce(code).dimension == 5, "dimension 5");
    c.expect(min_distance(code) == 59, "minimum distance 59");
    c.detail << "F_8 fixture: type " << type << ", [73,5,59]";
    return c;
}

// ---- criterion 4: degree-5 table -------------------------------------------

Check criterion4(const std::string& data_dir) {
    Check c;
    auto table = load_best_known(data_dir + "/best_known.json");
    struct Row {
        uint64_t q;
        int64_t n, d;
    };
    const std::vector<Row> rows = {{3, 10, 3},  {4, 17, 8},  {5, 26, 16},
                                   {7, 50, 37}, {8, 65, 51}, {9, 82, 66}};
    for (const auto& r : rows) {
        auto m = build_dp5(field(r.q), kDefaultSeed);
        auto code = dp5_code(m);
        int64_t d = min_distance(code);
        std::ostringstream what;
        what << "q=" << r.q << " expected [" << r.n << ",6," << r.d << "] got [" << code.n << ",6,"
             << d << "]";
        c.expect(static_cast<int64_t>(code.n) == r.n && reduce(code).dimension == 6 && d == r.d,
                 what.str());
        if (r.q == 8 || r.q == 9) {
            auto verdict = compare_best_known(r.n, 6, r.q, d, table);
            c.expect(verdict.verdict == "beats",
                     "q=" + std::to_string(r.q) + " should beat the prior record");
        }
    }
    c.detail << "degree-5 table reproduced for q in {3,4,5,7,8,9}; q=8,9 beat the snapshot";
    return c;
}

// ---- criterion 5: degree-6 parameters ---------------------------------------

Check criterion5(const std::string&) {
    Check c;
    {
        auto code = dp6_code(build_dp6(field(4), kDefaultSeed));
        int64_t d = min_distance(code);
        c.expect(code.n == 13 && reduce(code).dimension == 7 && d == 5,
                 "q=4 expected [13,7,5], got d=" + std::to_string(d));
        c.detail << "q=4 [13,7,5]";
    }
    for (uint64_t q : {5, 7, 8, 9}) {
        auto exp = expected_parameters("6_6", q);
        for (uint64_t seed : {1, 2, 3}) {
            auto code = dp6_code(build_dp6(field(q), seed));
            int64_t d = min_distance(code);
            std::ostringstream what;
            what << "q=" << q << " seed " << seed << ": expected [" << exp.n << ",7," << exp.d_lower
                 << "] got [" << code.n << ",7," << d << "]";
            c.expect(static_cast<int64_t>(code.n) == exp.n && reduce(code).dimension == 7 &&
                         d == exp.d_lower,
                     what.str());
            c.detail << "; q=" << q << " seed " << seed << " d=" << d;
        }
    }
    return c;
}

// ---- criterion 6: point-count law -------------------------------------------

Check criterion6(const std::string&) {
    Check c;
    for (uint64_t q : {4, 5, 7, 8, 9})
        for (uint64_t seed : {1, 2, 3}) {
            auto m = build_dp6(field(q), seed);
            int64_t count = static_cast<int64_t>(m.off_points.size()) + 2;
            c.expect(count == static_cast<int64_t>(q * q) - static_cast<int64_t>(q) + 1,
                     "dp6 count q=" + std::to_string(q));
        }
    for (uint64_t q : {3, 4, 5, 7, 8, 9})
        for (uint64_t seed : {1, 2, 3}) {
            auto m = build_dp5(field(q), seed);
            c.expect(dp5_embed(m).size() == q * q + 1, "dp5 count q=" + std::to_string(q));
        }
    const std::vector<std::pair<uint64_t, const char*>> dp4s = {
        {3, "4_2"}, {3, "4_3"}, {5, "4_1"}, {5, "4_2"}, {5, "4_3"},
        {7, "4_1"}, {7, "4_2"}, {7, "4_3"}, {9, "4_1"}, {9, "4_2"}, {9, "4_3"}};
    for (auto& [q, label] : dp4s)
        for (uint64_t seed : {1, 2, 3}) {
            auto m = flynn_build(field(q), label, seed);
            int64_t expected = predicted_points(q, type_by_label(label).action);
            c.expect(static_cast<int64_t>(m.points.size()) == expected,
                     std::string("dp4 count ") + label + " q=" + std::to_string(q));
        }
    c.detail << "point counts match q^2 + q Tr + 1 for all families, 3 seeds each";
    return c;
}

// ---- criterion 7: section bound ----------------------------------------------

Check criterion7(const std::string& data_dir) {
    Check c;
    auto check_code = [&](const LinearCode& code, uint64_t q, const std::string& name) {
        int64_t floor = static_cast<int64_t>(code.n) - bounds(q).hws;
        auto dist = weight_distribution(code);
        for (auto& [w, cnt] : dist)
            if (w != 0 && w < floor) {
                c.expect(false, name + ": weight " + std::to_string(w) + " below bound " +
                                    std::to_string(floor));
                return;
            }
        c.expect(true, "");
    };
    for (uint64_t q : {4, 5, 7, 8, 9}) check_code(dp6_code(build_dp6(field(q), kDefaultSeed)), q, "dp6 q=" + std::to_string(q));
    for (uint64_t q : {3, 4, 5, 7, 8, 9}) check_code(dp5_code(build_dp5(field(q), kDefaultSeed)), q, "dp5 q=" + std::to_string(q));
    const std::vector<std::pair<uint64_t, const char*>> dp4s = {
        {3, "4_2"}, {3, "4_3"}, {5, "4_1"}, {5, "4_2"}, {5, "4_3"},
        {7, "4_1"}, {7, "4_2"}, {7, "4_3"}, {9, "4_1"}, {9, "4_2"}, {9, "4_3"}};
    for (auto& [q, label] : dp4s)
        check_code(dp4_code(flynn_build(field(q), label, kDefaultSeed)), q,
                   std::string("dp4 ") + label + " q=" + std::to_string(q));
    {
        auto qp = load_quadric_pair(data_dir + "/f8_quadrics.txt");
        auto pts = enumerate_surface_points({qp.Qa, qp.Qb}, qp.ctx, 4);
        std::vector<std::vector<FieldElem>> rows(5);
        for (int i = 0; i < 5; ++i)
            for (const auto& p : pts) rows[i].push_back(p.coords()[i]);
        check_code(LinearCode::from_rows(qp.ctx, rows, "f8"), 8, "f8 fixture");
    }
    c.detail << "every nonzero weight >= n - (q + 1 + floor(2 sqrt q)) across all codes";
    return c;
}

// ---- criterion 8: order-5 automorphisms ---------------------------------------

Check criterion8(const std::string&) {
    Check c;
    for (uint64_t q : {3, 4, 5}) {
        auto m = build_dp5(field(q), kDefaultSeed);
        auto code = dp5_code(m);
        auto data = synthesize_order5(m);
        Mat A5 = data.A * data.A * data.A * data.A * data.A;
        c.expect(A5 == Mat::identity(m.q_ctx, 6), "A^5 = Id for q=" + std::to_string(q));
        auto mono = induced_monomial(data.A, code);
        c.expect(map_order(mono) == 5, "induced map has order 5, q=" + std::to_string(q));
        c.expect(is_automorphism(code, mono), "induced map preserves the code");
        // the group generated together with the scalars: 5(q-1) distinct maps
        std::set<std::string> seen;
        MonomialMap power = MonomialMap::identity_map(m.q_ctx, code.n);
        int verified = 0;
        for (int a = 0; a < 5; ++a) {
            for (uint64_t r = 1; r < q; ++r) {
                auto scaled = compose(power, global_scalar_map(m.q_ctx, code.n,
                                                               fe_from_rank(m.q_ctx, r)));
                std::ostringstream key;
                for (size_t i = 0; i < scaled.perm.size(); ++i)
                    key << scaled.perm[i] << ':' << scaled.scales[i].rank() << ',';
                if (seen.insert(key.str()).second && is_automorphism(code, scaled)) ++verified;
            }
            power = compose(power, mono);
        }
        c.expect(verified == static_cast<int>(5 * (q - 1)),
                 "expected " + std::to_string(5 * (q - 1)) + " distinct verified automorphisms, got " +
                     std::to_string(verified));
        c.detail << "q=" << q << ": order 5, " << verified << " automorphisms; ";
    }
    return c;
}

// ---- criterion 9: oracle equivalence -------------------------------------------

Check criterion9(const std::string&) {
    Check c;
    {
        auto m = build_dp5(field(3), kDefaultSeed);
        int64_t d1 = min_distance(dp5_code(m));
        int64_t d2 = oracle_min_distance_by_sections(m.basis.forms, m.column_points());
        c.expect(d1 == d2, "dp5 q=3 oracles disagree: " + std::to_string(d1) + " vs " +
                               std::to_string(d2));
        c.detail << "dp5 q=3: both oracles give " << d1;
    }
    {
        auto m = build_dp6(field(4), kDefaultSeed);
        int64_t d1 = min_distance(dp6_code(m));
        int64_t d2 = oracle_min_distance_by_sections(m.sextics.forms, m.column_points());
        c.expect(d1 == d2, "dp6 q=4 oracles disagree: " + std::to_string(d1) + " vs " +
                               std::to_string(d2));
        c.detail << "; dp6 q=4: both oracles give " << d1;
    }
    return c;
}

// ---- criterion 10: table metadata ----------------------------------------------

Check criterion10(const std::string&) {
    Check c;
    for (int degree : {4, 5, 6})
        for (const auto& t : type_table(degree)) {
            c.expect(preserves_intersection(t.action.matrix), t.label + " preserves the form");
            c.expect(fixes_canonical(t.action.matrix), t.label + " fixes K");
            c.expect(t.action.matrix.trace() == t.trace, t.label + " trace");
            std::vector<int64_t> cp = charpoly(t.action.matrix);
            std::vector<int64_t> expect{1};
            for (int n : t.cyclotomic_factors) expect = poly_mul_i64(expect, cyclotomic(n));
            c.expect(cp == expect, t.label + " characteristic polynomial");
            c.expect(root_one_multiplicity(cp) == t.picard_rank, t.label + " Picard rank");
        }
    auto m6 = dp6_frobenius_printed();
    auto m5 = dp5_frobenius_printed();
    c.expect(m6.matrix.trace() == -1, "printed degree-6 matrix has trace -1");
    c.expect(m5.matrix.trace() == 0, "printed degree-5 matrix has trace 0");
    c.expect(preserves_intersection(m6.matrix) && fixes_canonical(m6.matrix),
             "printed degree-6 matrix preserves the lattice data");
    c.expect(preserves_intersection(m5.matrix) && fixes_canonical(m5.matrix),
             "printed degree-5 matrix preserves the lattice data");
    c.detail << "all 16 table actions + the two printed matrices check out";
    return c;
}

}  // namespace

std::vector<Result> run(const std::string& data_dir, std::ostream& log, int only) {
    using CriterionFn = std::function<Check(const std::string&)>;
    const std::vector<CriterionFn> criteria = {
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9, criterion10};
    std::vector<Result> results;
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
        if (only > 0 && i != only) continue;
        auto start = std::chrono::steady_clock::now();
        Result r;
        r.id = i;
        try {
            Check c = criteria[i - 1](data_dir);
            r.pass = c.ok;
            r.detail = c.detail.str();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(1);
        line << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << " (" << secs << "s): "
             << r.detail;
        log << line.str() << std::endl;
        results.push_back(std::move(r));
    }
    return results;
}

bool all_pass(const std::vector<Result>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

}  // namespace dpc::accept
