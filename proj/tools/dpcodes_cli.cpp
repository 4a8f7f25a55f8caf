// Command-line front end: build surfaces, emit codes, analyze parameters,
// reproduce the parameter tables, classify quadric pencils, synthesize the
// order-5 automorphism, and run the acceptance suite.
//
// Exit codes: 0 success/verified, 1 verification failure, 2 resource guard
// exceeded, 3 invalid input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpcodes/accept.hpp"
#include "dpcodes/cremona.hpp"
#include "dpcodes/io.hpp"

using namespace dpc;

namespace {

FieldCtxPtr field(uint64_t q) {
    auto [p, m] = split_prime_power(q);
    return FieldCtx::make(p, m);
}

std::string find_data_dir(const std::string& flag_value, const char* argv0) {
    namespace fs = std::filesystem;
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("DPCODES_DATA")) return env;
    for (const char* cand : {"data", "../data"})
        if (fs::exists(fs::path(cand) / "best_known.json")) return cand;
    fs::path exe(argv0);
    for (auto up : {"..", "../.."}) {
        fs::path p = exe.parent_path() / up / "data";
        if (fs::exists(p / "best_known.json")) return p.string();
    }
    return "data";
}

int worker_count(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("DPCODES_WORKERS")) return std::max(1, std::atoi(env));
    return 1;
}

struct BuildSpec {
    int degree = 5;
    uint64_t q = 5;
    std::string type = "4_3";
    uint64_t seed = 1;
    std::vector<std::string> f1;
    std::string f2, f3, f4, delta = "x";
    std::string model_file;
};

AnyModel build_model(const BuildSpec& s) {
    if (!s.model_file.empty()) return load_model_json(s.model_file);
    auto ctx = field(s.q);
    if (s.degree == 6) return build_dp6(ctx, s.seed);
    if (s.degree == 5) return build_dp5(ctx, s.seed);
    if (s.degree == 4) {
        bool explicit_factors = !s.f2.empty() || !s.f3.empty() || !s.f4.empty() || !s.f1.empty();
        if (!explicit_factors) return flynn_build(ctx, s.type, s.seed);
        std::vector<Poly> factors;
        for (const auto& t : s.f1) factors.push_back(Poly::parse(ctx, t));
        if (!s.f2.empty()) factors.push_back(Poly::parse(ctx, s.f2));
        if (!s.f3.empty()) factors.push_back(Poly::parse(ctx, s.f3));
        if (!s.f4.empty()) factors.push_back(Poly::parse(ctx, s.f4));
        return flynn_build_explicit(ctx, factors, s.delta);
    }
    throw std::invalid_argument("degree must be 4, 5 or 6");
}

LinearCode code_of(const AnyModel& m) {
    if (std::holds_alternative<PlaneModelDP6>(m)) return dp6_code(std::get<PlaneModelDP6>(m));
    if (std::holds_alternative<PlaneModelDP5>(m)) return dp5_code(std::get<PlaneModelDP5>(m));
    return dp4_code(std::get<QuadricModelDP4>(m));
}

struct Summary {
    uint64_t q;
    std::string label;
    int64_t points;
    int64_t trace;
};

Summary summarize(const AnyModel& m) {
    if (std::holds_alternative<PlaneModelDP6>(m)) {
        const auto& x = std::get<PlaneModelDP6>(m);
        return {x.q_ctx->size, "6_6", static_cast<int64_t>(x.off_points.size()) + 2, -1};
    }
    if (std::holds_alternative<PlaneModelDP5>(m)) {
        const auto& x = std::get<PlaneModelDP5>(m);
        return {x.q_ctx->size, "5_7", static_cast<int64_t>(x.q_ctx->size * x.q_ctx->size) + 1, 0};
    }
    const auto& x = std::get<QuadricModelDP4>(m);
    return {x.q_ctx->size, x.type_label, static_cast<int64_t>(x.points.size()),
            type_by_label(x.type_label).trace};
}

void print_summary(const AnyModel& m, const LinearCode& code) {
    auto s = summarize(m);
    std::cout << "surface: type " << s.label << " over GF(" << s.q << "), " << s.points
              << " rational points, Tr(frob) = " << s.trace << "\n";
    std::cout << "code: n = " << code.n << ", k = " << reduce(code).dimension << "\n";
}

nlohmann::json table_json(int degree) {
    nlohmann::json out;
    out["degree"] = degree;
    auto& rows = out["parameters"] = nlohmann::json::array();
    struct Row {
        uint64_t q;
        const char* label;
        int64_t paper_d;  // -1: nonexistent row
        bool exact;
    };
    std::vector<Row> spec_rows;
    if (degree == 6)
        spec_rows = {{4, "6_6", 4, false}, {5, "6_6", 11, false}, {7, "6_6", 30, false},
                     {8, "6_6", 43, false}, {9, "6_6", 57, false}};
    else if (degree == 5)
        spec_rows = {{3, "5_7", 3, true},  {4, "5_7", 8, true},  {5, "5_7", 16, true},
                     {7, "5_7", 37, true}, {8, "5_7", 51, true}, {9, "5_7", 66, true}};
    else if (degree == 4)
        spec_rows = {{3, "4_1", -1, true}, {3, "4_2", 3, true},  {3, "4_3", 6, true},
                     {5, "4_1", 6, true},  {5, "4_2", 16, true}, {5, "4_3", 21, true},
                     {7, "4_1", 23, true}, {7, "4_2", 37, true}, {7, "4_3", 44, true},
                     {9, "4_1", 48, true}, {9, "4_2", 66, true}, {9, "4_3", 75, true}};
    else
        throw std::invalid_argument("degree must be 4, 5 or 6");
    for (const auto& r : spec_rows) {
        nlohmann::json row;
        row["q"] = r.q;
        row["type"] = r.label;
        if (r.paper_d < 0) {
            row["exists"] = false;
            rows.push_back(row);
            continue;
        }
        auto p = expected_parameters(r.label, r.q);
        row["exists"] = true;
        row["n"] = p.n;
        row["k"] = p.k;
        row["d_lower_computed"] = p.d_lower;
        row[r.exact ? "d_table" : "d_table_lower"] = r.paper_d;
        if (degree == 6 && r.q == 4) row["d_exact"] = 5;  // Griesmer argument
        rows.push_back(row);
    }
    auto& meta = out["types"] = nlohmann::json::array();
    for (const auto& t : type_table(degree)) {
        nlohmann::json e;
        e["label"] = t.label;
        if (!t.weyl_class.empty()) e["weyl_class"] = t.weyl_class;
        if (!t.pencil.empty()) e["pencil"] = t.pencil;
        e["eigenvalues"] = t.eigenvalues;
        e["trace"] = t.trace;
        e["picard_rank"] = t.picard_rank;
        e["preserves_form"] = preserves_intersection(t.action.matrix);
        e["fixes_canonical"] = fixes_canonical(t.action.matrix);
        nlohmann::json rows_j = nlohmann::json::array();
        for (int i = 0; i < t.action.matrix.n; ++i) {
            nlohmann::json rr = nlohmann::json::array();
            for (int j = 0; j < t.action.matrix.n; ++j) rr.push_back(t.action.matrix.at(i, j));
            rows_j.push_back(rr);
        }
        e["matrix_E_basis"] = rows_j;
        meta.push_back(e);
    }
    return out;
}

void print_tables_text(int degree) {
    auto j = table_json(degree);
    std::cout << "anticanonical code parameters, degree " << degree << "\n";
    std::cout << "  q    type   n    k   d(computed bound)   d(paper)\n";
    for (const auto& row : j["parameters"]) {
        if (!row["exists"].get<bool>()) {
            std::cout << "  " << row["q"] << "    " << row["type"].get<std::string>()
                      << "   does not exist\n";
            continue;
        }
        std::cout << "  " << row["q"] << "    " << row["type"].get<std::string>() << "   "
                  << row["n"] << "   " << row["k"] << "   " << row["d_lower_computed"] << "   ";
        if (row.contains("d_table"))
            std::cout << row["d_table"];
        else
            std::cout << ">=" << row["d_table_lower"];
        if (row.contains("d_exact")) std::cout << " (exact " << row["d_exact"] << ")";
        std::cout << "\n";
    }
    std::cout << "Frobenius types, degree " << degree << "\n";
    std::cout << "  label   trace   rank   class                    verified\n";
    for (const auto& e : j["types"]) {
        std::string cls = e.contains("pencil") ? e["pencil"].get<std::string>()
                                               : e["weyl_class"].get<std::string>();
        bool ok = e["preserves_form"].get<bool>() && e["fixes_canonical"].get<bool>();
        std::cout << "  " << e["label"].get<std::string>() << "    " << e["trace"] << "      "
                  << e["picard_rank"] << "      " << cls;
        for (size_t i = cls.size(); i < 24; ++i) std::cout << ' ';
        std::cout << (ok ? " yes" : " NO") << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anticanonical codes from del Pezzo surfaces of Picard rank one"};
    app.require_subcommand(1);

    BuildSpec spec;
    std::string emit = "auto", out_file, data_dir_flag, pencil_file, model_flag;
    int workers_flag = 0;
    bool verify_all = false;
    int verify_criterion = 0;

    auto add_build_flags = [&](CLI::App* cmd) {
        cmd->add_option("--degree", spec.degree, "surface degree (4, 5 or 6)");
        cmd->add_option("--q", spec.q, "field size");
        cmd->add_option("--type", spec.type, "degree-4 type label (4_1, 4_2, 4_3)");
        cmd->add_option("--seed", spec.seed, "deterministic seed");
        cmd->add_option("--f1", spec.f1, "explicit linear factor (repeatable)");
        cmd->add_option("--f2", spec.f2, "explicit quadratic factor, e.g. 2,4,1");
        cmd->add_option("--f3", spec.f3, "explicit cubic factor, e.g. 3,3,0,1");
        cmd->add_option("--f4", spec.f4, "explicit quartic factor");
        cmd->add_option("--delta", spec.delta, "delta choice: 'x' or per-factor lists");
        cmd->add_option("--model", spec.model_file, "load a saved model instead of building");
    };

    auto* cmd_build = app.add_subcommand("build", "build a surface model and print a summary");
    add_build_flags(cmd_build);
    cmd_build->add_option("--out", out_file, "write the model as JSON");

    auto* cmd_code = app.add_subcommand("code", "emit the generator matrix");
    add_build_flags(cmd_code);
    cmd_code->add_option("--emit", emit, "matrix | json (default: matrix for prime fields)");

    auto* cmd_mindist = app.add_subcommand("mindist", "exact minimum distance");
    add_build_flags(cmd_mindist);
    cmd_mindist->add_option("--workers", workers_flag, "parallel workers (or DPCODES_WORKERS)");
    cmd_mindist->add_option("--data-dir", data_dir_flag, "fixtures directory");

    auto* cmd_wdist = app.add_subcommand("wdist", "full weight distribution");
    add_build_flags(cmd_wdist);
    cmd_wdist->add_option("--workers", workers_flag, "parallel workers");

    auto* cmd_tables = app.add_subcommand("tables", "parameter tables and type metadata");
    cmd_tables->add_option("--degree", spec.degree, "table degree (4, 5 or 6)")->required();
    cmd_tables->add_option("--emit", emit, "text | json");

    auto* cmd_verify = app.add_subcommand("verify", "run the acceptance suite");
    cmd_verify->add_flag("--all", verify_all, "run every criterion (default)");
    cmd_verify->add_option("--criterion", verify_criterion, "run a single criterion (1..10)");
    cmd_verify->add_option("--data-dir", data_dir_flag, "fixtures directory");

    auto* cmd_auto5 = app.add_subcommand("auto5", "synthesize the order-5 automorphism");
    cmd_auto5->add_option("--q", spec.q, "field size")->required();
    cmd_auto5->add_option("--seed", spec.seed, "deterministic seed");
    cmd_auto5->add_option("--out", out_file, "write A and the monomial map as JSON");
    cmd_auto5->add_option("--replay", model_flag, "re-verify a saved automorphism instead");

    auto* cmd_pencil = app.add_subcommand("pencil", "classify a quadric-pair file");
    cmd_pencil->add_option("file", pencil_file, "fixture with two quadrics")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_build->parsed()) {
            AnyModel m = build_model(spec);
            auto code = code_of(m);
            print_summary(m, code);
            if (!out_file.empty()) {
                std::ofstream out(out_file);
                std::visit([&](const auto& mm) { out << model_to_json(mm); }, m);
                std::cout << "model written to " << out_file << "\n";
            }
            return 0;
        }
        if (cmd_code->parsed()) {
            auto code = code_of(build_model(spec));
            bool prime = code.ctx->prime_field();
            if (emit == "matrix" && !prime)
                throw std::invalid_argument("digit-matrix output needs a prime field; use --emit json");
            if (emit == "json" || (emit == "auto" && !prime))
                std::cout << emit_matrix_json(code) << "\n";
            else
                std::cout << emit_matrix_text(code);
            return 0;
        }
        if (cmd_mindist->parsed()) {
            AnyModel m = build_model(spec);
            auto code = code_of(m);
            int64_t d = min_distance(code, worker_count(workers_flag));
            auto s = summarize(m);
            auto expect = expected_parameters(s.label, s.q);
            std::cout << "d=" << d << "\n";
            std::string dd = find_data_dir(data_dir_flag, argv[0]);
            try {
                auto table = load_best_known(dd + "/best_known.json");
                auto v = compare_best_known(code.n, reduce(code).dimension, s.q, d, table);
                if (v.paper_era_best)
                    std::cout << "best-known reference " << *v.paper_era_best << ": " << v.verdict
                              << "\n";
            } catch (const std::invalid_argument&) {
                // snapshot not found; comparison silently skipped
            }
            if (d < expect.d_lower) {
                std::cout << "below the expected lower bound " << expect.d_lower << "\n";
                return 1;
            }
            std::cout << "meets the expected lower bound " << expect.d_lower << "\n";
            return 0;
        }
        if (cmd_wdist->parsed()) {
            auto code = code_of(build_model(spec));
            for (auto& [w, c] : weight_distribution(code, worker_count(workers_flag)))
                std::cout << w << " " << c << "\n";
            return 0;
        }
        if (cmd_tables->parsed()) {
            if (emit == "json")
                std::cout << table_json(spec.degree).dump(2) << "\n";
            else
                print_tables_text(spec.degree);
            return 0;
        }
        if (cmd_verify->parsed()) {
            (void)verify_all;
            std::string dd = find_data_dir(data_dir_flag, argv[0]);
            auto results = dpc::accept::run(dd, std::cout, verify_criterion);
            return dpc::accept::all_pass(results) ? 0 : 1;
        }
        if (cmd_auto5->parsed()) {
            auto m = build_dp5(field(spec.q), spec.seed);
            auto code = dp5_code(m);
            MonomialMap mono;
            Mat A;
            if (!model_flag.empty()) {
                auto loaded = load_automorphism_json(model_flag);
                A = loaded.A;
                mono = loaded.map;
            } else {
                auto d = synthesize_order5(m);
                A = d.A;
                mono = induced_monomial(d.A, code);
            }
            std::cout << "A (rows over GF(" << spec.q << ")):\n";
            for (size_t i = 0; i < 6; ++i) {
                for (size_t j = 0; j < 6; ++j) std::cout << (j ? " " : "  ") << A.at(i, j).to_text();
                std::cout << "\n";
            }
            bool ok = is_automorphism(code, mono);
            std::cout << "permutation order " << map_order(mono) << ", automorphism: "
                      << (ok ? "yes" : "no") << "\n";
            if (!out_file.empty()) {
                std::ofstream out(out_file);
                out << automorphism_to_json(A, mono);
                std::cout << "automorphism written to " << out_file << "\n";
            }
            return ok ? 0 : 1;
        }
        if (cmd_pencil->parsed()) {
            auto qp = load_quadric_pair(pencil_file);
            std::string type = verify_pencil_type(qp.Qa, qp.Qb);
            auto pts = enumerate_surface_points({qp.Qa, qp.Qb}, qp.ctx, 4);
            std::vector<std::vector<FieldElem>> rows(5);
            for (int i = 0; i < 5; ++i)
                for (const auto& p : pts) rows[i].push_back(p.coords()[i]);
            auto code = LinearCode::from_rows(qp.ctx, rows, "pencil " + pencil_file);
            int64_t d = min_distance(code, worker_count(workers_flag));
            std::cout << type << "\n";
            std::cout << "[" << code.n << "," << reduce(code).dimension << "," << d << "]\n";
            return 0;
        }
    } catch (const guard_error& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
