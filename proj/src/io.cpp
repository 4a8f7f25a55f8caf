#include "dpcodes/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dpc {

namespace {

using nlohmann::json;

json field_block(const FieldCtxPtr& ctx) {
    return json{{"p", ctx->p}, {"m", ctx->m}, {"modulus", ctx->modulus}};
}

FieldCtxPtr field_from_block(const json& j) {
    return FieldCtx::make_with_modulus(j.at("p").get<int64_t>(),
                                       j.at("modulus").get<std::vector<int32_t>>());
}

json forms_block(const std::vector<HomForm>& forms) {
    json a = json::array();
    for (const auto& f : forms) a.push_back(f.to_text());
    return a;
}

}  // namespace

std::string model_to_json(const PlaneModelDP6& m) {
    json j;
    j["kind"] = "dp6";
    j["field"] = field_block(m.q_ctx);
    j["seed"] = m.seed;
    j["orbit2_t"] = m.orbit2.t.to_text();
    j["orbit3_t"] = m.orbit3.t.to_text();
    j["L"] = m.L.to_text();
    j["C"] = m.C.to_text();
    j["sextics"] = forms_block(m.sextics.forms);
    j["l_rep"] = m.l_rep.to_text();
    j["c_rep"] = m.c_rep.to_text();
    return j.dump(2);
}

std::string model_to_json(const PlaneModelDP5& m) {
    json j;
    j["kind"] = "dp5";
    j["field"] = field_block(m.q_ctx);
    j["seed"] = m.seed;
    j["orbit_t"] = m.orbit.t.to_text();
    j["C"] = m.C.to_text();
    j["basis"] = forms_block(m.basis.forms);
    j["r1"] = m.plane_points[m.r1_pos].to_text();
    return j.dump(2);
}

std::string model_to_json(const QuadricModelDP4& m) {
    json j;
    j["kind"] = "dp4";
    j["field"] = field_block(m.q_ctx);
    j["seed"] = m.seed;
    j["type"] = m.type_label;
    j["pencil"] = m.pencil;
    json fs = json::array(), ds = json::array();
    for (const auto& f : m.factors) fs.push_back(f.to_text());
    for (const auto& d : m.deltas) ds.push_back(d.to_text());
    j["factors"] = fs;
    j["deltas"] = ds;
    j["Q3"] = m.Q3.to_text();
    j["Q4"] = m.Q4.to_text();
    j["points"] = m.points.size();
    return j.dump(2);
}

AnyModel load_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    json j;
    in >> j;
    auto ctx = field_from_block(j.at("field"));
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "dp6") {
        PlaneModelDP6 m = build_dp6(ctx, j.at("seed").get<uint64_t>());
        if (model_to_json(m) != j.dump(2))
            throw std::invalid_argument("model file does not match its deterministic rebuild");
        return m;
    }
    if (kind == "dp5") {
        PlaneModelDP5 m = build_dp5(ctx, j.at("seed").get<uint64_t>());
        if (model_to_json(m) != j.dump(2))
            throw std::invalid_argument("model file does not match its deterministic rebuild");
        return m;
    }
    if (kind == "dp4") {
        std::vector<Poly> factors, deltas;
        for (const auto& t : j.at("factors")) factors.push_back(Poly::parse(ctx, t.get<std::string>()));
        for (const auto& t : j.at("deltas")) deltas.push_back(Poly::parse(ctx, t.get<std::string>()));
        QuadricModelDP4 m = flynn_build_explicit(ctx, factors, deltas);
        m.seed = j.at("seed").get<uint64_t>();
        if (m.Q3.to_text() != j.at("Q3").get<std::string>() ||
            m.Q4.to_text() != j.at("Q4").get<std::string>())
            throw std::invalid_argument("model file does not match its deterministic rebuild");
        return m;
    }
    throw std::invalid_argument("unknown model kind: " + kind);
}

std::string automorphism_to_json(const Mat& A, const MonomialMap& m) {
    json j;
    j["field"] = field_block(A.ctx());
    json rows = json::array();
    for (size_t i = 0; i < A.rows(); ++i) {
        json row = json::array();
        for (size_t c = 0; c < A.cols(); ++c) row.push_back(A.at(i, c).coeffs());
        rows.push_back(std::move(row));
    }
    j["A"] = rows;
    j["perm"] = m.perm;
    json scales = json::array();
    for (const auto& s : m.scales) scales.push_back(s.coeffs());
    j["scales"] = scales;
    return j.dump(2);
}

LoadedAutomorphism load_automorphism_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open automorphism file: " + path);
    json j;
    in >> j;
    auto ctx = field_from_block(j.at("field"));
    const auto& rows = j.at("A");
    LoadedAutomorphism out;
    out.A = Mat(ctx, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t c = 0; c < rows[i].size(); ++c)
            out.A.at(i, c) = FieldElem(ctx, rows[i][c].get<std::vector<int32_t>>());
    out.map.perm = j.at("perm").get<std::vector<size_t>>();
    for (const auto& s : j.at("scales"))
        out.map.scales.push_back(FieldElem(ctx, s.get<std::vector<int32_t>>()));
    return out;
}

QuadricPair load_quadric_pair(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open quadric file: " + path);
    QuadricPair qp;
    std::vector<HomForm> quads;
    std::string line;
    HomForm current;
    bool in_quadric = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "field") {
            int64_t p;
            int m;
            std::string mod;
            ls >> p >> m >> mod;
            std::vector<int32_t> mv;
            std::stringstream ss(mod);
            std::string c;
            while (std::getline(ss, c, ',')) mv.push_back(static_cast<int32_t>(std::stol(c)));
            qp.ctx = FieldCtx::make_with_modulus(p, mv);
        } else if (tok == "quadric") {
            if (!qp.ctx) throw std::invalid_argument("quadric before field line");
            current = HomForm(qp.ctx, 5, 2);
            in_quadric = true;
        } else if (tok == "end") {
            if (!in_quadric) throw std::invalid_argument("stray end");
            quads.push_back(current);
            in_quadric = false;
        } else if (in_quadric) {
            std::vector<uint8_t> exps;
            for (char ch : tok) exps.push_back(static_cast<uint8_t>(ch - '0'));
            if (exps.size() != 5) throw std::invalid_argument("bad exponent vector: " + tok);
            std::string cv;
            ls >> cv;
            current.set(exps, fe_parse(qp.ctx, cv));
        } else {
            throw std::invalid_argument("unexpected token in quadric file: " + tok);
        }
    }
    if (quads.size() != 2) throw std::invalid_argument("expected exactly two quadrics");
    qp.Qa = quads[0];
    qp.Qb = quads[1];
    return qp;
}

}  // namespace dpc
