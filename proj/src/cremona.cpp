#include "dpcodes/cremona.hpp"

#include <algorithm>
#include <sstream>

namespace dpc {

IntMat quintic_rotation_matrix() {
    return IntMat::from_rows({{1, -1, -1, 0, 0, 0},
                              {1, -1, 0, 0, 1, 0},
                              {0, 0, 0, -1, -1, 1},
                              {0, 1, 0, 0, -1, 1},
                              {0, 0, 0, 0, 1, 0},
                              {0, 1, 0, 0, 0, 0}});
}

std::vector<HomForm> split_model_cubics(const FieldCtxPtr& ctx) {
    // y0 = xy(x-z), y1 = xz(x-y), y2 = xy(y-z),
    // y3 = yz(y-x), y4 = xz(z-y), y5 = yz(z-x)
    auto var = [&](int i) {
        HomForm f(ctx, 3, 1);
        std::vector<uint8_t> e(3, 0);
        e[i] = 1;
        f.set(e, fe_one(ctx));
        return f;
    };
    HomForm x = var(0), y = var(1), z = var(2);
    return {x * y * (x - z), x * z * (x - y), x * y * (y - z),
            y * z * (y - x), x * z * (z - y), y * z * (z - x)};
}

ProjPoint split_cremona_map(const ProjPoint& p) {
    const auto& c = p.coords();
    return ProjPoint(p.ctx(), {c[0] * (c[2] - c[1]), c[2] * (c[0] - c[1]), c[0] * c[2]});
}

ProjPoint apply_phi(const CremonaData& d, const ProjPoint& p) {
    auto l = [&](int i, int j) { return evaluate(d.lines.at({i, j}), p); };
    return ProjPoint(d.ext, {d.u * l(1, 2) * l(1, 4) * l(3, 5), d.v * l(1, 2) * l(1, 3) * l(4, 5),
                             d.w * l(1, 3) * l(1, 4) * l(2, 5)});
}

namespace {

// exact constant quotient F = alpha * G; throws on nonzero remainder
FieldElem exact_quotient(const HomForm& F, const HomForm& G) {
    if (G.is_zero()) throw std::invalid_argument("exact_quotient: zero divisor");
    const auto& [idx, lead] = *G.coeffs.begin();
    auto it = F.coeffs.find(idx);
    FieldElem alpha = it == F.coeffs.end() ? fe_zero(F.ctx) : it->second / lead;
    if (!(F == G.scaled(alpha))) throw std::logic_error("exact_quotient: nonzero remainder");
    return alpha;
}

struct AttemptFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CremonaData attempt(const PlaneModelDP5& m, const PointOrbit& orbit, bool conj_inverse) {
    CremonaData d;
    d.ext = orbit.ext;
    d.tower = orbit.tower;
    d.pts = orbit.points;
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j)
            d.lines[{i, j}] = line_through(d.pts[i - 1], d.pts[j - 1]);
    auto lv = [&](int i, int j, int at) { return evaluate(d.lines.at({i, j}), d.pts[at - 1]); };
    // u l12(p5) l14(p5) l35(p1) = v l12(p5) l13(p5) l45(p1) = w l13(p5) l14(p5) l25(p1)
    FieldElem ea = lv(1, 2, 5) * lv(1, 4, 5) * lv(3, 5, 1);
    FieldElem eb = lv(1, 2, 5) * lv(1, 3, 5) * lv(4, 5, 1);
    FieldElem ec = lv(1, 3, 5) * lv(1, 4, 5) * lv(2, 5, 1);
    if (eb.is_zero() || ec.is_zero() || ea.is_zero())
        throw AttemptFailure("degenerate defining evaluation");
    d.u = fe_one(d.ext);
    d.v = ea / eb;
    d.w = ea / ec;
    auto l = [&](int i, int j) { return d.lines.at({i, j}); };
    d.alpha0 = exact_quotient(l(1, 2).scaled(d.u) * l(3, 5) - l(1, 3).scaled(d.w) * l(2, 5),
                              l(1, 5) * l(2, 3));
    d.alpha1 = exact_quotient(l(1, 4).scaled(d.u) * l(3, 5) - l(1, 3).scaled(d.v) * l(4, 5),
                              l(1, 5) * l(3, 4));
    d.alpha2 = exact_quotient(l(1, 2).scaled(d.v) * l(4, 5) - l(1, 4).scaled(d.w) * l(2, 5),
                              l(1, 5) * l(2, 4));
    if (d.alpha0.is_zero() || d.alpha1.is_zero() || d.alpha2.is_zero())
        throw AttemptFailure("vanishing alpha");
    auto q5 = [&](const FieldElem& s, std::initializer_list<std::pair<int, int>> ls) {
        HomForm f(d.ext, 3, 0);
        f.set(std::vector<uint8_t>(3, 0), s);
        for (auto [i, j] : ls) f = f * l(i, j);
        return f;
    };
    d.image_quintics = {
        q5(d.alpha0 * d.u * d.v, {{1, 2}, {1, 4}, {2, 3}, {3, 5}, {4, 5}}),
        q5(d.alpha1 * d.u * d.w, {{1, 2}, {1, 4}, {2, 5}, {3, 5}, {3, 4}}),
        q5(d.alpha2 * d.u * d.v, {{1, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}}),
        q5(-(d.alpha1 * d.v * d.w), {{1, 2}, {1, 3}, {3, 4}, {2, 5}, {4, 5}}),
        q5(-(d.alpha2 * d.u * d.w), {{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}}),
        q5(-(d.alpha0 * d.v * d.w), {{1, 3}, {1, 4}, {2, 3}, {2, 5}, {4, 5}})};
    // each g_i has double points along the orbit
    for (const auto& g : d.image_quintics)
        for (const auto& p : d.pts)
            if (!vanishes_to_order(g, p, 2))
                throw AttemptFailure("image quintic lacks a double point");
    // expand: B_i = sum_j expand[i][j] g_j  (all over ext)
    const auto& ms = monomials(3, 5);
    Mat G(d.ext, ms.size(), 6);
    for (int j = 0; j < 6; ++j) {
        auto dv = d.image_quintics[j].dense();
        for (size_t r = 0; r < ms.size(); ++r) G.at(r, j) = dv[r];
    }
    d.expand = Mat(d.ext, 6, 6);
    for (int i = 0; i < 6; ++i) {
        auto rhs = embed_form(d.tower, m.basis.forms[i]).dense();
        auto sol = solve_linear(G, rhs);
        if (!sol) throw AttemptFailure("anticanonical basis not in the image span");
        for (int j = 0; j < 6; ++j) d.expand.at(i, j) = (*sol)[j];
    }
    // conjugate the split-model rotation
    IntMat D = quintic_rotation_matrix();
    Mat Dm(d.ext, 6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) Dm.at(i, j) = fe_from_int(d.ext, D.at(i, j));
    Mat A_ext = conj_inverse ? d.expand.inverse() * Dm * d.expand
                             : d.expand * Dm * d.expand.inverse();
    // normalize by the first nonzero entry and require rationality
    FieldElem scale;
    bool found = false;
    for (size_t i = 0; i < 6 && !found; ++i)
        for (size_t j = 0; j < 6 && !found; ++j)
            if (!A_ext.at(i, j).is_zero()) {
                scale = inv(A_ext.at(i, j));
                found = true;
            }
    Mat A_q(m.q_ctx, 6, 6);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            FieldElem e = scale * A_ext.at(i, j);
            if (!(frobenius(e, m.q_ctx->size, 1) == e))
                throw AttemptFailure("conjugated action is not rational");
            A_q.at(i, j) = d.tower.contract(e);
        }
    // rescale so A^5 = Id exactly (the order-5 representative)
    Mat A5 = A_q * A_q * A_q * A_q * A_q;
    FieldElem lambda = A5.at(0, 0);
    if (lambda.is_zero()) throw AttemptFailure("A^5 has zero diagonal");
    Mat expect = Mat::identity(m.q_ctx, 6);
    bool proportional = true;
    for (size_t i = 0; i < 6 && proportional; ++i)
        for (size_t j = 0; j < 6 && proportional; ++j)
            if (!(A5.at(i, j) == lambda * expect.at(i, j))) proportional = false;
    if (!proportional) throw AttemptFailure("A^5 not proportional to the identity");
    FieldElem c;
    bool have_c = false;
    for (uint64_t r = 1; r < m.q_ctx->size; ++r) {
        FieldElem cand = fe_from_rank(m.q_ctx, r);
        if (pow(cand, 5) * lambda == fe_one(m.q_ctx)) {
            c = cand;
            have_c = true;
            break;
        }
    }
    if (!have_c) throw AttemptFailure("no fifth-root rescaling to exact order 5");
    d.A = Mat(m.q_ctx, 6, 6);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) d.A.at(i, j) = c * A_q.at(i, j);
    return d;
}

}  // namespace

CremonaData synthesize_order5(const PlaneModelDP5& m) {
    std::string last_error = "no attempt made";
    for (int reversed = 0; reversed < 2; ++reversed)
        for (int shift = 0; shift < 5; ++shift)
            for (int conj = 0; conj < 2; ++conj) {
                PointOrbit orbit = reversed ? m.orbit.reversed().cycled(shift)
                                            : m.orbit.cycled(shift);
                try {
                    CremonaData d = attempt(m, orbit, conj != 0);
                    d.orbit_shift = shift;
                    d.orbit_reversed = reversed != 0;
                    d.conjugated_inverse = conj != 0;
                    return d;
                } catch (const AttemptFailure& e) {
                    last_error = e.what();
                }
            }
    throw std::logic_error("order-5 synthesis failed for every labeling: " + last_error);
}

MonomialMap induced_monomial(const Mat& A_q, const LinearCode& code) {
    if (code.k != 6 || A_q.rows() != 6) throw std::invalid_argument("expected a 6-row code");
    const auto& ctx = code.ctx;
    std::map<std::string, size_t> index;
    std::vector<std::vector<FieldElem>> cols;
    for (size_t j = 0; j < code.n; ++j) {
        auto c = code.column(j);
        cols.push_back(c);
        if (!index.emplace(ProjPoint(ctx, c).to_text(), j).second)
            throw std::invalid_argument("code columns are not projectively distinct");
    }
    MonomialMap mm;
    mm.perm.resize(code.n);
    mm.scales.assign(code.n, fe_one(ctx));
    for (size_t j = 0; j < code.n; ++j) {
        auto w = A_q.apply(cols[j]);
        auto it = index.find(ProjPoint(ctx, w).to_text());
        if (it == index.end())
            throw std::logic_error("A does not permute the evaluation points");
        size_t t = it->second;
        size_t piv = 0;
        while (cols[t][piv].is_zero()) ++piv;
        FieldElem mu = w[piv] / cols[t][piv];
        for (size_t i = 0; i < 6; ++i)
            if (!(w[i] == mu * cols[t][i]))
                throw std::logic_error("A image is not proportional to a column");
        mm.perm[j] = t;
        mm.scales[j] = mu;
    }
    return mm;
}

}  // namespace dpc
