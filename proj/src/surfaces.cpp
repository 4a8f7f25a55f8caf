#include "dpcodes/surfaces.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dpc {

namespace {

std::string ctx_name(const FieldCtxPtr& ctx) {
    std::ostringstream s;
    s << "GF(" << ctx->size << ")";
    return s.str();
}

}  // namespace

// ------------------------------------------------------------ degree 6

PlaneModelDP6 build_dp6(const FieldCtxPtr& q_ctx, uint64_t seed) {
    uint64_t q = q_ctx->size;
    if (q < 4)
        throw std::invalid_argument(
            "degree-6 construction requires q >= 4 (the anticanonical evaluation map is "
            "injective only from there)");
    PlaneModelDP6 m;
    m.q_ctx = q_ctx;
    m.seed = seed;
    auto orbits = pick_orbits(q_ctx, {2, 3}, seed);
    m.orbit2 = orbits[0];
    m.orbit3 = orbits[1];
    // line through the conjugate pair; its normalized form is Galois-stable
    HomForm line_ext = line_through(m.orbit2.points[0], m.orbit2.points[1]);
    m.L = contract_form(m.orbit2.tower, line_ext);
    m.C = standard_conic(q_ctx);
    m.sextics = linear_system(q_ctx, 3, 6, {{m.orbit2, 3}, {m.orbit3, 2}});
    if (m.sextics.size() != 7)
        throw std::logic_error("dp6: sextic system has dimension " +
                               std::to_string(m.sextics.size()) + ", expected 7");
    size_t on_L = 0, on_C = 0;
    bool have_l = false, have_c = false;
    for (const auto& p : enumerate_projective(q_ctx, 2)) {
        bool l0 = evaluate(m.L, p).is_zero();
        bool c0 = evaluate(m.C, p).is_zero();
        if (l0 && c0) throw std::logic_error("dp6: L and C share a rational point");
        if (l0) {
            ++on_L;
            if (!have_l) { m.l_rep = p; have_l = true; }
        } else if (c0) {
            ++on_C;
            if (!have_c) { m.c_rep = p; have_c = true; }
        } else {
            m.off_points.push_back(p);
        }
    }
    if (on_L != q + 1 || on_C != q + 1)
        throw std::logic_error("dp6: unexpected rational point count on L or C");
    if (m.off_points.size() + 2 != q * q - q + 1)
        throw std::logic_error("dp6: point-count identity failed");
    return m;
}

std::vector<ProjPoint> PlaneModelDP6::column_points() const {
    std::vector<ProjPoint> pts = off_points;
    pts.push_back(l_rep);
    pts.push_back(c_rep);
    return pts;
}

LinearCode dp6_code(const PlaneModelDP6& m) {
    auto pts = m.column_points();
    std::vector<std::vector<FieldElem>> rows(m.sextics.size());
    for (size_t i = 0; i < m.sextics.size(); ++i)
        for (const auto& p : pts) rows[i].push_back(evaluate(m.sextics.forms[i], p));
    std::ostringstream prov;
    prov << "dp6 anticanonical over " << ctx_name(m.q_ctx) << " seed " << m.seed;
    LinearCode code = LinearCode::from_rows(m.q_ctx, rows, prov.str());
    for (size_t j = 0; j < code.n; ++j) {
        bool nonzero = false;
        for (size_t i = 0; i < code.k; ++i) nonzero = nonzero || !code.at(i, j).is_zero();
        if (!nonzero) throw std::logic_error("dp6: zero column (base point?)");
    }
    if (reduce(code).dimension != 7) throw std::logic_error("dp6: generator rank below 7");
    return code;
}

// ------------------------------------------------------------ degree 5

PlaneModelDP5 build_dp5(const FieldCtxPtr& q_ctx, uint64_t seed) {
    uint64_t q = q_ctx->size;
    if (q < 3)
        throw std::invalid_argument(
            "degree-5 construction requires q >= 3 (the anticanonical evaluation map is "
            "injective only from there)");
    PlaneModelDP5 m;
    m.q_ctx = q_ctx;
    m.seed = seed;
    m.orbit = pick_orbits(q_ctx, {5}, seed)[0];
    m.C = standard_conic(q_ctx);
    m.quintics = linear_system(q_ctx, 3, 5, {{m.orbit, 2}});
    if (m.quintics.size() != 6)
        throw std::logic_error("dp5: quintic system has dimension " +
                               std::to_string(m.quintics.size()) + ", expected 6");
    LinearSystemBasis cubics = linear_system(q_ctx, 3, 3, {{m.orbit, 1}});
    if (cubics.size() != 5)
        throw std::logic_error("dp5: cubic system has dimension " + std::to_string(cubics.size()) +
                               ", expected 5");
    m.basis = restructure_quintic_basis(m.quintics, m.C, cubics);
    m.plane_points = enumerate_projective(q_ctx, 2);
    const HomForm& hQ = m.basis.forms[5];
    for (size_t i = 0; i < m.plane_points.size(); ++i) {
        if (!evaluate(m.C, m.plane_points[i]).is_zero()) continue;
        if (evaluate(hQ, m.plane_points[i]).is_zero())
            throw std::logic_error("dp5: completion quintic vanishes at a rational conic point");
        m.conic_positions.push_back(i);
    }
    if (m.conic_positions.size() != q + 1)
        throw std::logic_error("dp5: conic has unexpected rational point count");
    m.r1_pos = m.conic_positions[0];
    std::set<size_t> punctured(m.conic_positions.begin() + 1, m.conic_positions.end());
    for (size_t i = 0; i < m.plane_points.size(); ++i)
        if (!punctured.count(i)) m.column_positions.push_back(i);
    if (m.column_positions.size() != q * q + 1)
        throw std::logic_error("dp5: column count is not q^2 + 1");
    return m;
}

std::vector<ProjPoint> PlaneModelDP5::column_points() const {
    std::vector<ProjPoint> pts;
    pts.reserve(column_positions.size());
    for (size_t i : column_positions) pts.push_back(plane_points[i]);
    return pts;
}

LinearCode dp5_code(const PlaneModelDP5& m) {
    auto pts = m.column_points();
    std::vector<std::vector<FieldElem>> rows(m.basis.size());
    for (size_t i = 0; i < m.basis.size(); ++i)
        for (const auto& p : pts) rows[i].push_back(evaluate(m.basis.forms[i], p));
    std::ostringstream prov;
    prov << "dp5 anticanonical over " << ctx_name(m.q_ctx) << " seed " << m.seed;
    LinearCode code = LinearCode::from_rows(m.q_ctx, rows, prov.str());
    if (reduce(code).dimension != 6) throw std::logic_error("dp5: generator rank below 6");
    return code;
}

std::vector<ProjPoint> dp5_embed(const PlaneModelDP5& m) {
    std::vector<ProjPoint> image;
    std::set<std::string> seen;
    for (const auto& p : m.plane_points) {
        std::vector<FieldElem> v;
        v.reserve(6);
        for (const auto& f : m.basis.forms) v.push_back(evaluate(f, p));
        ProjPoint ip(m.q_ctx, std::move(v));
        if (evaluate(m.C, p).is_zero()) {
            // all rational conic points collapse to (0 : .. : 0 : 1)
            for (size_t i = 0; i < 5; ++i)
                if (!ip.coords()[i].is_zero())
                    throw std::logic_error("dp5 embed: conic point not collapsed");
        }
        if (seen.insert(ip.to_text()).second) image.push_back(std::move(ip));
    }
    if (image.size() != m.q_ctx->size * m.q_ctx->size + 1)
        throw std::logic_error("dp5 embed: image cardinality mismatch");
    return image;
}

// ------------------------------------------------------------ degree 4

namespace {

// extended Euclid: returns (g, s) with s*a == g mod m, g = gcd(a, m) monic
std::pair<Poly, Poly> poly_half_ext_gcd(const Poly& a, const Poly& mod) {
    Poly r0 = mod, r1 = poly_mod(a, mod);
    Poly s0 = Poly::zero(a.ctx), s1 = Poly::one(a.ctx);
    while (!r1.is_zero()) {
        auto [qt, rm] = divmod(r0, r1);
        Poly ns = s0 - qt * s1;
        r0 = r1;
        r1 = rm;
        s0 = s1;
        s1 = ns;
    }
    FieldElem lead_inv = inv(r0.lead());
    return {lead_inv * r0, lead_inv * s0};
}

Poly poly_modinv(const Poly& a, const Poly& mod) {
    auto [g, s] = poly_half_ext_gcd(a, mod);
    if (g.degree() != 0) throw std::invalid_argument("poly not invertible modulo modulus");
    return poly_mod(s, mod);
}

bool nonsquare_in_residue_field(const Poly& a, const Poly& f) {
    // a^((q^d - 1)/2) mod f is 1 for squares, -1 for non-squares
    uint64_t q = f.ctx->size;
    uint64_t order = 1;
    for (int i = 0; i < f.degree(); ++i) order *= q;
    Poly r = poly_modexp(a, (order - 1) / 2, f);
    if (r == Poly::one(f.ctx)) return false;
    if (r == (-fe_one(f.ctx)) * Poly::one(f.ctx)) return true;
    throw std::invalid_argument("squareness test: zero or modulus not irreducible");
}

Poly smallest_nonsquare_mod(const Poly& f) {
    uint64_t q = f.ctx->size;
    uint64_t count = 1;
    for (int i = 0; i < f.degree(); ++i) count *= q;
    for (uint64_t r = 1; r < count; ++r) {
        // rank r encodes coefficients (c0 .. c_{d-1}), c0 most significant
        std::vector<FieldElem> cs(f.degree(), fe_zero(f.ctx));
        uint64_t t = r;
        for (int i = f.degree() - 1; i >= 0; --i) {
            cs[i] = fe_from_rank(f.ctx, t % q);
            t /= q;
        }
        Poly cand = Poly::from_coeffs(f.ctx, cs);
        if (cand.is_zero()) continue;
        if (nonsquare_in_residue_field(cand, f)) return cand;
    }
    throw std::logic_error("no non-square in residue field");
}

std::vector<int> pencil_degrees(const std::string& label) {
    if (label == "4_1") return {2, 1, 1, 1};
    if (label == "4_2") return {4, 1};
    if (label == "4_3") return {3, 2};
    throw std::invalid_argument("degree-4 type must be one of 4_1, 4_2, 4_3");
}

Poly monic_poly_of_rank(const FieldCtxPtr& ctx, int deg, uint64_t rank) {
    std::vector<FieldElem> cs(static_cast<size_t>(deg) + 1, fe_zero(ctx));
    cs[deg] = fe_one(ctx);
    for (int i = deg - 1; i >= 0; --i) {
        cs[i] = fe_from_rank(ctx, rank % ctx->size);
        rank /= ctx->size;
    }
    return Poly::from_coeffs(ctx, std::move(cs));
}

QuadricModelDP4 finish_flynn(const FieldCtxPtr& q_ctx, std::vector<Poly> factors,
                             std::vector<Poly> deltas, uint64_t seed) {
    QuadricModelDP4 m;
    m.q_ctx = q_ctx;
    m.seed = seed;
    m.factors = std::move(factors);
    m.deltas = std::move(deltas);
    m.f = Poly::one(q_ctx);
    for (const auto& fi : m.factors) m.f = m.f * fi;
    if (m.f.degree() != 5) throw std::invalid_argument("factor degrees must sum to 5");
    // CRT lift of the delta_i
    m.delta = Poly::zero(q_ctx);
    for (size_t i = 0; i < m.factors.size(); ++i) {
        Poly cof = divmod(m.f, m.factors[i]).first;
        Poly adj = poly_modinv(poly_mod(cof, m.factors[i]), m.factors[i]);
        m.delta = poly_mod(m.delta + m.deltas[i] * cof * adj, m.f);
    }
    // delta * (x0 + x1 x + .. + x4 x^4)^2 expanded in F_q[x]/(f) with the
    // x_i symbolic: quadratic forms as dense vectors over monomials(5, 2)
    const auto& ms = monomials(5, 2);
    auto mono_of_pair = [&](int i, int j) {
        std::vector<uint8_t> e(5, 0);
        ++e[i];
        ++e[j];
        return monomial_index(5, 2, e);
    };
    std::vector<std::vector<FieldElem>> zsq(9, std::vector<FieldElem>(ms.size(), fe_zero(q_ctx)));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            int k = i + j;
            int idx = mono_of_pair(i, j);
            zsq[k][idx] = zsq[k][idx] + fe_one(q_ctx);
        }
    std::vector<std::vector<FieldElem>> Q(5, std::vector<FieldElem>(ms.size(), fe_zero(q_ctx)));
    Poly xk = Poly::one(q_ctx);
    for (int k = 0; k <= 8; ++k) {
        Poly dk = poly_mod(m.delta * xk, m.f);  // delta * x^k mod f
        for (int j = 0; j <= dk.degree(); ++j) {
            if (dk.c[j].is_zero()) continue;
            for (size_t t = 0; t < ms.size(); ++t)
                Q[j][t] = Q[j][t] + dk.c[j] * zsq[k][t];
        }
        xk = xk * Poly::x(q_ctx);
    }
    m.Q3 = HomForm::from_dense(q_ctx, 5, 2, Q[3]);
    m.Q4 = HomForm::from_dense(q_ctx, 5, 2, Q[4]);
    m.pencil = verify_pencil_type(m.Q3, m.Q4);
    // canonical label from block degrees (all blocks non-split here)
    std::vector<int> degs;
    for (const auto& fi : m.factors) degs.push_back(fi.degree());
    std::sort(degs.rbegin(), degs.rend());
    if (degs == std::vector<int>{2, 1, 1, 1})
        m.type_label = "4_1";
    else if (degs == std::vector<int>{4, 1})
        m.type_label = "4_2";
    else if (degs == std::vector<int>{3, 2})
        m.type_label = "4_3";
    else
        throw std::invalid_argument("factor degrees do not give a rank-one type");
    if (m.pencil != type_by_label(m.type_label).pencil)
        throw std::logic_error("flynn: classifier round-trip returned " + m.pencil +
                               " instead of " + type_by_label(m.type_label).pencil);
    m.points = enumerate_surface_points({m.Q3, m.Q4}, q_ctx, 4);
    int64_t expected =
        predicted_points(q_ctx->size, type_by_label(m.type_label).action);
    if (static_cast<int64_t>(m.points.size()) != expected)
        throw std::logic_error("flynn: rational point count " + std::to_string(m.points.size()) +
                               " does not match predicted " + std::to_string(expected));
    return m;
}

}  // namespace

QuadricModelDP4 flynn_build(const FieldCtxPtr& q_ctx, const std::string& type_label,
                            uint64_t seed) {
    if (q_ctx->p == 2)
        throw std::invalid_argument("this construction only works in odd characteristic");
    if (type_label == "4_1" && q_ctx->size == 3)
        throw std::invalid_argument("type 4_1 does not exist over F_3 (not enough non-squares)");
    auto degs = pencil_degrees(type_label);
    std::vector<Poly> factors, deltas;
    for (int d : degs) {
        uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= q_ctx->size;
        uint64_t start = seed % count;
        bool found = false;
        for (uint64_t off = 0; off < count && !found; ++off) {
            Poly cand = monic_poly_of_rank(q_ctx, d, (start + off) % count);
            if (d > 1 && !is_irreducible(cand)) continue;
            if (std::find_if(factors.begin(), factors.end(),
                             [&](const Poly& g) { return g == cand; }) != factors.end())
                continue;
            factors.push_back(cand);
            found = true;
        }
        if (!found) throw std::logic_error("no irreducible factor available");
    }
    for (const auto& fi : factors) {
        Poly x_mod = poly_mod(Poly::x(q_ctx), fi);
        if (!x_mod.is_zero() && nonsquare_in_residue_field(x_mod, fi))
            deltas.push_back(x_mod);
        else
            deltas.push_back(smallest_nonsquare_mod(fi));
    }
    return finish_flynn(q_ctx, std::move(factors), std::move(deltas), seed);
}

QuadricModelDP4 flynn_build_explicit(const FieldCtxPtr& q_ctx, const std::vector<Poly>& factors,
                                     const std::vector<Poly>& deltas_in) {
    if (q_ctx->p == 2)
        throw std::invalid_argument("this construction only works in odd characteristic");
    if (deltas_in.size() != factors.size())
        throw std::invalid_argument("need one delta per factor");
    for (size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() > 1 && !is_irreducible(factors[i]))
            throw std::invalid_argument("factor is reducible: " + factors[i].to_text());
        if (factors[i].degree() < 1) throw std::invalid_argument("factor must be non-constant");
        if (!factors[i].lead().is_one()) throw std::invalid_argument("factors must be monic");
        for (size_t j = i + 1; j < factors.size(); ++j)
            if (factors[i] == factors[j]) throw std::invalid_argument("factors must be distinct");
    }
    std::vector<Poly> deltas;
    for (size_t i = 0; i < factors.size(); ++i) {
        Poly d = poly_mod(deltas_in[i], factors[i]);
        if (d.is_zero()) throw std::invalid_argument("delta_i must be nonzero");
        if (!nonsquare_in_residue_field(d, factors[i]))
            throw std::invalid_argument("delta_i must be a non-square in its residue field");
        deltas.push_back(std::move(d));
    }
    return finish_flynn(q_ctx, factors, std::move(deltas), 0);
}

QuadricModelDP4 flynn_build_explicit(const FieldCtxPtr& q_ctx, const std::vector<Poly>& factors,
                                     const std::string& delta_hint) {
    std::vector<Poly> deltas;
    if (delta_hint == "x") {
        for (const auto& fi : factors) deltas.push_back(poly_mod(Poly::x(q_ctx), fi));
    } else {
        std::stringstream s(delta_hint);
        std::string tok;
        while (std::getline(s, tok, ';')) deltas.push_back(Poly::parse(q_ctx, tok));
    }
    return flynn_build_explicit(q_ctx, factors, deltas);
}

std::vector<ProjPoint> enumerate_surface_points(const std::vector<HomForm>& quadrics,
                                                const FieldCtxPtr& ctx, int r) {
    std::vector<ProjPoint> out;
    for (const auto& p : enumerate_projective(ctx, r)) {
        bool on = true;
        for (const auto& q : quadrics)
            if (!evaluate(q, p).is_zero()) { on = false; break; }
        if (on) out.push_back(p);
    }
    return out;
}

LinearCode dp4_code(const QuadricModelDP4& m) {
    std::vector<std::vector<FieldElem>> rows(5);
    for (int i = 0; i < 5; ++i)
        for (const auto& p : m.points) rows[i].push_back(p.coords()[i]);
    std::ostringstream prov;
    prov << "dp4 type " << m.type_label << " anticanonical over " << ctx_name(m.q_ctx);
    LinearCode code = LinearCode::from_rows(m.q_ctx, rows, prov.str());
    if (reduce(code).dimension != 5) throw std::logic_error("dp4: generator rank below 5");
    return code;
}

bool verify_flynn_identity(const QuadricModelDP4& m, int samples) {
    SplitMix64 rng(0xf1a77eedull);
    const auto& ctx = m.q_ctx;
    const auto& ms = monomials(5, 2);
    for (int s = 0; s < samples; ++s) {
        std::vector<FieldElem> vals;
        for (int i = 0; i < 5; ++i) vals.push_back(fe_from_rank(ctx, rng.next() % ctx->size));
        Poly z = Poly::from_coeffs(ctx, vals);
        Poly lhs = poly_mod(m.delta * z * z, m.f);
        auto eval_raw = [&](const HomForm& f) {
            FieldElem acc = fe_zero(ctx);
            for (auto& [idx, c] : f.coeffs) {
                FieldElem t = c;
                for (int v = 0; v < 5; ++v)
                    for (int e = 0; e < ms[idx][v]; ++e) t = t * vals[v];
                acc = acc + t;
            }
            return acc;
        };
        FieldElem q3 = lhs.degree() >= 3 ? lhs.c[3] : fe_zero(ctx);
        FieldElem q4 = lhs.degree() >= 4 ? lhs.c[4] : fe_zero(ctx);
        if (!(eval_raw(m.Q3) == q3) || !(eval_raw(m.Q4) == q4)) return false;
    }
    return true;
}

// ------------------------------------------------------------ pencil type

namespace {

// homogeneous binary forms in (lambda, mu), stored by lambda-degree
using BinForm = std::vector<FieldElem>;

BinForm bf_mul(const BinForm& a, const BinForm& b, const FieldCtxPtr& ctx) {
    BinForm r(a.size() + b.size() - 1, fe_zero(ctx));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

void bf_add_to(BinForm& a, const BinForm& b) {
    for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
}

struct PencilFactor {
    int degree;
    int epsilon;
    Poly sort_key;  // monic factor; degree-0 marker for the root at infinity
};

FieldElem quad_coeff(const HomForm& Q, int i, int j) {
    std::vector<uint8_t> e(5, 0);
    ++e[i];
    ++e[j];
    return Q.get(e);
}

// Gram matrix in odd characteristic (halved off-diagonals).
Mat gram(const HomForm& Q, const FieldCtxPtr& ctx) {
    Mat S(ctx, 5, 5);
    FieldElem half = inv(fe_from_int(ctx, 2));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            S.at(i, j) = i == j ? quad_coeff(Q, i, i) : half * quad_coeff(Q, i, j);
    return S;
}

// Polar (alternating) matrix in characteristic 2.
Mat polar(const HomForm& Q, const FieldCtxPtr& ctx) {
    Mat B(ctx, 5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) B.at(i, j) = quad_coeff(Q, std::min(i, j), std::max(i, j));
    return B;
}

FieldElem eval_quadric(const HomForm& Q, const std::vector<FieldElem>& v) {
    FieldElem acc = fe_zero(v[0].ctx());
    const auto& ms = monomials(5, 2);
    for (auto& [idx, c] : Q.coeffs) {
        FieldElem t = c;
        for (int k = 0; k < 5; ++k)
            for (int e = 0; e < ms[idx][k]; ++e) t = t * v[k];
        acc = acc + t;
    }
    return acc;
}

int absolute_trace_f2(const FieldElem& a) {
    FieldElem acc = a, cur = a;
    for (int i = 1; i < a.ctx()->m; ++i) {
        cur = cur * cur;
        acc = acc + cur;
    }
    if (acc.is_zero()) return 0;
    if (acc.is_one()) return 1;
    throw std::logic_error("absolute trace not in F_2");
}

// epsilon of one singular member over its residue field K: +1 iff the two
// planes through the vertex are defined over K.
int member_epsilon(const HomForm& Qa, const HomForm& Qb, const FieldElem& lambda,
                   const FieldElem& mu, const FieldCtxPtr& K) {
    HomForm member = Qa.scaled(lambda) + Qb.scaled(mu);
    bool even = K->p == 2;
    Mat Bm = even ? polar(member, K) : gram(member, K);
    Mat ker = Bm.kernel();
    if (ker.rows() != 1)
        throw std::invalid_argument("rejected: singular member with radical dim > 1");
    std::vector<FieldElem> v;
    for (size_t j = 0; j < 5; ++j) v.push_back(ker.at(0, j));
    if (!eval_quadric(member, v).is_zero())
        throw std::logic_error("pencil: radical vector not on the quadric");
    // quotient by the vertex: drop the pivot coordinate of v
    int pivot = 0;
    while (v[pivot].is_zero()) ++pivot;
    std::vector<int> comp;
    for (int j = 0; j < 5; ++j)
        if (j != pivot) comp.push_back(j);
    if (!even) {
        Mat S4(K, 4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) S4.at(i, j) = Bm.at(comp[i], comp[j]);
        return is_square(S4.det()) ? 1 : -1;
    }
    // characteristic 2: Arf invariant of the rank-4 quotient form
    auto lift = [&](const std::vector<FieldElem>& u4) {
        std::vector<FieldElem> u5(5, fe_zero(K));
        for (int i = 0; i < 4; ++i) u5[comp[i]] = u4[i];
        return u5;
    };
    auto bpair = [&](const std::vector<FieldElem>& x, const std::vector<FieldElem>& y) {
        FieldElem acc = fe_zero(K);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!x[i].is_zero() && !y[j].is_zero())
                    acc = acc + x[i] * y[j] * Bm.at(comp[i], comp[j]);
        return acc;
    };
    std::vector<std::vector<FieldElem>> basis;
    for (int i = 0; i < 4; ++i) {
        std::vector<FieldElem> e(4, fe_zero(K));
        e[i] = fe_one(K);
        basis.push_back(e);
    }
    FieldElem arf = fe_zero(K);
    while (!basis.empty()) {
        auto u = basis.front();
        basis.erase(basis.begin());
        size_t wi = basis.size();
        for (size_t t = 0; t < basis.size(); ++t)
            if (!bpair(u, basis[t]).is_zero()) { wi = t; break; }
        if (wi == basis.size()) throw std::logic_error("pencil: quotient polar form degenerate");
        auto w = basis[wi];
        basis.erase(basis.begin() + wi);
        FieldElem s = inv(bpair(u, w));
        for (auto& c : w) c = s * c;
        for (auto& g : basis) {
            FieldElem cu = bpair(g, w), cw = bpair(g, u);
            for (int i = 0; i < 4; ++i) g[i] = g[i] + cu * u[i] + cw * w[i];
        }
        arf = arf + eval_quadric(member, lift(u)) * eval_quadric(member, lift(w));
    }
    return absolute_trace_f2(arf) == 0 ? 1 : -1;
}

}  // namespace

std::string verify_pencil_type(const HomForm& Qa, const HomForm& Qb) {
    const auto& ctx = Qa.ctx;
    if (Qa.nvars != 5 || Qa.degree != 2 || Qb.nvars != 5 || Qb.degree != 2)
        throw std::invalid_argument("pencil type expects two quadrics in five variables");
    bool even = ctx->p == 2;
    // singular-parameter binary form of degree 5 in (lambda, mu)
    BinForm disc;
    if (!even) {
        Mat Sa = gram(Qa, ctx), Sb = gram(Qb, ctx);
        // det(lambda Sa + mu Sb) by Leibniz expansion
        std::vector<int> perm{0, 1, 2, 3, 4};
        disc.assign(6, fe_zero(ctx));
        do {
            int sign = 1;
            std::vector<bool> seen(5, false);
            for (int i = 0; i < 5; ++i) {
                if (seen[i]) continue;
                int len = 0, j = i;
                while (!seen[j]) { seen[j] = true; j = perm[j]; ++len; }
                if (len % 2 == 0) sign = -sign;
            }
            BinForm term{sign > 0 ? fe_one(ctx) : -fe_one(ctx)};
            for (int i = 0; i < 5; ++i)
                term = bf_mul(term, BinForm{Sb.at(i, perm[i]), Sa.at(i, perm[i])}, ctx);
            bf_add_to(disc, term);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        // kernel vector of the alternating polar matrix via 4x4 sub-Pfaffians;
        // the member is singular exactly where the quadric vanishes on it
        Mat Ba = polar(Qa, ctx), Bb = polar(Qb, ctx);
        auto entry = [&](int i, int j) { return BinForm{Bb.at(i, j), Ba.at(i, j)}; };
        std::vector<BinForm> w(5);
        for (int i = 0; i < 5; ++i) {
            std::vector<int> idx;
            for (int j = 0; j < 5; ++j)
                if (j != i) idx.push_back(j);
            // pf = b01 b23 + b02 b13 + b03 b12 over the kept indices (char 2)
            BinForm pf(3, fe_zero(ctx));
            bf_add_to(pf, bf_mul(entry(idx[0], idx[1]), entry(idx[2], idx[3]), ctx));
            bf_add_to(pf, bf_mul(entry(idx[0], idx[2]), entry(idx[1], idx[3]), ctx));
            bf_add_to(pf, bf_mul(entry(idx[0], idx[3]), entry(idx[1], idx[2]), ctx));
            w[i] = pf;
        }
        // Q_lambda(w) with Q_lambda = lambda Qa + mu Qb: degree 2*2 + 1 = 5
        disc.assign(6, fe_zero(ctx));
        for (int i = 0; i < 5; ++i)
            for (int j = i; j < 5; ++j) {
                FieldElem ca = quad_coeff(Qa, i, j), cb = quad_coeff(Qb, i, j);
                if (ca.is_zero() && cb.is_zero()) continue;
                BinForm t = bf_mul(bf_mul(w[i], w[j], ctx), BinForm{cb, ca}, ctx);
                bf_add_to(disc, t);
            }
    }
    bool all_zero = std::all_of(disc.begin(), disc.end(),
                                [](const FieldElem& c) { return c.is_zero(); });
    if (all_zero) throw std::invalid_argument("pencil determinant form vanishes identically");
    // dehomogenize at mu = 1; the (1:0) root, if any, is the member Qa
    Poly p = Poly::from_coeffs(ctx, disc);
    int deg_drop = 5 - p.degree();
    std::vector<PencilFactor> out;
    if (deg_drop > 1)
        throw std::invalid_argument("rejected: repeated singular member at infinity");
    if (deg_drop == 1) {
        int eps = member_epsilon(Qa, Qb, fe_one(ctx), fe_zero(ctx), ctx);
        out.push_back({1, eps, Poly::zero(ctx)});
    }
    for (auto& [g, mult] : factor_poly(p)) {
        if (mult != 1) throw std::invalid_argument("rejected: repeated singular member");
        int d = g.degree();
        if (d == 1) {
            FieldElem root = -g.c[0];
            out.push_back({1, member_epsilon(Qa, Qb, root, fe_one(ctx), ctx), g});
        } else {
            FieldCtxPtr K = FieldCtx::make(ctx->p, ctx->m * d);
            TowerMap up = TowerMap::make(ctx, K);
            std::vector<FieldElem> gc;
            for (const auto& c : g.c) gc.push_back(up.embed(c));
            auto roots = poly_roots(Poly::from_coeffs(K, gc));
            if (roots.empty()) throw std::logic_error("pencil: no root in residue field");
            HomForm QaK = embed_form(up, Qa), QbK = embed_form(up, Qb);
            out.push_back({d, member_epsilon(QaK, QbK, roots[0], fe_one(K), K), g});
        }
    }
    std::sort(out.begin(), out.end(), [](const PencilFactor& a, const PencilFactor& b) {
        if (a.degree != b.degree) return a.degree > b.degree;
        if (a.sort_key.is_zero() != b.sort_key.is_zero()) return b.sort_key.is_zero();
        for (int i = 0; i <= a.sort_key.degree(); ++i) {
            uint64_t ra = a.sort_key.c[i].rank(), rb = b.sort_key.c[i].rank();
            if (ra != rb) return ra < rb;
        }
        return false;
    });
    std::ostringstream s;
    for (const auto& f : out) s << f.degree << '[' << f.epsilon << ']';
    return s.str();
}

// ------------------------------------------------------------ oracles

int64_t oracle_min_distance_by_sections(const std::vector<HomForm>& forms,
                                        const std::vector<ProjPoint>& points) {
    const auto& ctx = forms[0].ctx;
    uint64_t q = ctx->size;
    size_t k = forms.size();
    int64_t max_zeros = -1;
    // projective coefficient tuples: first nonzero fixed to 1
    for (size_t lead = 0; lead < k; ++lead) {
        size_t free_digits = k - 1 - lead;
        uint64_t total = 1;
        for (size_t i = 0; i < free_digits; ++i) total *= q;
        for (uint64_t t = 0; t < total; ++t) {
            HomForm section = forms[lead];
            uint64_t v = t;
            for (size_t i = 0; i < free_digits; ++i) {
                uint64_t r = v % q;
                v /= q;
                if (r) section = section + forms[lead + 1 + i].scaled(fe_from_rank(ctx, r));
            }
            int64_t zeros = 0;
            for (const auto& p : points) zeros += evaluate(section, p).is_zero();
            if (zeros > max_zeros) max_zeros = zeros;
        }
    }
    return static_cast<int64_t>(points.size()) - max_zeros;
}

}  // namespace dpc
