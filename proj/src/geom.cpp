#include "dpcodes/geom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace dpc {

// ------------------------------------------------------------- monomials

namespace {

void gen_monomials(int nvars, int degree, std::vector<uint8_t>& cur,
                   std::vector<std::vector<uint8_t>>& out) {
    if (static_cast<int>(cur.size()) == nvars - 1) {
        int used = std::accumulate(cur.begin(), cur.end(), 0);
        cur.push_back(static_cast<uint8_t>(degree - used));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    int used = std::accumulate(cur.begin(), cur.end(), 0);
    for (int e = degree - used; e >= 0; --e) {
        cur.push_back(static_cast<uint8_t>(e));
        gen_monomials(nvars, degree, cur, out);
        cur.pop_back();
    }
}

std::map<std::pair<int, int>, std::vector<std::vector<uint8_t>>> mono_cache;
std::map<std::pair<int, int>, std::map<std::vector<uint8_t>, int>> mono_index_cache;
std::mutex mono_mutex;

}  // namespace

const std::vector<std::vector<uint8_t>>& monomials(int nvars, int degree) {
    std::lock_guard<std::mutex> lk(mono_mutex);
    auto key = std::make_pair(nvars, degree);
    auto it = mono_cache.find(key);
    if (it == mono_cache.end()) {
        std::vector<std::vector<uint8_t>> out;
        std::vector<uint8_t> cur;
        gen_monomials(nvars, degree, cur, out);
        it = mono_cache.emplace(key, std::move(out)).first;
        auto& idx = mono_index_cache[key];
        for (size_t i = 0; i < it->second.size(); ++i) idx[it->second[i]] = static_cast<int>(i);
    }
    return it->second;
}

int monomial_index(int nvars, int degree, const std::vector<uint8_t>& exps) {
    monomials(nvars, degree);
    std::lock_guard<std::mutex> lk(mono_mutex);
    const auto& idx = mono_index_cache[{nvars, degree}];
    auto it = idx.find(exps);
    if (it == idx.end()) throw std::invalid_argument("bad monomial exponent vector");
    return it->second;
}

// ------------------------------------------------------------- ProjPoint

ProjPoint::ProjPoint(FieldCtxPtr ctx, std::vector<FieldElem> coords)
    : ctx_(std::move(ctx)), x_(std::move(coords)) {
    size_t l = 0;
    while (l < x_.size() && x_[l].is_zero()) ++l;
    if (l == x_.size()) throw std::invalid_argument("zero coordinate vector");
    lead_ = l;
    FieldElem s = inv(x_[l]);
    for (auto& c : x_) c = s * c;
}

std::string ProjPoint::to_text() const {
    std::ostringstream s;
    for (size_t i = 0; i < x_.size(); ++i) {
        if (i) s << ':';
        s << x_[i].to_text();
    }
    return s.str();
}

ProjPoint ProjPoint::parse(const FieldCtxPtr& ctx, const std::string& text) {
    std::vector<FieldElem> cs;
    std::stringstream s(text);
    std::string tok;
    while (std::getline(s, tok, ':')) cs.push_back(fe_parse(ctx, tok));
    return ProjPoint(ctx, std::move(cs));
}

// ------------------------------------------------------------- HomForm

HomForm::HomForm(FieldCtxPtr c, int nv, int deg) : ctx(std::move(c)), nvars(nv), degree(deg) {}

void HomForm::set(const std::vector<uint8_t>& exps, const FieldElem& c) {
    int idx = monomial_index(nvars, degree, exps);
    if (c.is_zero())
        coeffs.erase(idx);
    else
        coeffs[idx] = c;
}

FieldElem HomForm::get(const std::vector<uint8_t>& exps) const {
    auto it = coeffs.find(monomial_index(nvars, degree, exps));
    return it == coeffs.end() ? fe_zero(ctx) : it->second;
}

std::vector<FieldElem> HomForm::dense() const {
    std::vector<FieldElem> v(monomials(nvars, degree).size(), fe_zero(ctx));
    for (auto& [i, c] : coeffs) v[i] = c;
    return v;
}

HomForm HomForm::from_dense(const FieldCtxPtr& ctx, int nvars, int degree,
                            const std::vector<FieldElem>& v) {
    HomForm f(ctx, nvars, degree);
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) f.coeffs[static_cast<int>(i)] = v[i];
    return f;
}

HomForm HomForm::operator+(const HomForm& o) const {
    HomForm r = *this;
    for (auto& [i, c] : o.coeffs) {
        auto it = r.coeffs.find(i);
        if (it == r.coeffs.end())
            r.coeffs[i] = c;
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.coeffs.erase(it);
        }
    }
    return r;
}

HomForm HomForm::operator-(const HomForm& o) const { return *this + o.scaled(-fe_one(ctx)); }

HomForm HomForm::scaled(const FieldElem& s) const {
    HomForm r(ctx, nvars, degree);
    if (s.is_zero()) return r;
    for (auto& [i, c] : coeffs) r.coeffs[i] = s * c;
    return r;
}

HomForm HomForm::operator*(const HomForm& o) const {
    HomForm r(ctx, nvars, degree + o.degree);
    const auto& ma = monomials(nvars, degree);
    const auto& mb = monomials(nvars, o.degree);
    for (auto& [i, ci] : coeffs)
        for (auto& [j, cj] : o.coeffs) {
            std::vector<uint8_t> e(ma[i]);
            for (int k = 0; k < nvars; ++k) e[k] = static_cast<uint8_t>(e[k] + mb[j][k]);
            int idx = monomial_index(nvars, r.degree, e);
            auto it = r.coeffs.find(idx);
            FieldElem add = ci * cj;
            if (it == r.coeffs.end())
                r.coeffs[idx] = add;
            else {
                it->second = it->second + add;
                if (it->second.is_zero()) r.coeffs.erase(it);
            }
        }
    return r;
}

bool HomForm::operator==(const HomForm& o) const {
    return nvars == o.nvars && degree == o.degree && coeffs == o.coeffs;
}

HomForm HomForm::normalized() const {
    if (coeffs.empty()) return *this;
    return scaled(inv(coeffs.begin()->second));
}

std::string HomForm::to_text() const {
    std::ostringstream s;
    s << degree;
    const auto& ms = monomials(nvars, degree);
    for (auto& [i, c] : coeffs) {
        s << ';';
        for (int k = 0; k < nvars; ++k) s << static_cast<int>(ms[i][k]);
        s << '=' << c.to_text();
    }
    return s.str();
}

HomForm HomForm::parse(const FieldCtxPtr& ctx, const std::string& text) {
    std::stringstream s(text);
    std::string tok;
    std::getline(s, tok, ';');
    int degree = std::stoi(tok);
    HomForm f(ctx, 0, degree);
    bool first = true;
    while (std::getline(s, tok, ';')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad form text");
        std::string mono = tok.substr(0, eq);
        if (first) {
            f.nvars = static_cast<int>(mono.size());
            first = false;
        }
        std::vector<uint8_t> exps;
        for (char ch : mono) exps.push_back(static_cast<uint8_t>(ch - '0'));
        f.set(exps, fe_parse(ctx, tok.substr(eq + 1)));
    }
    if (first) throw std::invalid_argument("form text has no monomials");
    return f;
}

FieldElem evaluate(const HomForm& f, const ProjPoint& p) {
    if (!ctx_equal(f.ctx, p.ctx())) throw std::invalid_argument("evaluate: mixed contexts");
    if (static_cast<int>(p.coords().size()) != f.nvars)
        throw std::invalid_argument("evaluate: variable count mismatch");
    // powers of each coordinate up to the degree
    std::vector<std::vector<FieldElem>> pw(f.nvars);
    for (int j = 0; j < f.nvars; ++j) {
        pw[j].push_back(fe_one(f.ctx));
        for (int d = 1; d <= f.degree; ++d) pw[j].push_back(pw[j].back() * p.coords()[j]);
    }
    const auto& ms = monomials(f.nvars, f.degree);
    FieldElem acc = fe_zero(f.ctx);
    for (auto& [i, c] : f.coeffs) {
        FieldElem term = c;
        for (int j = 0; j < f.nvars; ++j)
            if (ms[i][j]) term = term * pw[j][ms[i][j]];
        acc = acc + term;
    }
    return acc;
}

HomForm embed_form(const TowerMap& t, const HomForm& f) {
    HomForm r(t.sup, f.nvars, f.degree);
    for (auto& [i, c] : f.coeffs) r.coeffs[i] = t.embed(c);
    return r;
}

HomForm contract_form(const TowerMap& t, const HomForm& f) {
    HomForm r(t.sub, f.nvars, f.degree);
    for (auto& [i, c] : f.coeffs) r.coeffs[i] = t.contract(c);
    return r;
}

HomForm frobenius_form(const HomForm& f, uint64_t base_q) {
    HomForm r(f.ctx, f.nvars, f.degree);
    for (auto& [i, c] : f.coeffs) r.coeffs[i] = frobenius(c, base_q, 1);
    return r;
}

HomForm reduce_by(const HomForm& f, const HomForm& g) {
    if (g.is_zero()) throw std::invalid_argument("reduction by zero form");
    const auto& mg = monomials(g.nvars, g.degree);
    int glead = g.coeffs.begin()->first;
    FieldElem glc_inv = inv(g.coeffs.begin()->second);
    HomForm r = f;
    const auto& mf = monomials(f.nvars, f.degree);
    while (true) {
        // graded-lex-largest monomial of r divisible by the lead of g
        int target = -1;
        std::vector<uint8_t> shift(static_cast<size_t>(f.nvars), 0);
        for (auto& [i, c] : r.coeffs) {
            bool div = true;
            for (int k = 0; k < f.nvars; ++k) {
                if (mf[i][k] < mg[glead][k]) { div = false; break; }
                shift[k] = static_cast<uint8_t>(mf[i][k] - mg[glead][k]);
            }
            if (div) { target = i; break; }
        }
        if (target < 0) return r;
        FieldElem factor = r.coeffs[target] * glc_inv;
        // r -= factor * x^shift * g
        for (auto& [j, cj] : g.coeffs) {
            std::vector<uint8_t> e(mg[j]);
            for (int k = 0; k < f.nvars; ++k) e[k] = static_cast<uint8_t>(e[k] + shift[k]);
            int idx = monomial_index(f.nvars, f.degree, e);
            auto it = r.coeffs.find(idx);
            FieldElem sub = factor * cj;
            if (it == r.coeffs.end())
                r.coeffs[idx] = -sub;
            else {
                it->second = it->second - sub;
                if (it->second.is_zero()) r.coeffs.erase(it);
            }
        }
    }
}

// ------------------------------------------------------------- incidence

std::vector<ProjPoint> enumerate_projective(const FieldCtxPtr& ctx, int r) {
    double est = std::pow(static_cast<double>(ctx->size), r);
    if (est > 1e8) throw guard_error("projective enumeration guard exceeded");
    std::vector<ProjPoint> pts;
    for (int lead = 0; lead <= r; ++lead) {
        int free_coords = r - lead;
        uint64_t count = 1;
        for (int i = 0; i < free_coords; ++i) count *= ctx->size;
        for (uint64_t t = 0; t < count; ++t) {
            std::vector<FieldElem> cs(static_cast<size_t>(r) + 1, fe_zero(ctx));
            cs[lead] = fe_one(ctx);
            uint64_t v = t;
            for (int i = free_coords - 1; i >= 0; --i) {
                cs[lead + 1 + i] = fe_from_rank(ctx, v % ctx->size);
                v /= ctx->size;
            }
            pts.emplace_back(ctx, std::move(cs));
        }
    }
    return pts;
}

HomForm line_through(const ProjPoint& p, const ProjPoint& q) {
    if (p == q) throw std::invalid_argument("line through coincident points");
    const auto& a = p.coords();
    const auto& b = q.coords();
    if (a.size() != 3) throw std::invalid_argument("line_through expects plane points");
    std::vector<FieldElem> n{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                             a[0] * b[1] - a[1] * b[0]};
    HomForm l(p.ctx(), 3, 1);
    l.set({1, 0, 0}, n[0]);
    l.set({0, 1, 0}, n[1]);
    l.set({0, 0, 1}, n[2]);
    return l.normalized();
}

bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
    const auto& a = p.coords();
    const auto& b = q.coords();
    const auto& c = r.coords();
    FieldElem det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                    a[2] * (b[0] * c[1] - b[1] * c[0]);
    return det.is_zero();
}

HomForm conic_through(const std::vector<ProjPoint>& pts) {
    if (pts.size() != 5) throw std::invalid_argument("conic_through expects 5 points");
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = i + 1; j < 5; ++j)
            for (size_t k = j + 1; k < 5; ++k)
                if (collinear(pts[i], pts[j], pts[k]))
                    throw std::invalid_argument("conic_through: three points collinear");
    const auto& ctx = pts[0].ctx();
    const auto& ms = monomials(3, 2);
    Mat m(ctx, 5, ms.size());
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < ms.size(); ++j) {
            FieldElem v = fe_one(ctx);
            for (int k = 0; k < 3; ++k)
                for (int e = 0; e < ms[j][k]; ++e) v = v * pts[i].coords()[k];
            m.at(i, j) = v;
        }
    Mat ker = m.kernel();
    if (ker.rows() != 1) throw std::invalid_argument("conic_through: degenerate configuration");
    std::vector<FieldElem> v(ms.size(), fe_zero(ctx));
    for (size_t j = 0; j < ms.size(); ++j) v[j] = ker.at(0, j);
    return HomForm::from_dense(ctx, 3, 2, v).normalized();
}

// ------------------------------------------------------------- orbits

HomForm standard_conic(const FieldCtxPtr& ctx) {
    HomForm c(ctx, 3, 2);
    c.set({1, 0, 1}, fe_one(ctx));
    c.set({0, 2, 0}, -fe_one(ctx));
    return c;
}

PointOrbit PointOrbit::cycled(int shift) const {
    PointOrbit o = *this;
    std::rotate(o.points.begin(), o.points.begin() + (shift % degree), o.points.end());
    o.t = o.points[0].coords()[1];  // representative is (1 : t : t^2)
    return o;
}

PointOrbit PointOrbit::reversed() const {
    PointOrbit o = *this;
    std::reverse(o.points.begin() + 1, o.points.end());
    return o;
}

std::vector<PointOrbit> pick_orbits(const FieldCtxPtr& q_ctx, const std::vector<int>& degrees,
                                    uint64_t seed) {
    std::vector<PointOrbit> orbits;
    for (int d : degrees) {
        PointOrbit orb;
        orb.base = q_ctx;
        orb.degree = d;
        orb.ext = FieldCtx::make(q_ctx->p, q_ctx->m * d);
        orb.tower = TowerMap::make(q_ctx, orb.ext);
        uint64_t n = orb.ext->size;
        uint64_t start = seed % n;
        bool found = false;
        for (uint64_t i = 0; i < n && !found; ++i) {
            FieldElem t = fe_from_rank(orb.ext, (start + i) % n);
            // exact degree d over GF(q): the Frobenius orbit of t has size d
            FieldElem u = t;
            int orbit_size = 0;
            for (int j = 1; j <= d; ++j) {
                u = frobenius(u, q_ctx->size, 1);
                if (u == t) { orbit_size = j; break; }
            }
            if (orbit_size != d) continue;
            orb.t = t;
            FieldElem tc = t;
            for (int j = 0; j < d; ++j) {
                orb.points.emplace_back(orb.ext,
                                        std::vector<FieldElem>{fe_one(orb.ext), tc, tc * tc});
                tc = frobenius(tc, q_ctx->size, 1);
            }
            found = true;
        }
        if (!found) throw std::logic_error("no element of exact degree found");
        orbits.push_back(std::move(orb));
    }
    // points on a smooth conic are automatically in general position
    if (!orbits_in_general_position(orbits))
        throw std::logic_error("orbit points unexpectedly collinear");
    return orbits;
}

bool orbits_in_general_position(const std::vector<PointOrbit>& orbits) {
    int lcm_deg = 1;
    for (const auto& o : orbits) lcm_deg = std::lcm(lcm_deg, o.degree);
    const auto& base = orbits[0].base;
    FieldCtxPtr common =
        lcm_deg == orbits[0].degree && orbits.size() == 1 ? orbits[0].ext
                                                          : FieldCtx::make(base->p, base->m * lcm_deg);
    std::vector<ProjPoint> all;
    for (const auto& o : orbits) {
        TowerMap up = TowerMap::make(o.ext, common);
        for (const auto& p : o.points) {
            std::vector<FieldElem> cs;
            for (const auto& c : p.coords()) cs.push_back(up.embed(c));
            all.emplace_back(common, std::move(cs));
        }
    }
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
            if (all[i] == all[j]) return false;
            for (size_t k = j + 1; k < all.size(); ++k)
                if (collinear(all[i], all[j], all[k])) return false;
        }
    return true;
}

// -------------------------------------------------------- linear systems

namespace {

int64_t binom_i64(int n, int k) {
    if (k < 0 || k > n) return 0;
    int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Taylor coefficient rows of all degree-d monomials at the orbit
// representative, one row per local multi-index of order < mult.
std::vector<std::vector<FieldElem>> taylor_rows(const ProjPoint& rep, int nvars, int degree,
                                                int mult) {
    const auto& ctx = rep.ctx();
    const auto& ms = monomials(nvars, degree);
    std::vector<int> others;
    for (int j = 0; j < nvars; ++j)
        if (j != static_cast<int>(rep.lead())) others.push_back(j);
    // powers of the affine coordinates
    std::vector<std::vector<FieldElem>> pw(nvars);
    for (int j = 0; j < nvars; ++j) {
        pw[j].push_back(fe_one(ctx));
        for (int d = 1; d <= degree; ++d) pw[j].push_back(pw[j].back() * rep.coords()[j]);
    }
    // local multi-indices tau over `others` with |tau| < mult
    std::vector<std::vector<int>> taus;
    std::vector<int> tau(others.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t pos, int rem) {
        if (pos == others.size()) {
            taus.push_back(tau);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            tau[pos] = v;
            rec(pos + 1, rem - v);
        }
        tau[pos] = 0;
    };
    rec(0, mult - 1);
    std::vector<std::vector<FieldElem>> rows;
    for (const auto& tt : taus) {
        std::vector<FieldElem> row(ms.size(), fe_zero(ctx));
        for (size_t mi = 0; mi < ms.size(); ++mi) {
            FieldElem v = fe_one(ctx);
            bool zero = false;
            for (size_t oi = 0; oi < others.size(); ++oi) {
                int e = ms[mi][others[oi]];
                int a = tt[oi];
                if (a > e) { zero = true; break; }
                int64_t bc = binom_i64(e, a) % ctx->p;
                if (bc == 0) { zero = true; break; }
                v = v * fe_from_int(ctx, bc) * pw[others[oi]][e - a];
            }
            if (!zero) row[mi] = v;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

LinearSystemBasis linear_system(const FieldCtxPtr& q_ctx, int nvars, int degree,
                                const std::vector<std::pair<PointOrbit, int>>& conditions) {
    const auto& ms = monomials(nvars, degree);
    std::vector<std::vector<FieldElem>> rows;
    for (const auto& [orbit, mult] : conditions) {
        if (mult < 1) throw std::invalid_argument("multiplicity must be >= 1");
        auto ext_rows = taylor_rows(orbit.points[0], nvars, degree, mult);
        int d = orbit.tower.relative_degree();
        for (const auto& er : ext_rows) {
            std::vector<std::vector<FieldElem>> expanded(d, std::vector<FieldElem>(ms.size(), fe_zero(q_ctx)));
            for (size_t j = 0; j < er.size(); ++j) {
                if (er[j].is_zero()) continue;
                auto crd = orbit.tower.coords_over_sub(er[j]);
                for (int i = 0; i < d; ++i) expanded[i][j] = crd[i];
            }
            for (auto& r : expanded) rows.push_back(std::move(r));
        }
    }
    Mat m = Mat::from_rows(q_ctx, rows);
    Mat ker = m.kernel();
    ker.rref();  // canonical basis
    LinearSystemBasis basis;
    basis.base_ctx = q_ctx;
    for (size_t i = 0; i < ker.rows(); ++i) {
        std::vector<FieldElem> v(ms.size(), fe_zero(q_ctx));
        for (size_t j = 0; j < ms.size(); ++j) v[j] = ker.at(i, j);
        basis.forms.push_back(HomForm::from_dense(q_ctx, nvars, degree, v));
    }
    return basis;
}

bool vanishes_to_order(const HomForm& f, const ProjPoint& p, int mult) {
    if (!ctx_equal(f.ctx, p.ctx()))
        throw std::invalid_argument("vanishes_to_order: embed the form into the point field first");
    auto rows = taylor_rows(p, f.nvars, f.degree, mult);
    auto dv = f.dense();
    for (const auto& row : rows) {
        FieldElem acc = fe_zero(p.ctx());
        for (size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero() && !dv[j].is_zero()) acc = acc + row[j] * dv[j];
        if (!acc.is_zero()) return false;
    }
    return true;
}

LinearSystemBasis restructure_quintic_basis(const LinearSystemBasis& sys, const HomForm& h_C,
                                            const LinearSystemBasis& cubics) {
    if (sys.size() != 6 || cubics.size() != 5)
        throw std::invalid_argument("restructure: expected a 6-dim quintic and 5-dim cubic system");
    const auto& ctx = sys.base_ctx;
    std::vector<std::vector<FieldElem>> rows;
    std::vector<HomForm> out;
    for (const auto& f : cubics.forms) {
        HomForm prod = f * h_C;
        out.push_back(prod);
        rows.push_back(prod.dense());
    }
    Mat base5 = Mat::from_rows(ctx, rows);
    if (base5.rank() != 5) throw std::logic_error("restructure: products not independent");
    for (const auto& q : sys.forms) {
        auto rows2 = rows;
        rows2.push_back(q.dense());
        if (Mat::from_rows(ctx, rows2).rank() == 6) {
            if (reduce_by(q, h_C).is_zero())
                throw std::logic_error("restructure: completion divisible by the conic");
            out.push_back(q);
            LinearSystemBasis b;
            b.base_ctx = ctx;
            b.forms = std::move(out);
            return b;
        }
    }
    throw std::logic_error("restructure: no completion found");
}

}  // namespace dpc
