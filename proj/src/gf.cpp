#include "dpcodes/gf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dpc {

// ---------------------------------------------------------------- int utils

bool is_prime_int(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

int64_t ipow_checked(int64_t b, int e, int64_t limit) {
    int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > limit / b) throw guard_error("integer power exceeds guard");
        r *= b;
    }
    return r;
}

std::pair<int64_t, int> split_prime_power(uint64_t q) {
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    for (int64_t p = 2; static_cast<uint64_t>(p) * p <= q; ++p) {
        if (q % p == 0) {
            uint64_t r = q;
            int m = 0;
            while (r % p == 0) { r /= p; ++m; }
            if (r != 1) throw std::invalid_argument("q is not a prime power");
            return {p, m};
        }
    }
    return {static_cast<int64_t>(q), 1};  // q prime
}

// ------------------------------------------------------------ mod-p helpers

namespace {

int64_t mod_inv_i64(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int64_t qt = r / nr;
        std::swap(t -= qt * nt, nt);
        std::swap(r -= qt * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("not invertible mod p");
    return ((t % p) + p) % p;
}

using CVec = std::vector<int32_t>;

void trim_cvec(CVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// schoolbook product of coefficient vectors mod p
CVec cvec_mul(const CVec& a, const CVec& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    CVec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int32_t>((r[i + j] + static_cast<int64_t>(a[i]) * b[j]) % p);
    }
    trim_cvec(r);
    return r;
}

// remainder of a by monic modulus mod p
CVec cvec_mod(CVec a, const CVec& mod, int64_t p) {
    int dm = static_cast<int>(mod.size()) - 1;
    trim_cvec(a);
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int k = static_cast<int>(a.size()) - 1;
        int64_t c = a[k];
        if (c != 0)
            for (int i = 0; i <= dm; ++i) {
                int64_t v = a[k - dm + i] - c * mod[i] % p;
                a[k - dm + i] = static_cast<int32_t>(((v % p) + p) % p);
            }
        a.pop_back();
        trim_cvec(a);
    }
    return a;
}

bool cvec_irreducible(const CVec& f, int64_t p);

}  // namespace

// ---------------------------------------------------------------- FieldCtx

FieldCtxPtr finish_ctx(int64_t p, int m, std::vector<int32_t> mod) {
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p = p;
    ctx->m = m;
    ctx->modulus = std::move(mod);
    int64_t sz = ipow_checked(p, m, int64_t(1) << 62);
    ctx->size = static_cast<uint64_t>(sz);
    // x^k mod modulus for k = m .. 2m-2
    CVec cur(ctx->modulus.begin(), ctx->modulus.end() - 1);  // x^m mod f = -lower part
    for (auto& c : cur) c = static_cast<int32_t>((p - c) % p);
    cur.resize(m);
    for (int k = m; k <= 2 * m - 2; ++k) {
        ctx->red_.push_back(cur);
        // multiply by x and reduce
        CVec nxt(m, 0);
        int32_t top = cur[m - 1];
        for (int i = m - 1; i > 0; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (top != 0)
            for (int i = 0; i < m; ++i) {
                int64_t v = nxt[i] + static_cast<int64_t>(top) * ((p - ctx->modulus[i]) % p);
                nxt[i] = static_cast<int32_t>(v % p);
            }
        cur = nxt;
    }
    return ctx;
}

FieldCtxPtr FieldCtx::make(int64_t p, int m) {
    if (!is_prime_int(p)) throw std::invalid_argument("p must be prime");
    if (m < 1 || m > 30) throw std::invalid_argument("extension degree out of range [1,30]");
    if (m == 1) return finish_ctx(p, 1, {0, 1});  // modulus x, elements are residues
    // lexicographically smallest monic irreducible, coefficients constant first
    uint64_t count = 1;
    for (int i = 0; i < m; ++i) count *= static_cast<uint64_t>(p);
    for (uint64_t idx = 0; idx < count; ++idx) {
        CVec f(m + 1, 0);
        uint64_t t = idx;
        // idx encodes (c0, .., c_{m-1}) with c0 most significant so that
        // ascending idx = ascending lexicographic order, constant term first
        for (int i = m - 1; i >= 0; --i) {
            f[i] = static_cast<int32_t>(t % static_cast<uint64_t>(p));
            t /= static_cast<uint64_t>(p);
        }
        f[m] = 1;
        if (f[0] == 0) continue;  // divisible by x
        if (cvec_irreducible(f, p)) return finish_ctx(p, m, f);
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

FieldCtxPtr FieldCtx::make_with_modulus(int64_t p, std::vector<int32_t> mod) {
    if (!is_prime_int(p)) throw std::invalid_argument("p must be prime");
    trim_cvec(mod);
    int m = static_cast<int>(mod.size()) - 1;
    if (m < 1 || m > 30) throw std::invalid_argument("modulus degree out of range");
    for (auto& c : mod) c = static_cast<int32_t>(((c % p) + p) % p);
    if (mod.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (m > 1 && !cvec_irreducible(mod, p)) throw std::invalid_argument("modulus is reducible");
    return finish_ctx(p, m, std::move(mod));
}

bool ctx_equal(const FieldCtxPtr& a, const FieldCtxPtr& b) {
    if (a.get() == b.get()) return true;
    return a && b && a->p == b->p && a->modulus == b->modulus;
}

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem(FieldCtxPtr ctx, std::vector<int32_t> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != ctx_->m) throw std::invalid_argument("coefficient vector length mismatch");
    for (auto& x : c_) x = static_cast<int32_t>(((x % ctx_->p) + ctx_->p) % ctx_->p);
}

bool FieldElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int32_t x) { return x == 0; });
}

bool FieldElem::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](int32_t x) { return x == 0; });
}

uint64_t FieldElem::rank() const {
    uint64_t r = 0;
    for (int32_t x : c_) r = r * static_cast<uint64_t>(ctx_->p) + static_cast<uint64_t>(x);
    return r;
}

bool FieldElem::operator==(const FieldElem& o) const {
    return ctx_equal(ctx_, o.ctx_) && c_ == o.c_;
}

static void check_same_ctx(const FieldElem& a, const FieldElem& b) {
    if (!ctx_equal(a.ctx(), b.ctx())) throw std::invalid_argument("mixed field contexts");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same_ctx(*this, o);
    CVec r(c_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = static_cast<int32_t>((r[i] + o.c_[i]) % ctx_->p);
    return FieldElem(ctx_, std::move(r));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same_ctx(*this, o);
    CVec r(c_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = static_cast<int32_t>(((r[i] - o.c_[i]) % ctx_->p + ctx_->p) % ctx_->p);
    return FieldElem(ctx_, std::move(r));
}

FieldElem FieldElem::operator-() const {
    CVec r(c_);
    for (auto& x : r) x = static_cast<int32_t>((ctx_->p - x) % ctx_->p);
    return FieldElem(ctx_, std::move(r));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same_ctx(*this, o);
    int m = ctx_->m;
    int64_t p = ctx_->p;
    if (m == 1) return FieldElem(ctx_, {static_cast<int32_t>(static_cast<int64_t>(c_[0]) * o.c_[0] % p)});
    std::vector<int64_t> conv(2 * m - 1, 0);
    for (int i = 0; i < m; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < m; ++j) conv[i + j] += static_cast<int64_t>(c_[i]) * o.c_[j] % p;
    }
    const auto& red = ctx_->reduction_table();
    CVec r(m, 0);
    for (int i = 0; i < m; ++i) r[i] = static_cast<int32_t>(conv[i] % p);
    for (int k = m; k <= 2 * m - 2; ++k) {
        int64_t c = conv[k] % p;
        if (c == 0) continue;
        const auto& row = red[k - m];
        for (int i = 0; i < m; ++i) r[i] = static_cast<int32_t>((r[i] + c * row[i]) % p);
    }
    return FieldElem(ctx_, std::move(r));
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * inv(o); }

std::string FieldElem::to_text() const {
    std::ostringstream s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s << ',';
        s << c_[i];
    }
    return s.str();
}

FieldElem fe_zero(const FieldCtxPtr& ctx) { return FieldElem(ctx, CVec(ctx->m, 0)); }

FieldElem fe_one(const FieldCtxPtr& ctx) {
    CVec c(ctx->m, 0);
    c[0] = 1;
    return FieldElem(ctx, std::move(c));
}

FieldElem fe_from_int(const FieldCtxPtr& ctx, int64_t v) {
    CVec c(ctx->m, 0);
    c[0] = static_cast<int32_t>(((v % ctx->p) + ctx->p) % ctx->p);
    return FieldElem(ctx, std::move(c));
}

FieldElem fe_from_rank(const FieldCtxPtr& ctx, uint64_t rank) {
    CVec c(ctx->m, 0);
    for (int i = ctx->m - 1; i >= 0; --i) {
        c[i] = static_cast<int32_t>(rank % static_cast<uint64_t>(ctx->p));
        rank /= static_cast<uint64_t>(ctx->p);
    }
    return FieldElem(ctx, std::move(c));
}

FieldElem fe_generator(const FieldCtxPtr& ctx) {
    if (ctx->m == 1) return fe_one(ctx);
    CVec c(ctx->m, 0);
    c[1] = 1;
    return FieldElem(ctx, std::move(c));
}

FieldElem fe_parse(const FieldCtxPtr& ctx, const std::string& text) {
    CVec c;
    std::stringstream s(text);
    std::string tok;
    while (std::getline(s, tok, ',')) c.push_back(static_cast<int32_t>(std::stoll(tok)));
    c.resize(ctx->m, 0);
    return FieldElem(ctx, std::move(c));
}

FieldElem inv(const FieldElem& a) {
    if (a.is_zero()) throw std::invalid_argument("division by zero");
    const auto& ctx = a.ctx();
    int64_t p = ctx->p;
    if (ctx->m == 1) return FieldElem(ctx, {static_cast<int32_t>(mod_inv_i64(a.coeffs()[0], p))});
    // extended Euclid in GF(p)[x] against the modulus
    CVec r0(ctx->modulus.begin(), ctx->modulus.end()), r1 = a.coeffs();
    trim_cvec(r1);
    CVec t0{}, t1{1};
    while (!(r1.size() == 1 || r1.empty())) {
        // divide r0 by r1
        CVec q(r0.size() > r1.size() - 1 ? r0.size() - r1.size() + 1 : 1, 0);
        CVec rem = r0;
        int64_t lead_inv = mod_inv_i64(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            int64_t c = rem.back() * lead_inv % p;
            int shift = static_cast<int>(rem.size() - r1.size());
            q[shift] = static_cast<int32_t>(c);
            for (size_t i = 0; i < r1.size(); ++i) {
                int64_t v = rem[shift + i] - c * r1[i] % p;
                rem[shift + i] = static_cast<int32_t>(((v % p) + p) % p);
            }
            trim_cvec(rem);
            if (rem.size() < r1.size()) break;
        }
        trim_cvec(q);
        // (r0, r1) = (r1, rem); (t0, t1) = (t1, t0 - q t1)
        CVec qt1 = cvec_mul(q, t1, p);
        CVec nt(std::max(t0.size(), qt1.size()), 0);
        for (size_t i = 0; i < nt.size(); ++i) {
            int64_t v = (i < t0.size() ? t0[i] : 0) - (i < qt1.size() ? qt1[i] : 0);
            nt[i] = static_cast<int32_t>(((v % p) + p) % p);
        }
        trim_cvec(nt);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = nt;
    }
    if (r1.empty()) throw std::invalid_argument("element not invertible (modulus not irreducible?)");
    int64_t s = mod_inv_i64(r1[0], p);
    CVec res = t1;
    for (auto& x : res) x = static_cast<int32_t>(static_cast<int64_t>(x) * s % p);
    res = cvec_mod(std::move(res), ctx->modulus, p);
    res.resize(ctx->m, 0);
    return FieldElem(ctx, std::move(res));
}

FieldElem pow(const FieldElem& a, int64_t e) {
    const auto& ctx = a.ctx();
    if (e < 0) return pow(inv(a), -e);
    if (a.is_zero()) {
        if (e == 0) return fe_one(ctx);
        return a;
    }
    uint64_t ord = ctx->size - 1;
    uint64_t ee = static_cast<uint64_t>(e) % ord;
    FieldElem r = fe_one(ctx), b = a;
    while (ee) {
        if (ee & 1) r = r * b;
        b = b * b;
        ee >>= 1;
    }
    return r;
}

static FieldElem pow_u64(const FieldElem& a, uint64_t e) {
    FieldElem r = fe_one(a.ctx()), b = a;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FieldElem frobenius(const FieldElem& a, uint64_t base_q, int k) {
    const auto& ctx = a.ctx();
    auto [bp, be] = split_prime_power(base_q);
    if (bp != ctx->p || ctx->m % be != 0)
        throw std::invalid_argument("frobenius base incompatible with field");
    FieldElem r = a;
    k = ((k % (ctx->m / be)) + ctx->m / be) % (ctx->m / be);
    for (int i = 0; i < k; ++i) r = pow_u64(r, base_q);
    return r;
}

bool is_square(const FieldElem& a) {
    const auto& ctx = a.ctx();
    if (ctx->p == 2)
        throw std::invalid_argument("squareness test unsupported in even characteristic");
    if (a.is_zero()) throw std::invalid_argument("squareness test requires nonzero element");
    return pow_u64(a, (ctx->size - 1) / 2).is_one();
}

// ---------------------------------------------------------------- TowerMap

TowerMap TowerMap::make(const FieldCtxPtr& sub, const FieldCtxPtr& sup) {
    if (sub->p != sup->p || sup->m % sub->m != 0)
        throw std::invalid_argument("no tower: degrees incompatible");
    TowerMap t;
    t.sub = sub;
    t.sup = sup;
    if (ctx_equal(sub, sup)) {
        t.gen_image = fe_generator(sup);
    } else if (sub->m == 1) {
        t.gen_image = fe_one(sup);
    } else {
        Poly mod = Poly::from_coeffs(sup, [&] {
            std::vector<FieldElem> cs;
            for (int32_t c : sub->modulus) cs.push_back(fe_from_int(sup, c));
            return cs;
        }());
        auto roots = poly_roots(mod);
        if (roots.empty()) throw std::invalid_argument("no root of subfield modulus in superfield");
        t.gen_image = roots.front();  // smallest in canonical order
    }
    t.gen_pows_.push_back(fe_one(sup));
    for (int i = 1; i < sub->m; ++i) t.gen_pows_.push_back(t.gen_pows_.back() * t.gen_image);

    // matrix of the F_p-linear map (a_{j,i}) -> sum a_{j,i} * gen^j * X^i,
    // columns indexed by (i, j), inverted once via Gauss-Jordan mod p
    int d = sup->m / sub->m;
    int n = sup->m;
    int64_t p = sup->p;
    FieldElem X = fe_generator(sup);
    std::vector<FieldElem> Xp;
    Xp.push_back(fe_one(sup));
    for (int i = 1; i < d; ++i) Xp.push_back(Xp.back() * X);
    // build augmented matrix [B | I]
    std::vector<std::vector<int64_t>> M(n, std::vector<int64_t>(2 * n, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < sub->m; ++j) {
            FieldElem col = t.gen_pows_[j] * Xp[i];
            int cidx = i * sub->m + j;
            for (int r = 0; r < n; ++r) M[r][cidx] = col.coeffs()[r];
        }
    for (int r = 0; r < n; ++r) M[r][n + r] = 1;
    // Gauss-Jordan
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int pr = -1;
        for (int r = row; r < n; ++r)
            if (M[r][col] % p != 0) { pr = r; break; }
        if (pr < 0) throw std::logic_error("tower basis matrix singular");
        std::swap(M[row], M[pr]);
        int64_t iv = mod_inv_i64(((M[row][col] % p) + p) % p, p);
        for (int cc = 0; cc < 2 * n; ++cc) M[row][cc] = ((M[row][cc] * iv) % p + p) % p;
        for (int r = 0; r < n; ++r) {
            if (r == row) continue;
            int64_t f = ((M[r][col] % p) + p) % p;
            if (f == 0) continue;
            for (int cc = 0; cc < 2 * n; ++cc) M[r][cc] = ((M[r][cc] - f * M[row][cc]) % p + p) % p;
        }
        ++row;
    }
    t.solve_.assign(n, std::vector<int32_t>(n, 0));
    for (int r = 0; r < n; ++r)
        for (int cc = 0; cc < n; ++cc) t.solve_[r][cc] = static_cast<int32_t>(M[r][n + cc]);
    return t;
}

FieldElem TowerMap::embed(const FieldElem& a) const {
    if (!ctx_equal(a.ctx(), sub)) throw std::invalid_argument("embed: element not in subfield");
    FieldElem r = fe_zero(sup);
    for (int j = 0; j < sub->m; ++j) {
        if (a.coeffs()[j] == 0) continue;
        r = r + fe_from_int(sup, a.coeffs()[j]) * gen_pows_[j];
    }
    return r;
}

std::vector<FieldElem> TowerMap::coords_over_sub(const FieldElem& c) const {
    if (!ctx_equal(c.ctx(), sup)) throw std::invalid_argument("coords: element not in superfield");
    int n = sup->m, d = sup->m / sub->m;
    int64_t p = sup->p;
    std::vector<int64_t> sol(n, 0);
    for (int r = 0; r < n; ++r) {
        int64_t acc = 0;
        for (int cc = 0; cc < n; ++cc) acc += static_cast<int64_t>(solve_[r][cc]) * c.coeffs()[cc];
        sol[r] = ((acc % p) + p) % p;
    }
    std::vector<FieldElem> out;
    out.reserve(d);
    for (int i = 0; i < d; ++i) {
        CVec cs(sub->m, 0);
        for (int j = 0; j < sub->m; ++j) cs[j] = static_cast<int32_t>(sol[i * sub->m + j]);
        out.emplace_back(sub, std::move(cs));
    }
    return out;
}

FieldElem TowerMap::contract(const FieldElem& c) const {
    auto coords = coords_over_sub(c);
    for (size_t i = 1; i < coords.size(); ++i)
        if (!coords[i].is_zero()) throw std::invalid_argument("contract: element not in subfield image");
    return coords[0];
}

// ---------------------------------------------------------------- Poly

void Poly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

FieldElem Poly::lead() const {
    if (c.empty()) throw std::invalid_argument("zero polynomial has no leading coefficient");
    return c.back();
}

Poly Poly::one(const FieldCtxPtr& ctx) { return Poly{ctx, {fe_one(ctx)}}; }

Poly Poly::x(const FieldCtxPtr& ctx) { return Poly{ctx, {fe_zero(ctx), fe_one(ctx)}}; }

Poly Poly::from_coeffs(const FieldCtxPtr& ctx, std::vector<FieldElem> cs) {
    Poly p{ctx, std::move(cs)};
    p.trim();
    return p;
}

Poly Poly::from_ints(const FieldCtxPtr& ctx, const std::vector<int64_t>& cs) {
    std::vector<FieldElem> v;
    v.reserve(cs.size());
    for (int64_t x : cs) v.push_back(fe_from_int(ctx, x));
    return from_coeffs(ctx, std::move(v));
}

Poly Poly::parse(const FieldCtxPtr& ctx, const std::string& text) {
    // prime fields: comma-separated residues; extensions: ';' between
    // coefficient vectors, ',' inside each
    std::vector<FieldElem> v;
    std::stringstream s(text);
    std::string tok;
    char sep = ctx->m == 1 ? ',' : ';';
    while (std::getline(s, tok, sep)) v.push_back(fe_parse(ctx, tok));
    return from_coeffs(ctx, std::move(v));
}

std::string Poly::to_text() const {
    std::ostringstream s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s << (ctx->m == 1 ? "," : ";");
        s << c[i].to_text();
    }
    return s.str();
}

bool operator==(const Poly& a, const Poly& b) {
    return ctx_equal(a.ctx, b.ctx) && a.c == b.c;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<FieldElem> r(std::max(a.c.size(), b.c.size()), fe_zero(a.ctx));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
    return Poly::from_coeffs(a.ctx, std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<FieldElem> r(std::max(a.c.size(), b.c.size()), fe_zero(a.ctx));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] - b.c[i];
    return Poly::from_coeffs(a.ctx, std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.ctx);
    std::vector<FieldElem> r(a.c.size() + b.c.size() - 1, fe_zero(a.ctx));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    }
    return Poly::from_coeffs(a.ctx, std::move(r));
}

Poly operator*(const FieldElem& s, const Poly& a) {
    std::vector<FieldElem> r = a.c;
    for (auto& x : r) x = s * x;
    return Poly::from_coeffs(a.ctx, std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    Poly rem = a, q = Poly::zero(a.ctx);
    q.c.assign(a.c.size(), fe_zero(a.ctx));
    FieldElem li = inv(b.lead());
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        FieldElem f = rem.c.back() * li;
        q.c[shift] = q.c[shift] + f;
        for (int i = 0; i <= b.degree(); ++i) rem.c[shift + i] = rem.c[shift + i] - f * b.c[i];
        rem.trim();
    }
    q.trim();
    return {q, rem};
}

Poly poly_mod(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly monic(const Poly& a) {
    if (a.is_zero()) return a;
    return inv(a.lead()) * a;
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return monic(a);
}

Poly poly_modexp(const Poly& base, uint64_t e, const Poly& mod) {
    Poly r = Poly::one(base.ctx), b = poly_mod(base, mod);
    while (e) {
        if (e & 1) r = poly_mod(r * b, mod);
        b = poly_mod(b * b, mod);
        e >>= 1;
    }
    return r;
}

Poly derivative(const Poly& a) {
    std::vector<FieldElem> r;
    for (size_t i = 1; i < a.c.size(); ++i)
        r.push_back(fe_from_int(a.ctx, static_cast<int64_t>(i)) * a.c[i]);
    return Poly::from_coeffs(a.ctx, std::move(r));
}

FieldElem poly_eval(const Poly& a, const FieldElem& at) {
    FieldElem r = fe_zero(at.ctx());
    for (size_t i = a.c.size(); i-- > 0;) r = r * at + a.c[i];
    return r;
}

namespace {

bool cvec_irreducible(const CVec& f, int64_t p) {
    auto ctx = FieldCtx::make(p, 1);
    std::vector<FieldElem> cs;
    for (int32_t c : f) cs.push_back(fe_from_int(ctx, c));
    return is_irreducible(Poly::from_coeffs(ctx, std::move(cs)));
}

}  // namespace

bool is_irreducible(const Poly& f) {
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const auto& ctx = f.ctx;
    uint64_t q = ctx->size;
    Poly fm = monic(f);
    // x^(q^n) == x mod f, and gcd(x^(q^(n/l)) - x, f) = 1 for prime l | n
    Poly h = Poly::x(ctx);
    std::vector<Poly> frob_pows;  // x^(q^i) mod f
    frob_pows.push_back(h);
    for (int i = 1; i <= n; ++i) {
        h = poly_modexp(h, q, fm);
        frob_pows.push_back(h);
    }
    if (!(poly_mod(frob_pows[n] - Poly::x(ctx), fm).is_zero())) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime_int(l)) continue;
        Poly g = poly_gcd(frob_pows[n / l] - Poly::x(ctx), fm);
        if (g.degree() != 0) return false;
    }
    return true;
}

// Cantor-Zassenhaus with deterministic seeding.
namespace {

bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        uint64_t ra = a.c[i].rank(), rb = b.c[i].rank();
        if (ra != rb) return ra < rb;
    }
    return false;
}

Poly pth_root(const Poly& f) {
    // f = g(x^p); returns g, taking p-th roots of coefficients
    const auto& ctx = f.ctx;
    int64_t p = ctx->p;
    uint64_t root_exp = 1;
    for (int i = 0; i < ctx->m - 1; ++i) root_exp *= static_cast<uint64_t>(p);  // a^(p^(m-1))
    std::vector<FieldElem> r;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) r.push_back(pow_u64(f.c[i], root_exp));
    return Poly::from_coeffs(ctx, std::move(r));
}

void squarefree_decompose(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    const auto& ctx = f.ctx;
    int64_t p = ctx->p;
    if (f.degree() <= 0) return;
    Poly d = derivative(f);
    if (d.is_zero()) {
        squarefree_decompose(pth_root(f), mult * static_cast<int>(p), out);
        return;
    }
    Poly c = poly_gcd(f, d);
    Poly w = divmod(f, c).first;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, c);
        Poly fac = divmod(w, y).first;
        if (fac.degree() > 0) out.emplace_back(monic(fac), mult * i);
        w = y;
        c = divmod(c, y).first;
        ++i;
    }
    if (c.degree() > 0) squarefree_decompose(pth_root(c), mult * static_cast<int>(p), out);
}

Poly random_poly(const FieldCtxPtr& ctx, int max_deg, SplitMix64& rng) {
    std::vector<FieldElem> cs;
    for (int i = 0; i <= max_deg; ++i) cs.push_back(fe_from_rank(ctx, rng.next() % ctx->size));
    return Poly::from_coeffs(ctx, std::move(cs));
}

void edf(const Poly& f, int d, SplitMix64& rng, std::vector<Poly>& out) {
    if (f.degree() == d) {
        out.push_back(monic(f));
        return;
    }
    const auto& ctx = f.ctx;
    uint64_t q = ctx->size;
    Poly split = Poly::zero(ctx);
    while (true) {
        Poly r = random_poly(ctx, f.degree() - 1, rng);
        if (r.degree() < 1) continue;
        Poly s;
        if (ctx->p == 2) {
            // trace map over F_2: r + r^2 + .. + r^(2^(e*d - 1))
            int e = 0;
            uint64_t qq = q;
            while (qq > 1) { qq >>= 1; ++e; }
            Poly acc = poly_mod(r, f), term = acc;
            for (int i = 1; i < e * d; ++i) {
                term = poly_mod(term * term, f);
                acc = acc + term;
            }
            s = acc;
        } else {
            // r^((q^d-1)/2) via norm then (q-1)/2 power
            Poly nr = poly_mod(r, f), acc = nr;
            for (int i = 1; i < d; ++i) {
                nr = poly_modexp(nr, q, f);
                acc = poly_mod(acc * nr, f);
            }
            s = poly_modexp(acc, (q - 1) / 2, f) - Poly::one(ctx);
        }
        Poly g = poly_gcd(s, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split = g;
            break;
        }
    }
    edf(split, d, rng, out);
    edf(divmod(f, split).first, d, rng, out);
}

}  // namespace

std::vector<std::pair<Poly, int>> factor_poly(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decompose(monic(f), 1, sqf);
    SplitMix64 rng(0x5eedf00ddeadbeefull);
    std::vector<std::pair<Poly, int>> out;
    for (auto& [part, mult] : sqf) {
        // distinct-degree then equal-degree splitting
        Poly rest = part;
        Poly h = Poly::x(f.ctx);
        int d = 0;
        while (rest.degree() > 0) {
            ++d;
            if (2 * d > rest.degree()) {
                out.emplace_back(monic(rest), mult);
                break;
            }
            h = poly_modexp(h, f.ctx->size, rest);
            Poly g = poly_gcd(h - Poly::x(f.ctx), rest);
            if (g.degree() > 0) {
                std::vector<Poly> irr;
                edf(g, d, rng, irr);
                for (auto& pi : irr) out.emplace_back(pi, mult);
                rest = divmod(rest, g).first;
                h = poly_mod(h, rest);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

std::vector<FieldElem> poly_roots(const Poly& f) {
    std::vector<FieldElem> roots;
    for (auto& [fac, mult] : factor_poly(f))
        if (fac.degree() == 1) roots.push_back(-fac.c[0]);
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace dpc
