#pragma once

// Exact arithmetic in GF(p^m): field contexts with deterministic moduli,
// elements as coefficient vectors over the prime field, subfield embeddings,
// Frobenius, squareness tests and univariate polynomial factorization.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpc {

// Thrown when a resource guard trips (CLI maps this to exit code 2).
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

/// Immutable field context for GF(p^m). Elements are length-m coefficient
/// vectors over GF(p), constant term first, reduced modulo a monic
/// irreducible modulus of degree m.
class FieldCtx {
  public:
    int64_t p;
    int m;
    std::vector<int32_t> modulus;  // length m+1, constant first, monic
    uint64_t size;                 // p^m

    bool prime_field() const { return m == 1; }

    // x^k mod modulus for k = m .. 2m-2, as coefficient vectors
    const std::vector<std::vector<int32_t>>& reduction_table() const { return red_; }

    static FieldCtxPtr make(int64_t p, int m);                                // canonical modulus
    static FieldCtxPtr make_with_modulus(int64_t p, std::vector<int32_t> mod);  // explicit modulus

  private:
    std::vector<std::vector<int32_t>> red_;
    FieldCtx() = default;
    friend FieldCtxPtr finish_ctx(int64_t, int, std::vector<int32_t>);
};

bool ctx_equal(const FieldCtxPtr& a, const FieldCtxPtr& b);

class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(FieldCtxPtr ctx, std::vector<int32_t> coeffs);

    const FieldCtxPtr& ctx() const { return ctx_; }
    const std::vector<int32_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;

    // canonical element order: coefficient vectors compared lexicographically,
    // constant term first
    uint64_t rank() const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    bool operator<(const FieldElem& o) const { return rank() < o.rank(); }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;

    std::string to_text() const;  // comma-separated residues, constant first

  private:
    FieldCtxPtr ctx_;
    std::vector<int32_t> c_;
};

FieldElem fe_zero(const FieldCtxPtr& ctx);
FieldElem fe_one(const FieldCtxPtr& ctx);
FieldElem fe_from_int(const FieldCtxPtr& ctx, int64_t v);        // prime-subfield element
FieldElem fe_from_rank(const FieldCtxPtr& ctx, uint64_t rank);
FieldElem fe_generator(const FieldCtxPtr& ctx);                  // class of x (m>=2), 1 for prime fields
FieldElem fe_parse(const FieldCtxPtr& ctx, const std::string& text);

FieldElem inv(const FieldElem& a);
FieldElem pow(const FieldElem& a, int64_t e);

/// a^(base_q^k); base_q must be p^e with e dividing ctx.m.
FieldElem frobenius(const FieldElem& a, uint64_t base_q, int k);

/// True iff a^((|F|-1)/2) = 1. Odd characteristic only, a != 0.
bool is_square(const FieldElem& a);

/// Subfield embedding GF(p^e) -> GF(p^(e*d)). gen_image is the smallest root
/// (canonical element order) of sub's modulus in sup, so the map is
/// deterministic. Also provides GF(q)-coordinates in the basis 1, X, ..,
/// X^(d-1) of the big field (X = class of x), used for Weil restriction.
class TowerMap {
  public:
    TowerMap() = default;  // placeholder; invalid until assigned
    FieldCtxPtr sub, sup;
    FieldElem gen_image;

    static TowerMap make(const FieldCtxPtr& sub, const FieldCtxPtr& sup);

    FieldElem embed(const FieldElem& a) const;
    /// coordinates of c over sub w.r.t. the basis {X^i}, length sup.m/sub.m
    std::vector<FieldElem> coords_over_sub(const FieldElem& c) const;
    /// inverse of embed; throws if c is not in the image
    FieldElem contract(const FieldElem& c) const;

    int relative_degree() const { return sup->m / sub->m; }

  private:
    std::vector<FieldElem> gen_pows_;          // gen_image^i, i < sub.m
    std::vector<std::vector<int32_t>> solve_;  // precomputed RREF data for coords
};

// ---------------------------------------------------------------- polynomials

/// Univariate polynomial over a FieldCtx, coefficients constant term first.
struct Poly {
    FieldCtxPtr ctx;
    std::vector<FieldElem> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    void trim();
    FieldElem lead() const;

    static Poly zero(const FieldCtxPtr& ctx) { return Poly{ctx, {}}; }
    static Poly one(const FieldCtxPtr& ctx);
    static Poly x(const FieldCtxPtr& ctx);
    static Poly from_coeffs(const FieldCtxPtr& ctx, std::vector<FieldElem> cs);
    static Poly from_ints(const FieldCtxPtr& ctx, const std::vector<int64_t>& cs);
    static Poly parse(const FieldCtxPtr& ctx, const std::string& text);

    std::string to_text() const;
};

bool operator==(const Poly& a, const Poly& b);
Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const FieldElem& s, const Poly& a);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic
Poly poly_modexp(const Poly& base, uint64_t e, const Poly& mod);
Poly derivative(const Poly& a);
Poly monic(const Poly& a);
FieldElem poly_eval(const Poly& a, const FieldElem& at);

bool is_irreducible(const Poly& f);

/// Full factorization into monic irreducibles with multiplicities; factors
/// sorted by degree then lexicographically by coefficients. Deterministic
/// (internal randomness runs off a fixed seed).
std::vector<std::pair<Poly, int>> factor_poly(const Poly& f);

/// Roots of f in its coefficient field, sorted in canonical element order.
std::vector<FieldElem> poly_roots(const Poly& f);

// ---------------------------------------------------------------- misc utils

bool is_prime_int(int64_t n);
uint64_t isqrt_u64(uint64_t n);
int64_t ipow_checked(int64_t b, int e, int64_t limit);

/// Splits a prime power q = p^m; throws std::invalid_argument otherwise.
std::pair<int64_t, int> split_prime_power(uint64_t q);

struct SplitMix64 {
    uint64_t s;
    explicit SplitMix64(uint64_t seed) : s(seed) {}
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

}  // namespace dpc
