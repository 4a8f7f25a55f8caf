#pragma once

// Projective points, homogeneous forms, incidence helpers, Frobenius orbits
// on a smooth conic, and linear systems of plane curves with prescribed
// multiple base points (computed by Weil-restriction linear algebra).

#include <map>
#include <string>
#include <vector>

#include "dpcodes/gf.hpp"
#include "dpcodes/linalg.hpp"

namespace dpc {

/// Point of P^r, normalized so the first nonzero coordinate is 1.
class ProjPoint {
  public:
    ProjPoint() = default;  // placeholder; invalid until assigned
    ProjPoint(FieldCtxPtr ctx, std::vector<FieldElem> coords);

    const FieldCtxPtr& ctx() const { return ctx_; }
    const std::vector<FieldElem>& coords() const { return x_; }
    size_t dim() const { return x_.size() - 1; }
    size_t lead() const { return lead_; }  // index of the leading 1

    bool operator==(const ProjPoint& o) const { return x_ == o.x_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

    std::string to_text() const;  // colon-separated coordinates
    static ProjPoint parse(const FieldCtxPtr& ctx, const std::string& text);

  private:
    FieldCtxPtr ctx_;
    std::vector<FieldElem> x_;
    size_t lead_ = 0;
};

// Monomials of fixed total degree in graded-lex order (descending exponent
// vectors); index 0 is the largest monomial.
const std::vector<std::vector<uint8_t>>& monomials(int nvars, int degree);
int monomial_index(int nvars, int degree, const std::vector<uint8_t>& exps);

/// Homogeneous form; sparse coefficients keyed by monomial index.
class HomForm {
  public:
    HomForm() = default;
    HomForm(FieldCtxPtr ctx, int nvars, int degree);

    FieldCtxPtr ctx;
    int nvars = 0;
    int degree = 0;
    std::map<int, FieldElem> coeffs;  // monomial index -> nonzero coefficient

    void set(const std::vector<uint8_t>& exps, const FieldElem& c);
    FieldElem get(const std::vector<uint8_t>& exps) const;
    bool is_zero() const { return coeffs.empty(); }

    std::vector<FieldElem> dense() const;  // coefficient vector over all monomials
    static HomForm from_dense(const FieldCtxPtr& ctx, int nvars, int degree,
                              const std::vector<FieldElem>& v);

    HomForm operator+(const HomForm& o) const;
    HomForm operator-(const HomForm& o) const;
    HomForm operator*(const HomForm& o) const;
    HomForm scaled(const FieldElem& s) const;
    bool operator==(const HomForm& o) const;

    /// Scales so the graded-lex leading coefficient is 1.
    HomForm normalized() const;

    std::string to_text() const;
    static HomForm parse(const FieldCtxPtr& ctx, const std::string& text);
};

FieldElem evaluate(const HomForm& f, const ProjPoint& p);

/// Coefficientwise embedding along a tower (form over sub -> form over sup).
HomForm embed_form(const TowerMap& t, const HomForm& f);
/// Coefficientwise contraction (throws if a coefficient is not rational).
HomForm contract_form(const TowerMap& t, const HomForm& f);
/// Coefficientwise a -> a^base_q.
HomForm frobenius_form(const HomForm& f, uint64_t base_q);

/// Remainder of f under reduction by g (single-divisor division, graded-lex).
HomForm reduce_by(const HomForm& f, const HomForm& g);

// ------------------------------------------------------------- incidence

std::vector<ProjPoint> enumerate_projective(const FieldCtxPtr& ctx, int r);

HomForm line_through(const ProjPoint& p, const ProjPoint& q);
bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);
HomForm conic_through(const std::vector<ProjPoint>& pts);  // exactly 5 points, same ctx

// ------------------------------------------------------------- orbits

/// A Frobenius orbit of plane points over an extension of the base field.
struct PointOrbit {
    FieldCtxPtr base;
    FieldCtxPtr ext;
    TowerMap tower;    // base -> ext
    FieldElem t;       // conic parameter of the representative (1 : t : t^2)
    int degree = 0;    // orbit size
    std::vector<ProjPoint> points;  // sigma-consecutive conjugates

    PointOrbit cycled(int shift) const;    // relabel starting at conjugate #shift
    PointOrbit reversed() const;           // sigma^-1 ordering
};

/// Chooses orbits of the given degrees on the conic xz = y^2, deterministic
/// in the seed. Every point is (1 : t : t^2) with t of exact degree d.
std::vector<PointOrbit> pick_orbits(const FieldCtxPtr& q_ctx, const std::vector<int>& degrees,
                                    uint64_t seed);

/// The conic xz - y^2 as a form over ctx.
HomForm standard_conic(const FieldCtxPtr& ctx);

/// True when no three of the points (joined across orbits, embedded in a
/// common extension) are collinear.
bool orbits_in_general_position(const std::vector<PointOrbit>& orbits);

// -------------------------------------------------------- linear systems

struct LinearSystemBasis {
    FieldCtxPtr base_ctx;
    std::vector<HomForm> forms;  // RREF rows w.r.t. graded-lex monomials

    size_t size() const { return forms.size(); }
};

/// Basis over GF(q) of degree-`degree` forms vanishing to order >= mult at
/// every point of every orbit. One representative per orbit is constrained;
/// Taylor (shift) conditions over the orbit field are Weil-restricted to
/// GF(q)-linear conditions.
LinearSystemBasis linear_system(const FieldCtxPtr& q_ctx, int nvars, int degree,
                                const std::vector<std::pair<PointOrbit, int>>& conditions);

/// Vanishing-order test by direct Taylor expansion at p (same context;
/// embed the form first when the point lives in an extension).
bool vanishes_to_order(const HomForm& f, const ProjPoint& p, int mult);

/// Reorders the 6-dim quintic system as {f1 hC, .., f5 hC, hQ} with hQ the
/// first RREF completion not divisible by hC.
LinearSystemBasis restructure_quintic_basis(const LinearSystemBasis& sys, const HomForm& h_C,
                                            const LinearSystemBasis& cubics);

}  // namespace dpc
