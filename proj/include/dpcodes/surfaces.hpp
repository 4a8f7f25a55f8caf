#pragma once

// The three del Pezzo families of Picard rank one: degree-6 and degree-5
// plane models built from conic orbits, and degree-4 quadric-pair models in
// P^4 built from a Frobenius type; rational-point enumeration, anticanonical
// generator matrices, and the quadric-pencil type classifier.

#include <string>
#include <vector>

#include "dpcodes/codes.hpp"
#include "dpcodes/geom.hpp"
#include "dpcodes/picard.hpp"

namespace dpc {

struct PlaneModelDP6 {
    FieldCtxPtr q_ctx;
    uint64_t seed = 0;
    PointOrbit orbit2, orbit3;
    HomForm L, C;                // line through the degree-2 orbit; conic through all five
    LinearSystemBasis sextics;   // 7 forms: triple at orbit2, double at orbit3
    std::vector<ProjPoint> off_points;  // P^2(F_q) minus L(F_q) and C(F_q), canonical order
    ProjPoint l_rep, c_rep;      // first rational point of L resp. C

    /// Evaluation points in column order: off points, then l_rep, then c_rep.
    std::vector<ProjPoint> column_points() const;
};

struct PlaneModelDP5 {
    FieldCtxPtr q_ctx;
    uint64_t seed = 0;
    PointOrbit orbit;            // one size-5 orbit
    HomForm C;
    LinearSystemBasis quintics;  // raw 6-dim system
    LinearSystemBasis basis;     // reordered {f1 hC, .., f5 hC, hQ}
    std::vector<ProjPoint> plane_points;   // all of P^2(F_q), canonical order
    std::vector<size_t> conic_positions;   // indices of rational conic points
    size_t r1_pos = 0;                     // the kept conic point
    std::vector<size_t> column_positions;  // plane-point indices of code columns, in place

    std::vector<ProjPoint> column_points() const;
};

struct QuadricModelDP4 {
    FieldCtxPtr q_ctx;
    std::string type_label;  // 4_1 / 4_2 / 4_3
    std::string pencil;      // classifier round-trip result
    uint64_t seed = 0;
    std::vector<Poly> factors;  // distinct monic irreducibles, degrees summing to 5
    std::vector<Poly> deltas;   // delta_i as polynomials mod f_i
    Poly f;                     // product of the factors
    Poly delta;                 // CRT lift of the delta_i
    HomForm Q3, Q4;             // the cut quadrics in P^4
    std::vector<ProjPoint> points;  // X(F_q), canonical order
};

// ------------------------------------------------------------ degree 6

PlaneModelDP6 build_dp6(const FieldCtxPtr& q_ctx, uint64_t seed);
LinearCode dp6_code(const PlaneModelDP6& m);

// ------------------------------------------------------------ degree 5

PlaneModelDP5 build_dp5(const FieldCtxPtr& q_ctx, uint64_t seed);
LinearCode dp5_code(const PlaneModelDP5& m);
/// Image of P^2(F_q) under the anticanonical map into P^5, deduplicated.
std::vector<ProjPoint> dp5_embed(const PlaneModelDP5& m);

// ------------------------------------------------------------ degree 4

/// Flynn-style model for one of the rank-one types; factor/delta choices are
/// deterministic in the seed.
QuadricModelDP4 flynn_build(const FieldCtxPtr& q_ctx, const std::string& type_label, uint64_t seed);

/// Same with explicit factors; delta_hint is "x" (the class of x in each
/// residue field) or per-factor coefficient lists separated by ';'.
QuadricModelDP4 flynn_build_explicit(const FieldCtxPtr& q_ctx, const std::vector<Poly>& factors,
                                     const std::string& delta_hint = "x");
QuadricModelDP4 flynn_build_explicit(const FieldCtxPtr& q_ctx, const std::vector<Poly>& factors,
                                     const std::vector<Poly>& deltas);

std::vector<ProjPoint> enumerate_surface_points(const std::vector<HomForm>& quadrics,
                                                const FieldCtxPtr& ctx, int r = 4);
LinearCode dp4_code(const QuadricModelDP4& m);

/// Re-checks the defining expansion delta * (x0 + x1 x + .. + x4 x^4)^2 =
/// sum Q_j x^j in F_q[x]/(f) at sampled numeric points.
bool verify_flynn_identity(const QuadricModelDP4& m, int samples = 25);

/// Classifies the pencil spanned by two quadrics in P^4: factors the
/// degree-5 singular-parameter form, checks each singular member has a
/// one-dimensional radical, and reads epsilon off the rank-4 quotient form
/// (discriminant square class in odd characteristic, Arf invariant in
/// characteristic 2). Returns "d1[e1]..dr[er]", factors sorted by degree
/// descending.
std::string verify_pencil_type(const HomForm& Qa, const HomForm& Qb);

// ------------------------------------------------------------ oracles

/// Independent minimum-distance oracle: enumerate the projective sections
/// spanned by `forms`, evaluate each combined form at the points, and return
/// n minus the maximal number of vanishing columns.
int64_t oracle_min_distance_by_sections(const std::vector<HomForm>& forms,
                                        const std::vector<ProjPoint>& points);

}  // namespace dpc
