#pragma once

// Synthesis of the explicit order-5 automorphism of the degree-5 surface:
// the plane Cremona map determined by the orbit, the induced change of basis
// between the two anticanonical quintic bases, and the resulting rational
// 6x6 matrix acting on the anticanonical model, delivered as a verified
// monomial automorphism of the code.
//
// Only the degree-5 pipeline is constructive. The degree-6 surface has
// 6(q^2-q+1) rational automorphisms, but no explicit matrices are known in
// closed form, so nothing is synthesized for it here.

#include <map>

#include "dpcodes/surfaces.hpp"

namespace dpc {

struct CremonaData {
    FieldCtxPtr ext;   // F_{q^5}
    TowerMap tower;    // F_q -> ext
    std::vector<ProjPoint> pts;                     // labeled orbit p1..p5
    std::map<std::pair<int, int>, HomForm> lines;   // 1-based (i < j)
    FieldElem u, v, w;
    FieldElem alpha0, alpha1, alpha2;
    std::vector<HomForm> image_quintics;  // g0..g5 over ext
    Mat expand;        // B_i = sum_j expand[i][j] g_j over ext
    Mat A;             // 6x6 over F_q, scaled so A^5 = Id
    int orbit_shift = 0;
    bool orbit_reversed = false;
    bool conjugated_inverse = false;
};

/// The linear action of the standard order-5 plane Cremona transformation on
/// the anticanonical model of the split surface.
IntMat quintic_rotation_matrix();

/// The six cubics through the four standard base points, in model order.
std::vector<HomForm> split_model_cubics(const FieldCtxPtr& ctx);

/// delta: (x : y : z) -> (x(z - y) : z(x - y) : xz).
ProjPoint split_cremona_map(const ProjPoint& p);

/// Evaluates the orbit-determined Cremona map Phi at a point of P^2(ext).
ProjPoint apply_phi(const CremonaData& d, const ProjPoint& p);

/// Full pipeline: tries the cyclic orbit relabelings (and orientation, and
/// both conjugation directions) until the conjugated action is rational over
/// GF(q); throws if none passes.
CremonaData synthesize_order5(const PlaneModelDP5& m);

/// The column permutation-with-scalings that A induces on the code columns.
MonomialMap induced_monomial(const Mat& A_q, const LinearCode& code);

}  // namespace dpc
