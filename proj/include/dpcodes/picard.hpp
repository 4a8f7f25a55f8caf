#pragma once

// Geometric Picard lattice in the E-basis: intersection pairing, canonical
// classes, Frobenius-action matrices and type tables, predicted point counts,
// and the numerical bounds used in minimum-distance arguments.

#include <optional>
#include <string>
#include <vector>

#include "dpcodes/linalg.hpp"

namespace dpc {

/// Divisor class as integer coefficients on (E0, E1, .., Er).
struct DivClass {
    std::vector<int64_t> a;

    size_t rank() const { return a.size(); }
    bool operator==(const DivClass& o) const { return a == o.a; }
};

int64_t intersect(const DivClass& A, const DivClass& B);
DivClass canonical_class(int r);  // -3 E0 + sum E_i, length r+1
DivClass add(const DivClass& A, const DivClass& B);
int64_t adjunction_genus(const DivClass& D, const DivClass& K);

enum class LatticeBasis { E, F };

struct FrobAction {
    IntMat matrix;
    LatticeBasis basis = LatticeBasis::E;
};

int64_t predicted_points(uint64_t q, const FrobAction& F);

/// M^T J M == J with J = diag(1, -1, .., -1).
bool preserves_intersection(const IntMat& m);
/// M . K == K for the canonical class of matching rank.
bool fixes_canonical(const IntMat& m);

/// Orthogonal complement basis of the given (-1)-classes, realizing
/// self-intersections (+1, -1, .., -1); bounded integer search (|a_i| <= 3),
/// sufficient for the configurations that occur here.
std::vector<DivClass> orthogonal_basis(const std::vector<DivClass>& sub);

struct Bounds {
    int64_t hws;            // q + 1 + floor(2 sqrt(q))
    int64_t reducible_cap;  // 2
};
Bounds bounds(uint64_t q);
bool griesmer_feasible(uint64_t q, int64_t n, int64_t k, int64_t d);

// ---------------------------------------------------------------- tables

struct CodeParams {
    int64_t n, k, d_lower;
};

struct SurfaceType {
    int degree;               // 4, 5 or 6
    std::string label;        // e.g. "6_6"
    std::string weyl_class;   // degree 5/6: conjugacy class description
    std::string pencil;       // degree 4: d1[e1]..dr[er]
    std::string eigenvalues;  // display string
    int64_t trace;
    int picard_rank;
    std::vector<int> cyclotomic_factors;  // charpoly = product of these Phi_n
    FrobAction action;                    // E-basis matrix
};

const std::vector<SurfaceType>& type_table(int degree);
const SurfaceType& type_by_label(const std::string& label);

/// Frobenius matrices printed for the rank-one surfaces, in the F-basis.
FrobAction dp6_frobenius_printed();
FrobAction dp5_frobenius_printed();

/// Builds the E-basis action of a degree-4 type from its pencil string
/// (blocks act on the ten conic classes C_i, C'_i).
IntMat dp4_action_from_pencil(const std::string& pencil);

/// Expected [n, k, d>=] of the anticanonical code for a rank-one type.
/// Throws std::invalid_argument below the validity threshold.
CodeParams expected_parameters(const SurfaceType& type, uint64_t q);
CodeParams expected_parameters(const std::string& label, uint64_t q);

}  // namespace dpc
