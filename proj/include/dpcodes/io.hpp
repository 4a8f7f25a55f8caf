#pragma once

// Model save/load (JSON) and fixture-file parsing.

#include <string>
#include <variant>

#include "dpcodes/surfaces.hpp"

namespace dpc {

using AnyModel = std::variant<PlaneModelDP6, PlaneModelDP5, QuadricModelDP4>;

std::string model_to_json(const PlaneModelDP6& m);
std::string model_to_json(const PlaneModelDP5& m);
std::string model_to_json(const QuadricModelDP4& m);

/// Loads a model file: rebuilds deterministically from the stored inputs and
/// verifies the stored derived data against the rebuild.
AnyModel load_model_json(const std::string& path);

struct QuadricPair {
    FieldCtxPtr ctx;
    HomForm Qa, Qb;
};

/// Text fixture: a `field p m modulus` line, then two `quadric`..`end`
/// blocks of `exponents coeffs` lines.
QuadricPair load_quadric_pair(const std::string& path);

/// The synthesized automorphism matrix and its induced monomial map, as
/// JSON, for replay against a code built elsewhere.
std::string automorphism_to_json(const Mat& A, const MonomialMap& m);

struct LoadedAutomorphism {
    Mat A;
    MonomialMap map;
};
LoadedAutomorphism load_automorphism_json(const std::string& path);

}  // namespace dpc
