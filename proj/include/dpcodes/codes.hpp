#pragma once

// Linear-code core: rank/dimension, exact minimum distance and weight
// distribution by projective message enumeration, puncturing, monomial
// automorphism verification, and best-known-parameter comparison against a
// shipped snapshot.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpcodes/geom.hpp"
#include "dpcodes/linalg.hpp"

namespace dpc {

struct LinearCode {
    FieldCtxPtr ctx;
    size_t k = 0, n = 0;
    std::vector<FieldElem> gen;  // row-major k x n
    std::string provenance;

    FieldElem& at(size_t i, size_t j) { return gen[i * n + j]; }
    const FieldElem& at(size_t i, size_t j) const { return gen[i * n + j]; }

    static LinearCode from_rows(const FieldCtxPtr& ctx, const std::vector<std::vector<FieldElem>>& rows,
                                std::string provenance = {});
    static LinearCode from_int_rows(const FieldCtxPtr& ctx, const std::vector<std::vector<int64_t>>& rows,
                                    std::string provenance = {});

    std::vector<FieldElem> column(size_t j) const;
};

struct ReducedCode {
    LinearCode rref;             // dimension rows, RREF
    size_t dimension = 0;
    std::vector<size_t> pivots;
};

ReducedCode reduce(const LinearCode& code);

/// Exact minimum Hamming weight over all nonzero codewords; guard on the
/// projective message count. `workers` > 1 splits the message space.
int64_t min_distance(const LinearCode& code, int workers = 1);

/// weight -> number of projective codeword classes of that weight.
std::map<int64_t, int64_t> weight_distribution(const LinearCode& code, int workers = 1);

LinearCode puncture(const LinearCode& code, const std::vector<size_t>& positions);

/// Column permutation with nonzero column scalings: c'_j = scales[j] * c_perm[j].
struct MonomialMap {
    std::vector<size_t> perm;
    std::vector<FieldElem> scales;

    static MonomialMap identity_map(const FieldCtxPtr& ctx, size_t n);
    bool is_identity() const;
};

MonomialMap compose(const MonomialMap& a, const MonomialMap& b);
MonomialMap global_scalar_map(const FieldCtxPtr& ctx, size_t n, const FieldElem& s);

bool is_automorphism(const LinearCode& code, const MonomialMap& m);
int64_t map_order(const MonomialMap& m);

/// Externally computed full automorphism-group orders of the degree-6
/// anticanonical codes (reference values, not recomputed here); they factor
/// as 6(q^2-q+1)(q-1): surface automorphisms times scalar maps.
///   q = 4 -> 234,  q = 5 -> 504,  q = 7 -> 1548
std::optional<int64_t> dp6_code_automorphism_order(uint64_t q);

// ------------------------------------------------- best-known snapshot

struct BestKnownTable {
    std::map<std::tuple<int64_t, int64_t, uint64_t>, int64_t> entries;  // (n,k,q) -> d
};

BestKnownTable load_best_known(const std::string& path);

struct BestKnownVerdict {
    std::optional<int64_t> paper_era_best;
    std::string verdict;  // "beats" | "attains" | "below" | "no reference data"
};

BestKnownVerdict compare_best_known(int64_t n, int64_t k, uint64_t q, int64_t computed_d,
                                    const BestKnownTable& table);

// ------------------------------------------------- output formats

/// Paper-style digit rows, prime fields only.
std::string emit_matrix_text(const LinearCode& code);
/// JSON with the field modulus and coefficient vectors (any field).
std::string emit_matrix_json(const LinearCode& code);

}  // namespace dpc
