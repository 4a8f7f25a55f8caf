#pragma once

// Dense exact linear algebra over a FieldCtx, plus small integer-matrix
// utilities (characteristic polynomials, cyclotomic factors) used by the
// Picard-lattice tables.

#include <cstdint>
#include <functional>
#include <vector>

#include "dpcodes/gf.hpp"

namespace dpc {

class Mat {
  public:
    Mat() = default;
    Mat(FieldCtxPtr ctx, size_t rows, size_t cols);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    const FieldCtxPtr& ctx() const { return ctx_; }

    FieldElem& at(size_t i, size_t j) { return a_[i * c_ + j]; }
    const FieldElem& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

    static Mat identity(const FieldCtxPtr& ctx, size_t n);
    static Mat from_rows(const FieldCtxPtr& ctx, const std::vector<std::vector<FieldElem>>& rows);

    Mat operator*(const Mat& o) const;
    bool operator==(const Mat& o) const;

    /// In-place reduced row echelon form; returns pivot column indices.
    std::vector<size_t> rref();
    size_t rank() const;
    /// Basis of the right kernel, one vector per row of the result.
    Mat kernel() const;
    Mat inverse() const;
    FieldElem det() const;
    Mat transpose() const;

    std::vector<FieldElem> apply(const std::vector<FieldElem>& v) const;  // M v

  private:
    FieldCtxPtr ctx_;
    size_t r_ = 0, c_ = 0;
    std::vector<FieldElem> a_;
};

/// Solves A x = b; empty optional when inconsistent. A may be rectangular;
/// when underdetermined the free variables are set to zero.
std::optional<std::vector<FieldElem>> solve_linear(const Mat& A, const std::vector<FieldElem>& b);

// ------------------------------------------------------------- IntMat

struct IntMat {
    int n = 0;
    std::vector<int64_t> a;  // row-major n*n

    int64_t& at(int i, int j) { return a[i * n + j]; }
    int64_t at(int i, int j) const { return a[i * n + j]; }

    static IntMat identity(int n);
    static IntMat from_rows(const std::vector<std::vector<int64_t>>& rows);

    IntMat operator*(const IntMat& o) const;
    bool operator==(const IntMat& o) const;
    int64_t trace() const;
    IntMat transpose() const;

    std::vector<int64_t> apply(const std::vector<int64_t>& v) const;
};

/// Exact characteristic polynomial det(xI - M), coefficients constant first.
std::vector<int64_t> charpoly(const IntMat& m);

/// Cyclotomic polynomial for n in {1,2,3,4,5,6,8}, constant first.
std::vector<int64_t> cyclotomic(int n);

std::vector<int64_t> poly_mul_i64(const std::vector<int64_t>& a, const std::vector<int64_t>& b);

/// Multiplicity of (x - 1) in an integer polynomial.
int root_one_multiplicity(std::vector<int64_t> poly);

}  // namespace dpc
