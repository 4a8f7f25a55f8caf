#include "dpcodes/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpc {

Mat::Mat(FieldCtxPtr ctx, size_t rows, size_t cols)
    : ctx_(std::move(ctx)), r_(rows), c_(cols), a_(rows * cols, fe_zero(ctx_)) {}

Mat Mat::identity(const FieldCtxPtr& ctx, size_t n) {
    Mat m(ctx, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = fe_one(ctx);
    return m;
}

Mat Mat::from_rows(const FieldCtxPtr& ctx, const std::vector<std::vector<FieldElem>>& rows) {
    Mat m(ctx, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.c_) throw std::invalid_argument("ragged rows");
        for (size_t j = 0; j < m.c_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix size mismatch");
    Mat m(ctx_, r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const FieldElem& x = at(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < o.c_; ++j) m.at(i, j) = m.at(i, j) + x * o.at(k, j);
        }
    return m;
}

bool Mat::operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

std::vector<size_t> Mat::rref() {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < c_ && row < r_; ++col) {
        size_t pr = row;
        while (pr < r_ && at(pr, col).is_zero()) ++pr;
        if (pr == r_) continue;
        for (size_t j = 0; j < c_; ++j) std::swap(at(row, j), at(pr, j));
        FieldElem piv_inv = inv(at(row, col));
        for (size_t j = col; j < c_; ++j) at(row, j) = piv_inv * at(row, j);
        for (size_t i = 0; i < r_; ++i) {
            if (i == row || at(i, col).is_zero()) continue;
            FieldElem f = at(i, col);
            for (size_t j = col; j < c_; ++j) at(i, j) = at(i, j) - f * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t Mat::rank() const {
    Mat m = *this;
    return m.rref().size();
}

Mat Mat::kernel() const {
    Mat m = *this;
    auto pivots = m.rref();
    std::vector<bool> is_pivot(c_, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<size_t> free_cols;
    for (size_t j = 0; j < c_; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat ker(ctx_, free_cols.size(), c_);
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        size_t fc = free_cols[fi];
        ker.at(fi, fc) = fe_one(ctx_);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            ker.at(fi, pivots[pi]) = -m.at(pi, fc);
    }
    return ker;
}

Mat Mat::inverse() const {
    if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
    Mat aug(ctx_, r_, 2 * c_);
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, c_ + i) = fe_one(ctx_);
    }
    auto piv = aug.rref();
    if (piv.size() != r_ || piv.back() >= c_) throw std::invalid_argument("matrix is singular");
    Mat inv_m(ctx_, r_, c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) inv_m.at(i, j) = aug.at(i, c_ + j);
    return inv_m;
}

FieldElem Mat::det() const {
    if (r_ != c_) throw std::invalid_argument("determinant of non-square matrix");
    Mat m = *this;
    FieldElem d = fe_one(ctx_);
    size_t row = 0;
    for (size_t col = 0; col < c_; ++col) {
        size_t pr = row;
        while (pr < r_ && m.at(pr, col).is_zero()) ++pr;
        if (pr == r_) return fe_zero(ctx_);
        if (pr != row) {
            for (size_t j = 0; j < c_; ++j) std::swap(m.at(row, j), m.at(pr, j));
            d = -d;
        }
        d = d * m.at(row, col);
        FieldElem piv_inv = inv(m.at(row, col));
        for (size_t i = row + 1; i < r_; ++i) {
            if (m.at(i, col).is_zero()) continue;
            FieldElem f = m.at(i, col) * piv_inv;
            for (size_t j = col; j < c_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        ++row;
    }
    return d;
}

Mat Mat::transpose() const {
    Mat m(ctx_, c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

std::vector<FieldElem> Mat::apply(const std::vector<FieldElem>& v) const {
    if (v.size() != c_) throw std::invalid_argument("vector size mismatch");
    std::vector<FieldElem> r(r_, fe_zero(ctx_));
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] = r[i] + at(i, j) * v[j];
    return r;
}

std::optional<std::vector<FieldElem>> solve_linear(const Mat& A, const std::vector<FieldElem>& b) {
    Mat aug(A.ctx(), A.rows(), A.cols() + 1);
    for (size_t i = 0; i < A.rows(); ++i) {
        for (size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt;  // inconsistent
    std::vector<FieldElem> x(A.cols(), fe_zero(A.ctx()));
    for (size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = aug.at(pi, A.cols());
    return x;
}

// ------------------------------------------------------------- IntMat

IntMat IntMat::identity(int n) {
    IntMat m{n, std::vector<int64_t>(static_cast<size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from_rows(const std::vector<std::vector<int64_t>>& rows) {
    IntMat m{static_cast<int>(rows.size()), {}};
    m.a.reserve(rows.size() * rows.size());
    for (const auto& r : rows) {
        if (r.size() != rows.size()) throw std::invalid_argument("IntMat must be square");
        for (int64_t v : r) m.a.push_back(v);
    }
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    IntMat m{n, std::vector<int64_t>(static_cast<size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            int64_t x = at(i, k);
            if (!x) continue;
            for (int j = 0; j < n; ++j) m.at(i, j) += x * o.at(k, j);
        }
    return m;
}

bool IntMat::operator==(const IntMat& o) const { return n == o.n && a == o.a; }

int64_t IntMat::trace() const {
    int64_t t = 0;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
}

IntMat IntMat::transpose() const {
    IntMat m{n, std::vector<int64_t>(static_cast<size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(j, i) = at(i, j);
    return m;
}

std::vector<int64_t> IntMat::apply(const std::vector<int64_t>& v) const {
    std::vector<int64_t> r(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += at(i, j) * v[j];
    return r;
}

std::vector<int64_t> poly_mul_i64(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    std::vector<int64_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Leibniz expansion over permutations; fine for n <= 6.
std::vector<int64_t> charpoly(const IntMat& m) {
    int n = m.n;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<int64_t> result(n + 1, 0);
    do {
        // sign of the permutation
        int sign = 1;
        std::vector<bool> seen(n, false);
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            int len = 0, j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = perm[j];
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        std::vector<int64_t> term{static_cast<int64_t>(sign)};
        for (int i = 0; i < n; ++i) {
            // entry (i, perm[i]) of xI - M
            std::vector<int64_t> lin{-m.at(i, perm[i]), i == perm[i] ? 1 : 0};
            term = poly_mul_i64(term, lin);
        }
        term.resize(n + 1, 0);
        for (int i = 0; i <= n; ++i) result[i] += term[i];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

std::vector<int64_t> cyclotomic(int n) {
    switch (n) {
        case 1: return {-1, 1};
        case 2: return {1, 1};
        case 3: return {1, 1, 1};
        case 4: return {1, 0, 1};
        case 5: return {1, 1, 1, 1, 1};
        case 6: return {1, -1, 1};
        case 8: return {1, 0, 0, 0, 1};
        default: throw std::invalid_argument("cyclotomic index not supported");
    }
}

int root_one_multiplicity(std::vector<int64_t> poly) {
    int mult = 0;
    while (poly.size() > 1) {
        int64_t val = 0;
        for (size_t i = 0; i < poly.size(); ++i) val += poly[i];
        if (val != 0) break;
        // synthetic division by (x - 1)
        std::vector<int64_t> q(poly.size() - 1, 0);
        int64_t carry = 0;
        for (size_t i = poly.size(); i-- > 1;) {
            carry += poly[i];
            q[i - 1] = carry;
        }
        poly = std::move(q);
        ++mult;
    }
    return mult;
}

}  // namespace dpc
