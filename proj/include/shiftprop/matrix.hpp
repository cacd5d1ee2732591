#pragma once

#include "shiftprop/permutation.hpp"
#include "shiftprop/semiring.hpp"

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shiftprop {

/// Dense exact matrix over a semiring. Values are immutable in spirit: all
/// operations return fresh matrices. Zero-dimensional matrices (0 rows and/or
/// 0 columns) are first-class citizens; they carry the empty morphisms of the
/// diagram calculus.
///
/// Orientation convention used across the library: a prop morphism n -> m is
/// stored as an m x n matrix, composition is the matrix product and the
/// tensor is the direct sum.
template <Semiring R>
class Matrix {
public:
    using ring_type = R;
    using value_type = typename R::value_type;

    Matrix(std::size_t rows, std::size_t cols, R ring = R())
        : rows_(rows), cols_(cols), ring_(std::move(ring)), entries_(rows * cols, ring_.zero()) {}

    Matrix(std::initializer_list<std::initializer_list<value_type>> data, R ring = R())
        : rows_(data.size()), cols_(data.size() ? data.begin()->size() : 0), ring_(std::move(ring)) {
        entries_.reserve(rows_ * cols_);
        for (const auto& row : data) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (const auto& v : row) entries_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n, R ring = R()) {
        Matrix m(n, n, std::move(ring));
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.ring_.one();
        return m;
    }

    /// 0/1 matrix of a permutation: entry (perm(j), j) = one.
    static Matrix permutation(const Permutation& perm, R ring = R()) {
        Matrix m(perm.size(), perm.size(), std::move(ring));
        for (std::size_t j = 0; j < perm.size(); ++j) m.at(perm(j), j) = m.ring_.one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const R& ring() const { return ring_; }

    const value_type& at(std::size_t i, std::size_t j) const {
        range_check(i, j);
        return entries_[i * cols_ + j];
    }
    value_type& at(std::size_t i, std::size_t j) {
        range_check(i, j);
        return entries_[i * cols_ + j];
    }

    bool is_square() const { return rows_ == cols_; }

    bool all_valid() const {
        for (const auto& v : entries_)
            if (!ring_.valid(v)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& v : entries_)
            if (!ring_.eq(v, ring_.zero())) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !a.ring_.compatible(b.ring_)) return false;
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            if (!a.ring_.eq(a.entries_[k], b.entries_[k])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (!a.ring_.compatible(b.ring_)) throw std::invalid_argument("semiring mismatch in product");
        if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch in product");
        Matrix c(a.rows_, b.cols_, a.ring_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const value_type& aik = a.entries_[i * a.cols_ + k];
                if (a.ring_.eq(aik, a.ring_.zero())) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const value_type& bkj = b.entries_[k * b.cols_ + j];
                    if (a.ring_.eq(bkj, a.ring_.zero())) continue;
                    value_type& cij = c.entries_[i * b.cols_ + j];
                    cij = a.ring_.add(cij, a.ring_.mul(aik, bkj));
                }
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (!a.ring_.compatible(b.ring_)) throw std::invalid_argument("semiring mismatch in sum");
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch in sum");
        Matrix c(a.rows_, a.cols_, a.ring_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) c.entries_[k] = a.ring_.add(a.entries_[k], b.entries_[k]);
        return c;
    }

    /// Block diagonal diag(a, b); the tensor of the matrix prop.
    friend Matrix direct_sum(const Matrix& a, const Matrix& b) {
        if (!a.ring_.compatible(b.ring_)) throw std::invalid_argument("semiring mismatch in direct sum");
        Matrix c(a.rows_ + b.rows_, a.cols_ + b.cols_, a.ring_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) c.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) c.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
        return c;
    }

    /// Kronecker product; the tensor of the weighted-relation prop, where a
    /// wire carries a whole index set and dimensions multiply.
    friend Matrix kronecker(const Matrix& a, const Matrix& b) {
        if (!a.ring_.compatible(b.ring_)) throw std::invalid_argument("semiring mismatch in kronecker");
        Matrix c(a.rows_ * b.rows_, a.cols_ * b.cols_, a.ring_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                const value_type& aij = a.at(i, j);
                if (a.ring_.eq(aij, a.ring_.zero())) continue;
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        c.at(i * b.rows_ + k, j * b.cols_ + l) = a.ring_.mul(aij, b.at(k, l));
            }
        return c;
    }

    Matrix scaled(const value_type& s) const {
        Matrix c(rows_, cols_, ring_);
        for (std::size_t k = 0; k < entries_.size(); ++k) c.entries_[k] = ring_.mul(s, entries_[k]);
        return c;
    }

    Matrix transposed() const {
        Matrix c(cols_, rows_, ring_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) c.at(j, i) = at(i, j);
        return c;
    }

    Matrix pow(std::size_t e) const {
        if (!is_square()) throw std::invalid_argument("pow of non-square matrix");
        Matrix acc = identity(rows_, ring_);
        for (std::size_t k = 0; k < e; ++k) acc = acc * *this;
        return acc;
    }

    value_type trace() const {
        if (!is_square()) throw std::invalid_argument("trace of non-square matrix");
        value_type acc = ring_.zero();
        for (std::size_t i = 0; i < rows_; ++i) acc = ring_.add(acc, at(i, i));
        return acc;
    }

    Matrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
        if (row0 + nrows > rows_ || col0 + ncols > cols_) throw std::out_of_range("submatrix out of range");
        Matrix c(nrows, ncols, ring_);
        for (std::size_t i = 0; i < nrows; ++i)
            for (std::size_t j = 0; j < ncols; ++j) c.at(i, j) = at(row0 + i, col0 + j);
        return c;
    }

    /// Canonical single-line key, used for search visited-sets and test
    /// diagnostics.
    std::string key() const {
        std::ostringstream os;
        os << rows_ << "x" << cols_ << ":";
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            if (k) os << ",";
            os << ring_.str(entries_[k]);
        }
        return os.str();
    }

private:
    void range_check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
    }

    std::size_t rows_, cols_;
    R ring_;
    std::vector<value_type> entries_;
};

/// Convert a matrix between rings that share the same element type (e.g.
/// zplus -> z, or zplus_t -> z_t). Validation against the target ring is the
/// caller's business.
template <Semiring To, Semiring From>
    requires std::same_as<typename To::value_type, typename From::value_type>
Matrix<To> with_ring(const Matrix<From>& m, To ring = To()) {
    Matrix<To> out(m.rows(), m.cols(), std::move(ring));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j);
    return out;
}

/// Lift an integer matrix to constant polynomials.
template <Semiring To, Semiring From>
    requires std::same_as<typename From::value_type, Int> && std::same_as<typename To::value_type, IntPoly>
Matrix<To> to_poly_matrix(const Matrix<From>& m, To ring = To()) {
    Matrix<To> out(m.rows(), m.cols(), std::move(ring));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = IntPoly(m.at(i, j));
    return out;
}

}  // namespace shiftprop
