#pragma once

#include "shiftprop/matrix.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace shiftprop {

/// Exact determinant of a square matrix over Z[t] by fraction-free (Bareiss)
/// elimination. All interior divisions are exact by construction; an inexact
/// one signals an implementation bug and aborts with std::domain_error.
template <Semiring R>
    requires std::same_as<typename R::value_type, IntPoly>
IntPoly det_poly(const Matrix<R>& input) {
    if (!input.is_square()) throw std::invalid_argument("det_poly requires a square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return IntPoly(Int(1));

    std::vector<std::vector<IntPoly>> a(n, std::vector<IntPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = input.at(i, j);

    bool negate = false;
    IntPoly prev(Int(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t pivot = k;
            while (pivot < n && a[pivot][k].is_zero()) ++pivot;
            if (pivot == n) return IntPoly();  // zero column, singular
            std::swap(a[k], a[pivot]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = IntPoly::exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
            a[i][k] = IntPoly();
        }
        prev = a[k][k];
    }
    return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

/// Dimension of the kernel of a matrix over Fp, by Gaussian elimination.
inline std::size_t fp_nullity(const Matrix<FpRing>& input) {
    const FpRing& f = input.ring();
    const std::size_t rows = input.rows(), cols = input.cols();
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols, Int(0)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = f.reduce(input.at(i, j));

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        Int inv = f.inv(a[rank][col]);
        for (std::size_t j = col; j < cols; ++j) a[rank][j] = f.mul(a[rank][j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Int factor = a[i][col];
            for (std::size_t j = col; j < cols; ++j)
                a[i][j] = f.reduce(a[i][j] - factor * a[rank][j]);
        }
        ++rank;
    }
    return cols - rank;
}

}  // namespace shiftprop
