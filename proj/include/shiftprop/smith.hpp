#pragma once

#include "shiftprop/matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace shiftprop {

struct SmithResult {
    /// Nonzero diagonal of the Smith normal form: d1 | d2 | ... | dr, all >= 1.
    std::vector<Int> divisors;
    /// Rank deficiency of the row space: the cokernel of the input is
    /// Z^free_rank (+) sum_i Z/d_i.
    std::size_t free_rank = 0;
};

namespace detail {

inline Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

}  // namespace detail

/// Smith normal form over the integers, reporting the invariant factors and
/// the cokernel free rank. Pivoting is exhaustive on the smallest nonzero
/// absolute value with a row-major tie-break, so the reduction is
/// deterministic.
template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
SmithResult smith_normal_form(const Matrix<R>& input) {
    const std::size_t rows = input.rows(), cols = input.cols();
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols, Int(0)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = input.at(i, j);

    const std::size_t bound = rows < cols ? rows : cols;
    std::size_t t = 0;
    for (; t < bound; ++t) {
        // pick pivot: smallest |nonzero| in the trailing block, row-major tie-break
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                if (!found || detail::int_abs(a[i][j]) < detail::int_abs(a[pi][pj])) {
                    found = true;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        std::swap(a[t], a[pi]);
        if (pj != t)
            for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    // remainder became the smaller pivot
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility fix: pivot must divide the whole trailing block
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols && clean; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                        clean = false;
                    }
        }
    }

    SmithResult out;
    out.divisors.reserve(t);
    for (std::size_t k = 0; k < t; ++k) out.divisors.push_back(detail::int_abs(a[k][k]));
    out.free_rank = rows - t;
    return out;
}

}  // namespace shiftprop
