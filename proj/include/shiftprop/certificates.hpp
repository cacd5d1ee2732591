#pragma once

#include "shiftprop/matrix.hpp"
#include "shiftprop/permutation.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shiftprop {

/// Row expansion: conjugate the chosen row to position 0, split the matrix
/// as (a; A) with a the first row, and emit
///
///     ( 0 | 1 )
///     ( A | 0 )
///     ( a | 0 )
///
/// where the new column is the last one. The conjugation uses the cyclic
/// rotation that moves `row` to the front and keeps the other rows in order.
template <Semiring R>
Matrix<R> ps_expand(const Matrix<R>& m, std::size_t row) {
    if (!m.is_square() || m.rows() == 0) throw std::invalid_argument("ps_expand needs a nonempty square matrix");
    if (row >= m.rows()) throw std::out_of_range("ps_expand row out of range");
    const std::size_t n = m.rows();
    const R& ring = m.ring();

    std::vector<std::size_t> rot(n);
    rot[row] = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (i != row) rot[i] = i < row ? i + 1 : i;
    Permutation rho{std::vector<std::size_t>(rot)};
    Matrix<R> p = Matrix<R>::permutation(rho, ring);
    Matrix<R> pc = Matrix<R>::permutation(rho.inverse(), ring);
    Matrix<R> mc = p * m * pc;  // chosen row now first

    Matrix<R> out(n + 1, n + 1, ring);
    out.at(0, n) = ring.one();
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = mc.at(i, j);
    for (std::size_t j = 0; j < n; ++j) out.at(n, j) = mc.at(0, j);
    return out;
}

/// Inverse of the expansion schema on exact pattern match (first row is the
/// last-column unit row, last column otherwise zero); returns nothing when
/// the matrix does not have the literal shape.
template <Semiring R>
std::optional<Matrix<R>> ps_contract(const Matrix<R>& m) {
    if (!m.is_square() || m.rows() < 2) return std::nullopt;
    const std::size_t n = m.rows() - 1;
    const R& ring = m.ring();
    for (std::size_t j = 0; j < n; ++j)
        if (!ring.eq(m.at(0, j), ring.zero())) return std::nullopt;
    if (!ring.eq(m.at(0, n), ring.one())) return std::nullopt;
    for (std::size_t i = 1; i <= n; ++i)
        if (!ring.eq(m.at(i, n), ring.zero())) return std::nullopt;

    Matrix<R> out(n, n, ring);
    for (std::size_t j = 0; j < n; ++j) out.at(0, j) = m.at(n, j);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

/// One replayable step of a matrix-equivalence certificate.
///
///   Factor(R, S):  current == R*S exactly; successor is S*R. This is the
///                  elementary strong-shift move and doubles as the flow
///                  Factor move.
///   ExpandRow(i) / ContractRow: the row expansion schema above.
///   Permute(p):    conjugation by a permutation.
///   RowAdd/ColAdd/Stabilize: positive moves acting on I - M; `backward`
///                  replays the inverse operation. The result must stay
///                  entrywise nonnegative off the I - . form.
template <Semiring R>
struct CertStep {
    enum class Kind { Factor, ExpandRow, ContractRow, Permute, RowAdd, ColAdd, Stabilize };
    Kind kind;
    std::optional<Matrix<R>> factor_r, factor_s;
    std::size_t row = 0;
    Permutation perm;
    std::size_t add_i = 0, add_j = 0;
    typename R::value_type mult{};
    bool backward = false;

    static CertStep factor(Matrix<R> r, Matrix<R> s) {
        CertStep st{Kind::Factor, std::move(r), std::move(s), 0, Permutation(), 0, 0, {}, false};
        return st;
    }
    static CertStep expand_row(std::size_t i) {
        return CertStep{Kind::ExpandRow, std::nullopt, std::nullopt, i, Permutation(), 0, 0, {}, false};
    }
    static CertStep contract_row() {
        return CertStep{Kind::ContractRow, std::nullopt, std::nullopt, 0, Permutation(), 0, 0, {}, false};
    }
    static CertStep permute(Permutation p) {
        return CertStep{Kind::Permute, std::nullopt, std::nullopt, 0, std::move(p), 0, 0, {}, false};
    }
    static CertStep row_add(std::size_t i, std::size_t j, typename R::value_type m, bool back = false) {
        return CertStep{Kind::RowAdd, std::nullopt, std::nullopt, 0, Permutation(), i, j, std::move(m), back};
    }
    static CertStep col_add(std::size_t i, std::size_t j, typename R::value_type m, bool back = false) {
        return CertStep{Kind::ColAdd, std::nullopt, std::nullopt, 0, Permutation(), i, j, std::move(m), back};
    }
    static CertStep stabilize(bool back = false) {
        return CertStep{Kind::Stabilize, std::nullopt, std::nullopt, 0, Permutation(), 0, 0, {}, back};
    }

    std::string describe() const {
        switch (kind) {
            case Kind::Factor: return "factor R=" + factor_r->key() + " S=" + factor_s->key();
            case Kind::ExpandRow: return "expand-row " + std::to_string(row);
            case Kind::ContractRow: return "contract-row";
            case Kind::Permute: return "permute";
            case Kind::RowAdd: return std::string(backward ? "undo " : "") + "row-add";
            case Kind::ColAdd: return std::string(backward ? "undo " : "") + "col-add";
            case Kind::Stabilize: return std::string(backward ? "undo " : "") + "stabilize";
        }
        return "?";
    }
};

namespace detail {

/// I - M for a square matrix; lives in the signed world even when M is
/// nonnegative.
template <Semiring R>
Matrix<R> eye_minus(const Matrix<R>& m) {
    Matrix<R> out = m;
    const R& ring = m.ring();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if constexpr (std::same_as<typename R::value_type, IntPoly>) {
                out.at(i, j) = (i == j ? IntPoly(Int(1)) : IntPoly()) - m.at(i, j);
            } else {
                out.at(i, j) = (i == j ? Int(1) : Int(0)) - m.at(i, j);
            }
        }
    return out;
}

}  // namespace detail

/// Applies one step to `current`, throwing std::invalid_argument when the
/// step does not replay (wrong factorization, pattern mismatch, or a
/// positive move leaving the nonnegative cone).
template <Semiring R>
Matrix<R> apply_step(const Matrix<R>& current, const CertStep<R>& step) {
    const R& ring = current.ring();
    using Kind = typename CertStep<R>::Kind;
    switch (step.kind) {
        case Kind::Factor: {
            const Matrix<R>& r = *step.factor_r;
            const Matrix<R>& s = *step.factor_s;
            if (r * s != current) throw std::invalid_argument("factor step: R*S does not reproduce the matrix");
            return s * r;
        }
        case Kind::ExpandRow: return ps_expand(current, step.row);
        case Kind::ContractRow: {
            auto c = ps_contract(current);
            if (!c) throw std::invalid_argument("contract step: expansion pattern not present");
            return *c;
        }
        case Kind::Permute: {
            if (step.perm.size() != current.rows() || !current.is_square())
                throw std::invalid_argument("permute step: size mismatch");
            Matrix<R> p = Matrix<R>::permutation(step.perm, ring);
            Matrix<R> pinv = Matrix<R>::permutation(step.perm.inverse(), ring);
            return p * current * pinv;
        }
        case Kind::RowAdd:
        case Kind::ColAdd: {
            if (!current.is_square()) throw std::invalid_argument("positive step on non-square matrix");
            const std::size_t n = current.rows();
            if (step.add_i >= n || step.add_j >= n || step.add_i == step.add_j)
                throw std::invalid_argument("positive step: bad indices");
            Matrix<R> a = detail::eye_minus(current);
            typename R::value_type mult = step.mult;
            for (std::size_t k = 0; k < n; ++k) {
                if (step.kind == Kind::RowAdd) {
                    // row i += mult * row j (or the inverse)
                    auto delta = ring.mul(mult, a.at(step.add_j, k));
                    a.at(step.add_i, k) =
                        step.backward ? a.at(step.add_i, k) - delta : a.at(step.add_i, k) + delta;
                } else {
                    // col j += mult * col i (or the inverse)
                    auto delta = ring.mul(mult, a.at(k, step.add_i));
                    a.at(k, step.add_j) =
                        step.backward ? a.at(k, step.add_j) - delta : a.at(k, step.add_j) + delta;
                }
            }
            Matrix<R> next = detail::eye_minus(a);  // I - (I - M') = M'
            if (!next.all_valid())
                throw std::invalid_argument("positive step leaves the nonnegative cone; step rejected");
            return next;
        }
        case Kind::Stabilize: {
            if (!current.is_square()) throw std::invalid_argument("stabilize on non-square matrix");
            const std::size_t n = current.rows();
            if (!step.backward) {
                Matrix<R> next(n + 1, n + 1, ring);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) next.at(i, j) = current.at(i, j);
                return next;
            }
            if (n == 0) throw std::invalid_argument("stabilize backward on empty matrix");
            for (std::size_t k = 0; k < n; ++k)
                if (!ring.eq(current.at(n - 1, k), ring.zero()) || !ring.eq(current.at(k, n - 1), ring.zero()))
                    throw std::invalid_argument("stabilize backward: last row/column not zero");
            return current.submatrix(0, 0, n - 1, n - 1);
        }
    }
    throw std::logic_error("unreachable step kind");
}

/// A replayable equivalence proof: endpoints plus the ordered step list.
template <Semiring R>
struct MoveCertificate {
    std::string relation;  // "sse" or "flow"
    Matrix<R> source, target;
    std::vector<CertStep<R>> steps;

    MoveCertificate(std::string rel, Matrix<R> src, Matrix<R> tgt)
        : relation(std::move(rel)), source(std::move(src)), target(std::move(tgt)) {}
};

struct VerifyResult {
    bool ok = false;
    std::size_t failed_step = 0;  // meaningful when !ok; steps are 0-indexed, steps.size() = endpoint check
    std::string message;
};

/// Replays every step with exact arithmetic; reports the first failure site
/// instead of throwing.
template <Semiring R>
VerifyResult verify_certificate(const MoveCertificate<R>& cert) {
    Matrix<R> current = cert.source;
    for (std::size_t idx = 0; idx < cert.steps.size(); ++idx) {
        try {
            current = apply_step(current, cert.steps[idx]);
        } catch (const std::exception& e) {
            return {false, idx, std::string("step ") + std::to_string(idx) + " failed: " + e.what()};
        }
    }
    if (current != cert.target)
        return {false, cert.steps.size(), "replay result does not match the certificate target"};
    return {true, 0, ""};
}

/// The forward half of the strong-shift / flow bridge over polynomials: a
/// factor witness (R, S) for (M, N) becomes the witness (tR, S) for
/// (tM, tN). Constructed certificates are replay-checked by the caller.
inline CertStep<ZPlusPolyRing> lift_factor_by_t(const Matrix<ZPlusRing>& r, const Matrix<ZPlusRing>& s) {
    Matrix<ZPlusPolyRing> rt(r.rows(), r.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) rt.at(i, j) = IntPoly::t(1, r.at(i, j));
    Matrix<ZPlusPolyRing> sp(s.rows(), s.cols());
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) sp.at(i, j) = IntPoly(s.at(i, j));
    return CertStep<ZPlusPolyRing>::factor(std::move(rt), std::move(sp));
}

}  // namespace shiftprop
