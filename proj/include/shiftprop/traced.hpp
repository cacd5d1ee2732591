#pragma once

#include "shiftprop/matrix.hpp"
#include "shiftprop/permutation.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace shiftprop {

/// A morphism of the traced completion of the matrix prop: an underlying
/// matrix morphism (dashed + n) -> (dashed + m) whose first `dashed` wires are
/// fed back. Wire convention throughout: dashed wires occupy the leading
/// block on both sides.
template <Semiring R>
struct TracedMorphism {
    std::size_t dashed = 0;
    std::size_t vis_in = 0, vis_out = 0;
    Matrix<R> underlying;

    TracedMorphism(std::size_t k, std::size_t n, std::size_t m, Matrix<R> mat)
        : dashed(k), vis_in(n), vis_out(m), underlying(std::move(mat)) {
        if (underlying.rows() != dashed + vis_out || underlying.cols() != dashed + vis_in)
            throw std::invalid_argument("traced pair dimensions inconsistent");
    }

    friend bool operator==(const TracedMorphism& a, const TracedMorphism& b) {
        return a.dashed == b.dashed && a.vis_in == b.vis_in && a.vis_out == b.vis_out &&
               a.underlying == b.underlying;
    }

    std::string key() const {
        return std::to_string(dashed) + "|" + std::to_string(vis_in) + ">" + std::to_string(vis_out) +
               "|" + underlying.key();
    }
};

/// Embedding of plain matrices: no dashed wires.
template <Semiring R>
TracedMorphism<R> iota(Matrix<R> m) {
    std::size_t n = m.cols(), out = m.rows();
    return TracedMorphism<R>(0, n, out, std::move(m));
}

/// Trace everything: a square matrix becomes a 0 -> 0 pair with all wires
/// dashed. This is the pair that represents the shift of the matrix.
template <Semiring R>
TracedMorphism<R> full_trace(Matrix<R> m) {
    if (!m.is_square()) throw std::invalid_argument("full_trace requires a square matrix");
    std::size_t n = m.rows();
    return TracedMorphism<R>(n, 0, 0, std::move(m));
}

/// Trace one visible wire. The first visible wire sits immediately after the
/// dashed block on both sides, so the underlying matrix is unchanged and only
/// the dashed count grows.
template <Semiring R>
TracedMorphism<R> tp_trace(const TracedMorphism<R>& f) {
    if (f.vis_in == 0 || f.vis_out == 0) throw std::invalid_argument("no visible wire to trace");
    return TracedMorphism<R>(f.dashed + 1, f.vis_in - 1, f.vis_out - 1, f.underlying);
}

namespace detail {

template <Semiring R>
Matrix<R> wire_perm(const Permutation& p, const R& ring) {
    return Matrix<R>::permutation(p, ring);
}

inline Permutation concat3(const Permutation& a, const Permutation& b, const Permutation& c) {
    std::vector<std::size_t> im;
    im.reserve(a.size() + b.size() + c.size());
    for (std::size_t i = 0; i < a.size(); ++i) im.push_back(a(i));
    for (std::size_t i = 0; i < b.size(); ++i) im.push_back(a.size() + b(i));
    for (std::size_t i = 0; i < c.size(); ++i) im.push_back(a.size() + b.size() + c(i));
    return Permutation(std::move(im));
}

}  // namespace detail

/// Composition f after g in the traced completion. The result's dashed block
/// is: g's dashed wires, then f's dashed wires, then a fresh loop of width
/// f.vis_in carrying g's visible outputs back into f's visible inputs. The
/// underlying matrix is assembled by explicit wire routing around the direct
/// sum g (+) f; the binding contract is that honest-trace evaluation commutes
/// with composition, which the weighted-model suite checks.
template <Semiring R>
TracedMorphism<R> tp_compose(const TracedMorphism<R>& f, const TracedMorphism<R>& g) {
    if (f.vis_in != g.vis_out) throw std::invalid_argument("visible arity mismatch in traced composition");
    if (!f.underlying.ring().compatible(g.underlying.ring()))
        throw std::invalid_argument("semiring mismatch in traced composition");
    const R& ring = f.underlying.ring();
    const std::size_t p = f.dashed, q = g.dashed;
    const std::size_t loop = f.vis_in;  // = g.vis_out
    const std::size_t n = g.vis_in, m = f.vis_out;

    // boundary inputs (b[q], a[p], c[loop], y[n])  ->  (G (+) F) inputs (b, y, a, c)
    Permutation in_route = detail::concat3(Permutation::identity(q),
                                           Permutation::block_swap(p + loop, n),
                                           Permutation::identity(0));
    // (G (+) F) outputs (b', z[loop], a', w[m])  ->  boundary outputs (b', a', z, w)
    Permutation out_route = detail::concat3(Permutation::identity(q),
                                            Permutation::block_swap(loop, p),
                                            Permutation::identity(m));
    Matrix<R> gf = direct_sum(g.underlying, f.underlying);
    Matrix<R> underlying = detail::wire_perm<R>(out_route, ring) * gf * detail::wire_perm<R>(in_route, ring);
    return TracedMorphism<R>(q + p + loop, n, m, std::move(underlying));
}

/// Tensor of pairs; dashed blocks of both operands are gathered in front
/// (f's first), visible wires follow in order.
template <Semiring R>
TracedMorphism<R> tp_tensor(const TracedMorphism<R>& f, const TracedMorphism<R>& g) {
    if (!f.underlying.ring().compatible(g.underlying.ring()))
        throw std::invalid_argument("semiring mismatch in traced tensor");
    const R& ring = f.underlying.ring();
    const std::size_t p = f.dashed, q = g.dashed;

    // boundary inputs (a[p], b[q], x[f.vis_in], y[g.vis_in]) -> (F (+) G) inputs (a, x, b, y)
    Permutation in_route = detail::concat3(Permutation::identity(p),
                                           Permutation::block_swap(q, f.vis_in),
                                           Permutation::identity(g.vis_in));
    // (F (+) G) outputs (a', x', b', y') -> boundary outputs (a', b', x', y')
    Permutation out_route = detail::concat3(Permutation::identity(p),
                                            Permutation::block_swap(f.vis_out, q),
                                            Permutation::identity(g.vis_out));
    Matrix<R> fg = direct_sum(f.underlying, g.underlying);
    Matrix<R> underlying = detail::wire_perm<R>(out_route, ring) * fg * detail::wire_perm<R>(in_route, ring);
    return TracedMorphism<R>(p + q, f.vis_in + g.vis_in, f.vis_out + g.vis_out, std::move(underlying));
}

enum class SlideDirection { OutToIn, InToOut };

/// One elementary step of the pair equivalence relation.
///
///   Slide:          [(g (+) id_m) * rest, q]  ~  [rest * (g (+) id_n), p]
///                   for g a q x p matrix; `rest` is carried so the step is
///                   replayable in both directions.
///   Expand(site):   thread input wire `site` through a fresh dashed loop:
///                   [M, k] ~ [(id_1 (+) M) * T(0, 1+site), k+1].
///   Contract(site): exact inverse of Expand, by pattern match.
///   PermuteDashed:  relabel the dashed wires on both sides.
template <Semiring R>
struct PairMove {
    enum class Kind { Slide, Expand, Contract, PermuteDashed };
    Kind kind;
    std::optional<Matrix<R>> g;
    std::optional<Matrix<R>> rest;
    SlideDirection dir = SlideDirection::OutToIn;
    Permutation perm;
    std::size_t site = 0;

    static PairMove slide(Matrix<R> g_, Matrix<R> rest_, SlideDirection d) {
        PairMove mv{Kind::Slide, std::move(g_), std::move(rest_), d, Permutation(), 0};
        return mv;
    }
    static PairMove expand(std::size_t site_) {
        return PairMove{Kind::Expand, std::nullopt, std::nullopt, SlideDirection::OutToIn, Permutation(), site_};
    }
    static PairMove contract(std::size_t site_) {
        return PairMove{Kind::Contract, std::nullopt, std::nullopt, SlideDirection::OutToIn, Permutation(), site_};
    }
    static PairMove permute_dashed(Permutation p) {
        return PairMove{Kind::PermuteDashed, std::nullopt, std::nullopt, SlideDirection::OutToIn, std::move(p), 0};
    }

    std::string describe() const {
        switch (kind) {
            case Kind::Slide:
                return std::string("slide ") + (dir == SlideDirection::OutToIn ? "out->in" : "in->out") +
                       " g=" + g->key();
            case Kind::Expand: return "expand site " + std::to_string(site);
            case Kind::Contract: return "contract site " + std::to_string(site);
            case Kind::PermuteDashed: return "permute dashed";
        }
        return "?";
    }
};

/// Applies one move, checking dimensional and pattern validity at the site.
/// Throws std::invalid_argument when the move does not apply.
template <Semiring R>
TracedMorphism<R> apply_move(const TracedMorphism<R>& f, const PairMove<R>& mv) {
    const R& ring = f.underlying.ring();
    switch (mv.kind) {
        case PairMove<R>::Kind::PermuteDashed: {
            if (mv.perm.size() != f.dashed) throw std::invalid_argument("dashed permutation size mismatch");
            Matrix<R> p = Matrix<R>::permutation(mv.perm, ring);
            Matrix<R> pinv = Matrix<R>::permutation(mv.perm.inverse(), ring);
            Matrix<R> underlying =
                direct_sum(p, Matrix<R>::identity(f.vis_out, ring)) * f.underlying *
                direct_sum(pinv, Matrix<R>::identity(f.vis_in, ring));
            return TracedMorphism<R>(f.dashed, f.vis_in, f.vis_out, std::move(underlying));
        }
        case PairMove<R>::Kind::Slide: {
            const Matrix<R>& g = *mv.g;
            const Matrix<R>& rest = *mv.rest;
            const std::size_t q = g.rows(), p = g.cols();
            if (mv.dir == SlideDirection::OutToIn) {
                if (f.dashed != q) throw std::invalid_argument("slide: dashed count must equal g rows");
                Matrix<R> lhs = direct_sum(g, Matrix<R>::identity(f.vis_out, ring)) * rest;
                if (lhs != f.underlying) throw std::invalid_argument("slide: factorization does not match pair");
                Matrix<R> underlying = rest * direct_sum(g, Matrix<R>::identity(f.vis_in, ring));
                return TracedMorphism<R>(p, f.vis_in, f.vis_out, std::move(underlying));
            }
            if (f.dashed != p) throw std::invalid_argument("slide: dashed count must equal g cols");
            Matrix<R> rhs = rest * direct_sum(g, Matrix<R>::identity(f.vis_in, ring));
            if (rhs != f.underlying) throw std::invalid_argument("slide: factorization does not match pair");
            Matrix<R> underlying = direct_sum(g, Matrix<R>::identity(f.vis_out, ring)) * rest;
            return TracedMorphism<R>(q, f.vis_in, f.vis_out, std::move(underlying));
        }
        case PairMove<R>::Kind::Expand: {
            const std::size_t wires = f.dashed + f.vis_in;
            if (mv.site >= wires) throw std::invalid_argument("expand: no wire at site");
            Matrix<R> swapped = direct_sum(Matrix<R>::identity(1, ring), f.underlying) *
                                Matrix<R>::permutation(Permutation::transposition(wires + 1, 0, 1 + mv.site), ring);
            return TracedMorphism<R>(f.dashed + 1, f.vis_in, f.vis_out, std::move(swapped));
        }
        case PairMove<R>::Kind::Contract: {
            if (f.dashed == 0) throw std::invalid_argument("contract: no dashed wire");
            const std::size_t wires = f.dashed - 1 + f.vis_in;
            if (mv.site >= wires) throw std::invalid_argument("contract: no wire at site");
            Matrix<R> c = f.underlying *
                          Matrix<R>::permutation(Permutation::transposition(wires + 1, 0, 1 + mv.site), ring);
            // c must be id_1 (+) M exactly
            for (std::size_t j = 0; j < c.cols(); ++j)
                if (!ring.eq(c.at(0, j), j == 0 ? ring.one() : ring.zero()))
                    throw std::invalid_argument("contract: pattern mismatch in first row");
            for (std::size_t i = 1; i < c.rows(); ++i)
                if (!ring.eq(c.at(i, 0), ring.zero()))
                    throw std::invalid_argument("contract: pattern mismatch in first column");
            Matrix<R> inner = c.submatrix(1, 1, c.rows() - 1, c.cols() - 1);
            return TracedMorphism<R>(f.dashed - 1, f.vis_in, f.vis_out, std::move(inner));
        }
    }
    throw std::logic_error("unreachable move kind");
}

}  // namespace shiftprop
