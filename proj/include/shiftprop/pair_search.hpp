#pragma once

#include "shiftprop/search.hpp"
#include "shiftprop/traced.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <vector>

namespace shiftprop {

/// A replayable equivalence proof between traced pairs.
template <Semiring R>
struct PairCertificate {
    TracedMorphism<R> source, target;
    std::vector<PairMove<R>> moves;

    PairCertificate(TracedMorphism<R> src, TracedMorphism<R> tgt)
        : source(std::move(src)), target(std::move(tgt)) {}
};

template <Semiring R>
VerifyResult verify_pair_certificate(const PairCertificate<R>& cert) {
    TracedMorphism<R> cur = cert.source;
    for (std::size_t i = 0; i < cert.moves.size(); ++i) {
        try {
            cur = apply_move(cur, cert.moves[i]);
        } catch (const std::exception& e) {
            return {false, i, std::string("move ") + std::to_string(i) + " failed: " + e.what()};
        }
    }
    if (!(cur == cert.target)) return {false, cert.moves.size(), "replay does not reach the target pair"};
    return {true, 0, ""};
}

namespace detail {

template <Semiring R>
void pair_neighbors(const TracedMorphism<R>& f, const SearchBudget& budget, std::size_t dashed_cap,
                    const std::vector<typename R::value_type>& pool,
                    const std::function<void(PairMove<R>)>& yield) {
    const R& ring = f.underlying.ring();
    // contractions first: shrinking moves close expansions
    if (f.dashed >= 1)
        for (std::size_t w = 0; w < f.dashed - 1 + f.vis_in; ++w)
            yield(PairMove<R>::contract(w));
    if (f.dashed + f.vis_in >= 1 && f.dashed < dashed_cap)
        for (std::size_t w = 0; w < f.dashed + f.vis_in; ++w) yield(PairMove<R>::expand(w));
    // dashed relabelings: all of them at small counts, adjacent swaps otherwise
    if (f.dashed >= 2) {
        if (f.dashed <= 4) {
            std::vector<std::size_t> im(f.dashed);
            for (std::size_t i = 0; i < im.size(); ++i) im[i] = i;
            while (std::next_permutation(im.begin(), im.end()))
                yield(PairMove<R>::permute_dashed(Permutation{std::vector<std::size_t>(im)}));
        } else {
            for (std::size_t i = 0; i + 1 < f.dashed; ++i)
                yield(PairMove<R>::permute_dashed(Permutation::transposition(f.dashed, i, i + 1)));
        }
    }
    // factor slides: factor the dashed block through a smaller (or equal)
    // inner dimension on either side
    const std::size_t k = f.dashed;
    if (k >= 1) {
        for (std::size_t inner = 1; inner <= budget.max_inner_dim; ++inner) {
            // out -> in: top k rows of the underlying factor as g * top(rest)
            Matrix<R> top = f.underlying.submatrix(0, 0, k, f.underlying.cols());
            enumerate_left_factors<R>(top, inner, pool, /*quotient_columns=*/false, [&](const Matrix<R>& g) {
                solve_cofactor<R>(g, top, pool, [&](const Matrix<R>& rt) {
                    Matrix<R> rest(inner + f.vis_out, f.underlying.cols(), ring);
                    for (std::size_t i = 0; i < inner; ++i)
                        for (std::size_t j = 0; j < rest.cols(); ++j) rest.at(i, j) = rt.at(i, j);
                    for (std::size_t i = 0; i < f.vis_out; ++i)
                        for (std::size_t j = 0; j < rest.cols(); ++j)
                            rest.at(inner + i, j) = f.underlying.at(k + i, j);
                    yield(PairMove<R>::slide(g, std::move(rest), SlideDirection::OutToIn));
                    return false;
                });
                return false;
            });
            // in -> out: left k columns factor as left(rest) * g
            Matrix<R> left = f.underlying.submatrix(0, 0, f.underlying.rows(), k);
            // enumerate g (inner x k) via factoring the transpose
            Matrix<R> left_t = left.transposed();
            enumerate_left_factors<R>(left_t, inner, pool, /*quotient_columns=*/false, [&](const Matrix<R>& gt) {
                solve_cofactor<R>(gt, left_t, pool, [&](const Matrix<R>& mt) {
                    // left_t = gt * mt  =>  left = mt^T * gt^T
                    Matrix<R> g = gt.transposed();    // inner x k ... careful: gt is (k x inner)
                    Matrix<R> ml = mt.transposed();   // rows x inner
                    Matrix<R> rest(f.underlying.rows(), inner + f.vis_in, ring);
                    for (std::size_t i = 0; i < rest.rows(); ++i) {
                        for (std::size_t j = 0; j < inner; ++j) rest.at(i, j) = ml.at(i, j);
                        for (std::size_t j = 0; j < f.vis_in; ++j)
                            rest.at(i, inner + j) = f.underlying.at(i, k + j);
                    }
                    yield(PairMove<R>::slide(g, std::move(rest), SlideDirection::InToOut));
                    return false;
                });
                return false;
            });
        }
    }
}

}  // namespace detail

/// Breadth-first semi-decision for pair equivalence: explores contraction,
/// expansion, dashed relabeling and factor-slide moves from the source,
/// level-synchronously and in a fixed move order, and returns a replayable
/// certificate when it reaches the target's exact representation. Exhaustion
/// within the budget never claims inequivalence.
template <Semiring R>
std::optional<PairCertificate<R>> pair_equiv_bounded(const TracedMorphism<R>& f, const TracedMorphism<R>& g,
                                                     const SearchBudget& budget) {
    if (f.vis_in != g.vis_in || f.vis_out != g.vis_out)
        throw std::invalid_argument("pair_equiv_bounded: visible arities differ");
    if (f == g) return PairCertificate<R>(f, g);

    auto pool = detail::entry_pool(f.underlying.ring(), budget);
    const std::size_t dashed_cap = std::max(f.dashed, g.dashed) + budget.max_inner_dim;

    struct Node {
        TracedMorphism<R> pair;
        std::vector<PairMove<R>> path;
    };
    std::map<std::string, Node> seen;
    std::deque<std::string> frontier;
    seen.emplace(f.key(), Node{f, {}});
    frontier.push_back(f.key());

    for (std::size_t depth = 0; depth < budget.max_steps && !frontier.empty(); ++depth) {
        std::deque<std::string> next;
        for (const std::string& key : frontier) {
            const Node node = seen.at(key);
            std::optional<PairCertificate<R>> found;
            detail::pair_neighbors<R>(node.pair, budget, dashed_cap, pool, [&](PairMove<R> mv) {
                if (found || seen.size() > budget.max_nodes) return;
                TracedMorphism<R> nb = node.pair;
                try {
                    nb = apply_move(node.pair, mv);
                } catch (const std::invalid_argument&) {
                    return;  // move not applicable at this site
                }
                std::string nb_key = nb.key();
                if (seen.count(nb_key)) return;
                Node child{nb, node.path};
                child.path.push_back(std::move(mv));
                if (nb == g) {
                    PairCertificate<R> cert(f, g);
                    cert.moves = child.path;
                    found = std::move(cert);
                }
                seen.emplace(std::move(nb_key), std::move(child));
                next.push_back(nb.key());
            });
            if (found) return found;
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

}  // namespace shiftprop
