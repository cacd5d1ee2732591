#pragma once

#include "shiftprop/certificates.hpp"
#include "shiftprop/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shiftprop {

/// Budgets for all bounded searches. Exhaustion within a budget is never a
/// proof of inequivalence; only invariants separate.
struct SearchBudget {
    std::size_t max_inner_dim = 4;  // inner dimension of factorizations
    Int max_entry = Int(3);         // entry weight bound for witnesses and intermediates
    std::size_t max_size = 6;       // largest intermediate square matrix
    std::size_t max_steps = 4;      // certificate length bound
    std::size_t max_poly_degree = 2;
    std::size_t max_nodes = 20000;  // frontier safety valve
};

namespace detail {

/// Sum of coefficients; the entry "weight" that all pruning uses. Over
/// nonnegative entries, weight is additive and multiplicative in the right
/// way for the row-sum prune to be sound whenever the cofactor has no
/// zero-weight rows.
inline Int entry_weight(const Int& v) { return v < 0 ? Int(-v) : v; }
inline Int entry_weight(const IntPoly& p) {
    Int acc(0);
    for (const Int& c : p.coeffs()) acc += (c < 0 ? Int(-c) : c);
    return acc;
}

inline bool entry_leq(const Int& a, const Int& b) { return a <= b; }
inline bool entry_leq(const IntPoly& a, const IntPoly& b) {
    long d = std::max(a.degree(), b.degree());
    for (long i = 0; i <= d; ++i)
        if (a.coeff(static_cast<std::size_t>(i)) > b.coeff(static_cast<std::size_t>(i))) return false;
    return true;
}

/// Deterministic pool of candidate entries of weight at most max_entry.
template <Semiring R>
std::vector<typename R::value_type> entry_pool(const R&, const SearchBudget& budget) {
    if constexpr (std::same_as<typename R::value_type, Int>) {
        std::vector<Int> out;
        for (Int v(0); v <= budget.max_entry; ++v) out.push_back(v);
        return out;
    } else {
        // polynomials with nonnegative coefficients, bounded degree and weight
        std::vector<IntPoly> out;
        std::vector<Int> coeffs(budget.max_poly_degree + 1, Int(0));
        std::function<void(std::size_t, Int)> rec = [&](std::size_t pos, Int left) {
            if (pos == coeffs.size()) {
                out.push_back(IntPoly(coeffs));
                return;
            }
            for (Int c(0); c <= left; ++c) {
                coeffs[pos] = c;
                rec(pos + 1, left - c);
                coeffs[pos] = 0;
            }
        };
        rec(0, budget.max_entry);
        std::sort(out.begin(), out.end());
        return out;
    }
}

template <Semiring R>
Int row_weight(const Matrix<R>& m, std::size_t i) {
    Int acc(0);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += entry_weight(m.at(i, j));
    return acc;
}

/// Enumerates, in deterministic order, the cofactors S with R*S = A and
/// entries drawn from the pool; invokes emit for each. Columns are solved
/// independently by backtracking with coefficientwise pruning.
template <Semiring R>
bool solve_cofactor(const Matrix<R>& r, const Matrix<R>& a,
                    const std::vector<typename R::value_type>& pool,
                    const std::function<bool(const Matrix<R>&)>& emit) {
    using V = typename R::value_type;
    const R& ring = a.ring();
    const std::size_t inner = r.cols(), cols = a.cols(), rows = a.rows();

    std::vector<std::vector<V>> column_solutions(cols);
    std::vector<std::vector<std::vector<V>>> per_column(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<V> chosen(inner, ring.zero());
        std::vector<V> partial(rows, ring.zero());
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == inner) {
                for (std::size_t i = 0; i < rows; ++i)
                    if (!ring.eq(partial[i], a.at(i, j))) return;
                per_column[j].push_back(chosen);
                return;
            }
            for (const V& cand : pool) {
                std::vector<V> next = partial;
                bool feasible = true;
                for (std::size_t i = 0; i < rows && feasible; ++i) {
                    next[i] = ring.add(next[i], ring.mul(r.at(i, k), cand));
                    if (!entry_leq(next[i], a.at(i, j))) feasible = false;
                }
                if (!feasible) continue;
                chosen[k] = cand;
                std::swap(partial, next);
                rec(k + 1);
                std::swap(partial, next);
                chosen[k] = ring.zero();
            }
        };
        rec(0);
        if (per_column[j].empty()) return false;
    }

    // cartesian product over columns, lexicographic
    std::vector<std::size_t> pick(cols, 0);
    while (true) {
        Matrix<R> s(inner, cols, ring);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t k = 0; k < inner; ++k) s.at(k, j) = per_column[j][pick[j]][k];
        if (emit(s)) return true;
        std::size_t j = cols;
        while (j > 0) {
            --j;
            if (++pick[j] < per_column[j].size()) break;
            pick[j] = 0;
            if (j == 0) return false;
        }
        if (cols == 0) return false;
    }
}

/// Enumerates left factors R (rows_a x inner) with row weights bounded by
/// A's row weights and entries from the pool, in row-major lexicographic
/// order. When quotient_columns is set, only matrices whose columns are
/// nondecreasing are produced (quotienting permutations of the inner
/// dimension, which a search can afford but an exact two-sided witness
/// cannot).
template <Semiring R>
bool enumerate_left_factors(const Matrix<R>& a, std::size_t inner,
                            const std::vector<typename R::value_type>& pool, bool quotient_columns,
                            const std::function<bool(const Matrix<R>&)>& emit) {
    using V = typename R::value_type;
    const R& ring = a.ring();
    const std::size_t rows = a.rows();
    std::vector<Int> budget_left(rows);
    for (std::size_t i = 0; i < rows; ++i) budget_left[i] = row_weight(a, i);

    Matrix<R> r(rows, inner, ring);
    // cells in row-major order
    std::function<bool(std::size_t)> rec = [&](std::size_t cell) -> bool {
        if (cell == rows * inner) {
            if (quotient_columns) {
                for (std::size_t k = 1; k < inner; ++k) {
                    // column k-1 must be <= column k lexicographically
                    for (std::size_t i = 0; i < rows; ++i) {
                        if (ring.eq(r.at(i, k - 1), r.at(i, k))) continue;
                        Int wl = entry_weight(r.at(i, k - 1)), wr = entry_weight(r.at(i, k));
                        bool lt = wl != wr ? wl < wr : ring.str(r.at(i, k - 1)) < ring.str(r.at(i, k));
                        if (!lt) return false;
                        break;
                    }
                }
            }
            return emit(r);
        }
        std::size_t i = cell / inner, k = cell % inner;
        for (const V& cand : pool) {
            Int w = entry_weight(cand);
            if (w > budget_left[i]) continue;
            budget_left[i] -= w;
            r.at(i, k) = cand;
            if (rec(cell + 1)) return true;
            r.at(i, k) = ring.zero();
            budget_left[i] += w;
        }
        return false;
    };
    return rec(0);
}

template <Semiring R>
Int max_entry_weight(const Matrix<R>& m) {
    Int w(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) w = std::max(w, entry_weight(m.at(i, j)));
    return w;
}

}  // namespace detail

/// Exhaustive bounded search for a single factor witness m = R*S, n = S*R.
/// The inner dimension is forced by the target's size; entries range over
/// the budget pool with the row-weight prune. The identity factorization is
/// tried first, so (m, m) always succeeds immediately. Exhaustion is
/// conclusive only within the budget.
template <Semiring R>
std::optional<CertStep<R>> elementary_sse(const Matrix<R>& m, const Matrix<R>& n,
                                          const SearchBudget& budget) {
    if (!m.is_square() || !n.is_square()) throw std::invalid_argument("elementary_sse needs square matrices");
    const R& ring = m.ring();
    if (m == n) return CertStep<R>::factor(m, Matrix<R>::identity(m.rows(), ring));

    auto pool = detail::entry_pool(ring, budget);
    std::optional<CertStep<R>> found;
    detail::enumerate_left_factors<R>(m, n.rows(), pool, /*quotient_columns=*/false,
                                      [&](const Matrix<R>& r) {
                                          return detail::solve_cofactor<R>(r, m, pool, [&](const Matrix<R>& s) {
                                              if (s * r != n) return false;
                                              found = CertStep<R>::factor(r, s);
                                              return true;
                                          });
                                      });
    return found;
}

namespace detail {

template <Semiring R>
struct SearchNode {
    Matrix<R> mat;
    std::vector<CertStep<R>> path;  // steps from the origin of this side
};

/// Neighbor generation shared by the sse and flow searches.
template <Semiring R>
void factor_neighbors(const Matrix<R>& m, const SearchBudget& budget,
                      const std::vector<typename R::value_type>& pool,
                      const std::function<void(Matrix<R>, CertStep<R>)>& yield) {
    for (std::size_t inner = 1; inner <= budget.max_inner_dim; ++inner) {
        detail::enumerate_left_factors<R>(
            m, inner, pool, /*quotient_columns=*/true, [&](const Matrix<R>& r) {
                detail::solve_cofactor<R>(r, m, pool, [&](const Matrix<R>& s) {
                    Matrix<R> next = s * r;
                    if (next.rows() <= budget.max_size &&
                        detail::max_entry_weight(next) <= budget.max_entry)
                        yield(std::move(next), CertStep<R>::factor(r, s));
                    return false;  // keep enumerating
                });
                return false;
            });
    }
}

/// Level-synchronous bidirectional BFS with spliced certificates. `expand`
/// yields (neighbor, step) pairs; steps on the target side are inverted at
/// splice time by `invert`, which may return several steps (the expansion
/// move inverts to a contraction plus a permutation).
template <Semiring R>
std::optional<MoveCertificate<R>> bidirectional_search(
    const Matrix<R>& source, const Matrix<R>& target, const std::string& relation,
    const SearchBudget& budget,
    const std::function<void(const Matrix<R>&, const std::function<void(Matrix<R>, CertStep<R>)>&)>& expand,
    const std::function<std::vector<CertStep<R>>(const CertStep<R>&, const Matrix<R>& before)>& invert) {
    using Node = SearchNode<R>;
    if (source == target) return MoveCertificate<R>(relation, source, target);

    std::map<std::string, Node> seen_a, seen_b;
    std::deque<std::string> frontier_a, frontier_b;
    seen_a.emplace(source.key(), Node{source, {}});
    seen_b.emplace(target.key(), Node{target, {}});
    frontier_a.push_back(source.key());
    frontier_b.push_back(target.key());

    auto splice = [&](const Node& from_a, const Node& from_b) {
        MoveCertificate<R> cert(relation, source, target);
        cert.steps = from_a.path;
        // replay the b-side path backwards, inverting each step
        std::vector<std::pair<Matrix<R>, CertStep<R>>> staged;
        Matrix<R> cur = target;
        for (const CertStep<R>& st : from_b.path) {
            staged.emplace_back(cur, st);
            cur = apply_step(cur, st);
        }
        for (std::size_t i = staged.size(); i-- > 0;)
            for (CertStep<R>& st : invert(staged[i].second, staged[i].first)) cert.steps.push_back(std::move(st));
        return cert;
    };

    std::size_t depth_a = 0, depth_b = 0;
    while (!frontier_a.empty() && !frontier_b.empty()) {
        if (depth_a + depth_b >= budget.max_steps) return std::nullopt;
        bool expand_a = frontier_a.size() <= frontier_b.size();
        auto& frontier = expand_a ? frontier_a : frontier_b;
        auto& seen_self = expand_a ? seen_a : seen_b;
        auto& seen_other = expand_a ? seen_b : seen_a;
        (expand_a ? depth_a : depth_b)++;

        std::deque<std::string> next;
        std::optional<MoveCertificate<R>> found;
        for (const std::string& key : frontier) {
            const Node node = seen_self.at(key);
            expand(node.mat, [&](Matrix<R> nb, CertStep<R> step) {
                if (found || seen_self.size() + next.size() > budget.max_nodes) return;
                std::string nb_key = nb.key();
                if (seen_self.count(nb_key)) return;
                Node child{std::move(nb), node.path};
                child.path.push_back(std::move(step));
                auto other = seen_other.find(nb_key);
                if (other != seen_other.end()) {
                    found = expand_a ? splice(child, other->second) : splice(other->second, child);
                    return;
                }
                seen_self.emplace(nb_key, std::move(child));
                next.push_back(std::move(nb_key));
            });
            if (found) return found;
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

template <Semiring R>
std::vector<CertStep<R>> invert_factor(const CertStep<R>& st, const Matrix<R>&) {
    // R*S = m, S*R = n inverts to S*R = n, R*S = m
    return {CertStep<R>::factor(*st.factor_s, *st.factor_r)};
}

}  // namespace detail

/// Bounded path search for strong shift equivalence: breadth-first over
/// elementary factor moves from both ends. A returned certificate replays
/// exactly; nothing means unknown within the budget.
template <Semiring R>
std::optional<MoveCertificate<R>> sse_search(const Matrix<R>& m, const Matrix<R>& n,
                                             const SearchBudget& budget) {
    if (!m.is_square() || !n.is_square()) throw std::invalid_argument("sse_search needs square matrices");
    auto pool = detail::entry_pool(m.ring(), budget);
    auto expand = [&](const Matrix<R>& cur, const std::function<void(Matrix<R>, CertStep<R>)>& yield) {
        detail::factor_neighbors(cur, budget, pool, yield);
    };
    return detail::bidirectional_search<R>(m, n, "sse", budget, expand, detail::invert_factor<R>);
}

/// Bounded path search for flow equivalence: factor moves plus the row
/// expansion schema, its exact contraction, and permutation conjugations.
template <Semiring R>
std::optional<MoveCertificate<R>> flow_search(const Matrix<R>& m, const Matrix<R>& n,
                                              const SearchBudget& budget) {
    if (!m.is_square() || !n.is_square()) throw std::invalid_argument("flow_search needs square matrices");
    auto pool = detail::entry_pool(m.ring(), budget);
    auto expand = [&](const Matrix<R>& cur, const std::function<void(Matrix<R>, CertStep<R>)>& yield) {
        if (auto c = ps_contract(cur)) yield(*c, CertStep<R>::contract_row());
        if (cur.rows() + 1 <= budget.max_size)
            for (std::size_t i = 0; i < cur.rows(); ++i) yield(ps_expand(cur, i), CertStep<R>::expand_row(i));
        // permutation conjugations: all of them at small sizes
        if (cur.rows() >= 2 && cur.rows() <= 4) {
            std::vector<std::size_t> im(cur.rows());
            for (std::size_t i = 0; i < im.size(); ++i) im[i] = i;
            while (std::next_permutation(im.begin(), im.end())) {
                Permutation p{std::vector<std::size_t>(im)};
                yield(apply_step(cur, CertStep<R>::permute(p)), CertStep<R>::permute(p));
            }
        }
        detail::factor_neighbors(cur, budget, pool, yield);
    };
    auto invert = [&](const CertStep<R>& st, const Matrix<R>& before) -> std::vector<CertStep<R>> {
        using Kind = typename CertStep<R>::Kind;
        switch (st.kind) {
            case Kind::Factor: return detail::invert_factor<R>(st, before);
            case Kind::ExpandRow: {
                // expansion conjugated row `st.row` to the front first, so the
                // inverse is the exact contraction followed by undoing the rotation
                const std::size_t sz = before.rows();
                std::vector<std::size_t> rot(sz);
                rot[st.row] = 0;
                for (std::size_t i = 0; i < sz; ++i)
                    if (i != st.row) rot[i] = i < st.row ? i + 1 : i;
                Permutation rho{std::move(rot)};
                if (rho.is_identity()) return {CertStep<R>::contract_row()};
                return {CertStep<R>::contract_row(), CertStep<R>::permute(rho.inverse())};
            }
            case Kind::ContractRow: {
                // the contraction of `before` re-expands at row 0 of the result
                return {CertStep<R>::expand_row(0)};
            }
            case Kind::Permute: return {CertStep<R>::permute(st.perm.inverse())};
            default: throw std::logic_error("unexpected step in flow search");
        }
    };
    return detail::bidirectional_search<R>(m, n, "flow", budget, expand, invert);
}

}  // namespace shiftprop
