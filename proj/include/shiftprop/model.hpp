#pragma once

#include "shiftprop/diagram.hpp"
#include "shiftprop/matrix.hpp"
#include "shiftprop/traced.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace shiftprop {

/// A model assigns matrices to the diagram generators and fixes how wire
/// bundles and tensors behave. Two families exist: the matrix prop itself
/// (one dimension per wire, tensor = direct sum, no honest trace) and the
/// weighted-relation prop over a finite index set (d^n dimensions for n
/// wires, tensor = Kronecker, honest partial trace).
template <class M>
concept PropModel = requires(const M m, const Matrix<typename M::ring_type>& a, std::size_t w) {
    typename M::ring_type;
    { m.ring() } -> std::convertible_to<typename M::ring_type>;
    { m.dim(w) } -> std::convertible_to<std::size_t>;
    { m.generator(Term::Kind::Mu) } -> std::convertible_to<Matrix<typename M::ring_type>>;
    { m.identity(w) } -> std::convertible_to<Matrix<typename M::ring_type>>;
    { m.sym() } -> std::convertible_to<Matrix<typename M::ring_type>>;
    { m.tensor(a, a) } -> std::convertible_to<Matrix<typename M::ring_type>>;
    { M::trace_capable } -> std::convertible_to<bool>;
};

/// The standard model: the prop of matrices over a semiring. A morphism
/// n -> m is an m x n matrix. h is a 1 x 1 scalar box (t over polynomial
/// rings, one elsewhere unless configured).
template <Semiring R>
class MatrixModel {
public:
    using ring_type = R;
    static constexpr bool trace_capable = false;

    explicit MatrixModel(R ring, typename R::value_type h_entry)
        : ring_(std::move(ring)), h_entry_(std::move(h_entry)) {}

    static MatrixModel standard(R ring = R()) {
        typename R::value_type h = default_h(ring);
        return MatrixModel(std::move(ring), std::move(h));
    }

    const R& ring() const { return ring_; }
    std::size_t dim(std::size_t wires) const { return wires; }

    Matrix<R> generator(Term::Kind k) const {
        switch (k) {
            case Term::Kind::Mu: {
                Matrix<R> m(1, 2, ring_);
                m.at(0, 0) = ring_.one();
                m.at(0, 1) = ring_.one();
                return m;
            }
            case Term::Kind::Eta: return Matrix<R>(1, 0, ring_);
            case Term::Kind::Delta: {
                Matrix<R> m(2, 1, ring_);
                m.at(0, 0) = ring_.one();
                m.at(1, 0) = ring_.one();
                return m;
            }
            case Term::Kind::Eps: return Matrix<R>(0, 1, ring_);
            case Term::Kind::H: {
                Matrix<R> m(1, 1, ring_);
                m.at(0, 0) = h_entry_;
                return m;
            }
            default: throw std::invalid_argument("not a generator");
        }
    }

    Matrix<R> identity(std::size_t wires) const { return Matrix<R>::identity(wires, ring_); }
    Matrix<R> sym() const { return Matrix<R>::permutation(Permutation::block_swap(1, 1), ring_); }
    Matrix<R> tensor(const Matrix<R>& a, const Matrix<R>& b) const { return direct_sum(a, b); }

private:
    static typename R::value_type default_h(const R& ring) {
        if constexpr (std::same_as<typename R::value_type, IntPoly>) {
            (void)ring;
            return IntPoly::t();
        } else {
            return ring.one();
        }
    }

    R ring_;
    typename R::value_type h_entry_;
};

namespace detail {

template <PropModel M>
Matrix<typename M::ring_type> eval_plain(const Term::Ptr& term, const M& model);

/// The ten defining equations plus the four h equations, as term pairs.
/// Chained equalities are split, so there are a few more pairs than named
/// equations.
inline std::vector<std::pair<Term::Ptr, Term::Ptr>> bialgebra_equations(bool with_h) {
    using T = Term;
    std::vector<std::pair<Term::Ptr, Term::Ptr>> eqs;
    auto mu = T::mu(), eta = T::eta(), delta = T::delta(), eps = T::eps(), id = T::id(), sym = T::sym();
    // unit laws
    eqs.emplace_back(T::compose(mu, T::tensor(eta, id)), id);
    eqs.emplace_back(T::compose(mu, T::tensor(id, eta)), id);
    // associativity
    eqs.emplace_back(T::compose(mu, T::tensor(mu, id)), T::compose(mu, T::tensor(id, mu)));
    // commutativity
    eqs.emplace_back(T::compose(mu, sym), mu);
    // counit laws
    eqs.emplace_back(T::compose(T::tensor(eps, id), delta), id);
    eqs.emplace_back(T::compose(T::tensor(id, eps), delta), id);
    // coassociativity
    eqs.emplace_back(T::compose(T::tensor(delta, id), delta), T::compose(T::tensor(id, delta), delta));
    // cocommutativity
    eqs.emplace_back(T::compose(sym, delta), delta);
    eqs.emplace_back(T::compose(delta, eta), T::tensor(eta, eta));
    eqs.emplace_back(T::compose(eps, mu), T::tensor(eps, eps));
    eqs.emplace_back(T::compose(eps, eta), T::empty());
    // bigebra law
    eqs.emplace_back(T::compose(T::tensor(mu, mu),
                                T::compose(T::tensor(id, T::tensor(sym, id)), T::tensor(delta, delta))),
                     T::compose(delta, mu));
    if (with_h) {
        auto h = T::h();
        eqs.emplace_back(T::compose(h, mu), T::compose(mu, T::tensor(h, h)));
        eqs.emplace_back(T::compose(h, eta), eta);
        eqs.emplace_back(T::compose(T::tensor(h, h), delta), T::compose(delta, h));
        eqs.emplace_back(T::compose(eps, h), eps);
    }
    return eqs;
}

}  // namespace detail

/// Checks every bialgebra equation (and the h equations) as an exact matrix
/// identity in the model. Returns the text of the first violated equation,
/// or an empty string when the model is lawful.
template <PropModel M>
std::string check_model_equations(const M& model) {
    for (const auto& [lhs, rhs] : detail::bialgebra_equations(true)) {
        Matrix<typename M::ring_type> a = detail::eval_plain(lhs, model);
        Matrix<typename M::ring_type> b = detail::eval_plain(rhs, model);
        if (a != b) return lhs->str() + " != " + rhs->str();
    }
    return {};
}

template <PropModel M>
void validate_model(const M& model) {
    std::string violated = check_model_equations(model);
    if (!violated.empty()) throw std::invalid_argument("model violates equation: " + violated);
}

/// Result of evaluating a term: either a plain matrix with its wire arities,
/// or a traced pair when the model has no honest trace and the term contains
/// trace nodes.
template <Semiring R>
struct ArityMatrix {
    Matrix<R> mat;
    std::size_t wires_in = 0, wires_out = 0;
};

template <Semiring R>
using EvalResult = std::variant<ArityMatrix<R>, TracedMorphism<R>>;

namespace detail {

template <PropModel M>
Matrix<typename M::ring_type> eval_plain(const Term::Ptr& term, const M& model) {
    using R = typename M::ring_type;
    switch (term->kind()) {
        case Term::Kind::Id: return model.identity(1);
        case Term::Kind::Empty: return model.identity(0);
        case Term::Kind::Sym: return model.sym();
        case Term::Kind::Compose: {
            Matrix<R> f = eval_plain(term->left(), model);
            Matrix<R> g = eval_plain(term->right(), model);
            return f * g;
        }
        case Term::Kind::Tensor: {
            Matrix<R> f = eval_plain(term->left(), model);
            Matrix<R> g = eval_plain(term->right(), model);
            return model.tensor(f, g);
        }
        case Term::Kind::Trace: {
            if constexpr (M::trace_capable) {
                Matrix<R> f = eval_plain(term->left(), model);
                return model.partial_trace(f, term->left()->inputs(), term->left()->outputs());
            } else {
                throw std::invalid_argument("trace node in a model without an honest trace");
            }
        }
        default: return model.generator(term->kind());
    }
}

template <PropModel M>
TracedMorphism<typename M::ring_type> to_pair(EvalResult<typename M::ring_type>&& v, const Term::Ptr& term,
                                              const M&) {
    using R = typename M::ring_type;
    if (std::holds_alternative<TracedMorphism<R>>(v)) return std::get<TracedMorphism<R>>(std::move(v));
    ArityMatrix<R>& am = std::get<ArityMatrix<R>>(v);
    (void)term;
    return TracedMorphism<R>(0, am.wires_in, am.wires_out, std::move(am.mat));
}

template <PropModel M>
EvalResult<typename M::ring_type> eval_routed(const Term::Ptr& term, const M& model) {
    using R = typename M::ring_type;
    switch (term->kind()) {
        case Term::Kind::Compose: {
            EvalResult<R> f = eval_routed(term->left(), model);
            EvalResult<R> g = eval_routed(term->right(), model);
            if (std::holds_alternative<ArityMatrix<R>>(f) && std::holds_alternative<ArityMatrix<R>>(g)) {
                ArityMatrix<R>& fa = std::get<ArityMatrix<R>>(f);
                ArityMatrix<R>& ga = std::get<ArityMatrix<R>>(g);
                return ArityMatrix<R>{fa.mat * ga.mat, ga.wires_in, fa.wires_out};
            }
            return tp_compose(to_pair(std::move(f), term->left(), model),
                              to_pair(std::move(g), term->right(), model));
        }
        case Term::Kind::Tensor: {
            EvalResult<R> f = eval_routed(term->left(), model);
            EvalResult<R> g = eval_routed(term->right(), model);
            if (std::holds_alternative<ArityMatrix<R>>(f) && std::holds_alternative<ArityMatrix<R>>(g)) {
                ArityMatrix<R>& fa = std::get<ArityMatrix<R>>(f);
                ArityMatrix<R>& ga = std::get<ArityMatrix<R>>(g);
                return ArityMatrix<R>{model.tensor(fa.mat, ga.mat), fa.wires_in + ga.wires_in,
                                      fa.wires_out + ga.wires_out};
            }
            return tp_tensor(to_pair(std::move(f), term->left(), model),
                             to_pair(std::move(g), term->right(), model));
        }
        case Term::Kind::Trace:
            return tp_trace(to_pair(eval_routed(term->left(), model), term->left(), model));
        default:
            return ArityMatrix<R>{eval_plain(term, model), term->inputs(), term->outputs()};
    }
}

}  // namespace detail

/// Compositional evaluation of a term in a model. Trace-capable models fold
/// trace nodes through the model's own partial trace; the matrix prop routes
/// them through the traced-pair construction instead, in which case the
/// result is a TracedMorphism (with dashed = 0 collapsed back to a matrix).
template <PropModel M>
EvalResult<typename M::ring_type> eval_diagram(const Term::Ptr& term, const M& model) {
    using R = typename M::ring_type;
    if constexpr (M::trace_capable) {
        return ArityMatrix<R>{detail::eval_plain(term, model), term->inputs(), term->outputs()};
    } else {
        EvalResult<R> v = detail::eval_routed(term, model);
        if (std::holds_alternative<TracedMorphism<R>>(v)) {
            TracedMorphism<R>& p = std::get<TracedMorphism<R>>(v);
            if (p.dashed == 0) return ArityMatrix<R>{std::move(p.underlying), p.vis_in, p.vis_out};
        }
        return v;
    }
}

/// Convenience for callers that know the term has no trace nodes.
template <PropModel M>
Matrix<typename M::ring_type> eval_to_matrix(const Term::Ptr& term, const M& model) {
    using R = typename M::ring_type;
    EvalResult<R> v = eval_diagram(term, model);
    if (!std::holds_alternative<ArityMatrix<R>>(v))
        throw std::invalid_argument("term evaluates to a traced pair, not a matrix");
    return std::get<ArityMatrix<R>>(std::move(v)).mat;
}

}  // namespace shiftprop
