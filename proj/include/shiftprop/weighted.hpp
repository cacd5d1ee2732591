#pragma once

#include "shiftprop/model.hpp"
#include "shiftprop/monoid.hpp"
#include "shiftprop/traced.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace shiftprop {

/// The traced prop of weighted relations over a finite commutative monoid X:
/// a bundle of n wires carries X^n, a morphism n -> m is a |X|^m x |X|^n
/// matrix of possibly-infinite counts, tensor is the Kronecker product and
/// the partial trace is an honest sum over the fed-back index. Tuples are
/// enumerated in mixed-radix order with the first wire most significant.
class WeightedModel {
public:
    using ring_type = NatInfRing;
    static constexpr bool trace_capable = true;

    WeightedModel(FiniteMonoid monoid, MonoidHom hom)
        : monoid_(std::move(monoid)), hom_(std::move(hom)) {}

    const NatInfRing& ring() const { return ring_; }
    const FiniteMonoid& monoid() const { return monoid_; }
    const MonoidHom& hom() const { return hom_; }

    std::size_t base() const { return monoid_.size(); }
    std::size_t dim(std::size_t wires) const {
        std::size_t d = 1;
        for (std::size_t i = 0; i < wires; ++i) d *= base();
        return d;
    }

    Matrix<NatInfRing> generator(Term::Kind k) const {
        const std::size_t d = base();
        const NatInf one(Int(1));
        switch (k) {
            case Term::Kind::Mu: {
                Matrix<NatInfRing> m(d, d * d, ring_);
                for (std::size_t x = 0; x < d; ++x)
                    for (std::size_t y = 0; y < d; ++y) m.at(monoid_.op(x, y), x * d + y) = one;
                return m;
            }
            case Term::Kind::Eta: {
                Matrix<NatInfRing> m(d, 1, ring_);
                m.at(monoid_.unit(), 0) = one;
                return m;
            }
            case Term::Kind::Delta: {
                Matrix<NatInfRing> m(d * d, d, ring_);
                for (std::size_t x = 0; x < d; ++x) m.at(x * d + x, x) = one;
                return m;
            }
            case Term::Kind::Eps: {
                Matrix<NatInfRing> m(1, d, ring_);
                for (std::size_t x = 0; x < d; ++x) m.at(0, x) = one;
                return m;
            }
            case Term::Kind::H: {
                Matrix<NatInfRing> m(d, d, ring_);
                for (std::size_t x = 0; x < d; ++x) m.at(hom_(x), x) = one;
                return m;
            }
            default: throw std::invalid_argument("not a generator");
        }
    }

    Matrix<NatInfRing> identity(std::size_t wires) const {
        return Matrix<NatInfRing>::identity(dim(wires), ring_);
    }

    Matrix<NatInfRing> sym() const {
        const std::size_t d = base();
        Matrix<NatInfRing> m(d * d, d * d, ring_);
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) m.at(y * d + x, x * d + y) = NatInf(Int(1));
        return m;
    }

    Matrix<NatInfRing> tensor(const Matrix<NatInfRing>& a, const Matrix<NatInfRing>& b) const {
        return kronecker(a, b);
    }

    /// Honest partial trace on the first wire: entry (z, y) of the result is
    /// the sum over x of entry ((x,z), (x,y)).
    Matrix<NatInfRing> partial_trace(const Matrix<NatInfRing>& f, std::size_t wires_in,
                                     std::size_t wires_out) const {
        if (wires_in == 0 || wires_out == 0) throw std::invalid_argument("nothing to trace");
        const std::size_t d = base();
        const std::size_t rin = dim(wires_in - 1), rout = dim(wires_out - 1);
        if (f.rows() != rout * d || f.cols() != rin * d)
            throw std::invalid_argument("weighted morphism dimensions inconsistent with arity");
        Matrix<NatInfRing> out(rout, rin, ring_);
        for (std::size_t z = 0; z < rout; ++z)
            for (std::size_t y = 0; y < rin; ++y) {
                NatInf acc;
                for (std::size_t x = 0; x < d; ++x) acc = acc + f.at(x * rout + z, x * rin + y);
                out.at(z, y) = acc;
            }
        return out;
    }

private:
    FiniteMonoid monoid_;
    MonoidHom hom_;
    NatInfRing ring_;
};

/// Builds the weighted model of a monoid and checks every bialgebra and h
/// equation as an exact matrix identity before handing it out.
inline WeightedModel monoid_model(FiniteMonoid monoid, MonoidHom hom) {
    WeightedModel model(std::move(monoid), std::move(hom));
    validate_model(model);
    return model;
}

inline WeightedModel monoid_model(FiniteMonoid monoid) {
    MonoidHom id = MonoidHom::identity(monoid);
    return monoid_model(std::move(monoid), std::move(id));
}

namespace detail {

inline std::size_t poly_degree_bound(const IntPoly& p) {
    return p.is_zero() ? 0 : static_cast<std::size_t>(p.degree());
}

/// h^k images for k up to the largest degree needed.
inline std::vector<std::vector<std::size_t>> hom_iterates(const WeightedModel& model, std::size_t max_k) {
    const std::size_t d = model.base();
    std::vector<std::vector<std::size_t>> pow(max_k + 1, std::vector<std::size_t>(d));
    for (std::size_t x = 0; x < d; ++x) pow[0][x] = x;
    for (std::size_t k = 1; k <= max_k; ++k)
        for (std::size_t x = 0; x < d; ++x) pow[k][x] = model.hom()(pow[k - 1][x]);
    return pow;
}

}  // namespace detail

/// Functor image of a matrix morphism in the weighted model: the graph of
/// the function x -> y with y_i = sum_j a_ij . x_j, where a polynomial
/// coefficient c t^k contributes c-fold addition of h^k(x_j).
template <Semiring R>
Matrix<NatInfRing> weighted_lift(const Matrix<R>& m, const WeightedModel& model) {
    const std::size_t p = m.cols(), q = m.rows();
    const std::size_t d = model.base();
    const std::size_t din = model.dim(p), dout = model.dim(q);

    std::size_t max_deg = 0;
    std::vector<std::vector<std::pair<std::size_t, Int>>> units(q);  // per row: (h-power, count)
    std::vector<std::vector<std::size_t>> unit_col(q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            IntPoly entry;
            if constexpr (std::same_as<typename R::value_type, IntPoly>) entry = m.at(i, j);
            else entry = IntPoly(m.at(i, j));
            if (!entry.nonneg()) throw std::invalid_argument("weighted lift requires nonnegative entries");
            for (long k = 0; k <= entry.degree(); ++k) {
                if (entry.coeff(static_cast<std::size_t>(k)) == 0) continue;
                max_deg = std::max(max_deg, static_cast<std::size_t>(k));
                units[i].emplace_back(static_cast<std::size_t>(k), entry.coeff(static_cast<std::size_t>(k)));
                unit_col[i].push_back(j);
            }
        }
    auto hpow = detail::hom_iterates(model, max_deg);

    Matrix<NatInfRing> out(dout, din, model.ring());
    std::vector<std::size_t> x(p);
    for (std::size_t col = 0; col < din; ++col) {
        // decode mixed-radix, first wire most significant
        std::size_t rem = col;
        for (std::size_t j = p; j-- > 0;) {
            x[j] = rem % d;
            rem /= d;
        }
        std::size_t row = 0;
        for (std::size_t i = 0; i < q; ++i) {
            std::size_t yi = model.monoid().unit();
            for (std::size_t u = 0; u < units[i].size(); ++u) {
                const auto& [k, count] = units[i][u];
                std::size_t v = hpow[k][x[unit_col[i][u]]];
                Int c = count;
                while (c > 0) {
                    yi = model.monoid().op(yi, v);
                    --c;
                }
            }
            row = row * d + yi;
        }
        out.at(row, col) = out.at(row, col) + NatInf(Int(1));
    }
    return out;
}

/// Honest weighted value of a traced pair: lift the underlying matrix and
/// trace the dashed wires. This is the oracle every pair-level operation and
/// move is tested against.
template <Semiring R>
Matrix<NatInfRing> pair_value(const TracedMorphism<R>& f, const WeightedModel& model) {
    Matrix<NatInfRing> w = weighted_lift(f.underlying, model);
    std::size_t win = f.dashed + f.vis_in, wout = f.dashed + f.vis_out;
    for (std::size_t k = 0; k < f.dashed; ++k) {
        w = model.partial_trace(w, win, wout);
        --win;
        --wout;
    }
    return w;
}

/// Brute-force count of solutions of h(Mx) = x over the monoid.
template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
NatInf count_fixed_points(const Matrix<R>& m, const FiniteMonoid& monoid, const MonoidHom& hom,
                          std::size_t enumeration_budget = std::size_t{1} << 22) {
    if (!m.is_square()) throw std::invalid_argument("count_fixed_points requires a square matrix");
    const std::size_t n = m.rows(), d = monoid.size();
    std::size_t states = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (states > enumeration_budget / (d ? d : 1))
            throw std::domain_error("enumeration budget exceeded");
        states *= d;
    }
    std::vector<std::vector<std::size_t>> a(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (m.at(i, j) < 0) throw std::invalid_argument("matrix must be nonnegative");
            a[i][j] = static_cast<std::size_t>(m.at(i, j));
        }

    Int count(0);
    std::vector<std::size_t> x(n);
    for (std::size_t code = 0; code < states; ++code) {
        std::size_t rem = code;
        for (std::size_t j = n; j-- > 0;) {
            x[j] = rem % d;
            rem /= d;
        }
        bool fixed = true;
        for (std::size_t i = 0; i < n && fixed; ++i) {
            std::size_t acc = monoid.unit();
            for (std::size_t j = 0; j < n; ++j)
                acc = monoid.op(acc, monoid.times(a[i][j], x[j]));
            if (hom(acc) != x[i]) fixed = false;
        }
        if (fixed) ++count;
    }
    return NatInf(count);
}

/// One horizontal band of the matrix-to-diagram cascade: a single generator
/// applied at a wire offset, identities elsewhere.
struct DiagramLayer {
    std::size_t above = 0;
    Term::Kind gen = Term::Kind::Id;
    std::size_t below = 0;
    std::size_t h_power = 1;  // only for gen == H: number of stacked boxes
};

/// The cascade transcription of a matrix into a diagram: a copy tree fans
/// each input out to its uses, every unit wire of an entry c t^k carries k
/// h-boxes, and sum trees collect each output row. Emitted bottom-up as
/// single-generator bands so both the generic evaluator and the sparse
/// evaluator can fold it.
struct MatrixDiagram {
    std::size_t wires_in = 0, wires_out = 0;
    std::vector<DiagramLayer> layers;  // applied in order, first = innermost

    Term::Ptr term() const {
        Term::Ptr t;  // built as layer_k o ... o layer_1 o id
        std::size_t width = wires_in;
        for (const DiagramLayer& l : layers) {
            Term::Ptr g;
            switch (l.gen) {
                case Term::Kind::H: {
                    g = Term::h();
                    for (std::size_t i = 1; i < l.h_power; ++i) g = Term::compose(Term::h(), g);
                    break;
                }
                default: g = Term::gen(l.gen);
            }
            Term::Ptr band = g;
            if (l.above > 0) band = Term::tensor(Term::id_wires(l.above), band);
            if (l.below > 0) band = Term::tensor(band, Term::id_wires(l.below));
            t = t ? Term::compose(band, t) : band;
            width = l.above + g->outputs() + l.below;
        }
        if (!t) t = Term::id_wires(wires_in);
        (void)width;
        return t;
    }
};

/// Transcribes a q x p matrix over nonnegative polynomial entries into the
/// cascade diagram. Row sums are accumulated left to right; the accumulator
/// is born as a unit, walks down the live inputs, and each contribution is
/// copy / swap / h-stack / add. Finished outputs bubble to the top so the
/// final wire order is exactly (outputs, then nothing).
template <Semiring R>
MatrixDiagram diagram_of_matrix(const Matrix<R>& m) {
    const std::size_t p = m.cols(), q = m.rows();
    MatrixDiagram dia;
    dia.wires_in = p;
    dia.wires_out = q;

    // wire state: finished outputs stay on top, live inputs below
    std::size_t finished = 0;
    auto entry_poly = [&](std::size_t i, std::size_t j) {
        if constexpr (std::same_as<typename R::value_type, IntPoly>) return m.at(i, j);
        else return IntPoly(m.at(i, j));
    };

    for (std::size_t i = 0; i < q; ++i) {
        // accumulator enters directly below the finished block
        dia.layers.push_back({finished, Term::Kind::Eta, p, 1});
        std::size_t acc_pos = finished;  // wires above the accumulator
        // inputs sit at positions acc_pos+1 .. acc_pos+p in some order; we
        // track the column of each live wire
        // walk columns left to right
        for (std::size_t j = 0; j < p; ++j) {
            IntPoly e = entry_poly(i, j);
            if (!e.nonneg()) throw std::invalid_argument("diagram transcription needs nonnegative entries");
            // move the accumulator down so the j-th live input is right below it
            while (acc_pos < finished + j) {
                dia.layers.push_back({acc_pos, Term::Kind::Sym, p - (acc_pos - finished) - 1, 1});
                ++acc_pos;
            }
            for (long k = 0; k <= e.degree(); ++k) {
                Int c = e.coeff(static_cast<std::size_t>(k));
                for (Int u(0); u < c; ++u) {
                    // (acc, x_j, rest): copy x_j, swap the copy up, add it in
                    dia.layers.push_back({acc_pos + 1, Term::Kind::Delta, p - j - 1, 1});
                    dia.layers.push_back({acc_pos + 1, Term::Kind::Sym, p - j - 1, 1});
                    if (k > 0)
                        dia.layers.push_back({acc_pos + 1, Term::Kind::H, p - j, static_cast<std::size_t>(k)});
                    dia.layers.push_back({acc_pos, Term::Kind::Mu, p - j, 1});
                }
            }
        }
        // bubble the finished output to the top of the live block
        while (acc_pos > finished) {
            --acc_pos;
            dia.layers.push_back({acc_pos, Term::Kind::Sym, p - (acc_pos - finished) - 1, 1});
        }
        ++finished;
    }
    // discard the survivor branch of every input's copy tree
    for (std::size_t j = 0; j < p; ++j) dia.layers.push_back({q, Term::Kind::Eps, p - j - 1, 1});
    return dia;
}

namespace detail {

/// Sparse column-major weighted matrix: per input index, the list of
/// (output index, weight). The cascade keeps at most one entry per column
/// (all its layers are graphs of functions), so folding stays linear in the
/// number of input tuples.
struct SparseWeighted {
    std::size_t rows = 1;
    std::vector<std::vector<std::pair<std::size_t, NatInf>>> cols;
};

inline void sparse_apply_layer(SparseWeighted& acc, const DiagramLayer& layer, const WeightedModel& model) {
    std::size_t g_in = 0, g_out = 0;
    switch (layer.gen) {
        case Term::Kind::Mu: g_in = 2, g_out = 1; break;
        case Term::Kind::Eta: g_in = 0, g_out = 1; break;
        case Term::Kind::Delta: g_in = 1, g_out = 2; break;
        case Term::Kind::Eps: g_in = 1, g_out = 0; break;
        case Term::Kind::H: g_in = 1, g_out = 1; break;
        case Term::Kind::Sym: g_in = 2, g_out = 2; break;
        default: throw std::invalid_argument("unsupported layer generator");
    }
    const std::size_t d = model.base();
    const std::size_t din_g = model.dim(g_in), dout_g = model.dim(g_out);
    const std::size_t dbelow = model.dim(layer.below);
    const std::size_t old_rows = acc.rows;
    if (old_rows % (din_g * dbelow) != 0)
        throw std::logic_error("layer width inconsistent with accumulated diagram");
    const std::size_t dabove = old_rows / (din_g * dbelow);

    // generator action as (input tuple) -> list of (output tuple, weight)
    std::vector<std::vector<std::pair<std::size_t, NatInf>>> action(din_g);
    if (layer.gen == Term::Kind::Sym) {
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) action[x * d + y].emplace_back(y * d + x, NatInf(Int(1)));
    } else if (layer.gen == Term::Kind::H) {
        std::vector<std::size_t> im(d);
        for (std::size_t x = 0; x < d; ++x) im[x] = x;
        for (std::size_t k = 0; k < layer.h_power; ++k)
            for (std::size_t x = 0; x < d; ++x) im[x] = model.hom()(im[x]);
        for (std::size_t x = 0; x < d; ++x) action[x].emplace_back(im[x], NatInf(Int(1)));
    } else {
        Matrix<NatInfRing> gm = model.generator(layer.gen);
        for (std::size_t s = 0; s < din_g; ++s)
            for (std::size_t r = 0; r < dout_g; ++r)
                if (!gm.at(r, s).is_zero()) action[s].emplace_back(r, gm.at(r, s));
    }

    acc.rows = dabove * dout_g * dbelow;
    for (auto& col : acc.cols) {
        std::map<std::size_t, NatInf> next;
        for (const auto& [row, val] : col) {
            std::size_t v = row % dbelow;
            std::size_t s = row / dbelow % din_g;
            std::size_t u = row / dbelow / din_g;
            for (const auto& [r, w] : action[s]) {
                std::size_t nrow = (u * dout_g + r) * dbelow + v;
                auto it = next.find(nrow);
                if (it == next.end()) next.emplace(nrow, val * w);
                else it->second = it->second + val * w;
            }
        }
        col.assign(next.begin(), next.end());
    }
}

}  // namespace detail

/// Evaluates the cascade diagram of a square matrix in the monoid model and
/// traces everything, returning the scalar weight. This walks the actual
/// generator semantics layer by layer; count_fixed_points never sees a
/// diagram, which is what makes the two a meaningful cross-check.
template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
NatInf interpret_matrix(const Matrix<R>& m, const FiniteMonoid& monoid, const MonoidHom& hom) {
    if (!m.is_square()) throw std::invalid_argument("interpret_matrix requires a square matrix");
    WeightedModel model(monoid, hom);

    // the shift diagram of M: every unit wire of t*M carries one h box
    Matrix<ZPlusPolyRing> tm(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) tm.at(i, j) = IntPoly::t(1, m.at(i, j));
    MatrixDiagram dia = diagram_of_matrix(tm);

    detail::SparseWeighted acc;
    acc.rows = model.dim(m.cols());
    acc.cols.resize(acc.rows);
    for (std::size_t x = 0; x < acc.rows; ++x) acc.cols[x].emplace_back(x, NatInf(Int(1)));
    for (const DiagramLayer& layer : dia.layers) detail::sparse_apply_layer(acc, layer, model);
    if (acc.rows != model.dim(m.rows())) throw std::logic_error("cascade arity mismatch");

    NatInf total;
    for (std::size_t x = 0; x < acc.cols.size(); ++x)
        for (const auto& [row, val] : acc.cols[x])
            if (row == x) total = total + val;
    return total;
}

}  // namespace shiftprop
