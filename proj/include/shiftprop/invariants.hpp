#pragma once

#include "shiftprop/det.hpp"
#include "shiftprop/matrix.hpp"
#include "shiftprop/search.hpp"
#include "shiftprop/smith.hpp"
#include "shiftprop/weighted.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shiftprop {

/// Finitely generated abelian group in canonical form: free rank plus the
/// elementary divisor chain (divisors 1 are dropped). Two groups are equal
/// iff the fields are equal.
struct AbelianGroupClass {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;  // d1 | d2 | ..., all > 1

    friend bool operator==(const AbelianGroupClass& a, const AbelianGroupClass& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    std::string str() const {
        if (is_trivial()) return "trivial";
        std::string out;
        if (free_rank > 0) out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
        for (const Int& d : torsion) {
            if (!out.empty()) out += " (+) ";
            out += "Z/" + d.str();
        }
        return out;
    }
};

/// Cokernel of M - I over the integers.
template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
AbelianGroupClass bowen_franks(const Matrix<R>& m) {
    if (!m.is_square()) throw std::invalid_argument("bowen_franks requires a square matrix");
    Matrix<ZRing> a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a.at(i, j) = m.at(i, j) - (i == j ? 1 : 0);
    SmithResult snf = smith_normal_form(a);
    AbelianGroupClass out;
    out.free_rank = snf.free_rank;
    for (const Int& d : snf.divisors)
        if (d > 1) out.torsion.push_back(d);
    return out;
}

/// Reciprocal denominator of the orbit-counting generating function:
/// det(I - t M), constant term 1 by construction.
struct ZetaInvariant {
    IntPoly denominator;

    friend bool operator==(const ZetaInvariant& a, const ZetaInvariant& b) {
        return a.denominator == b.denominator;
    }
    std::string str() const { return "1/(" + denominator.str() + ")"; }
};

namespace detail {

template <Semiring R>
Matrix<PolyRing> eye_minus_t(const Matrix<R>& m) {
    Matrix<PolyRing> a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            IntPoly e = IntPoly::t(1, -m.at(i, j));
            if (i == j) e = e + IntPoly(Int(1));
            a.at(i, j) = e;
        }
    return a;
}

}  // namespace detail

template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
ZetaInvariant zeta_poly(const Matrix<R>& m) {
    if (!m.is_square()) throw std::invalid_argument("zeta_poly requires a square matrix");
    IntPoly det = det_poly(detail::eye_minus_t(m));
    if (det.coeff(0) != 1) throw std::logic_error("det(I - tM) must have constant term 1");
    return ZetaInvariant{std::move(det)};
}

/// Characteristic polynomial with every factor of t stripped; the remaining
/// monic polynomial carries the nonzero eigenvalues with multiplicity.
template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
IntPoly spectrum_away_from_zero(const Matrix<R>& m) {
    if (!m.is_square()) throw std::invalid_argument("spectrum requires a square matrix");
    Matrix<PolyRing> a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            IntPoly e(-m.at(i, j));
            if (i == j) e = e + IntPoly::t();
            a.at(i, j) = e;
        }
    IntPoly chi = det_poly(a);
    if (chi.is_zero()) throw std::logic_error("characteristic polynomial cannot vanish");
    // strip t factors
    std::vector<Int> cs = chi.coeffs();
    std::size_t shift = 0;
    while (shift < cs.size() && cs[shift] == 0) ++shift;
    std::vector<Int> stripped(cs.begin() + static_cast<long>(shift), cs.end());
    IntPoly out{std::move(stripped)};
    if (out.leading() < 0) out = -out;
    return out;
}

/// Number of closed walks of length `period`: trace of the exact power.
template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
Int periodic_point_count(const Matrix<R>& m, std::size_t period) {
    if (!m.is_square()) throw std::invalid_argument("periodic_point_count requires a square matrix");
    if (period == 0) throw std::invalid_argument("period must be at least 1");
    return m.pow(period).trace();
}

inline bool is_prime(const Int& p) {
    if (p < 2) return false;
    for (Int d(2); d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Number of solutions of lambda (M x) = x over F_p, as p^nullity(lambda M - I).
template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
Int finite_field_fixed_count(const Matrix<R>& m, const Int& p, const Int& lambda) {
    if (!m.is_square()) throw std::invalid_argument("finite_field_fixed_count requires a square matrix");
    if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
    FpRing f(p);
    Matrix<FpRing> a(m.rows(), m.cols(), f);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            a.at(i, j) = f.reduce(lambda * m.at(i, j) - (i == j ? 1 : 0));
    std::size_t nullity = fp_nullity(a);
    Int count(1);
    for (std::size_t i = 0; i < nullity; ++i) count *= p;
    return count;
}

/// Presentation of the cokernel of I - t M over Z[t], with its principal
/// Fitting invariant.
struct ModulePresentation {
    Matrix<PolyRing> relation_matrix;
    std::size_t generators = 0;
    IntPoly fitting_invariant;
};

template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
ModulePresentation dimension_module(const Matrix<R>& m) {
    if (!m.is_square()) throw std::invalid_argument("dimension_module requires a square matrix");
    ModulePresentation out{detail::eye_minus_t(m), m.rows(), IntPoly()};
    out.fitting_invariant = det_poly(out.relation_matrix);
    if (!out.fitting_invariant.is_zero() && out.fitting_invariant.coeff(0) < 0)
        out.fitting_invariant = -out.fitting_invariant;

    // specialization self-check: at t = 1 the presentation collapses to the
    // integer cokernel of I - M, which must agree with the group invariant
    Matrix<ZRing> at_one(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) at_one.at(i, j) = out.relation_matrix.at(i, j).eval(Int(1));
    SmithResult snf = smith_normal_form(at_one);
    AbelianGroupClass spec;
    spec.free_rank = snf.free_rank;
    for (const Int& d : snf.divisors)
        if (d > 1) spec.torsion.push_back(d);
    if (!(spec == bowen_franks(m)))
        throw std::logic_error("dimension module specialization disagrees with the group invariant");
    return out;
}

/// The positive semimodule presentation <x_1..x_n | tMx = x>, emitted
/// verbatim: no normalization and no isomorphism decision.
struct SemimodulePresentation {
    std::size_t generators = 0;
    std::vector<std::vector<IntPoly>> lhs;  // row i: coefficients of x_j in the i-th relation

    static std::string var(std::size_t j, std::size_t n) {
        return n == 1 ? "x" : "x" + std::to_string(j + 1);
    }

    std::string str() const {
        std::string out = "<";
        for (std::size_t j = 0; j < generators; ++j) out += (j ? "," : "") + var(j, generators);
        out += " | ";
        for (std::size_t i = 0; i < generators; ++i) {
            if (i) out += ", ";
            std::string row;
            for (std::size_t j = 0; j < generators; ++j) {
                const IntPoly& c = lhs[i][j];
                for (long k = 0; k <= c.degree(); ++k) {
                    Int coeff = c.coeff(static_cast<std::size_t>(k));
                    if (coeff == 0) continue;
                    if (!row.empty()) row += " + ";
                    std::string mono;
                    if (coeff != 1) mono += coeff.str();
                    if (k == 1) mono += "t";
                    else if (k > 1) mono += "t^" + std::to_string(k);
                    mono += (generators == 1 ? "" : " ") + var(j, generators);
                    row += mono;
                }
            }
            if (row.empty()) row = "0";
            out += row + " = " + var(i, generators);
        }
        return out + ">";
    }
};

template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
SemimodulePresentation semimodule_presentation(const Matrix<R>& m) {
    if (!m.is_square()) throw std::invalid_argument("semimodule_presentation requires a square matrix");
    SemimodulePresentation out;
    out.generators = m.rows();
    out.lhs.assign(m.rows(), std::vector<IntPoly>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m.at(i, j) < 0) throw std::invalid_argument("presentation requires nonnegative entries");
            out.lhs[i][j] = IntPoly::t(1, m.at(i, j));
        }
    return out;
}

enum class Relation { Sse, Flow };

/// One row of the invariant table compiled by compare().
struct InvariantRow {
    std::string name;
    std::string lhs, rhs;
    bool equal = false;
};

/// Verdict of a bounded comparison. Distinguished rows are genuinely
/// invariant quantities that differ; Unknown carries the full agreeing table
/// and the budget that was exhausted.
struct EquivVerdict {
    enum class Outcome { Equivalent, Distinguished, Unknown };
    Outcome outcome = Outcome::Unknown;
    std::vector<InvariantRow> table;
    std::optional<MoveCertificate<ZPlusRing>> certificate;  // Equivalent
    std::string distinguished_by;                           // Distinguished
    SearchBudget budget_tried;
};

namespace detail {

struct MonoidProbe {
    std::string name;
    FiniteMonoid monoid;
    MonoidHom hom;
    bool hom_is_identity;
};

inline std::vector<MonoidProbe> registered_probes() {
    std::vector<MonoidProbe> out;
    {
        FiniteMonoid z2 = FiniteMonoid::cyclic(2);
        MonoidHom id2 = MonoidHom::identity(z2);
        out.push_back({"fixed-count[Z/2]", z2, id2, true});
    }
    {
        FiniteMonoid z3 = FiniteMonoid::cyclic(3);
        MonoidHom id3 = MonoidHom::identity(z3);
        out.push_back({"fixed-count[Z/3]", z3, id3, true});
        out.push_back({"fixed-count[Z/3,h=2x]", z3, MonoidHom(z3, {0, 2, 1}), false});
    }
    {
        FiniteMonoid b2 = FiniteMonoid::subsets_under_union(2);
        MonoidHom idb = MonoidHom::identity(b2);
        out.push_back({"fixed-count[P{0,1}]", b2, idb, true});
    }
    {
        FiniteMonoid z4 = FiniteMonoid::cyclic(4);
        out.push_back({"fixed-count[Z/4,h=2x]", z4, MonoidHom(z4, {0, 2, 0, 2}), false});
    }
    return out;
}

}  // namespace detail

/// Compiles the invariant table appropriate to the relation, separates if
/// any row differs, otherwise runs the bounded search for a certificate.
/// The flow table deliberately omits the zeta-family invariants: the row
/// expansion move changes det(I - tM), so they only separate under sse.
template <Semiring R>
    requires std::same_as<typename R::value_type, Int>
EquivVerdict compare(const Matrix<R>& m, const Matrix<R>& n, Relation relation, const SearchBudget& budget) {
    if (!m.is_square() || !n.is_square()) throw std::invalid_argument("compare requires square matrices");
    EquivVerdict verdict;
    verdict.budget_tried = budget;

    auto add_row = [&](std::string name, std::string a, std::string b) {
        bool equal = a == b;
        verdict.table.push_back({std::move(name), std::move(a), std::move(b), equal});
    };

    add_row("bowen-franks", bowen_franks(m).str(), bowen_franks(n).str());
    for (const auto& probe : detail::registered_probes()) {
        if (relation == Relation::Flow && !probe.hom_is_identity) continue;
        add_row(probe.name, count_fixed_points(m, probe.monoid, probe.hom).str(),
                count_fixed_points(n, probe.monoid, probe.hom).str());
    }
    if (relation == Relation::Sse) {
        add_row("zeta", zeta_poly(m).denominator.str(), zeta_poly(n).denominator.str());
        add_row("spectrum", spectrum_away_from_zero(m).str(), spectrum_away_from_zero(n).str());
        add_row("fitting", dimension_module(m).fitting_invariant.str(),
                dimension_module(n).fitting_invariant.str());
        for (Int p : {Int(2), Int(3), Int(5)})
            for (Int lambda(0); lambda < p; ++lambda)
                add_row("ff-count[p=" + p.str() + ",l=" + lambda.str() + "]",
                        finite_field_fixed_count(m, p, lambda).str(),
                        finite_field_fixed_count(n, p, lambda).str());
    }

    for (const InvariantRow& row : verdict.table)
        if (!row.equal) {
            verdict.outcome = EquivVerdict::Outcome::Distinguished;
            verdict.distinguished_by = row.name;
            return verdict;
        }

    Matrix<ZPlusRing> mp = with_ring<ZPlusRing>(m), np = with_ring<ZPlusRing>(n);
    std::optional<MoveCertificate<ZPlusRing>> cert =
        relation == Relation::Sse ? sse_search(mp, np, budget) : flow_search(mp, np, budget);
    if (cert) {
        VerifyResult check = verify_certificate(*cert);
        if (!check.ok) throw std::logic_error("search produced a certificate that fails replay: " + check.message);
        verdict.outcome = EquivVerdict::Outcome::Equivalent;
        verdict.certificate = std::move(cert);
        return verdict;
    }
    verdict.outcome = EquivVerdict::Outcome::Unknown;
    return verdict;
}

}  // namespace shiftprop
