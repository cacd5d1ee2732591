#pragma once

#include "shiftprop/integer.hpp"
#include "shiftprop/natinf.hpp"
#include "shiftprop/poly.hpp"

#include <concepts>
#include <stdexcept>
#include <string>

namespace shiftprop {

/// A semiring is modelled as a lightweight instance carrying the element type
/// and the operations. Most rings are stateless; Fp carries its modulus, so
/// two ring instances must be checked for compatibility before mixing values.
template <class R>
concept Semiring = requires(const R r, const typename R::value_type a, const typename R::value_type b) {
    typename R::value_type;
    { r.zero() } -> std::convertible_to<typename R::value_type>;
    { r.one() } -> std::convertible_to<typename R::value_type>;
    { r.add(a, b) } -> std::convertible_to<typename R::value_type>;
    { r.mul(a, b) } -> std::convertible_to<typename R::value_type>;
    { r.eq(a, b) } -> std::convertible_to<bool>;
    { r.valid(a) } -> std::convertible_to<bool>;
    { r.str(a) } -> std::convertible_to<std::string>;
    { r.name() } -> std::convertible_to<std::string>;
    { r.compatible(r) } -> std::convertible_to<bool>;
    { R::is_complete } -> std::convertible_to<bool>;
};

/// The ring of integers.
struct ZRing {
    using value_type = Int;
    static constexpr bool is_complete = false;
    Int zero() const { return Int(0); }
    Int one() const { return Int(1); }
    Int add(const Int& a, const Int& b) const { return a + b; }
    Int mul(const Int& a, const Int& b) const { return a * b; }
    bool eq(const Int& a, const Int& b) const { return a == b; }
    bool valid(const Int&) const { return true; }
    std::string str(const Int& a) const { return a.str(); }
    std::string name() const { return "z"; }
    bool compatible(const ZRing&) const { return true; }
};

/// Nonnegative integers. Elements are stored as plain Int; nonnegativity is a
/// validation predicate checked at module boundaries, not a representation
/// constraint (moves like I - M need signed intermediates).
struct ZPlusRing {
    using value_type = Int;
    static constexpr bool is_complete = false;
    Int zero() const { return Int(0); }
    Int one() const { return Int(1); }
    Int add(const Int& a, const Int& b) const { return a + b; }
    Int mul(const Int& a, const Int& b) const { return a * b; }
    bool eq(const Int& a, const Int& b) const { return a == b; }
    bool valid(const Int& a) const { return a >= 0; }
    std::string str(const Int& a) const { return a.str(); }
    std::string name() const { return "zplus"; }
    bool compatible(const ZPlusRing&) const { return true; }
};

/// Polynomials over the integers.
struct PolyRing {
    using value_type = IntPoly;
    static constexpr bool is_complete = false;
    IntPoly zero() const { return IntPoly(); }
    IntPoly one() const { return IntPoly(Int(1)); }
    IntPoly add(const IntPoly& a, const IntPoly& b) const { return a + b; }
    IntPoly mul(const IntPoly& a, const IntPoly& b) const { return a * b; }
    bool eq(const IntPoly& a, const IntPoly& b) const { return a == b; }
    bool valid(const IntPoly&) const { return true; }
    std::string str(const IntPoly& a) const { return a.str(); }
    std::string name() const { return "z_t"; }
    bool compatible(const PolyRing&) const { return true; }
};

/// Polynomials with nonnegative coefficients; same representation remark as
/// ZPlusRing.
struct ZPlusPolyRing {
    using value_type = IntPoly;
    static constexpr bool is_complete = false;
    IntPoly zero() const { return IntPoly(); }
    IntPoly one() const { return IntPoly(Int(1)); }
    IntPoly add(const IntPoly& a, const IntPoly& b) const { return a + b; }
    IntPoly mul(const IntPoly& a, const IntPoly& b) const { return a * b; }
    bool eq(const IntPoly& a, const IntPoly& b) const { return a == b; }
    bool valid(const IntPoly& a) const { return a.nonneg(); }
    std::string str(const IntPoly& a) const { return a.str(); }
    std::string name() const { return "zplus_t"; }
    bool compatible(const ZPlusPolyRing&) const { return true; }
};

/// Prime field with runtime modulus; values are canonical representatives in
/// [0, p). Mixing moduli is a semiring mismatch.
struct FpRing {
    using value_type = Int;
    static constexpr bool is_complete = false;
    Int p;

    explicit FpRing(Int modulus) : p(std::move(modulus)) {
        if (p < 2) throw std::domain_error("Fp modulus must be at least 2");
    }
    Int zero() const { return Int(0); }
    Int one() const { return Int(1) % p; }
    Int add(const Int& a, const Int& b) const { return (a + b) % p; }
    Int mul(const Int& a, const Int& b) const { return (a * b) % p; }
    Int neg(const Int& a) const { return ((p - a) % p + p) % p; }
    Int reduce(const Int& a) const { return (a % p + p) % p; }
    Int inv(const Int& a) const {
        // extended Euclid; a must be a unit
        Int r0 = p, r1 = reduce(a), s0 = 0, s1 = 1;
        while (r1 != 0) {
            Int q = r0 / r1;
            Int r2 = r0 - q * r1;
            Int s2 = s0 - q * s1;
            r0 = r1; r1 = r2; s0 = s1; s1 = s2;
        }
        if (r0 != 1) throw std::domain_error("not invertible mod p");
        return reduce(s0);
    }
    bool eq(const Int& a, const Int& b) const { return a == b; }
    bool valid(const Int& a) const { return a >= 0 && a < p; }
    std::string str(const Int& a) const { return a.str(); }
    std::string name() const { return "fp:" + p.str(); }
    bool compatible(const FpRing& other) const { return p == other.p; }
};

/// The complete semiring of possibly-infinite counts; the only ring here with
/// well-defined infinite sums, which is what makes an honest partial trace
/// possible on its matrices.
struct NatInfRing {
    using value_type = NatInf;
    static constexpr bool is_complete = true;
    NatInf zero() const { return NatInf(); }
    NatInf one() const { return NatInf(Int(1)); }
    NatInf add(const NatInf& a, const NatInf& b) const { return a + b; }
    NatInf mul(const NatInf& a, const NatInf& b) const { return a * b; }
    bool eq(const NatInf& a, const NatInf& b) const { return a == b; }
    bool valid(const NatInf&) const { return true; }
    std::string str(const NatInf& a) const { return a.str(); }
    std::string name() const { return "natinf"; }
    bool compatible(const NatInfRing&) const { return true; }
};

static_assert(Semiring<ZRing>);
static_assert(Semiring<ZPlusRing>);
static_assert(Semiring<PolyRing>);
static_assert(Semiring<ZPlusPolyRing>);
static_assert(Semiring<FpRing>);
static_assert(Semiring<NatInfRing>);

}  // namespace shiftprop
