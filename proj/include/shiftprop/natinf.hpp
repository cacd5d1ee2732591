#pragma once

#include "shiftprop/integer.hpp"

#include <stdexcept>
#include <string>

namespace shiftprop {

/// Element of the complete semiring of nonnegative integers extended with a
/// top element. Conventions: inf + x = inf, inf * x = inf for x != 0, and
/// 0 * inf = inf * 0 = 0 (so empty sums and zero-weight branches vanish).
class NatInf {
public:
    NatInf() : value_(0), infinite_(false) {}
    explicit NatInf(Int v) : value_(std::move(v)), infinite_(false) {
        if (value_ < 0) throw std::domain_error("NatInf requires a nonnegative value");
    }
    static NatInf infinity() {
        NatInf v;
        v.infinite_ = true;
        return v;
    }

    bool is_infinite() const { return infinite_; }
    bool is_zero() const { return !infinite_ && value_ == 0; }
    const Int& finite_value() const {
        if (infinite_) throw std::logic_error("finite_value() on infinity");
        return value_;
    }

    friend NatInf operator+(const NatInf& a, const NatInf& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return NatInf(a.value_ + b.value_);
    }
    friend NatInf operator*(const NatInf& a, const NatInf& b) {
        if (a.is_zero() || b.is_zero()) return NatInf();
        if (a.infinite_ || b.infinite_) return infinity();
        return NatInf(a.value_ * b.value_);
    }
    friend bool operator==(const NatInf& a, const NatInf& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const NatInf& a, const NatInf& b) { return !(a == b); }

    std::string str() const { return infinite_ ? "inf" : value_.str(); }

private:
    Int value_;
    bool infinite_;
};

}  // namespace shiftprop
