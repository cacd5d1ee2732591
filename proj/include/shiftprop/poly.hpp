#pragma once

#include "shiftprop/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftprop {

/// Univariate polynomial in `t` with Int coefficients, coefficient of t^i at
/// index i, trailing zeros trimmed. The zero polynomial has an empty vector.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(Int constant) {
        if (constant != 0) coeffs_.push_back(std::move(constant));
    }
    explicit IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<Int> coeffs) : coeffs_(coeffs) { trim(); }

    static IntPoly t(std::size_t power = 1, Int coeff = Int(1)) {
        if (coeff == 0) return IntPoly();
        std::vector<Int> c(power + 1, Int(0));
        c[power] = std::move(coeff);
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    const Int& coeff(std::size_t i) const {
        static const Int kZero(0);
        return i < coeffs_.size() ? coeffs_[i] : kZero;
    }
    const std::vector<Int>& coeffs() const { return coeffs_; }

    const Int& leading() const {
        if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    bool nonneg() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Int& c) { return c >= 0; });
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return IntPoly(std::move(c));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
        return IntPoly(std::move(c));
    }
    friend IntPoly operator-(const IntPoly& a) { return IntPoly() - a; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<Int> c(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPoly(std::move(c));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    /// Lexicographic by (degree, coefficients high to low); total order used
    /// only to make searches and renderings deterministic.
    friend bool operator<(const IntPoly& a, const IntPoly& b) {
        if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
        for (std::size_t i = a.coeffs_.size(); i-- > 0;)
            if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
        return false;
    }

    Int eval(const Int& x) const {
        Int acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    /// Exact quotient a / b. Throws std::domain_error when the division is not
    /// exact; fraction-free elimination relies on this signalling bugs loudly.
    static IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        if (a.is_zero()) return IntPoly();
        if (a.degree() < b.degree()) throw std::domain_error("inexact polynomial division");
        std::vector<Int> rem = a.coeffs_;
        std::vector<Int> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Int(0));
        for (std::size_t qi = quot.size(); qi-- > 0;) {
            const Int& lead = rem[qi + b.coeffs_.size() - 1];
            if (lead % b.leading() != 0) throw std::domain_error("inexact polynomial division");
            Int q = lead / b.leading();
            quot[qi] = q;
            if (q != 0)
                for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[qi + j] -= q * b.coeffs_[j];
        }
        if (std::any_of(rem.begin(), rem.end(), [](const Int& c) { return c != 0; }))
            throw std::domain_error("inexact polynomial division");
        return IntPoly(std::move(quot));
    }

    /// Canonical rendering: ascending powers, explicit `*`, no unary `+`.
    /// Examples: `1 - 2*t`, `1 - t - t^2`, `0`.
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const Int& c = coeffs_[i];
            if (c == 0) continue;
            Int mag = abs(c);
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += (c < 0) ? " - " : " + ";
            }
            if (i == 0) {
                out += mag.str();
            } else {
                if (mag != 1) out += mag.str() + "*";
                out += (i == 1) ? "t" : "t^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Int> coeffs_;
};

}  // namespace shiftprop
