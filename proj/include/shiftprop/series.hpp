#pragma once

#include "shiftprop/poly.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftprop {

/// Power series in t with rational coefficients, exact modulo t^{N+1}.
/// The workhorse oracle behind the zeta / periodic-point identity tests.
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, Rat(0)) {}

    static TruncatedSeries from_poly(const IntPoly& p, std::size_t order) {
        TruncatedSeries s(order);
        for (std::size_t i = 0; i <= order; ++i) s.coeffs_[i] = Rat(p.coeff(i));
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    const Rat& coeff(std::size_t i) const { return coeffs_.at(i); }
    Rat& coeff(std::size_t i) { return coeffs_.at(i); }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries c(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= c.order(); ++i) c.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return c;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries c(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= c.order(); ++i)
            for (std::size_t j = 0; i + j <= c.order(); ++j) c.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return c;
    }

    /// Multiplicative inverse; requires constant term 1.
    TruncatedSeries reciprocal() const {
        if (coeffs_[0] != 1) throw std::domain_error("reciprocal requires constant term 1");
        TruncatedSeries b(order());
        b.coeffs_[0] = 1;
        for (std::size_t n = 1; n <= order(); ++n) {
            Rat acc(0);
            for (std::size_t k = 1; k <= n; ++k) acc += coeffs_[k] * b.coeffs_[n - k];
            b.coeffs_[n] = -acc;
        }
        return b;
    }

    /// exp of a series with constant term 0, via b' = a' b.
    TruncatedSeries exp() const {
        if (coeffs_[0] != 0) throw std::domain_error("exp requires constant term 0");
        TruncatedSeries b(order());
        b.coeffs_[0] = 1;
        for (std::size_t n = 1; n <= order(); ++n) {
            Rat acc(0);
            for (std::size_t k = 1; k <= n; ++k) acc += Rat(k) * coeffs_[k] * b.coeffs_[n - k];
            b.coeffs_[n] = acc / Rat(n);
        }
        return b;
    }

    /// log of a series with constant term 1, via l' a = a'.
    TruncatedSeries log() const {
        if (coeffs_[0] != 1) throw std::domain_error("log requires constant term 1");
        TruncatedSeries l(order());
        for (std::size_t n = 1; n <= order(); ++n) {
            Rat acc = Rat(n) * coeffs_[n];
            for (std::size_t k = 1; k < n; ++k) acc -= Rat(k) * l.coeffs_[k] * coeffs_[n - k];
            l.coeffs_[n] = acc / Rat(n);
        }
        return l;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i <= order(); ++i) {
            if (i) out += " + ";
            out += to_string(coeffs_[i]) + "*t^" + std::to_string(i);
        }
        return out;
    }

private:
    std::vector<Rat> coeffs_;
};

}  // namespace shiftprop
