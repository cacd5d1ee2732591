#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace shiftprop {

/// Arbitrary-precision signed integer. All exact arithmetic in the library
/// bottoms out here; fixed-width overflow is never an accepted failure mode.
using Int = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, used by truncated power series.
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rat& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace shiftprop
