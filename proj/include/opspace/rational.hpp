#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <stdexcept>

namespace opspace {

// Exact rational scalar used by the Weingarten tables and the ensemble-average
// assemblies. Floating point only appears at output boundaries.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline Rational rational_pow(const Rational& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw std::domain_error("rational_pow: 0^negative");
        return Rational(1) / rational_pow(base, -exp);
    }
    Rational r = 1;
    Rational b = base;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// 2^e for integer e (e may be negative).
inline Rational pow2(long e) { return rational_pow(Rational(2), e); }

inline double to_double(const Rational& r) { return static_cast<double>(static_cast<BigFloat>(r)); }

// log2 of a positive rational, accurate to ~50 digits before narrowing.
inline double log2_rational(const Rational& r) {
    if (r <= 0) throw std::domain_error("log2_rational: nonpositive argument");
    BigFloat x = static_cast<BigFloat>(r);
    return static_cast<double>(log(x) / log(BigFloat(2)));
}

}  // namespace opspace
