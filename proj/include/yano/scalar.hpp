#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "yano/rational.hpp"

namespace yano {

// Exact big rational for series coefficients (binomial-type growth).
using BigRat = boost::multiprecision::cpp_rational;

// High-precision float backend, selected by QuadratureConfig::precision_bits.
using Quad = boost::multiprecision::cpp_bin_float_quad;

inline BigRat to_bigrat(const Rat& r) { return BigRat(r.num(), r.den()); }

template <class R>
inline R from_rat(const Rat& r) {
    return R(r.num()) / R(r.den());
}
template <>
inline BigRat from_rat<BigRat>(const Rat& r) { return to_bigrat(r); }

template <class R>
inline R from_bigrat(const BigRat& r) {
    return R(boost::multiprecision::numerator(r)) /
           R(boost::multiprecision::denominator(r));
}
template <>
inline BigRat from_bigrat<BigRat>(const BigRat& r) { return r; }
template <>
inline double from_bigrat<double>(const BigRat& r) {
    return r.template convert_to<double>();
}
template <>
inline long double from_bigrat<long double>(const BigRat& r) {
    return r.template convert_to<long double>();
}

template <class R>
inline double to_double(const R& x) { return (double)x; }
inline double to_double(const Quad& x) { return x.convert_to<double>(); }

// unqualified-call helpers so std:: and boost::multiprecision:: both resolve
template <class R>
inline R r_abs(const R& x) { using std::abs; using boost::multiprecision::abs; return abs(x); }
inline long double r_abs(const std::complex<long double>& x) { return std::abs(x); }
inline double r_abs(const std::complex<double>& x) { return std::abs(x); }

template <class R>
inline R r_pow(const R& base, const R& e) {
    using std::pow; using boost::multiprecision::pow;
    return pow(base, e);
}
template <class R>
inline std::complex<R> r_pow(const R& base, const std::complex<R>& e) {
    // positive real base only
    return std::exp(e * std::log(base));
}
inline BigRat r_pow(const BigRat&, const BigRat&) {
    throw Error("r_pow: fractional powers are undefined on exact rationals");
}

template <class R>
inline R r_log(const R& x) { using std::log; using boost::multiprecision::log; return log(x); }
template <class R>
inline R r_exp(const R& x) { using std::exp; using boost::multiprecision::exp; return exp(x); }
template <class R>
inline R r_sqrt(const R& x) { using std::sqrt; using boost::multiprecision::sqrt; return sqrt(x); }
template <class R>
inline R r_sin(const R& x) { using std::sin; using boost::multiprecision::sin; return sin(x); }
template <class R>
inline R r_cos(const R& x) { using std::cos; using boost::multiprecision::cos; return cos(x); }
template <class R>
inline R r_atan(const R& x) { using std::atan; using boost::multiprecision::atan; return atan(x); }
template <class R>
inline R r_floor(const R& x) { using std::floor; using boost::multiprecision::floor; return floor(x); }

template <class R>
inline R pi_value() {
    static const R pi = r_atan(R(1)) * 4;
    return pi;
}

template <class R>
inline R machine_eps() { return std::numeric_limits<R>::epsilon(); }
template <>
inline Quad machine_eps<Quad>() { return std::numeric_limits<Quad>::epsilon(); }

// value-type traits for quadrature over real or complex integrands
template <class V>
struct value_traits {
    using real_type = V;
    static real_type norm(const V& v) { return r_abs(v); }
};
template <class R>
struct value_traits<std::complex<R>> {
    using real_type = R;
    static real_type norm(const std::complex<R>& v) { return std::abs(v); }
};

} // namespace yano
