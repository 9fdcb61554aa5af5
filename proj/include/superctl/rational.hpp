#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace superctl {

/// Exact rational scalar. Expression templates are off so the type plays well
/// inside Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(num, den);
}

/// "3", "-1/2".
inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string numerator_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str();
}
inline std::string denominator_string(const Rational& q) {
  return boost::multiprecision::denominator(q).str();
}

template <typename Scalar>
bool is_zero(const Scalar& x) {
  return x == Scalar(0);
}

}  // namespace superctl
