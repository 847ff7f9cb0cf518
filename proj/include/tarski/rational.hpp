#ifndef TARSKI_RATIONAL_HPP
#define TARSKI_RATIONAL_HPP

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>

namespace tarski {

// Expression templates are disabled so the number types behave like plain
// values inside Eigen expressions.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalVector = Vector<Rational>;
using RationalMatrix = Matrix<Rational>;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }
inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt num_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Largest integer not above r.
BigInt floor_of(const Rational& r);
/// Smallest integer not below r.
BigInt ceil_of(const Rational& r);
/// Nearest integer, halves rounded up.
BigInt round_half_up(const Rational& r);

std::int64_t to_int64(const BigInt& v);

/// Parses "p", "p/q", or a plain decimal such as "-0.25" or "1e-6" exactly.
Rational parse_rational(std::string_view text);
/// Canonical "p/q" form ("p" when q == 1).
std::string to_string(const Rational& r);

/// Max-norm of a rational vector.
Rational linf_norm(const RationalVector& v);

}  // namespace tarski

#endif  // TARSKI_RATIONAL_HPP
