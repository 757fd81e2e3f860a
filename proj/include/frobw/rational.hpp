#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace frobw {

// GMP backend: the header-only cpp_rational of older Boost releases rejects
// negative denominators produced by ordinary division.
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

/// Canonical text form: "n" for integers, "n/d" with d > 0 otherwise.
inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace frobw
