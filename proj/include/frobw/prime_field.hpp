#pragma once

#include <cstdint>
#include <string>

#include "frobw/error.hpp"

namespace frobw {

/// Canonical residue in [0, p).
using Coeff = std::uint32_t;

/// Arithmetic in F_p for a prime p < 2^31. Products go through 64 bits.
class PrimeField {
public:
  static constexpr std::uint64_t max_modulus = std::uint64_t{1} << 31;

  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p < 2 || p >= max_modulus)
      throw ValidationError("modulus " + std::to_string(p) +
                            " outside [2, 2^31)");
    if (!is_prime(p))
      throw ValidationError("modulus " + std::to_string(p) + " is not prime");
  }

  static constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }

  std::uint32_t modulus() const noexcept { return p_; }

  Coeff add(Coeff a, Coeff b) const noexcept {
    std::uint32_t s = a + b; // a, b < 2^31 so no wrap
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
  Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const noexcept {
    return static_cast<Coeff>(std::uint64_t{a} * b % p_);
  }
  /// a + b*c
  Coeff fma(Coeff a, Coeff b, Coeff c) const noexcept {
    return static_cast<Coeff>((std::uint64_t{b} * c + a) % p_);
  }

  Coeff pow(Coeff a, std::uint64_t n) const noexcept {
    std::uint64_t base = a, acc = 1 % p_;
    while (n) {
      if (n & 1) acc = acc * base % p_;
      base = base * base % p_;
      n >>= 1;
    }
    return static_cast<Coeff>(acc);
  }

  Coeff inv(Coeff a) const {
    if (a == 0) throw InternalCheckFailure("inverse of zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  Coeff from_int(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Coeff>(r);
  }

  /// Reduce a decimal string of arbitrary length.
  Coeff from_decimal(const std::string& digits) const {
    std::uint64_t r = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9') throw ParseError("bad integer literal '" + digits + "'");
      r = (r * 10 + static_cast<unsigned>(ch - '0')) % p_;
    }
    return static_cast<Coeff>(r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
  std::uint32_t p_;
};

} // namespace frobw
