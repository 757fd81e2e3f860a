#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "frobw/error.hpp"

namespace frobw {

using Exponent = std::uint32_t;

/// Binomial coefficient C(n, k); throws TooLargeError if it does not fit in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i; // exact at every step
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw TooLargeError("C(" + std::to_string(n) + "," + std::to_string(k) +
                          ") exceeds 64-bit index width");
  }
  return static_cast<std::uint64_t>(acc);
}

/// Number of monomials of degree m in v variables, C(m+v-1, v-1).
inline std::uint64_t monomial_count(std::size_t v, std::uint64_t m) {
  return binomial(m + v - 1, v - 1);
}

/// Number of monomials of degree m whose i-th exponent is at most caps[i]
/// (inclusion-exclusion over the variables that overflow their cap).
inline std::uint64_t bounded_monomial_count(std::span<const std::int64_t> caps,
                                            std::int64_t m) {
  const std::size_t v = caps.size();
  if (m < 0) return 0;
  for (auto c : caps)
    if (c < 0) return 0;
  std::int64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v); ++mask) {
    std::int64_t rest = m;
    int sign = 1;
    for (std::size_t i = 0; i < v; ++i)
      if (mask >> i & 1) {
        rest -= caps[i] + 1;
        sign = -sign;
      }
    if (rest < 0) continue;
    total += sign * static_cast<std::int64_t>(monomial_count(v, static_cast<std::uint64_t>(rest)));
  }
  return static_cast<std::uint64_t>(total);
}

/// Exponent vector with cached total degree.
///
/// Ordering is graded: first by degree, then colexicographically on the
/// stars-and-bars bar positions, which for monomials amounts to graded
/// reverse lexicographic order (x_0 > x_1 > ... > x_{v-1}). This is exactly
/// the order of DegreeIndexer::rank.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) { recompute(); }
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) { recompute(); }

  std::size_t nvars() const noexcept { return exps_.size(); }
  std::uint64_t degree() const noexcept { return degree_; }
  Exponent operator[](std::size_t i) const noexcept { return exps_[i]; }
  std::span<const Exponent> exponents() const noexcept { return exps_; }

  void set(std::size_t i, Exponent value) noexcept {
    degree_ = degree_ - exps_[i] + value;
    exps_[i] = value;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial out(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
    out.degree_ += other.degree_;
    return out;
  }

  /// Every exponent multiplied by `factor` (the Frobenius twist on monomials).
  Monomial scaled(std::uint64_t factor) const {
    Monomial out(*this);
    for (auto& x : out.exps_) {
      std::uint64_t y = std::uint64_t{x} * factor;
      if (y > std::numeric_limits<Exponent>::max())
        throw TooLargeError("exponent overflow in Frobenius twist");
      x = static_cast<Exponent>(y);
    }
    out.degree_ = degree_ * factor;
    return out;
  }

  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  /// Largest exponent, 0 for the constant monomial.
  Exponent max_exponent() const noexcept {
    return exps_.empty() ? 0 : *std::max_element(exps_.begin(), exps_.end());
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.exps_ == b.exps_;
  }

  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    for (std::size_t i = a.exps_.size(); i-- > 0;) {
      if (a.exps_[i] != b.exps_[i]) return b.exps_[i] <=> a.exps_[i];
    }
    return std::strong_ordering::equal;
  }

private:
  void recompute() noexcept {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
  }

  std::vector<Exponent> exps_;
  std::uint64_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto x : m.exponents()) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Rank/unrank for the monomials of one fixed degree in v variables.
///
/// A monomial u maps to the bar positions b_k = u_0 + ... + u_{k-1} + k - 1
/// (k = 1..v-1), and rank(u) = sum_k C(b_k, k). Both directions cost O(v)
/// binomial lookups in a precomputed table.
class DegreeIndexer {
public:
  DegreeIndexer(std::size_t nvars, std::uint64_t degree) : v_(nvars), m_(degree) {
    if (v_ == 0) throw ValidationError("monomials need at least one variable");
    count_ = monomial_count(v_, m_);
    const std::uint64_t top = m_ + v_ - 1;
    if (top > (std::uint64_t{1} << 24))
      throw TooLargeError("degree " + std::to_string(m_) + " too large to index");
    rows_ = static_cast<std::size_t>(top) + 1;
    table_.assign(rows_ * v_, 0);
    for (std::size_t n = 0; n < rows_; ++n)
      for (std::size_t k = 0; k < v_; ++k) table_[n * v_ + k] = binomial(n, k);
  }

  std::size_t nvars() const noexcept { return v_; }
  std::uint64_t degree() const noexcept { return m_; }
  std::uint64_t count() const noexcept { return count_; }

  std::uint64_t rank(std::span<const Exponent> u) const noexcept {
    std::uint64_t r = 0, bar = 0;
    for (std::size_t k = 1; k < v_; ++k) {
      bar += u[k - 1];
      r += table_[(bar + k - 1) * v_ + k];
    }
    return r;
  }
  std::uint64_t rank(const Monomial& u) const noexcept { return rank(u.exponents()); }

  Monomial unrank(std::uint64_t index) const {
    if (index >= count_)
      throw ValidationError("monomial index " + std::to_string(index) + " out of range");
    std::vector<Exponent> bars(v_, 0);
    std::uint64_t r = index;
    std::uint64_t hi = m_ + v_ - 1; // exclusive upper bound for the next bar
    for (std::size_t k = v_ - 1; k >= 1; --k) {
      std::uint64_t b = hi;
      do {
        --b;
      } while (table_[b * v_ + k] > r);
      r -= table_[b * v_ + k];
      bars[k] = static_cast<Exponent>(b);
      hi = b;
    }
    std::vector<Exponent> exps(v_, 0);
    std::uint64_t prev = 0; // b_0 + 1 convention: bar "0" sits at position -1
    for (std::size_t k = 1; k < v_; ++k) {
      std::uint64_t start = (k == 1) ? 0 : prev + 1;
      exps[k - 1] = static_cast<Exponent>(bars[k] - start);
      prev = bars[k];
    }
    std::uint64_t start = (v_ == 1) ? 0 : prev + 1;
    exps[v_ - 1] = static_cast<Exponent>(m_ + v_ - 1 - start);
    return Monomial(std::move(exps));
  }

private:
  std::size_t v_;
  std::uint64_t m_;
  std::uint64_t count_ = 0;
  std::size_t rows_ = 0;
  std::vector<std::uint64_t> table_;
};

/// All monomials of degree m in v variables, ascending in the graded order.
inline std::vector<Monomial> monomials_of_degree(std::size_t v, std::uint64_t m,
                                                 std::uint64_t cap = 50'000'000) {
  DegreeIndexer idx(v, m);
  if (idx.count() > cap)
    throw TooLargeError(std::to_string(idx.count()) + " monomials of degree " +
                        std::to_string(m));
  std::vector<Monomial> out;
  out.reserve(idx.count());
  for (std::uint64_t i = 0; i < idx.count(); ++i) out.push_back(idx.unrank(i));
  return out;
}

/// Calls fn(span<const Exponent>) for every monomial of degree m with all
/// exponents <= cap, in no particular order. Enumeration skips empty branches.
template <class Fn>
void for_each_bounded_monomial(std::size_t v, std::uint64_t m, std::uint64_t cap, Fn&& fn) {
  std::vector<Exponent> u(v, 0);
  if (v == 0) return;
  if (m > cap * v) return;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
    if (i + 1 == v) {
      if (left > cap) return;
      u[i] = static_cast<Exponent>(left);
      fn(std::span<const Exponent>(u));
      return;
    }
    const std::uint64_t room = cap * (v - i - 1); // what the remaining variables can absorb
    const std::uint64_t lo = left > room ? left - room : 0;
    const std::uint64_t hi = std::min(cap, left);
    for (std::uint64_t a = lo; a <= hi; ++a) {
      u[i] = static_cast<Exponent>(a);
      rec(i + 1, left - a);
    }
  };
  rec(0, m);
}

} // namespace frobw
