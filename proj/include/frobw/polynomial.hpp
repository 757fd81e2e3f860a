#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frobw/error.hpp"
#include "frobw/monomial.hpp"
#include "frobw/prime_field.hpp"

namespace frobw {

struct Term {
  Monomial mono;
  Coeff coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Default ceiling on the number of terms any product may produce.
inline constexpr std::size_t default_term_cap = 10'000'000;

/// Sparse polynomial over F_p. Terms are kept sorted in descending monomial
/// order with nonzero coefficients; products accumulate in a hash map and are
/// normalized back into this form.
class PolynomialFp {
public:
  PolynomialFp(PrimeField field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  /// Builds from arbitrary terms: combines duplicates and drops zeros.
  PolynomialFp(PrimeField field, std::size_t nvars, std::vector<Term> terms)
      : field_(field), nvars_(nvars) {
    std::unordered_map<Monomial, Coeff, MonomialHash> acc;
    for (auto& t : terms) {
      if (t.mono.nvars() != nvars)
        throw ValidationError("term has " + std::to_string(t.mono.nvars()) +
                              " variables, expected " + std::to_string(nvars));
      auto [it, fresh] = acc.try_emplace(t.mono, 0);
      it->second = field_.add(it->second, t.coeff % field_.modulus());
    }
    adopt(acc);
  }

  static PolynomialFp constant(PrimeField field, std::size_t nvars, Coeff c) {
    PolynomialFp out(field, nvars);
    if (c % field.modulus() != 0) out.terms_.push_back({Monomial(nvars), c % field.modulus()});
    return out;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Common degree of all terms, or nullopt if inhomogeneous or zero.
  std::optional<std::uint64_t> homogeneous_degree() const noexcept {
    if (terms_.empty()) return std::nullopt;
    const auto d = terms_.front().mono.degree();
    for (const auto& t : terms_)
      if (t.mono.degree() != d) return std::nullopt;
    return d;
  }

  /// Largest term in the graded order.
  const Term& leading_term() const {
    if (terms_.empty()) throw ValidationError("zero polynomial has no leading term");
    return terms_.front();
  }

  Coeff coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return t.mono > x; });
    return (it != terms_.end() && it->mono == m) ? it->coeff : 0;
  }

  friend bool operator==(const PolynomialFp& a, const PolynomialFp& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  PolynomialFp operator+(const PolynomialFp& other) const {
    check_compatible(other);
    std::vector<Term> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return PolynomialFp(field_, nvars_, std::move(all));
  }

  PolynomialFp operator-(const PolynomialFp& other) const { return *this + other.scaled(field_.neg(1)); }

  PolynomialFp scaled(Coeff c) const {
    PolynomialFp out(field_, nvars_);
    c %= field_.modulus();
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.coeff = field_.mul(t.coeff, c);
    return out;
  }

  /// Applies the e-fold Frobenius twist: x^u -> x^{p^e u}, coefficients fixed
  /// (they lie in the prime field).
  PolynomialFp frobenius_twist(std::uint64_t factor) const {
    PolynomialFp out(field_, nvars_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono.scaled(factor), t.coeff});
    return out; // scaling preserves the order
  }

  PolynomialFp multiply(const PolynomialFp& other, std::size_t term_cap = default_term_cap) const {
    check_compatible(other);
    PolynomialFp out(field_, nvars_);
    if (is_zero() || other.is_zero()) return out;
    std::unordered_map<Monomial, Coeff, MonomialHash> acc;
    acc.reserve(std::min(term_cap, terms_.size() * other.terms_.size()));
    for (const auto& a : terms_) {
      for (const auto& b : other.terms_) {
        auto [it, fresh] = acc.try_emplace(a.mono * b.mono, 0);
        it->second = field_.fma(it->second, a.coeff, b.coeff);
      }
      if (acc.size() > term_cap)
        throw TooLargeError("power too large: product exceeds " + std::to_string(term_cap) + " terms");
    }
    out.adopt(acc);
    return out;
  }

  PolynomialFp operator*(const PolynomialFp& other) const { return multiply(other); }

  /// Binary powering; the reference route for G^n.
  PolynomialFp pow(std::uint64_t n, std::size_t term_cap = default_term_cap) const {
    PolynomialFp acc = constant(field_, nvars_, 1);
    PolynomialFp base = *this;
    while (n) {
      if (n & 1) acc = acc.multiply(base, term_cap);
      n >>= 1;
      if (n) base = base.multiply(base, term_cap);
    }
    return acc;
  }

private:
  void check_compatible(const PolynomialFp& other) const {
    if (!(field_ == other.field_) || nvars_ != other.nvars_)
      throw ValidationError("polynomials live in different rings");
  }

  template <class Map>
  void adopt(Map& acc) {
    terms_.clear();
    terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) terms_.push_back({m, c});
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  }

  PrimeField field_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// G^{p^e - 1} computed as prod_{i<e} Frob^i(G^{p-1}), using
/// p^e - 1 = (p-1)(1 + p + ... + p^{e-1}).
inline PolynomialFp digit_power(const PolynomialFp& g, unsigned e,
                                std::size_t term_cap = default_term_cap) {
  if (g.is_zero()) throw ValidationError("digit_power of the zero polynomial");
  if (e < 1) throw ValidationError("Frobenius level must be >= 1");
  const std::uint64_t p = g.field().modulus();
  const PolynomialFp digit = g.pow(p - 1, term_cap);
  PolynomialFp acc = digit;
  std::uint64_t twist = 1;
  for (unsigned i = 1; i < e; ++i) {
    if (twist > std::numeric_limits<std::uint64_t>::max() / p)
      throw TooLargeError("p^e overflows");
    twist *= p;
    acc = acc.multiply(digit.frobenius_twist(twist), term_cap);
  }
  return acc;
}

/// Remainder of f modulo the principal ideal (g), by division with respect
/// to g's leading monomial. {g} is a Groebner basis of (g), so the result is
/// the unique normal form; zero iff f is a multiple of g.
inline PolynomialFp normal_form(const PolynomialFp& f, const PolynomialFp& g) {
  const Term lead = g.leading_term();
  const Coeff lead_inv = f.field().inv(lead.coeff);
  const PrimeField& F = f.field();
  std::vector<Term> remainder;
  PolynomialFp work = f;
  while (!work.is_zero()) {
    // Find the largest term divisible by the leading monomial.
    const Term* hit = nullptr;
    for (const auto& t : work.terms()) {
      if (lead.mono.divides(t.mono)) {
        hit = &t;
        break;
      }
      remainder.push_back(t);
    }
    if (!hit) break;
    std::vector<Exponent> quot(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) quot[i] = hit->mono[i] - lead.mono[i];
    const Coeff c = F.mul(hit->coeff, lead_inv);
    PolynomialFp shift(F, f.nvars(), {Term{Monomial(std::move(quot)), c}});
    // Drop the terms already moved into the remainder, then subtract.
    std::vector<Term> rest(work.terms().begin() + (hit - work.terms().data()), work.terms().end());
    work = PolynomialFp(F, f.nvars(), std::move(rest)) - shift.multiply(g);
  }
  return PolynomialFp(F, f.nvars(), std::move(remainder));
}

} // namespace frobw
