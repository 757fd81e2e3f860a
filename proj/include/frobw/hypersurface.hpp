#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobw/error.hpp"
#include "frobw/monomial.hpp"
#include "frobw/polynomial.hpp"

namespace frobw {

/// R = F_p[x_0..x_{v-1}]/(G) for a nonzero homogeneous G of degree delta.
/// For v > delta, X = Proj R is Fano with -K_X = (v - delta) H.
///
/// Normality of R is assumed, not verified. A few cheap symptoms of a
/// degenerate equation are recorded in warnings(); when any is present the
/// duality and scan checks downstream are treated as advisory.
class GradedHypersurface {
public:
  explicit GradedHypersurface(PolynomialFp g, std::vector<std::string> names = {})
      : g_(std::move(g)), names_(std::move(names)) {
    if (g_.is_zero()) throw ValidationError("zero polynomial");
    if (g_.nvars() == 0) throw ValidationError("ring needs at least one variable");
    auto d = g_.homogeneous_degree();
    if (!d) throw ValidationError("equation is not homogeneous");
    if (*d == 0) throw ValidationError("equation is a nonzero constant");
    delta_ = *d;
    if (names_.empty())
      for (std::size_t i = 0; i < g_.nvars(); ++i) names_.push_back("x" + std::to_string(i));
    if (names_.size() != g_.nvars()) throw ValidationError("variable name count mismatch");
    detect_degeneracy();
  }

  const PrimeField& field() const noexcept { return g_.field(); }
  std::uint32_t characteristic() const noexcept { return g_.field().modulus(); }
  std::size_t nvars() const noexcept { return g_.nvars(); }
  std::uint64_t degree() const noexcept { return delta_; }
  const PolynomialFp& equation() const noexcept { return g_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// v - delta; positive exactly in the Fano case.
  std::int64_t fano_coindex() const noexcept {
    return static_cast<std::int64_t>(nvars()) - static_cast<std::int64_t>(delta_);
  }
  bool is_fano() const noexcept { return fano_coindex() > 0; }

  /// dim_k R_m = C(m+v-1, v-1) - C(m-delta+v-1, v-1).
  std::uint64_t dim(std::uint64_t m) const {
    const auto all = monomial_count(nvars(), m);
    return m < delta_ ? all : all - monomial_count(nvars(), m - delta_);
  }

  /// Leading monomial of G. Monomials it does not divide form a basis of R.
  const Monomial& leading_monomial() const { return g_.leading_term().mono; }

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  bool degenerate() const noexcept { return !warnings_.empty(); }

private:
  void detect_degeneracy() {
    // A variable dividing every term makes R a non-domain.
    for (std::size_t i = 0; i < nvars(); ++i) {
      Exponent common = ~Exponent{0};
      for (const auto& t : g_.terms()) common = std::min(common, t.mono[i]);
      if (common > 0 && delta_ > 1) warnings_.push_back("equation divisible by " + names_[i] + "; R is not a domain");
    }
  }

  PolynomialFp g_;
  std::vector<std::string> names_;
  std::uint64_t delta_ = 0;
  std::vector<std::string> warnings_;
};

} // namespace frobw
