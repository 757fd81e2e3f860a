#pragma once

// Graded splitting subspaces of a hypersurface ring R = S/(G), S = F_p[x].
//
// For q = p^e the degree-m piece of the splitting ideal is the image in R_m
// of the colon ideal (m^[q] :_S G^{q-1}). We never build a basis of it.
// Instead
//
//     b_e(m) = dim R_m / I_e(m) = rank Phi_{e,m},
//     Phi_{e,m}(f) = f * G^{q-1} with every monomial divisible by some x_i^q dropped,
//
// a linear map from S_m into the span of degree m + delta(q-1) monomials with
// all exponents <= q-1. Phi kills G * S_{m-delta} (G^q lies in m^[q]), so
// the rows may be restricted to the monomials not divisible by LM(G), which
// form a basis of R_m; rows with an exponent >= q are zero and are skipped.
// The surviving matrix splits into independent blocks (connected components
// of its row/column incidence graph), ranked separately.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "frobw/error.hpp"
#include "frobw/hypersurface.hpp"
#include "frobw/matrix.hpp"
#include "frobw/monomial.hpp"
#include "frobw/parallel.hpp"
#include "frobw/polynomial.hpp"
#include "frobw/rational.hpp"

namespace frobw {

struct SplittingLimits {
  std::uint64_t max_matrix_side = 500'000;
  std::size_t max_power_terms = default_term_cap;
  std::size_t max_nonzeros = 80'000'000;
};

/// Integer power with overflow detection.
inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base)
      throw TooLargeError(std::to_string(base) + "^" + std::to_string(exp) + " overflows");
    r *= base;
  }
  return r;
}

/// Everything about G^{q-1} that the per-degree computations share.
class FrobeniusLevel {
public:
  FrobeniusLevel(const GradedHypersurface& ring, unsigned e, const SplittingLimits& limits = {})
      : e_(e) {
    if (e < 1) throw ValidationError("Frobenius level must be >= 1");
    q_ = checked_pow(ring.characteristic(), e);
    if (ring.degree() * (q_ - 1) > std::numeric_limits<Exponent>::max())
      throw TooLargeError("G^(q-1) degree exceeds exponent width");
    multiplier_ = digit_power(ring.equation(), e, limits.max_power_terms);
    v_ = ring.nvars();
    for (const auto& t : multiplier_.terms()) {
      if (t.mono.max_exponent() >= q_) continue; // can never land below x^q
      exps_.insert(exps_.end(), t.mono.exponents().begin(), t.mono.exponents().end());
      coeffs_.push_back(t.coeff);
    }
  }

  unsigned level() const noexcept { return e_; }
  std::uint64_t q() const noexcept { return q_; }
  const PolynomialFp& multiplier() const noexcept { return multiplier_; }

  /// Terms of G^{q-1} with all exponents <= q-1.
  std::size_t surviving_terms() const noexcept { return coeffs_.size(); }
  std::span<const Exponent> term_exponents(std::size_t i) const noexcept {
    return std::span<const Exponent>(exps_).subspan(i * v_, v_);
  }
  Coeff term_coeff(std::size_t i) const noexcept { return coeffs_[i]; }

  /// Fedder: R is F-split iff G^{q-1} has a monomial outside m^[q].
  bool fsplit() const noexcept { return !coeffs_.empty(); }

private:
  unsigned e_;
  std::uint64_t q_ = 0;
  std::size_t v_ = 0;
  PolynomialFp multiplier_{PrimeField(2), 0};
  std::vector<Exponent> exps_;
  std::vector<Coeff> coeffs_;
};

/// Outcome of one rank computation, with its bookkeeping.
struct DegreeSlice {
  std::uint64_t m = 0;
  std::uint64_t dim_R = 0;
  std::uint64_t b = 0;
  std::uint64_t rows = 0;    // standard monomials with exponents < q
  std::uint64_t cols = 0;    // target monomials actually hit
  std::uint64_t blocks = 0;
  bool counts_ok = true;     // row enumeration matched the closed-form count

  std::uint64_t dim_I() const noexcept { return dim_R - b; }
};

namespace detail {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace detail

/// b_e(m) together with the matrix bookkeeping.
inline DegreeSlice degree_slice(const GradedHypersurface& ring, const FrobeniusLevel& level,
                                std::uint64_t m, const SplittingLimits& limits = {}) {
  DegreeSlice out;
  out.m = m;
  out.dim_R = ring.dim(m);
  const std::size_t v = ring.nvars();
  const std::uint64_t q = level.q();
  const std::uint64_t cap = q - 1;
  const std::uint64_t target_degree = m + ring.degree() * cap;
  if (target_degree > cap * v || !level.fsplit()) return out; // no admissible target

  // Rows: monomials of degree m, exponents <= q-1, not divisible by LM(G).
  const Monomial& lead = ring.leading_monomial();
  std::vector<Exponent> rows;
  std::uint64_t nrows = 0;
  for_each_bounded_monomial(v, m, cap, [&](std::span<const Exponent> u) {
    for (std::size_t i = 0; i < v; ++i)
      if (u[i] < lead[i]) {
        rows.insert(rows.end(), u.begin(), u.end());
        ++nrows;
        return;
      }
  });
  {
    std::vector<std::int64_t> caps(v, static_cast<std::int64_t>(cap));
    const auto all = bounded_monomial_count(caps, static_cast<std::int64_t>(m));
    for (std::size_t i = 0; i < v; ++i) caps[i] -= lead[i];
    const auto divisible = bounded_monomial_count(
        caps, static_cast<std::int64_t>(m) - static_cast<std::int64_t>(ring.degree()));
    out.counts_ok = (all - divisible == nrows) && nrows <= out.dim_R;
  }
  out.rows = nrows;
  if (nrows == 0) return out;
  if (nrows > limits.max_matrix_side)
    throw TooLargeError("degree " + std::to_string(m) + " needs " + std::to_string(nrows) + " rows");

  const DegreeIndexer targets(v, target_degree);
  struct RawEntry {
    std::uint32_t row;
    std::uint32_t col;
    Coeff value;
  };
  std::vector<RawEntry> entries;
  std::unordered_map<std::uint64_t, std::uint32_t> column_of;
  std::vector<Exponent> t(v);
  for (std::uint64_t r = 0; r < nrows; ++r) {
    const Exponent* u = rows.data() + r * v;
    for (std::size_t k = 0; k < level.surviving_terms(); ++k) {
      const auto a = level.term_exponents(k);
      bool keep = true;
      for (std::size_t i = 0; i < v; ++i) {
        t[i] = u[i] + a[i];
        if (t[i] > cap) {
          keep = false;
          break;
        }
      }
      if (!keep) continue;
      const auto key = targets.rank(t);
      auto [it, fresh] = column_of.try_emplace(key, static_cast<std::uint32_t>(column_of.size()));
      entries.push_back({static_cast<std::uint32_t>(r), it->second, level.term_coeff(k)});
    }
    if (entries.size() > limits.max_nonzeros)
      throw TooLargeError("degree " + std::to_string(m) + " matrix exceeds " +
                          std::to_string(limits.max_nonzeros) + " nonzeros");
  }
  const std::uint64_t ncols = column_of.size();
  out.cols = ncols;
  if (ncols > limits.max_matrix_side)
    throw TooLargeError("degree " + std::to_string(m) + " needs " + std::to_string(ncols) + " columns");
  if (entries.empty()) return out;

  // Connected components: nodes [0, nrows) are rows, the rest columns.
  detail::UnionFind uf(nrows + ncols);
  for (const auto& en : entries) uf.unite(en.row, static_cast<std::uint32_t>(nrows + en.col));
  std::vector<std::uint32_t> block_of(nrows + ncols), local(nrows + ncols);
  std::vector<std::uint32_t> block_rows, block_cols;
  std::unordered_map<std::uint32_t, std::uint32_t> block_id;
  for (std::uint32_t x = 0; x < nrows + ncols; ++x) {
    auto [it, fresh] = block_id.try_emplace(uf.find(x), static_cast<std::uint32_t>(block_id.size()));
    if (fresh) {
      block_rows.push_back(0);
      block_cols.push_back(0);
    }
    const auto b = it->second;
    block_of[x] = b;
    local[x] = x < nrows ? block_rows[b]++ : block_cols[b]++;
  }
  std::vector<std::vector<MatrixFp::Entry>> per_block(block_rows.size());
  for (const auto& en : entries) {
    const auto b = block_of[en.row];
    per_block[b].push_back({local[en.row], local[nrows + en.col], en.value});
  }
  entries.clear();
  entries.shrink_to_fit();

  for (std::size_t b = 0; b < per_block.size(); ++b) {
    if (per_block[b].empty()) continue; // an isolated row: zero image
    ++out.blocks;
    MatrixFp block(ring.field(), block_rows[b], block_cols[b], std::move(per_block[b]));
    out.b += rank_mod_p(block);
  }
  if (out.b > out.dim_R)
    throw InternalCheckFailure("b_" + std::to_string(level.level()) + "(" + std::to_string(m) +
                               ") = " + std::to_string(out.b) + " exceeds dim R_m = " +
                               std::to_string(out.dim_R));
  return out;
}

/// b_e(m) = dim R_m / I_e(m).
inline std::uint64_t b_dimension(const GradedHypersurface& ring, unsigned e, std::uint64_t m,
                                 const SplittingLimits& limits = {}) {
  const FrobeniusLevel level(ring, e, limits);
  return degree_slice(ring, level, m, limits).b;
}

struct MembershipResult {
  bool member = false;
  /// f lies in (G), so membership holds for trivial reasons.
  bool multiple_of_equation = false;
};

/// Whether f lies in I_e(deg f): every monomial of f * G^{q-1} is divisible
/// by some x_i^q.
inline MembershipResult membership_check(const GradedHypersurface& ring, unsigned e,
                                         const PolynomialFp& f, const SplittingLimits& limits = {}) {
  if (!(f.field() == ring.field()) || f.nvars() != ring.nvars())
    throw ValidationError("element does not live in the ring's polynomial ring");
  if (f.is_zero()) return {true, true};
  if (!f.homogeneous_degree()) throw ValidationError("element is not homogeneous");
  const FrobeniusLevel level(ring, e, limits);
  const auto product = f.multiply(level.multiplier(), limits.max_power_terms);
  MembershipResult out;
  out.member = std::all_of(product.terms().begin(), product.terms().end(),
                           [&](const Term& t) { return t.mono.max_exponent() >= level.q(); });
  out.multiple_of_equation = normal_form(f, ring.equation()).is_zero();
  return out;
}

/// Sharp F-splitting at level e: b_e(0) = 1.
inline bool fedder_is_fsplit(const GradedHypersurface& ring, unsigned e,
                             const SplittingLimits& limits = {}) {
  return FrobeniusLevel(ring, e, limits).fsplit();
}

/// (q-1)(v-delta): degree of the duality pivot; b_e vanishes above it.
inline std::int64_t duality_pivot(const GradedHypersurface& ring, std::uint64_t q) {
  return static_cast<std::int64_t>(q - 1) * ring.fano_coindex();
}

/// m_e: the largest m with I_e(m) = 0, found by scanning upward. Valid on
/// a normal domain, where a nonzero linear form embeds I_e(m) into I_e(m+1).
inline std::uint64_t m_threshold(const GradedHypersurface& ring, unsigned e,
                                 const SplittingLimits& limits = {}) {
  const FrobeniusLevel level(ring, e, limits);
  if (!level.fsplit())
    throw ValidationError("not F-split at level " + std::to_string(e));
  const std::int64_t pivot = duality_pivot(ring, level.q());
  for (std::uint64_t m = 1;; ++m) {
    if (static_cast<std::int64_t>(m) > std::max<std::int64_t>(pivot, 0) + 1)
      throw InternalCheckFailure("threshold scan passed degree " + std::to_string(m - 1) +
                                 " without finding I_e(m) != 0");
    const auto slice = degree_slice(ring, level, m, limits);
    if (slice.dim_R == 0 || slice.b < slice.dim_R) return m - 1;
  }
}

/// a_e = sum_{m=0}^{M_e} b_e(m) for a Fano hypersurface.
inline std::uint64_t free_rank(const GradedHypersurface& ring, unsigned e,
                               const SplittingLimits& limits = {}) {
  if (!ring.is_fano())
    throw ValidationError("non-Fano: free-rank sum not implemented (v−δ = " +
                          std::to_string(ring.fano_coindex()) + ")");
  const FrobeniusLevel level(ring, e, limits);
  if (!level.fsplit()) throw ValidationError("not F-split at level " + std::to_string(e));
  const auto pivot = static_cast<std::uint64_t>(duality_pivot(ring, level.q()));
  std::uint64_t total = 0;
  for (std::uint64_t m = 0; m <= pivot; ++m) total += degree_slice(ring, level, m, limits).b;
  if (const auto tail = degree_slice(ring, level, pivot + 1, limits).b; tail != 0)
    throw InternalCheckFailure("b_e(M_e + 1) = " + std::to_string(tail) + ", expected 0");
  return total;
}

struct ProfileOptions {
  unsigned threads = 0; // 0: FROBW_THREADS or hardware
  SplittingLimits limits{};
};

/// All level-e data for one ring.
struct SplittingProfile {
  unsigned e = 0;
  std::uint64_t q = 0;
  std::int64_t pivot = 0;           // M_e = (q-1)(v-delta)
  std::vector<DegreeSlice> slices;  // m = 0 .. max(M_e, 0)
  bool fsplit = false;
  std::optional<std::uint64_t> m_e; // empty: not F-split
  std::optional<Rational> alpha_e;      // m_e / q
  std::optional<Rational> alpha_upper;  // (m_e + 1)/(q - 1)
  std::optional<std::uint64_t> a_e;     // Fano only
  std::optional<Rational> s_raw;        // a_e / q^{v-1}
  bool duality_ok = true;
  std::optional<bool> monotone_ok;      // needs level e-1
  bool scan_monotone_ok = true;
  bool counts_ok = true;
  bool advisory = false;                // ring flagged degenerate: checks advisory
  std::vector<std::string> notes;

  std::uint64_t b(std::uint64_t m) const { return m < slices.size() ? slices[m].b : 0; }
};

namespace detail {

inline void finish_profile(const GradedHypersurface& ring, SplittingProfile& pr) {
  const std::size_t n = pr.slices.size();
  // Threshold and scan monotonicity.
  std::uint64_t run = 0;
  while (run < n && pr.slices[run].b == pr.slices[run].dim_R && pr.slices[run].dim_R > 0) ++run;
  if (pr.fsplit) {
    pr.m_e = run == 0 ? 0 : run - 1;
    for (std::uint64_t m = run; m < n; ++m)
      if (pr.slices[m].dim_R > 0 && pr.slices[m].b == pr.slices[m].dim_R) {
        pr.scan_monotone_ok = false;
        pr.notes.push_back("I_e(" + std::to_string(m) + ") = 0 after a nonzero I_e in lower degree");
      }
    const BigInt q = pr.q;
    pr.alpha_e = Rational(BigInt(*pr.m_e), q);
    pr.alpha_upper = Rational(BigInt(*pr.m_e + 1), q - 1);
  }
  for (const auto& s : pr.slices) pr.counts_ok = pr.counts_ok && s.counts_ok;
  if (pr.pivot >= 0) {
    const auto top = static_cast<std::size_t>(pr.pivot);
    for (std::size_t m = 0; m <= top && m < n; ++m)
      if (pr.slices[m].b != pr.b(top - m)) {
        pr.duality_ok = false;
        pr.notes.push_back("duality: b(" + std::to_string(m) + ") = " + std::to_string(pr.slices[m].b) +
                           " but b(" + std::to_string(top - m) + ") = " + std::to_string(pr.b(top - m)));
      }
  }
  if (ring.is_fano() && pr.fsplit) {
    std::uint64_t sum = 0;
    for (const auto& s : pr.slices) sum += s.b;
    pr.a_e = sum;
    pr.s_raw = Rational(BigInt(sum), boost::multiprecision::pow(BigInt(pr.q), static_cast<unsigned>(ring.nvars() - 1)));
  }
  pr.advisory = ring.degenerate();
}

} // namespace detail

/// Full level-e profile: b_e(m) for 0 <= m <= M_e, threshold, free rank and
/// the duality / scan checks. Degrees run on a worker pool; the result does
/// not depend on completion order.
inline SplittingProfile profile(const GradedHypersurface& ring, unsigned e,
                                const ProfileOptions& opts = {}) {
  SplittingProfile pr;
  pr.e = e;
  const FrobeniusLevel level(ring, e, opts.limits);
  pr.q = level.q();
  pr.pivot = duality_pivot(ring, pr.q);
  pr.fsplit = level.fsplit();
  const std::uint64_t top = static_cast<std::uint64_t>(std::max<std::int64_t>(pr.pivot, 0));
  pr.slices.resize(top + 1);
  if (!pr.fsplit) {
    // 1 lies in the splitting ideal, hence I_e = R in every degree.
    for (std::uint64_t m = 0; m <= top; ++m) {
      pr.slices[m].m = m;
      pr.slices[m].dim_R = ring.dim(m);
    }
    pr.notes.push_back("not F-split at level " + std::to_string(e));
  } else {
    parallel_for(top + 1, resolve_threads(opts.threads),
                 [&](std::size_t m) { pr.slices[m] = degree_slice(ring, level, m, opts.limits); });
  }
  detail::finish_profile(ring, pr);
  return pr;
}

/// Profiles for e = lo..hi with the cross-level monotonicity check
/// alpha_{e-1} + p^{-(e-1)} >= alpha_e + p^{-e}, i.e. p (m_{e-1}+1) >= m_e + 1.
inline std::vector<SplittingProfile> profiles(const GradedHypersurface& ring, unsigned lo, unsigned hi,
                                              const ProfileOptions& opts = {}) {
  if (lo < 1 || hi < lo) throw UsageError("level range must satisfy 1 <= lo <= hi");
  std::vector<SplittingProfile> out;
  for (unsigned e = lo; e <= hi; ++e) {
    out.push_back(profile(ring, e, opts));
    if (out.size() >= 2) {
      auto& prev = out[out.size() - 2];
      auto& cur = out.back();
      if (prev.m_e && cur.m_e)
        cur.monotone_ok = std::uint64_t{ring.characteristic()} * (*prev.m_e + 1) >= *cur.m_e + 1;
    }
  }
  return out;
}

/// Normalized (anticanonical) quantities for one level, -K_X = (v-delta) H.
struct FanoLevel {
  unsigned e = 0;
  std::uint64_t q = 0;
  Rational alpha_estimate;          // alpha_e / (v-delta)
  Rational alpha_upper;             // (m_e+1)/((q-1)(v-delta)), rigorous
  Rational alpha_upper_monotone;    // (alpha_e + 1/q)/(v-delta), rigorous by monotonicity
  Rational s_estimate;              // s_raw / (v-delta)
  std::optional<Rational> s_halved; // 2 sum_{m <= (q-1)/2} b_e(m) / q^{v-1}, only when v-delta = 1
  bool upper_below_half = false;    // certifies alpha_F(X) < 1/2
  bool estimate_within_half = false;
  // Advisory: the F-signature sandwich evaluated at the level-e estimates.
  bool sandwich_lower_ok = false;
  bool sandwich_upper_ok = false;
  bool cone_lower_ok = false;
};

struct FanoReport {
  std::vector<SplittingProfile> profiles;
  std::vector<FanoLevel> levels;
  std::int64_t coindex = 0;
  unsigned dimension = 0;         // d = v - 2
  Rational volume;                // vol(-K_X) = delta (v-delta)^{v-2}
  Rational s_bound;               // vol / (2^d (d+1)!)
  Rational best_alpha_upper;      // min over levels of both rigorous bounds
  bool estimates_within_half = true;
  bool certified_below_half = false;
  bool s_estimates_within_bound = true; // advisory
};

namespace detail {

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Rational rpow(const Rational& x, unsigned n) {
  Rational r = 1;
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

} // namespace detail

inline FanoReport fano_report(const GradedHypersurface& ring, std::vector<SplittingProfile> profs) {
  if (!ring.is_fano())
    throw ValidationError("non-Fano: v−δ = " + std::to_string(ring.fano_coindex()));
  if (ring.nvars() < 3) throw ValidationError("Fano report needs dim X >= 1 (at least 3 variables)");
  FanoReport rep;
  rep.coindex = ring.fano_coindex();
  rep.dimension = static_cast<unsigned>(ring.nvars() - 2);
  const unsigned d = rep.dimension;
  const BigInt c = rep.coindex;
  rep.volume = Rational(BigInt(ring.degree()) * boost::multiprecision::pow(c, d));
  rep.s_bound = rep.volume / Rational(BigInt(1) << d) / Rational(detail::factorial(d + 1));
  const Rational half(1, 2);
  bool have_upper = false;
  for (const auto& pr : profs) {
    if (!pr.m_e) throw ValidationError("not F-split at level " + std::to_string(pr.e));
    FanoLevel lv;
    lv.e = pr.e;
    lv.q = pr.q;
    const Rational q(BigInt(pr.q));
    lv.alpha_estimate = *pr.alpha_e / Rational(c);
    lv.alpha_upper = *pr.alpha_upper / Rational(c);
    lv.alpha_upper_monotone = (*pr.alpha_e + 1 / q) / Rational(c);
    lv.s_estimate = *pr.s_raw / Rational(c);
    if (rep.coindex == 1) {
      std::uint64_t half_sum = 0;
      for (std::uint64_t m = 0; m <= (pr.q - 1) / 2; ++m) half_sum += pr.b(m);
      lv.s_halved = Rational(BigInt(2 * half_sum)) / detail::rpow(q, static_cast<unsigned>(ring.nvars() - 1));
    }
    lv.upper_below_half = std::min(lv.alpha_upper, lv.alpha_upper_monotone) < half;
    lv.estimate_within_half = lv.alpha_estimate <= half;

    const Rational scale = 2 * rep.volume / Rational(detail::factorial(d + 1));
    const Rational& a = lv.alpha_estimate;
    lv.sandwich_lower_ok = scale * detail::rpow(a, d + 1) <= lv.s_estimate;
    lv.sandwich_upper_ok = lv.s_estimate <= scale * (detail::rpow(half, d + 1) - detail::rpow(half - a, d + 1));
    // Cone version with L = H: vol(H) = delta, dim S = v - 1.
    const unsigned dim_s = static_cast<unsigned>(ring.nvars() - 1);
    lv.cone_lower_ok = Rational(BigInt(ring.degree())) * detail::rpow(*pr.alpha_e, dim_s) /
                           Rational(detail::factorial(dim_s)) <=
                       *pr.s_raw;

    const Rational best = std::min(lv.alpha_upper, lv.alpha_upper_monotone);
    if (!have_upper || best < rep.best_alpha_upper) rep.best_alpha_upper = best;
    have_upper = true;
    rep.estimates_within_half = rep.estimates_within_half && lv.estimate_within_half;
    rep.s_estimates_within_bound = rep.s_estimates_within_bound && lv.s_estimate <= rep.s_bound;
    rep.levels.push_back(std::move(lv));
  }
  rep.certified_below_half = have_upper && rep.best_alpha_upper < half;
  rep.profiles = std::move(profs);
  return rep;
}

inline FanoReport fano_report(const GradedHypersurface& ring, unsigned e_max, const ProfileOptions& opts = {}) {
  if (!ring.is_fano())
    throw ValidationError("non-Fano: v−δ = " + std::to_string(ring.fano_coindex()));
  return fano_report(ring, profiles(ring, 1, e_max, opts));
}

} // namespace frobw
