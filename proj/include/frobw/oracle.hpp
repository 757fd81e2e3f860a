#pragma once

// Brute-force reference implementations. Deliberately slow and dense, and
// independent of the main engines: only PrimeField and the fan/ring
// containers are shared.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frobw/error.hpp"
#include "frobw/hypersurface.hpp"
#include "frobw/prime_field.hpp"
#include "frobw/rational.hpp"
#include "frobw/toric.hpp"

namespace frobw::oracle {

struct OracleConfig {
  std::uint64_t max_q = 9;                 // p^e
  std::uint64_t max_power_degree = 30;     // deg G^{q-1}
  std::uint64_t max_dense_entries = 50'000'000;
  unsigned max_fan_dim = 3;
  std::uint64_t max_lattice_points = 100'000;
  std::uint64_t seed = 20240601;
};

namespace detail {

using Exps = std::vector<std::uint32_t>;
using Poly = std::map<Exps, Coeff>;

inline Poly to_poly(const GradedHypersurface& ring) {
  Poly out;
  for (const auto& t : ring.equation().terms()) {
    Exps e(t.mono.exponents().begin(), t.mono.exponents().end());
    out[e] = t.coeff;
  }
  return out;
}

inline Poly times(const PrimeField& F, const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] = F.add(out[e], F.mul(ca, cb));
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline void all_monomials(std::size_t v, std::uint64_t m, Exps& cur, std::size_t i, std::vector<Exps>& out) {
  if (i + 1 == v) {
    cur[i] = static_cast<std::uint32_t>(m);
    out.push_back(cur);
    return;
  }
  for (std::uint64_t a = 0; a <= m; ++a) {
    cur[i] = static_cast<std::uint32_t>(a);
    all_monomials(v, m - a, cur, i + 1, out);
  }
}

inline std::vector<Exps> all_monomials(std::size_t v, std::uint64_t m) {
  std::vector<Exps> out;
  Exps cur(v, 0);
  all_monomials(v, m, cur, 0, out);
  return out;
}

inline std::size_t dense_rank(const PrimeField& F, std::vector<std::vector<Coeff>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const Coeff inv = F.inv(a[rank][c]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Coeff f = F.mul(a[r][c], inv);
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = F.sub(a[r][k], F.mul(f, a[rank][k]));
    }
    ++rank;
  }
  return rank;
}

} // namespace detail

/// dim R_m - dim I_e(m), from the definition: multiply every monomial of
/// degree m by G^{q-1}, project away the monomials in m^[q], take the rank.
inline std::uint64_t naive_b_dimension(const GradedHypersurface& ring, unsigned e, std::uint64_t m,
                                       const OracleConfig& cfg = {}) {
  const PrimeField& F = ring.field();
  if (e < 1) throw ValidationError("Frobenius level must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= F.modulus();
    if (q > cfg.max_q) throw TooLargeError("oracle cap: p^e > " + std::to_string(cfg.max_q));
  }
  if (ring.degree() * (q - 1) > cfg.max_power_degree)
    throw TooLargeError("oracle cap: deg G^(q-1) > " + std::to_string(cfg.max_power_degree));
  const std::size_t v = ring.nvars();

  const detail::Poly g = detail::to_poly(ring);
  detail::Poly power{{detail::Exps(v, 0), 1}};
  for (std::uint64_t i = 0; i + 1 < q; ++i) power = detail::times(F, power, g);

  const auto rows = detail::all_monomials(v, m);
  const auto cols = detail::all_monomials(v, m + ring.degree() * (q - 1));
  if (rows.size() * cols.size() > cfg.max_dense_entries)
    throw TooLargeError("oracle cap: dense matrix too large");
  std::map<detail::Exps, std::size_t> col_of;
  for (std::size_t j = 0; j < cols.size(); ++j) col_of[cols[j]] = j;

  std::vector<std::vector<Coeff>> mat(rows.size(), std::vector<Coeff>(cols.size(), 0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto prod = detail::times(F, {{rows[r], 1}}, power);
    for (const auto& [ex, c] : prod) mat[r][col_of.at(ex)] = c;
  }
  // Projection onto S / m^[q].
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (std::any_of(cols[j].begin(), cols[j].end(), [&](std::uint32_t x) { return x >= q; }))
      for (auto& row : mat) row[j] = 0;
  return detail::dense_rank(F, std::move(mat));
}

namespace detail {

inline Rational cramer_det(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Rational sum = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Rational>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    const Rational term = a[0][j] * cramer_det(minor);
    sum += (j % 2 == 0) ? term : Rational(-term);
  }
  return sum;
}

/// Vertices of P by Cramer's rule, one per cone.
inline std::vector<std::vector<Rational>> cramer_vertices(const FanData& fan) {
  const unsigned d = fan.dim;
  std::vector<std::vector<Rational>> out;
  for (const auto& cone : fan.cones) {
    std::vector<std::vector<Rational>> a;
    for (auto i : cone) {
      std::vector<Rational> row;
      for (auto x : fan.rays[i]) row.emplace_back(x);
      a.push_back(std::move(row));
    }
    const Rational det = cramer_det(a);
    if (det == 0) throw ValidationError("oracle: singular cone");
    std::vector<Rational> u(d);
    for (unsigned j = 0; j < d; ++j) {
      auto aj = a;
      for (unsigned i = 0; i < d; ++i) aj[i][j] = -1;
      u[j] = cramer_det(aj) / det;
    }
    out.push_back(std::move(u));
  }
  return out;
}

inline BigInt naive_dilation(const FanData& fan, const std::vector<std::vector<Rational>>& verts) {
  BigInt l = 1;
  for (const auto& u : verts)
    for (const auto& x : u) {
      const BigInt den = boost::multiprecision::denominator(x);
      l = l / boost::multiprecision::gcd(l, den) * den;
    }
  return l * (fan.dim > 2 ? fan.dim - 1 : 1);
}

/// Visits every integer point of the box [-R, R]^d lying in sP, where R
/// bounds s times every vertex coordinate.
template <class Fn>
void box_scan(const FanData& fan, const std::vector<std::vector<Rational>>& verts, const BigInt& s,
              const OracleConfig& cfg, Fn&& fn) {
  const unsigned d = fan.dim;
  BigInt radius = 0;
  for (const auto& u : verts)
    for (const auto& x : u) {
      const Rational y = abs(x * Rational(s));
      BigInt c = boost::multiprecision::numerator(y) / boost::multiprecision::denominator(y) + 1;
      radius = std::max(radius, c);
    }
  BigInt box = 1;
  for (unsigned j = 0; j < d; ++j) box *= 2 * radius + 1;
  if (box > cfg.max_lattice_points * 20) throw TooLargeError("oracle cap: box too large");
  const auto R = static_cast<std::int64_t>(radius);
  const auto S = static_cast<std::int64_t>(s);
  std::uint64_t seen = 0;
  std::vector<std::int64_t> u(d, -R);
  while (true) {
    bool inside = true;
    std::vector<std::int64_t> c;
    for (const auto& ray : fan.rays) {
      std::int64_t dot = 0;
      for (unsigned j = 0; j < d; ++j) dot += u[j] * ray[j];
      c.push_back(dot + S);
      inside = inside && dot + S >= 0;
    }
    if (inside) {
      if (++seen > cfg.max_lattice_points) throw TooLargeError("oracle cap: too many lattice points");
      fn(u, c);
    }
    unsigned j = 0;
    while (j < d && u[j] == R) u[j++] = -R;
    if (j == d) break;
    ++u[j];
  }
}

} // namespace detail

/// alpha = min over lattice points u of rP of r / max_i c_i.
inline Rational naive_toric_alpha(const FanData& fan, const OracleConfig& cfg = {}) {
  if (fan.dim == 0 || fan.dim > cfg.max_fan_dim) throw TooLargeError("oracle cap: fan dimension");
  const auto verts = detail::cramer_vertices(fan);
  const BigInt r = detail::naive_dilation(fan, verts);
  std::optional<Rational> best;
  detail::box_scan(fan, verts, r, cfg, [&](const auto&, const std::vector<std::int64_t>& c) {
    for (auto ci : c)
      if (ci > 0) {
        const Rational val(r, BigInt(ci));
        if (!best || val < *best) best = val;
      }
  });
  if (!best) throw InternalCheckFailure("oracle: no lattice point with a positive coefficient");
  return *best;
}

/// (-K_X)^d = d! vol(P) from the leading Ehrhart coefficient of rP, by
/// interpolating point counts of n rP for n = 0..d.
inline Rational naive_anticanonical_volume(const FanData& fan, const OracleConfig& cfg = {}) {
  if (fan.dim == 0 || fan.dim > cfg.max_fan_dim) throw TooLargeError("oracle cap: fan dimension");
  const unsigned d = fan.dim;
  const auto verts = detail::cramer_vertices(fan);
  const BigInt r = detail::naive_dilation(fan, verts);
  Rational lead = 0;
  BigInt fact_d = 1;
  for (unsigned i = 2; i <= d; ++i) fact_d *= i;
  for (unsigned n = 0; n <= d; ++n) {
    std::uint64_t count = 0;
    if (n == 0) {
      count = 1;
    } else {
      OracleConfig big = cfg;
      big.max_lattice_points *= 100;
      detail::box_scan(fan, verts, r * n, big, [&](const auto&, const auto&) { ++count; });
    }
    // Leading coefficient of the interpolant through (k, L(k)), k = 0..d.
    BigInt denom = 1;
    for (unsigned k = 0; k < d; ++k)
      if (k != n) denom *= (static_cast<long>(n) - static_cast<long>(k));
    if (d != n) denom *= static_cast<long>(n) - static_cast<long>(d);
    lead += Rational(BigInt(count), denom);
  }
  // lead = vol(rP) = r^d vol(P).
  return lead * Rational(fact_d) / Rational(boost::multiprecision::pow(r, d));
}

} // namespace frobw::oracle
