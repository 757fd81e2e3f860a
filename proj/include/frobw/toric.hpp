#pragma once

// Exact alpha invariant of a complete simplicial toric Fano variety.
//
// With rays v_i, the anticanonical polytope is P = {u : <u, v_i> >= -1}.
// A lattice point u of rP gives the torus-invariant divisor
// D_u = sum_i c_i D_i in |-rK_X|, c_i = <u, v_i> + r, whose log canonical
// threshold on a Q-factorial toric variety is min over c_i > 0 of 1/c_i.
// Then alpha = r * min_u lct(D_u) for any r making the section ring of -rK_X
// generated in degree one.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "frobw/error.hpp"
#include "frobw/rational.hpp"

namespace frobw {

struct FanData {
  unsigned dim = 0;
  std::vector<std::vector<std::int64_t>> rays;
  std::vector<std::vector<std::size_t>> cones; // maximal cones, indices into rays
};

struct RationalPolytope {
  std::vector<std::vector<std::int64_t>> normals;   // <u, n_i> >= -1
  std::vector<std::vector<Rational>> vertices;      // vertices[k] belongs to cone k
};

struct DilatedPolytope {
  RationalPolytope polytope;
  BigInt r;
};

struct ToricAlphaReport {
  BigInt r;
  Rational alpha;
  std::vector<BigInt> witness_u;
  std::size_t witness_ray = 0;
  bool witness_is_vertex = false;
  Rational alpha_doubled; // recomputed at dilation 2r
  std::uint64_t lattice_points = 0;
  Rational volume;
  Rational bound;         // volume / (2^d (d+1)!)
};

struct ToricLimits {
  std::uint64_t max_lattice_points = 10'000'000;
};

namespace linalg {

using RMatrix = std::vector<std::vector<Rational>>;

/// Solves A x = b exactly; returns nullopt when A is singular.
inline std::optional<std::vector<Rational>> solve(RMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline Rational determinant(RMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

inline RMatrix rows_of(const FanData& fan, const std::vector<std::size_t>& cone) {
  RMatrix m;
  for (auto i : cone) {
    std::vector<Rational> row;
    for (auto x : fan.rays[i]) row.emplace_back(x);
    m.push_back(std::move(row));
  }
  return m;
}

} // namespace linalg

/// Checks the fan invariants: nonzero primitive rays, d linearly independent
/// rays per cone, and a completeness spot check with 10*d deterministic
/// random directions.
inline void validate_fan(const FanData& fan, std::uint64_t seed = 0x5eed) {
  const unsigned d = fan.dim;
  if (d == 0) throw ValidationError("fan dimension must be positive");
  if (fan.rays.empty()) throw ValidationError("fan has no rays");
  if (fan.cones.empty()) throw ValidationError("fan has no cones");
  constexpr std::int64_t entry_cap = std::int64_t{1} << 20;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& ray = fan.rays[i];
    if (ray.size() != d)
      throw ValidationError("ray " + std::to_string(i) + " has " + std::to_string(ray.size()) +
                            " entries, expected " + std::to_string(d));
    std::int64_t g = 0;
    for (auto x : ray) {
      if (x > entry_cap || x < -entry_cap) throw TooLargeError("ray " + std::to_string(i) + " entry out of range");
      g = std::gcd(g, x);
    }
    if (g == 0) throw ValidationError("ray " + std::to_string(i) + " is zero");
    if (g != 1) throw ValidationError("ray " + std::to_string(i) + " not primitive");
  }
  for (std::size_t k = 0; k < fan.cones.size(); ++k) {
    const auto& cone = fan.cones[k];
    if (cone.size() != d)
      throw ValidationError("cone " + std::to_string(k) + " has " + std::to_string(cone.size()) +
                            " rays, expected " + std::to_string(d));
    for (auto i : cone)
      if (i >= fan.rays.size())
        throw ValidationError("cone " + std::to_string(k) + " references ray " + std::to_string(i) +
                              " out of range");
    if (linalg::determinant(linalg::rows_of(fan, cone)) == 0)
      throw ValidationError("non-simplicial or degenerate cone " + std::to_string(k));
  }
  // Completeness: every sampled direction must be a nonnegative combination
  // of the rays of some maximal cone.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
  std::vector<linalg::RMatrix> transposed;
  for (const auto& cone : fan.cones) {
    auto rows = linalg::rows_of(fan, cone);
    linalg::RMatrix t(d, std::vector<Rational>(d));
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j) t[i][j] = rows[j][i];
    transposed.push_back(std::move(t));
  }
  for (unsigned s = 0; s < 10 * d; ++s) {
    std::vector<Rational> y(d);
    bool nonzero = false;
    for (auto& x : y) {
      x = coord(rng);
      nonzero = nonzero || x != 0;
    }
    if (!nonzero) continue;
    bool covered = false;
    for (const auto& t : transposed) {
      auto lambda = linalg::solve(t, y);
      if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& l) { return l >= 0; })) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      std::string dir;
      for (const auto& x : y) dir += (dir.empty() ? "" : ",") + to_string(x);
      throw ValidationError("fan is not complete: direction (" + dir + ") lies in no cone");
    }
  }
}

/// Vertices of P (one per maximal cone) and the dilation
/// r = lcm(vertex denominators) * max(1, d-1).
inline DilatedPolytope polar_and_dilate(const FanData& fan) {
  const unsigned d = fan.dim;
  DilatedPolytope out;
  out.polytope.normals = fan.rays;
  BigInt lcm = 1;
  for (std::size_t k = 0; k < fan.cones.size(); ++k) {
    const auto& cone = fan.cones[k];
    auto u = linalg::solve(linalg::rows_of(fan, cone), std::vector<Rational>(d, Rational(-1)));
    if (!u) throw ValidationError("non-simplicial or degenerate cone " + std::to_string(k));
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
      Rational dot = 0;
      for (unsigned j = 0; j < d; ++j) dot += (*u)[j] * fan.rays[i][j];
      const bool in_cone = std::find(cone.begin(), cone.end(), i) != cone.end();
      if (in_cone ? dot != -1 : dot <= -1)
        throw ValidationError("fan is not Fano: vertex of cone " + std::to_string(k) +
                              (dot < -1 ? " violates" : " is tight on") + " ray " + std::to_string(i));
    }
    for (const auto& x : *u) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(x));
    out.polytope.vertices.push_back(std::move(*u));
  }
  out.r = lcm * std::max(1u, d - 1);
  return out;
}

namespace detail {

struct AlphaScan {
  Rational alpha;
  std::vector<std::int64_t> witness;
  std::size_t ray = 0;
  std::uint64_t points = 0;
};

inline std::int64_t floor_div(const Rational& x) {
  const BigInt n = boost::multiprecision::numerator(x), dd = boost::multiprecision::denominator(x);
  BigInt q = n / dd;
  if (n < 0 && q * dd != n) q -= 1;
  return static_cast<std::int64_t>(q);
}

inline std::int64_t ceil_div(const Rational& x) { return -floor_div(-x); }

/// Minimizes r / max_i c_i over the lattice points of rP, visiting the
/// bounding box in lexicographic order. Ties keep the first point and the
/// smallest ray index.
inline AlphaScan scan_lattice(const FanData& fan, const RationalPolytope& poly, const BigInt& r_big,
                              const ToricLimits& limits) {
  const unsigned d = fan.dim;
  constexpr std::int64_t coord_cap = std::int64_t{1} << 24;
  if (r_big > coord_cap) throw TooLargeError("dilation factor too large");
  const auto r = static_cast<std::int64_t>(r_big);
  std::vector<std::int64_t> lo(d), hi(d);
  long double box = 1;
  for (unsigned j = 0; j < d; ++j) {
    Rational mn = poly.vertices.front()[j], mx = mn;
    for (const auto& v : poly.vertices) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = floor_div(mn * r);
    hi[j] = ceil_div(mx * r);
    if (hi[j] - lo[j] > coord_cap) throw TooLargeError("lattice box too wide");
    box *= static_cast<long double>(hi[j] - lo[j] + 1);
  }
  if (box > static_cast<long double>(limits.max_lattice_points))
    throw TooLargeError("lattice box holds more than " + std::to_string(limits.max_lattice_points) + " points");

  AlphaScan best;
  std::int64_t best_cmax = -1;
  std::vector<std::int64_t> u = lo;
  while (true) {
    std::int64_t cmax = -1;
    std::size_t arg = 0;
    bool inside = true;
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
      std::int64_t c = r;
      for (unsigned j = 0; j < d; ++j) c += u[j] * fan.rays[i][j];
      if (c < 0) {
        inside = false;
        break;
      }
      if (c > cmax) {
        cmax = c;
        arg = i;
      }
    }
    if (inside) {
      ++best.points;
      if (cmax == 0) throw InternalCheckFailure("all c_i vanish at a lattice point of rP");
      if (cmax > best_cmax) {
        best_cmax = cmax;
        best.witness = u;
        best.ray = arg;
      }
    }
    unsigned j = d;
    while (j > 0) {
      --j;
      if (u[j] < hi[j]) {
        ++u[j];
        break;
      }
      u[j] = lo[j];
      if (j == 0) {
        j = d + 1;
        break;
      }
    }
    if (j == d + 1) break;
  }
  if (best_cmax <= 0) throw InternalCheckFailure("no lattice point found in rP");
  best.alpha = Rational(BigInt(r), BigInt(best_cmax));
  return best;
}

} // namespace detail

/// d! vol(P), the anticanonical volume (-K_X)^d.
///
/// P is triangulated by its barycentric subdivision pulled to the origin:
/// faces of P correspond to cones tau of the fan (face vertices are the u_sigma
/// with sigma containing tau), and every maximal cone with an ordering of its
/// rays gives the flag tau_1 < ... < tau_d and the simplex
/// conv(0, bary(F_tau_1), ..., bary(F_tau_d)).
inline Rational anticanonical_volume(const FanData& fan, const RationalPolytope& poly) {
  const unsigned d = fan.dim;
  std::map<std::vector<std::size_t>, std::vector<Rational>> bary;
  auto barycenter = [&](std::vector<std::size_t> face) -> const std::vector<Rational>& {
    std::sort(face.begin(), face.end());
    auto it = bary.find(face);
    if (it != bary.end()) return it->second;
    std::vector<Rational> sum(d, Rational(0));
    std::size_t count = 0;
    for (std::size_t k = 0; k < fan.cones.size(); ++k) {
      const auto& cone = fan.cones[k];
      if (std::all_of(face.begin(), face.end(),
                      [&](std::size_t i) { return std::find(cone.begin(), cone.end(), i) != cone.end(); })) {
        for (unsigned j = 0; j < d; ++j) sum[j] += poly.vertices[k][j];
        ++count;
      }
    }
    for (auto& x : sum) x /= count;
    return bary.emplace(std::move(face), std::move(sum)).first->second;
  };

  Rational total = 0;
  for (const auto& cone : fan.cones) {
    std::vector<std::size_t> order = cone;
    std::sort(order.begin(), order.end());
    do {
      linalg::RMatrix simplex;
      for (unsigned k = 1; k <= d; ++k)
        simplex.push_back(barycenter(std::vector<std::size_t>(order.begin(), order.begin() + k)));
      total += abs(linalg::determinant(std::move(simplex)));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return total;
}

inline Rational anticanonical_volume(const FanData& fan) {
  validate_fan(fan);
  return anticanonical_volume(fan, polar_and_dilate(fan).polytope);
}

/// vol / (2^d (d+1)!): the ceiling on the F-signature, attained iff alpha = 1/2.
inline Rational signature_bound(const Rational& volume, unsigned d) {
  BigInt denom = BigInt(1) << d;
  for (unsigned i = 2; i <= d + 1; ++i) denom *= i;
  return volume / Rational(denom);
}

inline ToricAlphaReport toric_alpha(const FanData& fan, const ToricLimits& limits = {}) {
  validate_fan(fan);
  const auto dil = polar_and_dilate(fan);
  const auto scan = detail::scan_lattice(fan, dil.polytope, dil.r, limits);
  ToricAlphaReport rep;
  rep.r = dil.r;
  rep.alpha = scan.alpha;
  rep.witness_ray = scan.ray;
  rep.lattice_points = scan.points;
  for (auto x : scan.witness) rep.witness_u.emplace_back(x);
  for (const auto& v : dil.polytope.vertices) {
    bool same = true;
    for (unsigned j = 0; j < fan.dim; ++j) same = same && v[j] * Rational(dil.r) == Rational(rep.witness_u[j]);
    rep.witness_is_vertex = rep.witness_is_vertex || same;
  }
  rep.alpha_doubled = detail::scan_lattice(fan, dil.polytope, 2 * dil.r, limits).alpha;
  if (rep.alpha_doubled != rep.alpha)
    throw InternalCheckFailure("dilation instability: alpha(r) = " + to_string(rep.alpha) +
                               " but alpha(2r) = " + to_string(rep.alpha_doubled));
  if (rep.alpha > Rational(1, 2))
    throw InternalCheckFailure("alpha = " + to_string(rep.alpha) + " exceeds 1/2");
  rep.volume = anticanonical_volume(fan, dil.polytope);
  rep.bound = signature_bound(rep.volume, fan.dim);
  return rep;
}

} // namespace frobw
