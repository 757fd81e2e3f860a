#pragma once

// Named smooth toric Fano fans and a seeded generator of random simplicial
// Fano fans (face fans of random lattice polytopes) in dimension 2 and 3.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "frobw/toric.hpp"

namespace frobw {

struct NamedFan {
  std::string name;
  FanData fan;
};

/// Cones of a complete 2-dimensional fan: consecutive rays in angular order.
inline FanData planar_fan(std::vector<std::vector<std::int64_t>> rays) {
  std::sort(rays.begin(), rays.end(), [](const auto& a, const auto& b) {
    return std::atan2(static_cast<double>(a[1]), static_cast<double>(a[0])) <
           std::atan2(static_cast<double>(b[1]), static_cast<double>(b[0]));
  });
  FanData f{2, rays, {}};
  for (std::size_t i = 0; i < rays.size(); ++i) f.cones.push_back({i, (i + 1) % rays.size()});
  return f;
}

/// Cones over the facets of conv(rays) in dimension 3. Returns false when
/// some four rays are coplanar on a supporting plane or the hull is degenerate.
inline bool face_fan_3d(const std::vector<std::vector<std::int64_t>>& rays, FanData& out) {
  const std::size_t n = rays.size();
  out = FanData{3, rays, {}};
  auto sub = [](const auto& a, const auto& b) {
    return std::vector<std::int64_t>{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto a = sub(rays[j], rays[i]), b = sub(rays[k], rays[i]);
        const std::int64_t nx = a[1] * b[2] - a[2] * b[1], ny = a[2] * b[0] - a[0] * b[2],
                           nz = a[0] * b[1] - a[1] * b[0];
        if (nx == 0 && ny == 0 && nz == 0) continue;
        int pos = 0, neg = 0, zero = 0;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == i || l == j || l == k) continue;
          const auto w = sub(rays[l], rays[i]);
          const std::int64_t s = nx * w[0] + ny * w[1] + nz * w[2];
          (s > 0 ? pos : s < 0 ? neg : zero)++;
        }
        if (pos && neg) continue;
        if (zero) return false;
        out.cones.push_back({i, j, k});
      }
  return out.cones.size() >= 4;
}

inline std::vector<NamedFan> named_fans() {
  std::vector<NamedFan> out;
  out.push_back({"p1", FanData{1, {{1}, {-1}}, {{0}, {1}}}});
  out.push_back({"p2", FanData{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}}});
  out.push_back({"p1xp1", FanData{2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {2, 1}, {1, 3}, {3, 0}}}});
  out.push_back({"f1", planar_fan({{1, 0}, {0, 1}, {-1, 1}, {0, -1}})});
  out.push_back({"dp7", planar_fan({{1, 0}, {1, 1}, {0, 1}, {-1, -1}, {0, -1}})});
  out.push_back({"dp6", planar_fan({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}})});
  out.push_back({"p2_weighted_112", planar_fan({{1, 0}, {0, 1}, {-1, -2}})});
  FanData p3;
  face_fan_3d({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, p3);
  out.push_back({"p3", p3});
  FanData cube;
  {
    // The octahedron is not simplicial-generic for the brute-force hull, so
    // list the eight octants directly.
    cube.dim = 3;
    cube.rays = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (std::size_t a : {0, 1})
      for (std::size_t b : {2, 3})
        for (std::size_t c : {4, 5}) cube.cones.push_back({a, b, c});
  }
  out.push_back({"p1xp1xp1", cube});
  FanData p2xp1;
  p2xp1.dim = 3;
  p2xp1.rays = {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {2, 0}})
    for (std::size_t c : {3, 4}) p2xp1.cones.push_back({a, b, c});
  out.push_back({"p2xp1", p2xp1});
  return out;
}

inline const FanData& named_fan(const std::string& name) {
  static const auto fans = named_fans();
  for (const auto& f : fans)
    if (f.name == name) return f.fan;
  throw UsageError("unknown fan " + name);
}

/// Random valid simplicial Fano fans of dimension 2 or 3. Candidates are
/// face fans of primitive lattice points drawn from [-radius, radius]^d; any
/// candidate failing validation, the Fano test, or the lattice-point budget
/// is discarded. Deterministic for a given seed.
inline std::vector<FanData> random_fano_fans(std::size_t count, std::uint64_t seed, unsigned max_dim = 3,
                                             std::int64_t radius = 2) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  std::vector<FanData> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 100000; ++attempt) {
    const unsigned d = 2 + (max_dim > 2 ? out.size() % 2 : 0);
    const std::size_t n = d + 1 + rng() % (d == 2 ? 5 : 4);
    std::vector<std::vector<std::int64_t>> rays;
    while (rays.size() < n) {
      std::vector<std::int64_t> v(d);
      std::int64_t g = 0;
      for (auto& x : v) {
        x = coord(rng);
        g = std::gcd(g, x);
      }
      if (g != 1 || std::find(rays.begin(), rays.end(), v) != rays.end()) continue;
      rays.push_back(std::move(v));
    }
    FanData fan;
    if (d == 2) {
      fan = planar_fan(rays);
    } else if (!face_fan_3d(rays, fan)) {
      continue;
    }
    try {
      validate_fan(fan);
      const auto dil = polar_and_dilate(fan);
      if (dil.r > 6) continue;
      toric_alpha(fan, ToricLimits{200'000});
    } catch (const ValidationError&) {
      continue;
    }
    out.push_back(std::move(fan));
  }
  return out;
}

} // namespace frobw
