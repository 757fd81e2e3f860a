#include <gtest/gtest.h>

#include <random>

#include "frobw/fan_corpus.hpp"
#include "frobw/toric.hpp"

using namespace frobw;

namespace {

std::vector<std::vector<Rational>> sorted_vertices(const RationalPolytope& p) {
  auto v = p.vertices;
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Rational> vec(std::initializer_list<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

/// Applies the unimodular matrix u (rows) to every ray.
FanData transform(const FanData& fan, const std::vector<std::vector<std::int64_t>>& u) {
  FanData out = fan;
  for (auto& ray : out.rays) {
    std::vector<std::int64_t> img(fan.dim, 0);
    for (unsigned i = 0; i < fan.dim; ++i)
      for (unsigned j = 0; j < fan.dim; ++j) img[i] += u[i][j] * ray[j];
    ray = img;
  }
  return out;
}

} // namespace

TEST(Polar, NamedVertices) {
  const auto p2 = polar_and_dilate(named_fan("p2"));
  EXPECT_EQ(p2.r, 1);
  EXPECT_EQ(sorted_vertices(p2.polytope),
            (std::vector<std::vector<Rational>>{vec({-1, -1}), vec({-1, 2}), vec({2, -1})}));
  const auto sq = polar_and_dilate(named_fan("p1xp1"));
  EXPECT_EQ(sq.r, 1);
  EXPECT_EQ(sorted_vertices(sq.polytope),
            (std::vector<std::vector<Rational>>{vec({-1, -1}), vec({-1, 1}), vec({1, -1}), vec({1, 1})}));
  const auto p1 = polar_and_dilate(named_fan("p1"));
  EXPECT_EQ(p1.r, 1);
  EXPECT_EQ(sorted_vertices(p1.polytope), (std::vector<std::vector<Rational>>{vec({-1}), vec({1})}));
  EXPECT_EQ(polar_and_dilate(named_fan("p3")).r, 2);
}

TEST(Polar, VerticesSatisfyConstraints) {
  for (const auto& nf : named_fans()) {
    const auto dil = polar_and_dilate(nf.fan);
    for (const auto& u : dil.polytope.vertices)
      for (const auto& ray : nf.fan.rays) {
        Rational dot = 0;
        for (unsigned j = 0; j < nf.fan.dim; ++j) dot += u[j] * ray[j];
        EXPECT_GE(dot, -1) << nf.name;
      }
  }
}

TEST(ToricAlpha, NamedValues) {
  const auto sq = toric_alpha(named_fan("p1xp1"));
  EXPECT_EQ(sq.alpha, Rational(1, 2));
  EXPECT_EQ(sq.volume, 8);
  EXPECT_EQ(sq.bound, Rational(1, 3));
  const auto p2 = toric_alpha(named_fan("p2"));
  EXPECT_EQ(p2.alpha, Rational(1, 3));
  EXPECT_EQ(p2.volume, 9);
  EXPECT_EQ(p2.witness_ray, 2u);
  EXPECT_TRUE(p2.witness_is_vertex);
  const auto p1 = toric_alpha(named_fan("p1"));
  EXPECT_EQ(p1.alpha, Rational(1, 2));
  EXPECT_EQ(p1.volume, 2);
  EXPECT_EQ(toric_alpha(named_fan("p3")).alpha, Rational(1, 4));
  EXPECT_EQ(toric_alpha(named_fan("p3")).volume, 64);
  EXPECT_EQ(toric_alpha(named_fan("dp6")).alpha, Rational(1, 2));
  EXPECT_EQ(toric_alpha(named_fan("dp6")).volume, 6);
  EXPECT_EQ(toric_alpha(named_fan("f1")).alpha, Rational(1, 3));
  EXPECT_EQ(toric_alpha(named_fan("p1xp1xp1")).volume, 48);
}

TEST(ToricAlpha, WitnessIsLexicographicallyFirst) {
  // P2: the points (-1,-1), (-1,2), (2,-1) all reach c_max = 3; (-1,-1) comes first.
  const auto rep = toric_alpha(named_fan("p2"));
  ASSERT_EQ(rep.witness_u.size(), 2u);
  EXPECT_EQ(rep.witness_u[0], -1);
  EXPECT_EQ(rep.witness_u[1], -1);
}

TEST(ToricAlpha, CorpusInvariants) {
  const auto fans = random_fano_fans(12, 99);
  EXPECT_EQ(fans.size(), 12u);
  for (const auto& f : fans) {
    const auto rep = toric_alpha(f);
    EXPECT_LE(rep.alpha, Rational(1, 2));
    EXPECT_EQ(rep.alpha, rep.alpha_doubled);
    EXPECT_GT(rep.volume, 0);
  }
}

TEST(ToricAlpha, UnimodularInvariance) {
  std::mt19937_64 rng(4);
  const std::vector<std::vector<std::vector<std::int64_t>>> maps2 = {{{1, 1}, {0, 1}}, {{2, 1}, {1, 1}}, {{0, -1}, {1, 0}}};
  const std::vector<std::vector<std::vector<std::int64_t>>> maps3 = {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}},
                                                                     {{1, 0, 0}, {1, 1, 0}, {2, 1, 1}}};
  for (const auto& nf : named_fans()) {
    if (nf.fan.dim < 2) continue;
    const auto base = toric_alpha(nf.fan);
    for (const auto& u : nf.fan.dim == 2 ? maps2 : maps3) {
      const auto rep = toric_alpha(transform(nf.fan, u));
      EXPECT_EQ(rep.alpha, base.alpha) << nf.name;
      EXPECT_EQ(rep.volume, base.volume) << nf.name;
    }
  }
}

TEST(ToricAlpha, VolumeMatchesPolygonArea) {
  // Shoelace formula on the vertex polygon, times 2!.
  for (const auto& nf : named_fans()) {
    if (nf.fan.dim != 2) continue;
    const auto dil = polar_and_dilate(nf.fan);
    auto v = dil.polytope.vertices;
    Rational cx = 0, cy = 0;
    for (const auto& u : v) {
      cx += u[0];
      cy += u[1];
    }
    cx /= static_cast<int>(v.size());
    cy /= static_cast<int>(v.size());
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
      return std::atan2(static_cast<double>(a[1] - cy), static_cast<double>(a[0] - cx)) <
             std::atan2(static_cast<double>(b[1] - cy), static_cast<double>(b[0] - cx));
    });
    Rational twice_area = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % v.size()];
      twice_area += a[0] * b[1] - a[1] * b[0];
    }
    EXPECT_EQ(anticanonical_volume(nf.fan), abs(twice_area)) << nf.name;
  }
}

TEST(FanValidation, Errors) {
  auto expect_error = [](const FanData& f, const std::string& msg) {
    try {
      validate_fan(f);
      ADD_FAILURE() << "expected: " << msg;
    } catch (const ValidationError& e) {
      EXPECT_NE(std::string(e.what()).find(msg), std::string::npos) << e.what();
    }
  };
  expect_error(FanData{2, {{2, 2}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}}, "ray 0 not primitive");
  expect_error(FanData{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1, 2}}}, "cone 0 has 3 rays, expected 2");
  expect_error(FanData{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 5}, {1, 2}, {2, 0}}}, "out of range");
  expect_error(FanData{2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 2}, {0, 1}}}, "non-simplicial or degenerate cone 0");
  expect_error(FanData{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}}}, "not complete");
  expect_error(FanData{2, {{0, 0}, {0, 1}}, {{0, 1}}}, "ray 0 is zero");
}

TEST(FanValidation, NonFanoRejected) {
  // Hirzebruch surface F2: the ray (-1, 2) makes the polytope degenerate.
  const FanData f2 = planar_fan({{1, 0}, {0, 1}, {-1, 2}, {0, -1}});
  EXPECT_NO_THROW(validate_fan(f2));
  try {
    polar_and_dilate(f2);
    FAIL() << "expected non-Fano";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("fan is not Fano"), std::string::npos);
  }
}

TEST(ToricAlpha, LatticeCapRaises) {
  EXPECT_THROW(toric_alpha(named_fan("p3"), ToricLimits{10}), TooLargeError);
}
