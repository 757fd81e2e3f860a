#include <gtest/gtest.h>

#include "frobw/fan_corpus.hpp"
#include "frobw/oracle.hpp"
#include "frobw/parse.hpp"
#include "frobw/splitting.hpp"

using namespace frobw;

namespace {

GradedHypersurface ring(const std::string& text, std::uint32_t p) {
  auto src = parse_polynomial(text, p);
  return GradedHypersurface(src.poly, src.vars);
}

} // namespace

TEST(NaiveB, Examples) {
  const auto q2 = ring("x0^2+x1^2+x2^2+x3^2", 3);
  const auto cubic = ring("x0^3+x1^3+x2^3+x3^3", 5);
  EXPECT_EQ(oracle::naive_b_dimension(q2, 1, 1), 4u);
  EXPECT_EQ(oracle::naive_b_dimension(cubic, 1, 0), 1u);
  const auto b2 = oracle::naive_b_dimension(cubic, 1, 2);
  EXPECT_LE(b2, 9u);
  EXPECT_EQ(b2, 6u);
}

TEST(NaiveB, CapsAreEnforced) {
  EXPECT_THROW(oracle::naive_b_dimension(ring("x0^3+x1^3+x2^3+x3^3", 11), 1, 0), TooLargeError);
  EXPECT_THROW(oracle::naive_b_dimension(ring("x0^3+x1^3+x2^3+x3^3", 5), 2, 0), TooLargeError);
  EXPECT_THROW(oracle::naive_b_dimension(ring("x0^2+x1^2+x2^2+x3^2", 5), 2, 0), TooLargeError);
}

struct Shared {
  std::string text;
  std::uint32_t p;
  unsigned e;
};

class OracleEquivalence : public ::testing::TestWithParam<Shared> {};

TEST_P(OracleEquivalence, AllDegreesUpToPivot) {
  const auto& c = GetParam();
  const auto r = ring(c.text, c.p);
  const std::uint64_t q = c.e == 1 ? c.p : c.p * c.p;
  const auto top = static_cast<std::uint64_t>(duality_pivot(r, q));
  for (std::uint64_t m = 0; m <= top + 1; ++m)
    EXPECT_EQ(b_dimension(r, c.e, m), oracle::naive_b_dimension(r, c.e, m)) << "m=" << m;
}

INSTANTIATE_TEST_SUITE_P(Rings, OracleEquivalence,
                         ::testing::Values(Shared{"x0^2+x1^2+x2^2+x3^2", 3, 1}, Shared{"x0^3+x1^3+x2^3+x3^3", 5, 1},
                                           Shared{"x0^3+x1^3+x2^3+x3^3", 7, 1}, Shared{"x0^2+x1^2+x2^2+x3^2", 3, 2},
                                           Shared{"x0^2+x1^2+x2^2+x3^2+x4^2", 3, 1},
                                           Shared{"x0^2+x1^2+x2^2+x3^2", 5, 1}, Shared{"x^3+y^3+z^3", 7, 1},
                                           Shared{"x^3+y^3+z^3", 5, 1}, Shared{"x*y+z^2", 7, 1},
                                           Shared{"x^2*y + y^2*z + z^2*x", 3, 2}));

TEST(NaiveToric, Examples) {
  EXPECT_EQ(oracle::naive_toric_alpha(named_fan("p2")), Rational(1, 3));
  EXPECT_EQ(oracle::naive_toric_alpha(named_fan("p1xp1")), Rational(1, 2));
  EXPECT_EQ(oracle::naive_toric_alpha(named_fan("p1")), Rational(1, 2));
}

TEST(NaiveToric, AgreesOnCorpus) {
  auto fans = random_fano_fans(12, 2024);
  for (const auto& nf : named_fans()) fans.push_back(nf.fan);
  for (const auto& f : fans) {
    const auto rep = toric_alpha(f);
    EXPECT_EQ(rep.alpha, oracle::naive_toric_alpha(f));
    EXPECT_EQ(rep.volume, oracle::naive_anticanonical_volume(f));
  }
}

TEST(NaiveToric, DimensionCap) {
  FanData p4;
  p4.dim = 4;
  p4.rays = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, -1, -1}};
  for (std::size_t skip = 0; skip < 5; ++skip) {
    std::vector<std::size_t> cone;
    for (std::size_t i = 0; i < 5; ++i)
      if (i != skip) cone.push_back(i);
    p4.cones.push_back(cone);
  }
  EXPECT_THROW(oracle::naive_toric_alpha(p4), TooLargeError);
  EXPECT_EQ(toric_alpha(p4).alpha, Rational(1, 5));
  EXPECT_EQ(toric_alpha(p4).volume, 625);
}
