#include <gtest/gtest.h>

#include "frobw/parse.hpp"
#include "frobw/splitting.hpp"

using namespace frobw;

namespace {

const std::vector<std::string> xs4 = {"x0", "x1", "x2", "x3"};

GradedHypersurface ring(const std::string& text, std::uint32_t p) {
  auto src = parse_polynomial(text, p);
  return GradedHypersurface(src.poly, src.vars);
}

GradedHypersurface cubic(std::uint32_t p) { return ring("x0^3+x1^3+x2^3+x3^3", p); }
GradedHypersurface q2(std::uint32_t p) { return ring("x0^2+x1^2+x2^2+x3^2", p); }
GradedHypersurface q3(std::uint32_t p) { return ring("x0^2+x1^2+x2^2+x3^2+x4^2", p); }

PolynomialFp element(const std::string& text, std::uint32_t p) { return parse_polynomial(text, p, xs4).poly; }

std::vector<std::uint64_t> bs(const SplittingProfile& pr) {
  std::vector<std::uint64_t> out;
  for (const auto& s : pr.slices) out.push_back(s.b);
  return out;
}

} // namespace

TEST(Hypersurface, DimensionFormulaMatchesCounts) {
  const auto r = cubic(5);
  EXPECT_EQ(r.degree(), 3u);
  EXPECT_EQ(r.fano_coindex(), 1);
  for (std::uint64_t m = 0; m < 12; ++m) {
    // Standard monomials: those not divisible by the leading monomial.
    std::uint64_t standard = 0;
    for (const auto& u : monomials_of_degree(4, m))
      if (!r.leading_monomial().divides(u)) ++standard;
    EXPECT_EQ(r.dim(m), standard) << m;
  }
  EXPECT_EQ(r.dim(2), 10u);
}

TEST(Hypersurface, RejectsBadEquations) {
  EXPECT_THROW(ring("x^2 + y", 5), ValidationError);
  EXPECT_THROW(ring("3", 5), ValidationError);
  EXPECT_FALSE(ring("x^2*y + x*y^2", 5).warnings().empty());
  EXPECT_TRUE(ring("x + y", 5).warnings().empty());
}

TEST(BDimension, Examples) {
  EXPECT_EQ(b_dimension(cubic(5), 1, 0), 1u);
  EXPECT_LE(b_dimension(cubic(5), 1, 2), 9u);
  EXPECT_EQ(b_dimension(cubic(5), 1, 2), 6u);
  EXPECT_EQ(b_dimension(q2(3), 1, 2), 9u);
  EXPECT_EQ(q2(3).dim(2), 9u);
}

TEST(BDimension, VanishesAbovePivot) {
  for (std::uint32_t p : {3u, 5u}) {
    const auto r = q2(p);
    const auto top = static_cast<std::uint64_t>(duality_pivot(r, p));
    EXPECT_EQ(b_dimension(r, 1, top + 1), 0u);
    EXPECT_EQ(b_dimension(r, 1, top + 3), 0u);
  }
}

TEST(Membership, PaperElements) {
  EXPECT_TRUE(membership_check(cubic(5), 1, element("x0^2", 5)).member);
  EXPECT_TRUE(membership_check(cubic(7), 1, element("x0*x1*x2", 7)).member);
  EXPECT_TRUE(membership_check(cubic(7), 1, element("x1*x2*x3", 7)).member);
  EXPECT_TRUE(membership_check(cubic(11), 1, element("x0^2*x2^3 - x0^2*x3^3", 11)).member);
  const auto f31 = element("x0*x1*x3*x2^12 - 10*x0*x1*x2^9*x3^4 + 15*x0*x1*x2^6*x3^7 - 4*x0*x1*x2^3*x3^10 + 12*x0*x1*x3^13", 31);
  const auto res = membership_check(cubic(31), 1, f31);
  EXPECT_TRUE(res.member);
  EXPECT_FALSE(res.multiple_of_equation);
}

TEST(Membership, NonMembersAndEdgeCases) {
  EXPECT_FALSE(membership_check(cubic(5), 1, element("x0", 5)).member);
  EXPECT_FALSE(membership_check(cubic(7), 1, element("x0^2", 7)).member);
  const auto g = membership_check(cubic(5), 1, element("x0^3+x1^3+x2^3+x3^3", 5));
  EXPECT_TRUE(g.member);
  EXPECT_TRUE(g.multiple_of_equation);
  EXPECT_THROW(membership_check(cubic(5), 1, element("x0^2 + x1", 5)), ValidationError);
}

TEST(Membership, AgreesWithRank) {
  // x0^2 in I_1(2) at p = 5 means b_1(2) < dim R_2; x0 not in I_1 and I_1(1) = 0.
  const auto r = cubic(5);
  EXPECT_LT(b_dimension(r, 1, 2), r.dim(2));
  EXPECT_EQ(b_dimension(r, 1, 1), r.dim(1));
}

TEST(Fedder, Examples) {
  EXPECT_TRUE(fedder_is_fsplit(cubic(5), 1));
  EXPECT_FALSE(fedder_is_fsplit(ring("x^3+y^3+z^3", 5), 1));
  EXPECT_TRUE(fedder_is_fsplit(ring("x^3+y^3+z^3", 7), 1));
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const auto r = ring("x^3+y^3+z^3", p);
    EXPECT_EQ(fedder_is_fsplit(r, 1), b_dimension(r, 1, 0) == 1) << p;
  }
}

TEST(Threshold, Quadrics) {
  for (std::uint32_t p : {3u, 5u})
    for (unsigned e : {1u, 2u}) {
      const std::uint64_t q = e == 1 ? p : p * p;
      EXPECT_EQ(m_threshold(q2(p), e), q - 1);
      if (!(p == 5 && e == 2)) {
        EXPECT_EQ(m_threshold(q3(p), e), q - 1);
      }
    }
}

TEST(Threshold, Cubics) {
  EXPECT_EQ(m_threshold(cubic(5), 1), 1u);
  EXPECT_EQ(m_threshold(cubic(7), 1), 2u);
  EXPECT_EQ(m_threshold(cubic(5), 2), 9u);
  EXPECT_THROW(m_threshold(ring("x^3+y^3+z^3", 5), 1), ValidationError);
}

TEST(FreeRank, Values) {
  EXPECT_EQ(free_rank(q2(3), 1), 19u);
  EXPECT_EQ(free_rank(cubic(5), 1), 16u);
  EXPECT_EQ(free_rank(cubic(7), 1), 45u);
  EXPECT_EQ(free_rank(q3(3), 1), 65u);
  EXPECT_THROW(free_rank(ring("x0^4+x1^4+x2^4+x3^4", 5), 1), ValidationError);
  EXPECT_THROW(free_rank(ring("x^5+y^5+z^5+w^5+u^5", 5), 1), ValidationError);
}

TEST(Profile, FrozenProfiles) {
  const auto a = profile(q2(3), 1);
  EXPECT_EQ(bs(a), (std::vector<std::uint64_t>{1, 4, 9, 4, 1}));
  EXPECT_EQ(a.m_e, 2u);
  EXPECT_EQ(a.alpha_e, Rational(2, 3));
  EXPECT_EQ(a.alpha_upper, Rational(3, 2));
  EXPECT_EQ(a.a_e, 19u);
  EXPECT_EQ(a.s_raw, Rational(19, 27));
  EXPECT_TRUE(a.duality_ok);

  EXPECT_EQ(bs(profile(cubic(5), 1)), (std::vector<std::uint64_t>{1, 4, 6, 4, 1}));
  EXPECT_EQ(bs(profile(cubic(7), 1)), (std::vector<std::uint64_t>{1, 4, 10, 15, 10, 4, 1}));
  EXPECT_EQ(bs(profile(q3(3), 1)), (std::vector<std::uint64_t>{1, 5, 14, 25, 14, 5, 1}));
  EXPECT_EQ(bs(profile(q3(5), 1)), (std::vector<std::uint64_t>{1, 5, 14, 30, 55, 86, 115, 86, 55, 30, 14, 5, 1}));
  const auto c2 = profile(cubic(5), 2);
  EXPECT_EQ(bs(c2), (std::vector<std::uint64_t>{1,   4,   10,  19,  31,  46,  64,  85,  109, 136, 162, 183, 191,
                                                183, 162, 136, 109, 85,  64,  46,  31,  19,  10,  4,   1}));
  EXPECT_EQ(c2.a_e, 1891u);
  EXPECT_EQ(profile(q2(3), 2).a_e, 489u);
  EXPECT_EQ(profile(q2(5), 2).a_e, 10425u);
  EXPECT_EQ(profile(q3(3), 2).a_e, 5185u);
}

TEST(Profile, NotFSplitProfileIsZero) {
  const auto pr = profile(ring("x^3+y^3+z^3", 5), 1);
  EXPECT_FALSE(pr.fsplit);
  EXPECT_FALSE(pr.m_e.has_value());
  EXPECT_EQ(pr.b(0), 0u);
}

TEST(Profile, ThreadCountDoesNotChangeResults) {
  ProfileOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = profile(cubic(5), 2, one), b = profile(cubic(5), 2, many);
  EXPECT_EQ(bs(a), bs(b));
  EXPECT_EQ(a.m_e, b.m_e);
}

TEST(Profile, MonotonicityAcrossLevels) {
  const auto ps = profiles(cubic(5), 1, 2);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_FALSE(ps[0].monotone_ok.has_value());
  ASSERT_TRUE(ps[1].monotone_ok.has_value());
  EXPECT_TRUE(*ps[1].monotone_ok);
  EXPECT_EQ(*ps[0].alpha_e + Rational(1, 5), Rational(2, 5));
  EXPECT_GE(Rational(2, 5), *ps[1].alpha_e + Rational(1, 25));
  EXPECT_THROW(profiles(cubic(5), 2, 1), UsageError);
}

TEST(Profile, SplitQuadricFormAgrees) {
  const auto a = profile(q3(3), 2), b = profile(ring("x0*x1+x2*x3+x4^2", 3), 2);
  EXPECT_EQ(bs(a), bs(b));
}

TEST(Profile, SizeCapRaises) {
  ProfileOptions tight;
  tight.limits.max_power_terms = 50;
  EXPECT_THROW(profile(cubic(7), 1, tight), TooLargeError);
}

TEST(FanoReport, CubicAtFive) {
  const auto rep = fano_report(cubic(5), 2);
  ASSERT_EQ(rep.levels.size(), 2u);
  EXPECT_EQ(rep.levels[1].alpha_upper, Rational(10, 24));
  EXPECT_TRUE(rep.levels[1].upper_below_half);
  EXPECT_TRUE(rep.certified_below_half);
  EXPECT_EQ(rep.volume, 3);
  EXPECT_EQ(rep.s_bound, Rational(3, 24));
  EXPECT_EQ(rep.levels[0].s_estimate, Rational(16, 125));
}

TEST(FanoReport, QuadricSurface) {
  const auto rep = fano_report(q2(3), 2);
  EXPECT_EQ(rep.coindex, 2);
  EXPECT_EQ(rep.volume, 8);
  EXPECT_EQ(rep.s_bound, Rational(1, 3));
  EXPECT_EQ(rep.levels[0].alpha_estimate, Rational(1, 3));
  EXPECT_EQ(rep.levels[1].alpha_estimate, Rational(4, 9));
  EXPECT_TRUE(rep.estimates_within_half);
  EXPECT_FALSE(rep.certified_below_half);
}

TEST(FanoReport, RejectsNonFano) {
  try {
    fano_report(ring("x0^4+x1^4+x2^4+x3^4", 5), 1);
    FAIL() << "expected an error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(std::string(e.what()), "non-Fano: v−δ = 0");
  }
}
