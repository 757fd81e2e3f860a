#include <gtest/gtest.h>

#include <random>
#include <set>

#include "frobw/matrix.hpp"
#include "frobw/monomial.hpp"
#include "frobw/polynomial.hpp"
#include "frobw/prime_field.hpp"

using namespace frobw;

namespace {

PolynomialFp poly(PrimeField F, std::size_t v, std::vector<std::pair<std::vector<Exponent>, Coeff>> spec) {
  std::vector<Term> terms;
  for (auto& [e, c] : spec) terms.push_back({Monomial(e), c});
  return PolynomialFp(F, v, std::move(terms));
}

PolynomialFp random_poly(std::mt19937_64& rng, PrimeField F, std::size_t v, std::size_t terms, Exponent max_exp) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms; ++i) {
    std::vector<Exponent> e(v);
    for (auto& x : e) x = static_cast<Exponent>(rng() % (max_exp + 1));
    out.push_back({Monomial(e), static_cast<Coeff>(1 + rng() % (F.modulus() - 1))});
  }
  return PolynomialFp(F, v, std::move(out));
}

MatrixFp random_matrix(std::mt19937_64& rng, PrimeField F, std::size_t r, std::size_t c, double density) {
  std::vector<MatrixFp::Entry> entries;
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(rng) < density)
        entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           static_cast<Coeff>(rng() % F.modulus())});
  return MatrixFp(F, r, c, std::move(entries));
}

} // namespace

TEST(PrimeField, ArithmeticClosesAndInverts) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 31u, 65521u, 2147483647u}) {
    PrimeField F(p);
    for (Coeff a = 1; a < std::min<std::uint64_t>(p, 200); ++a) {
      EXPECT_EQ(F.mul(a, F.inv(a)), 1u) << "p=" << p << " a=" << a;
      EXPECT_LT(F.add(a, static_cast<Coeff>(p - 1)), p);
      EXPECT_EQ(F.add(a, F.neg(a)), 0u);
    }
  }
}

TEST(PrimeField, RejectsBadModuli) {
  EXPECT_THROW(PrimeField(1), Error);
  EXPECT_THROW(PrimeField(9), Error);
  EXPECT_THROW(PrimeField(std::uint64_t{1} << 31), Error);
  EXPECT_THROW(PrimeField(7).inv(0), Error);
}

TEST(PrimeField, ReducesIntegers) {
  PrimeField F(7);
  EXPECT_EQ(F.from_int(-1), 6u);
  EXPECT_EQ(F.from_int(-15), 6u);
  EXPECT_EQ(F.from_decimal("1000000000000000000000"), F.pow(10, 21));
  EXPECT_EQ(F.pow(3, 6), 1u);
}

TEST(Monomials, Counts) {
  EXPECT_EQ(monomial_count(2, 0), 1u);
  EXPECT_EQ(monomial_count(4, 2), 10u);
  EXPECT_EQ(monomial_count(4, 24), 2925u);
  EXPECT_EQ(binomial(27, 3), 2925u);
  const auto list = monomials_of_degree(2, 0);
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0], Monomial({0, 0}));
  EXPECT_EQ(monomials_of_degree(4, 24).size(), 2925u);
  EXPECT_THROW(binomial(200, 100), TooLargeError);
}

TEST(Monomials, RankUnrankIsIdentityAndOrdered) {
  for (std::size_t v : {1u, 2u, 4u, 5u})
    for (std::uint64_t m : {0u, 1u, 3u, 7u}) {
      DegreeIndexer idx(v, m);
      Monomial prev;
      for (std::uint64_t i = 0; i < idx.count(); ++i) {
        const Monomial u = idx.unrank(i);
        EXPECT_EQ(u.degree(), m);
        EXPECT_EQ(idx.rank(u), i);
        if (i > 0) {
          EXPECT_LT(prev, u);
        }
        prev = u;
      }
    }
}

TEST(Monomials, BoundedCountMatchesEnumeration) {
  for (std::size_t v : {2u, 3u, 4u})
    for (std::uint64_t cap : {1u, 2u, 4u})
      for (std::uint64_t m = 0; m <= cap * v + 1; ++m) {
        std::uint64_t n = 0;
        for_each_bounded_monomial(v, m, cap, [&](std::span<const Exponent> u) {
          ++n;
          for (auto x : u) EXPECT_LE(x, cap);
        });
        std::vector<std::int64_t> caps(v, static_cast<std::int64_t>(cap));
        EXPECT_EQ(n, bounded_monomial_count(caps, static_cast<std::int64_t>(m)));
      }
}

TEST(Monomials, DegreeTracksExponents) {
  Monomial a({1, 2, 3});
  EXPECT_EQ(a.degree(), 6u);
  a.set(1, 5);
  EXPECT_EQ(a.degree(), 9u);
  EXPECT_EQ((a * Monomial({1, 1, 1})).degree(), 12u);
  EXPECT_EQ(a.scaled(3).degree(), 27u);
}

TEST(Polynomial, DigitPowerExamples) {
  PrimeField F3(3), F2(2), F5(5);
  const auto xy3 = poly(F3, 2, {{{1, 0}, 1}, {{0, 1}, 1}});
  EXPECT_EQ(digit_power(xy3, 1), poly(F3, 2, {{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}}));
  const auto xy2 = poly(F2, 2, {{{1, 0}, 1}, {{0, 1}, 1}});
  EXPECT_EQ(digit_power(xy2, 2), poly(F2, 2, {{{3, 0}, 1}, {{2, 1}, 1}, {{1, 2}, 1}, {{0, 3}, 1}}));
  const auto cubic = poly(F5, 4, {{{3, 0, 0, 0}, 1}, {{0, 3, 0, 0}, 1}, {{0, 0, 3, 0}, 1}, {{0, 0, 0, 3}, 1}});
  const auto g4 = digit_power(cubic, 1);
  EXPECT_EQ(g4.size(), 35u);
  EXPECT_EQ(g4.homogeneous_degree(), 12u);
}

TEST(Polynomial, DigitPowerMatchesBinaryPowering) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {3u, 5u, 7u})
    for (unsigned e : {1u, 2u})
      for (int trial = 0; trial < 4; ++trial) {
        PrimeField F(p);
        const std::size_t terms = 1 + rng() % (e == 2 && p == 7 ? 3 : 6);
        const auto g = random_poly(rng, F, 3, terms, 2);
        if (g.is_zero()) continue;
        const std::uint64_t q = e == 1 ? p : p * p;
        EXPECT_EQ(digit_power(g, e), g.pow(q - 1)) << "p=" << p << " e=" << e;
      }
}

TEST(Polynomial, FrobeniusIsAdditive) {
  std::mt19937_64 rng(3);
  PrimeField F(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_poly(rng, F, 3, 4, 3), b = random_poly(rng, F, 3, 4, 3);
    EXPECT_EQ((a + b).pow(5), a.pow(5) + b.pow(5));
    EXPECT_EQ(a.pow(5), a.frobenius_twist(5));
  }
}

TEST(Polynomial, HomogeneousProductsAddDegrees) {
  PrimeField F(7);
  const auto a = poly(F, 3, {{{2, 1, 0}, 3}, {{0, 0, 3}, 1}});
  const auto b = poly(F, 3, {{{1, 1, 0}, 2}, {{0, 1, 1}, 6}});
  EXPECT_EQ((a * b).homogeneous_degree(), 5u);
  EXPECT_EQ(poly(F, 2, {{{2, 0}, 7}}).size(), 0u);
  EXPECT_EQ(poly(F, 2, {{{1, 0}, 1}, {{0, 0}, 1}}).homogeneous_degree(), std::nullopt);
}

TEST(Polynomial, TermCapRaises) {
  PrimeField F(7);
  const auto g = poly(F, 4, {{{1, 0, 0, 0}, 1}, {{0, 1, 0, 0}, 1}, {{0, 0, 1, 0}, 1}, {{0, 0, 0, 1}, 1}});
  EXPECT_THROW(g.pow(20, 100), TooLargeError);
}

TEST(Polynomial, NormalFormDetectsMultiples) {
  std::mt19937_64 rng(9);
  PrimeField F(5);
  const auto g = poly(F, 4, {{{3, 0, 0, 0}, 1}, {{0, 3, 0, 0}, 1}, {{0, 0, 3, 0}, 1}, {{0, 0, 0, 3}, 1}});
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = random_poly(rng, F, 4, 5, 2);
    EXPECT_TRUE(normal_form(g * h, g).is_zero());
  }
  EXPECT_FALSE(normal_form(poly(F, 4, {{{2, 0, 0, 0}, 1}}), g).is_zero());
}

TEST(Matrix, RankExamples) {
  PrimeField F7(7), F5(5);
  std::vector<std::vector<std::int64_t>> id(5, std::vector<std::int64_t>(5, 0));
  for (int i = 0; i < 5; ++i) id[i][i] = 1;
  EXPECT_EQ(rank_mod_p(MatrixFp::from_dense(F7, id)), 5u);
  EXPECT_EQ(rank_mod_p(MatrixFp::from_dense(F7, std::vector<std::vector<std::int64_t>>(3, std::vector<std::int64_t>(4, 0)))), 0u);
  EXPECT_EQ(rank_mod_p(MatrixFp::from_dense(F5, {{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank_mod_p(MatrixFp::from_dense(F5, {{1, 2}, {2, 3}})), 2u);
}

TEST(Matrix, StoredEntriesAreCanonical) {
  PrimeField F(5);
  const MatrixFp m(F, 2, 2, {{0, 0, 3}, {0, 0, 2}, {1, 1, 12}});
  EXPECT_EQ(m.nonzeros(), 1u);
  const auto [idx, val] = m.column(1);
  ASSERT_EQ(val.size(), 1u);
  EXPECT_EQ(val[0], 2u);
}

TEST(Matrix, RankEqualsTransposeRank) {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u, 7u, 31u})
    for (int trial = 0; trial < 6; ++trial) {
      PrimeField F(p);
      const std::size_t r = 1 + rng() % 200, c = 1 + rng() % 200;
      const auto m = random_matrix(rng, F, r, c, trial % 2 ? 0.02 : 0.3);
      EXPECT_EQ(rank_mod_p(m), rank_mod_p(m.transpose())) << r << "x" << c << " p=" << p;
    }
}

TEST(Matrix, RankOfLowRankProducts) {
  std::mt19937_64 rng(23);
  PrimeField F(101);
  for (std::size_t k : {1u, 5u, 20u}) {
    // A (60 x k) times B (k x 80) over F_101; generic rank k.
    std::vector<std::vector<std::int64_t>> a(60, std::vector<std::int64_t>(k)), b(k, std::vector<std::int64_t>(80));
    for (auto& row : a)
      for (auto& x : row) x = static_cast<std::int64_t>(rng() % 101);
    for (auto& row : b)
      for (auto& x : row) x = static_cast<std::int64_t>(rng() % 101);
    std::vector<std::vector<std::int64_t>> prod(60, std::vector<std::int64_t>(80, 0));
    for (std::size_t i = 0; i < 60; ++i)
      for (std::size_t j = 0; j < 80; ++j)
        for (std::size_t t = 0; t < k; ++t) prod[i][j] = (prod[i][j] + a[i][t] * b[t][j]) % 101;
    EXPECT_EQ(rank_mod_p(MatrixFp::from_dense(F, prod)), k);
  }
}
