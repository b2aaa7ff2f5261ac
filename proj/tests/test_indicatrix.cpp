#include <gtest/gtest.h>

#include "perdyn/error.hpp"
#include "perdyn/indicatrix.hpp"
#include "perdyn/permaction.hpp"

using namespace perdyn;

namespace {

IndicatrixPoly phi_c2() { return indicatrix_of(PermSet::cyclic(2)); }
IndicatrixPoly phi_c3() { return indicatrix_of(PermSet::cyclic(3)); }
IndicatrixPoly phi_s3() { return indicatrix_of(PermSet::symmetric(3)); }

// Exact n-fold iterate at 0, for small n only.
Rational exact_iterate(const IndicatrixPoly& f, std::size_t n) {
  Rational x = 0;
  for (std::size_t i = 0; i < n; ++i) x = value_at(f, x);
  return x;
}

}  // namespace

TEST(Indicatrix, OfSmallGroups) {
  EXPECT_EQ(phi_c2(), IndicatrixPoly({Rational(1, 2), 0, Rational(1, 2)}));
  EXPECT_EQ(phi_c3(), IndicatrixPoly({Rational(2, 3), 0, 0, Rational(1, 3)}));
  EXPECT_EQ(phi_s3(), IndicatrixPoly({Rational(1, 3), Rational(1, 2), 0, Rational(1, 6)}));
}

TEST(Indicatrix, RejectsInvalidCoefficients) {
  EXPECT_THROW(IndicatrixPoly({Rational(1, 2)}), InvalidInput);
  EXPECT_THROW(IndicatrixPoly({Rational(3, 2), Rational(-1, 2)}), InvalidInput);
  EXPECT_THROW(IndicatrixPoly(std::vector<Rational>{}), InvalidInput);
  EXPECT_EQ(IndicatrixPoly({0, 1, 0, 0}).degree(), 1u);
}

TEST(Indicatrix, ValueExamples) {
  EXPECT_EQ(value_at(phi_c2(), 1), 1);
  EXPECT_EQ(value_at(phi_c3(), 0), Rational(2, 3));
  EXPECT_EQ(value_at(phi_s3(), Rational(1, 3)), Rational(41, 81));
}

TEST(Indicatrix, DerivativeAtOne) {
  EXPECT_EQ(derivative_at_one(phi_c3()), 1);
  EXPECT_EQ(derivative_at_one(phi_s3()), 1);
  EXPECT_EQ(derivative_at_one(indicatrix_of(PermSet::plain({Permutation::identity(5)}))), 5);
  EXPECT_EQ(derivative_value_at(phi_s3(), 1, 2), 1);  // E[tr(tr-1)] = 6/6
  EXPECT_EQ(derivative_value_at(phi_s3(), 0, 5), 0);
}

TEST(Indicatrix, ConstantTermIsDerangementShare) {
  for (const PermSet& s : {PermSet::cyclic(4), PermSet::symmetric(4), PermSet::cyclic(5)}) {
    EXPECT_EQ(1 - fpp(s), value_at(indicatrix_of(s), 0));
  }
}

TEST(Indicatrix, IncreasingAndConvexOnSampleGrid) {
  for (const auto& f : {phi_c2(), phi_c3(), phi_s3(), indicatrix_of(PermSet::symmetric(4))}) {
    for (int k = 1; k <= 20; ++k) {
      const Rational x(k, 20);
      EXPECT_GT(derivative_value_at(f, x, 1), 0);
      EXPECT_GE(derivative_value_at(f, x, 2), 0);
    }
    for (int k = 0; k < 20; ++k) {
      const Rational x(k, 20);
      EXPECT_LT(x, value_at(f, x));
      EXPECT_LT(value_at(f, x), 1);
    }
  }
}

TEST(Indicatrix, TextAndJsonRoundTrip) {
  const auto f = phi_c3();
  EXPECT_EQ(f.to_text(), "2/3 + 1/3*x^3");
  EXPECT_EQ(IndicatrixPoly::parse_text(f.to_text()), f);
  EXPECT_EQ(IndicatrixPoly::parse_text("1/2 + 1/2*x^2"), phi_c2());
  EXPECT_EQ(f.to_json(), R"(["2/3","0","0","1/3"])");
  EXPECT_EQ(IndicatrixPoly::parse_json(f.to_json()), f);
  EXPECT_EQ(IndicatrixPoly::parse_text(phi_s3().to_text()), phi_s3());
  EXPECT_THROW(IndicatrixPoly::parse_json("[1,"), InvalidInput);
  EXPECT_THROW(IndicatrixPoly::parse_text("1/2 + 1/3*x"), InvalidInput);
}

TEST(Indicatrix, ComposeMatchesPointwise) {
  const auto g = compose(phi_c3(), phi_c2());
  EXPECT_EQ(g.degree(), 6u);
  for (int k = 0; k <= 10; ++k) {
    const Rational x(k, 10);
    EXPECT_EQ(value_at(g, x), value_at(phi_c3(), value_at(phi_c2(), x)));
  }
}

TEST(Indicatrix, ComposeCap) {
  const auto f9 = compose(phi_c3(), phi_c3());
  const auto f27 = compose(f9, phi_c3());
  EXPECT_THROW(compose(f27, phi_c3()), CapExceeded);
}

TEST(Iterate, Examples) {
  EXPECT_TRUE(iterate_at_zero(phi_c2(), 2).contains(Rational(5, 8)));
  EXPECT_TRUE(iterate_at_zero(phi_c3(), 2).contains(Rational(62, 81)));
  const IndicatrixPoly fixed({0, 1});
  for (std::size_t n : {1u, 5u, 100u}) {
    const auto r = iterate_at_zero(fixed, n);
    EXPECT_TRUE(r.is_exact());
    EXPECT_EQ(r.lo, 0);
  }
  EXPECT_THROW(iterate_at_zero(phi_c2(), 0), InvalidInput);
  EXPECT_THROW(iterate_at_zero(phi_c2(), 3, 16), InvalidInput);
}

TEST(Iterate, EnclosesExactValues) {
  for (const auto& f : {phi_c2(), phi_c3(), phi_s3()}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const Rational exact = exact_iterate(f, n);
      // A tiny denominator cap forces the interval path.
      const auto r = iterate_at_zero(f, n, 64, IterateOptions{4});
      EXPECT_TRUE(r.contains(exact)) << f.to_text() << " n=" << n;
      EXPECT_LE(r.width(), Rational(1, BigInt(1) << 62));
      EXPECT_EQ(iterate_at_zero(f, n, 64, IterateOptions{1 << 16}).lo, exact);
    }
  }
}

TEST(Iterate, StrictlyIncreasingWhenConstantTermPositive) {
  for (const auto& f : {phi_c2(), phi_c3(), phi_s3()}) {
    IntervalRational prev = iterate_at_zero(f, 1);
    EXPECT_GT(prev.lo, 0);
    for (std::size_t n = 2; n <= 50; ++n) {
      const IntervalRational cur = iterate_at_zero(f, n);
      EXPECT_LT(prev.hi, cur.lo) << "n=" << n;
      EXPECT_LT(cur.hi, 1);
      prev = cur;
    }
  }
}

TEST(EpsilonIndex, Examples) {
  EXPECT_EQ(epsilon_index(phi_s3(), Rational(1, 2)), 2u);
  EXPECT_EQ(epsilon_index(phi_c2(), Rational(1, 2)), 2u);
  EXPECT_EQ(epsilon_index(IndicatrixPoly({0, 0, 1}), Rational(1, 2)), std::nullopt);
  EXPECT_THROW(epsilon_index(phi_c2(), 0), InvalidInput);
  EXPECT_THROW(epsilon_index(phi_c2(), 1), InvalidInput);
}

TEST(EpsilonIndex, IsSmallestIndex) {
  for (const auto& f : {phi_c2(), phi_c3(), phi_s3()}) {
    for (const Rational eps : {Rational(1, 2), Rational(1, 10), Rational(1, 100)}) {
      const auto n = epsilon_index(f, eps);
      ASSERT_TRUE(n.has_value());
      EXPECT_LT(1 - iterate_at_zero(f, *n).lo, eps);
      if (*n > 1) EXPECT_GE(1 - iterate_at_zero(f, *n - 1).hi, eps);
    }
  }
}

TEST(EpsilonIndex, IterationGuard) {
  EpsilonIndexOptions opts;
  opts.max_iterations = 3;
  EXPECT_THROW(epsilon_index(phi_c2(), Rational(1, 100), opts), Error);
}
