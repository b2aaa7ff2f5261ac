#include <gtest/gtest.h>

#include <random>

#include "perdyn/error.hpp"
#include "perdyn/permaction.hpp"

using namespace perdyn;

namespace {

Permutation cyc(std::string_view text, std::size_t n) { return Permutation::parse_cycles(text, n); }

}  // namespace

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation({0, 0, 1}), InvalidInput);
  EXPECT_THROW(Permutation({0, 3}), InvalidInput);
  EXPECT_THROW(Permutation(std::vector<Permutation::Point>(20), 10), CapExceeded);
}

TEST(Permutation, CycleNotationRoundTrip) {
  const Permutation p = cyc("(0 1 2)(3 4)", 5);
  EXPECT_EQ(p(0), 1u);
  EXPECT_EQ(p(2), 0u);
  EXPECT_EQ(p(4), 3u);
  EXPECT_EQ(p.to_cycles(), "(0 1 2)(3 4)");
  EXPECT_EQ(Permutation::identity(3).to_cycles(), "()");
  EXPECT_EQ(cyc("()", 3), Permutation::identity(3));
  EXPECT_EQ(cyc("", 2), Permutation::identity(2));
  EXPECT_THROW(cyc("(0 1)(1 2)", 3), InvalidInput);
  EXPECT_THROW(cyc("(0 5)", 3), InvalidInput);
  EXPECT_THROW(cyc("(0 1", 3), InvalidInput);
}

TEST(Permutation, CompositionAppliesRightOperandFirst) {
  const Permutation a = cyc("(0 1)", 3);
  const Permutation b = cyc("(1 2)", 3);
  const Permutation ab = a * b;
  // b sends 1 to 2, then a fixes 2
  EXPECT_EQ(ab(1), 2u);
  EXPECT_EQ(ab(0), 1u);
  EXPECT_EQ(ab(2), 0u);
  EXPECT_TRUE((a * a.inverse()).is_identity());
}

TEST(Permutation, TraceExamples) {
  EXPECT_EQ(trace(Permutation::identity(4)), 4u);
  EXPECT_EQ(trace(cyc("(0 1 2)", 3)), 0u);
  EXPECT_EQ(trace(cyc("(0 1)", 3)), 1u);
}

TEST(Permutation, TraceIsConjugationInvariant) {
  const PermSet s5 = PermSet::symmetric(5);
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto& g = s5.elements()[rng() % s5.size()];
    const auto& p = s5.elements()[rng() % s5.size()];
    EXPECT_EQ(trace(g * p * g.inverse()), trace(p));
  }
}

TEST(PermSet, FppExamples) {
  EXPECT_EQ(fpp(PermSet::symmetric(3)), Rational(2, 3));
  EXPECT_EQ(fpp(PermSet::cyclic(3)), Rational(1, 3));
  EXPECT_EQ(fpp(PermSet::plain({Permutation::identity(4)})), Rational(1));
  EXPECT_THROW(PermSet::plain({}), InvalidInput);
}

TEST(PermSet, TransitivityExamples) {
  EXPECT_TRUE(is_transitive(PermSet::cyclic(3)));
  EXPECT_TRUE(is_transitive(PermSet::symmetric(3)));
  EXPECT_FALSE(is_transitive(PermSet::group({Permutation::identity(3), cyc("(0 1)", 3)})));
  EXPECT_THROW(is_transitive(PermSet::plain({cyc("(0 1)", 3)})), InvalidInput);
}

TEST(PermSet, MeanTraceExamples) {
  EXPECT_EQ(mean_trace(PermSet::cyclic(3)), Rational(1));
  EXPECT_EQ(mean_trace(PermSet::symmetric(3)), Rational(1));
  EXPECT_EQ(mean_trace(PermSet::plain({Permutation::identity(6)})), Rational(6));
}

TEST(PermSet, GroupValidatesClosure) {
  EXPECT_THROW(PermSet::group({Permutation::identity(3), cyc("(0 1 2)", 3)}), InvalidInput);
  EXPECT_NO_THROW(PermSet::group({Permutation::identity(3), cyc("(0 1 2)", 3), cyc("(0 2 1)", 3)}));
}

TEST(PermSet, GenerateMatchesKnownOrders) {
  const std::vector<Permutation> d4 = {cyc("(0 1 2 3)", 4), cyc("(0 2)", 4)};
  EXPECT_EQ(PermSet::generate(d4, 4).size(), 8u);
  const std::vector<Permutation> s5 = {cyc("(0 1 2 3 4)", 5), cyc("(0 1)", 5)};
  EXPECT_EQ(PermSet::generate(s5, 5).size(), 120u);
  EXPECT_THROW(PermSet::generate(s5, 5, 50), CapExceeded);
  EXPECT_EQ(PermSet::generate(std::vector<Permutation>{}, 3).size(), 1u);
}

TEST(PermSet, ElementsAreSortedAndUnique) {
  const PermSet s = PermSet::plain({cyc("(0 1)", 2), Permutation::identity(2), cyc("(0 1)", 2)});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_LT(s.elements()[0], s.elements()[1]);
}

TEST(PermSet, FppIsAtLeastInverseOrder) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const PermSet c = PermSet::cyclic(n);
    EXPECT_GE(fpp(c), Rational(1, static_cast<long long>(c.size())));
  }
}

TEST(PermSet, CosetFppIndependentOfRepresentative) {
  const std::vector<Permutation> gens = {cyc("(0 1 2 3)", 4)};
  const PermSet c4 = PermSet::generate(gens, 4);
  const PermSet s4 = PermSet::symmetric(4);
  for (const auto& sigma : s4.elements()) {
    const PermSet coset = PermSet::coset(c4, sigma);
    EXPECT_EQ(coset.kind(), PermSetKind::coset);
    for (const auto& other : coset.elements()) {
      const PermSet again = PermSet::coset(c4, other);
      EXPECT_EQ(again, coset);
      EXPECT_EQ(fpp(again), fpp(coset));
    }
  }
}

TEST(PermSet, ReferenceGroupAndRepresentative) {
  const PermSet c3 = PermSet::cyclic(3);
  EXPECT_TRUE(c3.representative().is_identity());
  EXPECT_EQ(c3.reference_group(), c3);
  const Permutation t = cyc("(0 1)", 3);
  const PermSet coset = PermSet::coset(c3, t);
  EXPECT_EQ(coset.reference_group(), c3);
  EXPECT_EQ(coset.representative(), t);
  EXPECT_TRUE(coset.contains(t));
  EXPECT_FALSE(coset.contains(Permutation::identity(3)));
}
