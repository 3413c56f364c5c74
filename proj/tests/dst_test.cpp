#include <random>

#include <gtest/gtest.h>

#include "evfuse/dst.hpp"
#include "evfuse/fusion.hpp"
#include "evfuse/verify.hpp"
#include "support.hpp"

using evfuse::ErrorCode;
using evfuse::Mask;
using evfuse::Rational;
using evfuse::StateSet;
using evfuse::dst::BasicProbabilityAssignment;
using fixture::set;
using fixture::thrown;

namespace {

using Focal = std::vector<std::pair<Mask, Rational>>;

TEST(SimpleSupport, CarItems) {
  const auto f = fixture::car();
  const auto m1 = evfuse::dst::simple_support(f, 0);
  EXPECT_EQ(m1.mass(f.item(0).content.bits()), Rational(9, 10));
  EXPECT_EQ(m1.mass(f.universe().full_mask()), Rational(1, 10));
  const auto m3 = evfuse::dst::simple_support(f, 2);
  EXPECT_EQ(m3.mass(f.item(2).content.bits()), Rational(9, 20));
  EXPECT_EQ(m3.mass(f.universe().full_mask()), Rational(11, 20));
  EXPECT_EQ(thrown([&] { evfuse::dst::simple_support(f, 3); }), ErrorCode::IndexOutOfRange);
}

TEST(Bpa, ConstructionValidates) {
  const auto u = fixture::universe(3);
  EXPECT_EQ(thrown([&] { BasicProbabilityAssignment::make(u, Focal{{1, Rational(1, 2)}}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(thrown([&] { BasicProbabilityAssignment::make(u, Focal{{0, Rational(1, 2)}, {1, Rational(1, 2)}}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(thrown([&] { BasicProbabilityAssignment::make(u, Focal{{1, Rational(3, 2)}, {2, Rational(-1, 2)}}); }),
            ErrorCode::InvalidArgument);
  const auto merged = BasicProbabilityAssignment::make(u, Focal{{1, Rational(1, 4)}, {1, Rational(1, 4)},
                                                              {2, Rational(0)}, {7, Rational(1, 2)}});
  EXPECT_EQ(merged.focal(), (Focal{{1, Rational(1, 2)}, {7, Rational(1, 2)}}));
}

TEST(Drc, VacuousIsIdentity) {
  const auto f = fixture::car();
  const auto m = evfuse::dst::simple_support(f, 1);
  EXPECT_EQ(evfuse::dst::drc_combine(m, BasicProbabilityAssignment::vacuous(f.universe())), m);
}

TEST(Drc, TwoConflictingSimpleSupports) {
  const auto u = evfuse::StateUniverse::make({"a", "b", "c"});
  const auto m1 = BasicProbabilityAssignment::make(u, Focal{{0b001, Rational(9, 10)}, {0b111, Rational(1, 10)}});
  const auto m2 = BasicProbabilityAssignment::make(u, Focal{{0b010, Rational(9, 10)}, {0b111, Rational(1, 10)}});
  const auto m = evfuse::dst::drc_combine(m1, m2);
  EXPECT_EQ(m.focal(), (Focal{{0b001, Rational(9, 19)}, {0b010, Rational(9, 19)}, {0b111, Rational(1, 19)}}));
}

TEST(Drc, TotalConflictIsAnError) {
  const auto u = evfuse::StateUniverse::make({"a", "b"});
  const auto m1 = BasicProbabilityAssignment::make(u, Focal{{0b01, Rational(1)}});
  const auto m2 = BasicProbabilityAssignment::make(u, Focal{{0b10, Rational(1)}});
  EXPECT_EQ(thrown([&] { evfuse::dst::drc_combine(m1, m2); }), ErrorCode::TotalConflict);
  const auto other = BasicProbabilityAssignment::vacuous(fixture::universe(2));
  EXPECT_EQ(thrown([&] { evfuse::dst::drc_combine(m1, other); }), ErrorCode::UniverseMismatch);
}

TEST(DstBelief, CarCombination) {
  const auto f = fixture::car();
  const auto m = evfuse::dst::combine_frame(f);
  EXPECT_EQ(evfuse::dst::bel_from_bpa(m, set(f, {"dp", "do", "dm"})), Rational(477, 530));
  EXPECT_EQ(evfuse::dst::bel_from_bpa(m, StateSet::full(f.universe())), Rational(1));
  EXPECT_EQ(evfuse::dst::bel_from_bpa(m, StateSet::empty(f.universe())), Rational(0));
}

TEST(Tme, CarBeliefs) {
  const auto f = fixture::car();
  EXPECT_TRUE(evfuse::dst::tme_believes(f, set(f, {"sp", "dp", "do", "dm"})));
  EXPECT_FALSE(evfuse::dst::tme_believes(f, set(f, {"sp", "dp"})));
  EXPECT_TRUE(evfuse::dst::tme_believes(f, StateSet::full(f.universe())));
  EXPECT_TRUE(evfuse::dst::tme_believes(f, set(f, {"dp", "dm"})));
  EXPECT_FALSE(evfuse::dst::tme_believes(f, set(f, {"dp", "do", "so", "sm"})));
}

BasicProbabilityAssignment random_bpa(std::mt19937_64& rng, const evfuse::StateUniverse& u) {
  std::uniform_int_distribution<Mask> pick(1, u.full_mask());
  std::uniform_int_distribution<int> weight(1, 9);
  Focal focal;
  int total = 0;
  const int k = 1 + static_cast<int>(rng() % 4);
  std::vector<int> w;
  for (int i = 0; i < k; ++i) {
    w.push_back(weight(rng));
    total += w.back();
  }
  for (int i = 0; i < k; ++i) focal.emplace_back(pick(rng), Rational(9 * w[i], 10 * total));
  // Some mass on S, so combinations never conflict totally.
  focal.emplace_back(u.full_mask(), Rational(1, 10));
  return BasicProbabilityAssignment::make(u, focal);
}

TEST(DrcProperty, CommutativeAndAssociative) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 150; ++k) {
    const auto u = fixture::universe(2 + static_cast<unsigned>(rng() % 5));
    const auto a = random_bpa(rng, u);
    const auto b = random_bpa(rng, u);
    const auto c = random_bpa(rng, u);
    using evfuse::dst::drc_combine;
    ASSERT_EQ(drc_combine(a, b), drc_combine(b, a));
    ASSERT_EQ(drc_combine(drc_combine(a, b), c), drc_combine(a, drc_combine(b, c)));
  }
}

TEST(DrcProperty, FoldOrderDoesNotMatter) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = evfuse::verify::random_frame(seed, 6, 5);
    auto acc = BasicProbabilityAssignment::vacuous(f.universe());
    for (std::size_t i = f.arity(); i-- > 0;) acc = evfuse::dst::drc_combine(acc, evfuse::dst::simple_support(f, i));
    ASSERT_EQ(acc, evfuse::dst::combine_frame(f)) << seed;
  }
}

TEST(DstBeliefProperty, BeliefAxiomsOnRandomBpas) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const auto u = fixture::universe(2 + static_cast<unsigned>(rng() % 4));
    const auto m = random_bpa(rng, u);
    std::vector<Mask> all;
    for (Mask p = 0; p <= u.full_mask(); ++p) all.push_back(p);
    const auto outcome = evfuse::verify::check_belief_axioms(
        [&](Mask p) { return evfuse::dst::bel_from_bpa(m, p); }, u, 3, all);
    ASSERT_TRUE(outcome.passed) << outcome.detail.dump();
  }
}

}  // namespace
