#include <gtest/gtest.h>

#include "evfuse/dst.hpp"
#include "evfuse/fusion.hpp"
#include "evfuse/verify.hpp"
#include "support.hpp"

using evfuse::Allocator;
using evfuse::EvidenceSubset;
using evfuse::JustificationKind;
using evfuse::Mask;
using evfuse::Rational;
using evfuse::StateSet;
namespace verify = evfuse::verify;

namespace {

std::vector<Mask> every_subset(const evfuse::StateUniverse& u) {
  std::vector<Mask> all;
  for (Mask p = 0; p <= u.full_mask(); ++p) all.push_back(p);
  return all;
}

Allocator patched(const evfuse::QuantitativeEvidenceFrame& f, const Allocator& base, EvidenceSubset at, StateSet image) {
  std::vector<std::pair<EvidenceSubset, StateSet>> map;
  for (auto e : evfuse::canonical_subsets(f.arity())) map.emplace_back(e, e == at ? image : evfuse::allocate(f, base, e));
  return evfuse::custom_allocator(f, "patched", map);
}

TEST(Checks, CarPassesEveryCheckForTheThreeBasicAllocators) {
  const auto f = fixture::car();
  const std::vector<Allocator> iud = {Allocator::intersection(), Allocator::union_of(), Allocator::min_dense()};
  for (const auto& o : verify::run_all(f, iud)) EXPECT_TRUE(o.passed) << o.check << " " << o.detail.dump();
}

TEST(Checks, Prop5OnCar) {
  const auto o = verify::check_prop5(fixture::car());
  EXPECT_TRUE(o.passed);
  EXPECT_EQ(o.detail["propositions"], 64);
}

TEST(Checks, BeliefAxiomsForUnionUnderDsOnCar) {
  const auto f = fixture::car();
  const auto mass = evfuse::allocation_mass(f, Allocator::union_of());
  const auto ds = evfuse::justification_frame(f, JustificationKind::DempsterShafer);
  const auto all = every_subset(f.universe());
  const auto o = verify::check_belief_axioms([&](Mask p) { return evfuse::bel(mass, ds, p); }, f.universe(), 3, all);
  EXPECT_TRUE(o.passed) << o.detail.dump();
}

TEST(Checks, MassAxiomsForSingleHalfCertainItem) {
  const auto u = fixture::universe(2);
  const evfuse::QuantitativeEvidenceFrame f(u, {{"E", StateSet(u, 1), Rational(1, 2)}});
  const auto table = evfuse::delta_table(f);
  EXPECT_EQ(table, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_TRUE(verify::check_mass_axioms(table).passed);
  EXPECT_TRUE(verify::check_delta(f).passed);
}

TEST(Checks, RandomFramesAreDeterministic) {
  const auto a = verify::random_frame(42, 5, 4);
  const auto b = verify::random_frame(42, 5, 4);
  EXPECT_EQ(evfuse::serialize_frame(a), evfuse::serialize_frame(b));
  EXPECT_LE(a.universe().size(), 5U);
  EXPECT_GE(a.universe().size(), 2U);
  EXPECT_LE(a.arity(), 4U);
  EXPECT_NE(evfuse::serialize_frame(verify::random_frame(43, 5, 4)), evfuse::serialize_frame(a));
}

TEST(Checks, PropositionPool) {
  EXPECT_EQ(verify::proposition_pool(fixture::universe(5), {}).size(), 32U);
  const auto u = fixture::universe(6);
  const std::vector<Mask> extra = {0b000111, 0b111000};
  const auto pool = verify::proposition_pool(u, extra);
  EXPECT_EQ(pool.size(), 2U + 2U + 6U + 6U);
  EXPECT_NE(std::find(pool.begin(), pool.end(), Mask{0b000111}), pool.end());
  EXPECT_LE(verify::proposition_pool(fixture::universe(30), {}, 40).size(), 40U);
}

TEST(Checks, WitnessCarriesAReplayableFrame) {
  const auto f = fixture::car();
  const auto o = verify::check_no_normalization(f, std::vector<Allocator>{Allocator::intersection()});
  ASSERT_FALSE(o.passed);
  const auto w = o.witness();
  EXPECT_EQ(w["check"], "no_normalization");
  EXPECT_EQ(w["detail"]["normalization"], "53/80");
  const auto replay = evfuse::parse_frame(w["frame"].dump());
  EXPECT_EQ(evfuse::serialize_frame(replay), evfuse::serialize_frame(f));
}

// Yager-style allocation sends {E2,E3} to S, which is not inside E2 ∪ E3, yet
// S is open in every generated topology and comparable with every image.
TEST(Checks, YagerStylePassesTheDefinitionButLeavesTheUnionBound) {
  const auto f = fixture::car();
  const std::vector<Allocator> all = {Allocator::intersection(), Allocator::union_of(), Allocator::min_dense(),
                                      Allocator::yager_style()};
  EXPECT_TRUE(verify::check_allocation_definition(f, all).passed);
  const auto o = verify::check_sandwich(f, all);
  ASSERT_FALSE(o.passed);
  EXPECT_EQ(o.detail["allocator"], "yager");
  EXPECT_EQ(o.detail["witness"], "{E2,E3}");
}

// Mutation tests: each checker must notice a deliberately corrupted input.

TEST(Mutation, CorruptedDeltaValue) {
  const auto f = fixture::car();
  auto table = evfuse::delta_table(f);
  table[3] += Rational(1, 800);
  EXPECT_FALSE(verify::check_delta(f, table).passed);
  EXPECT_FALSE(verify::check_mass_axioms(table).passed);

  table = evfuse::delta_table(f);
  std::swap(table[1], table[2]);  // total still one, marginals off
  EXPECT_TRUE(verify::check_mass_axioms(table).passed);
  const auto o = verify::check_delta(f, table);
  EXPECT_FALSE(o.passed);
  EXPECT_EQ(o.detail["reason"], "marginal differs from certainty");

  const std::vector<Rational> negative = {Rational(3, 2), Rational(-1, 2)};
  EXPECT_FALSE(verify::check_mass_axioms(negative).passed);
}

TEST(Mutation, MassOnTheEmptySet) {
  const std::vector<std::pair<Mask, Rational>> focal = {{0, Rational(1, 4)}, {1, Rational(3, 4)}};
  EXPECT_FALSE(verify::check_bpa_axioms(focal).passed);
  const std::vector<std::pair<Mask, Rational>> short_total = {{1, Rational(3, 4)}};
  EXPECT_FALSE(verify::check_bpa_axioms(short_total).passed);
}

TEST(Mutation, PlausibilityIsNotSuperadditive) {
  const auto f = fixture::car();
  const auto m = evfuse::dst::combine_frame(f);
  const Mask full = f.universe().full_mask();
  auto pl = [&](Mask p) { return Rational(1) - evfuse::dst::bel_from_bpa(m, full & ~p); };
  const auto o = verify::check_belief_axioms(pl, f.universe(), 3, every_subset(f.universe()));
  ASSERT_FALSE(o.passed);
  EXPECT_EQ(o.detail["reason"], "superadditivity violated");
}

TEST(Mutation, BoostedBeliefBreaksMonotonicity) {
  const auto f = fixture::car();
  const auto m = evfuse::dst::combine_frame(f);
  const Mask e1 = f.item(0).content.bits();
  auto boosted = [&](Mask p) {
    const Rational b = evfuse::dst::bel_from_bpa(m, p);
    return p == e1 ? b + Rational(1, 10) : b;
  };
  const auto o = verify::check_belief_axioms(boosted, f.universe(), 3, every_subset(f.universe()));
  ASSERT_FALSE(o.passed);
  EXPECT_EQ(o.detail["reason"], "not monotone");
  auto shifted = [&](Mask p) { return p == 0 ? Rational(1, 100) : evfuse::dst::bel_from_bpa(m, p); };
  EXPECT_FALSE(verify::check_belief_axioms(shifted, f.universe(), 3, every_subset(f.universe())).passed);
}

TEST(Mutation, CorruptedAllocatorImage) {
  const auto f = fixture::car();
  const auto bad = patched(f, Allocator::min_dense(), evfuse::evidence_subset(f, {"E2"}), fixture::set(f, {"dm"}));
  const std::vector<Allocator> with_bad = {Allocator::intersection(), Allocator::union_of(), bad};
  const auto o = verify::check_allocation_definition(f, with_bad);
  ASSERT_FALSE(o.passed);
  EXPECT_EQ(o.detail["witness"], "{E2}");

  const auto wide = patched(f, Allocator::min_dense(), evfuse::evidence_subset(f, {"E1", "E2"}),
                            StateSet::full(f.universe()));
  const std::vector<Allocator> with_wide = {wide};
  EXPECT_FALSE(verify::check_sandwich(f, with_wide).passed);
}

TEST(Mutation, WrongAllocatorBreaksTheEquivalences) {
  const auto f = fixture::car();
  EXPECT_FALSE(verify::check_prop5(f, Allocator::union_of()).passed);
  EXPECT_FALSE(verify::check_prop6(f, Allocator::intersection()).passed);
}

TEST(Mutation, WrongMinDenseCandidate) {
  const auto f = fixture::car();
  auto union_of = [](std::span<const Mask> sets) {
    Mask m = 0;
    for (Mask s : sets) m |= s;
    return m;
  };
  auto meet_of = [](std::span<const Mask> sets) {
    Mask m = ~Mask{0};
    for (Mask s : sets) m &= s;
    return m;
  };
  auto not_open = [](std::span<const Mask> sets) { return sets.front() | (Mask{1} << 3); };
  EXPECT_EQ(verify::check_lemma1(f, union_of).detail["reason"], "a dense open does not contain the candidate");
  EXPECT_EQ(verify::check_lemma1(f, meet_of).detail["reason"], "candidate is not dense");
  EXPECT_EQ(verify::check_lemma1(f, not_open).detail["reason"], "candidate is not open");
}

TEST(Mutation, IntersectionNeedsNormalization) {
  const auto o = verify::check_no_normalization(fixture::car(), std::vector<Allocator>{Allocator::intersection()});
  EXPECT_FALSE(o.passed);
}

}  // namespace
