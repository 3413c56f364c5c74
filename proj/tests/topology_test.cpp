#include <random>

#include <gtest/gtest.h>

#include "evfuse/topology.hpp"
#include "support.hpp"

using evfuse::ErrorCode;
using evfuse::Mask;
using evfuse::StateSet;
using fixture::set;
using fixture::thrown;

namespace {

class CarTopology : public ::testing::Test {
 protected:
  evfuse::QuantitativeEvidenceFrame f = fixture::car();
  StateSet e1 = f.item(0).content;
  StateSet e2 = f.item(1).content;
  StateSet e3 = f.item(2).content;
  std::vector<StateSet> subbasis = {e1, e2, e3};
  evfuse::Topology t = evfuse::generate_topology(f.universe(), subbasis);
};

std::vector<Mask> bits_of(std::span<const StateSet> sets) {
  std::vector<Mask> out;
  for (const auto& s : sets) out.push_back(s.bits());
  return out;
}

// The printed example lists eleven opens. Three more unions of basis
// elements are open as well: E3 ∪ {dm}, {dp} ∪ E2 and E1 ∪ E2 ∪ E3.
TEST_F(CarTopology, ContainsTheListedOpensPlusThreeMissingUnions) {
  std::vector<StateSet> expected = {
      StateSet::empty(f.universe()), e1, e2, e3,
      set(f, {"dp"}), set(f, {"dm"}), set(f, {"dp", "dm"}),
      set(f, {"sp", "dp", "do", "dm"}), set(f, {"dp", "do", "dm", "sm"}),
      set(f, {"sp", "dp", "dm", "sm"}), StateSet::full(f.universe()),
      set(f, {"sp", "dp", "do", "dm", "sm"}), set(f, {"sp", "dp", "dm"}), set(f, {"dp", "dm", "sm"})};
  std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) { return evfuse::canonical_less(a, b); });
  EXPECT_EQ(std::vector<StateSet>(t.opens().begin(), t.opens().end()), expected);
  EXPECT_EQ(bits_of(t.opens()), oracle::fixpoint_topology(bits_of(subbasis), f.universe().full_mask()));
  EXPECT_EQ(bits_of(t.opens()), oracle::basis_topology(bits_of(subbasis), f.universe().full_mask()));
}

TEST_F(CarTopology, DenseOpensAreThoseContainingDpDm) {
  EXPECT_TRUE(evfuse::is_dense(set(f, {"dp", "dm"}), t));
  EXPECT_FALSE(evfuse::is_dense(e2, t));
  EXPECT_FALSE(evfuse::is_dense(e3, t));
  EXPECT_TRUE(evfuse::is_dense(StateSet::full(f.universe()), t));
  for (const auto& o : t.opens()) {
    EXPECT_EQ(evfuse::is_dense(o, t), evfuse::is_subset(set(f, {"dp", "dm"}), o)) << o.to_string();
  }
}

TEST_F(CarTopology, ArgumentsForAProposition) {
  const auto args = evfuse::arguments_for(t, set(f, {"dp", "do", "dm"}));
  const std::vector<StateSet> expected = {set(f, {"dp"}), set(f, {"dm"}), set(f, {"dp", "dm"}), e1};
  EXPECT_EQ(args, expected);
  EXPECT_TRUE(evfuse::arguments_for(t, StateSet::empty(f.universe())).empty());
  EXPECT_TRUE(evfuse::supports(e3, set(f, {"sp", "dp"})));
  EXPECT_FALSE(evfuse::supports(e1, set(f, {"sp", "dp"})));
}

TEST_F(CarTopology, MinimalNonEmptyOpens) {
  const std::vector<StateSet> expected = {set(f, {"dp"}), set(f, {"dm"})};
  EXPECT_EQ(t.minimal_nonempty_opens(), expected);
}

TEST_F(CarTopology, MaximalFipFamilies) {
  const auto fams = evfuse::maximal_fip_families(subbasis);
  ASSERT_EQ(fams.size(), 2U);
  EXPECT_EQ(fams[0].members, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(fams[0].intersection, set(f, {"dm"}));
  EXPECT_EQ(fams[1].members, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(fams[1].intersection, set(f, {"dp"}));

  const std::vector<StateSet> e23 = {e2, e3};
  const auto pair = evfuse::maximal_fip_families(e23);
  ASSERT_EQ(pair.size(), 2U);
  EXPECT_EQ(pair[0].members, std::vector<std::size_t>{0});
  EXPECT_EQ(pair[1].members, std::vector<std::size_t>{1});

  const std::vector<StateSet> single = {e1};
  ASSERT_EQ(evfuse::maximal_fip_families(single).size(), 1U);
}

TEST_F(CarTopology, MinDenseOfCarSubfamilies) {
  EXPECT_EQ(evfuse::min_dense(subbasis), set(f, {"dp", "dm"}));
  const std::vector<StateSet> e23 = {e2, e3};
  EXPECT_EQ(evfuse::min_dense(e23), set(f, {"sp", "dp", "dm", "sm"}));
  const std::vector<StateSet> single = {e1};
  EXPECT_EQ(evfuse::min_dense(single), e1);
}

TEST(Topology, SingleSetSubbasis) {
  const auto u = fixture::universe(4);
  const std::vector<StateSet> sub = {StateSet(u, 0b0110)};
  const auto t = evfuse::generate_topology(u, sub);
  EXPECT_EQ(bits_of(t.opens()), (std::vector<Mask>{0, 0b0110, 0b1111}));
  EXPECT_TRUE(t.contains(StateSet(u, 0b0110)));
  EXPECT_FALSE(t.contains(StateSet(u, 0b0010)));
}

TEST(Topology, ErrorCases) {
  const auto u = fixture::universe(3);
  const auto v = fixture::universe(4);
  const std::vector<StateSet> foreign = {StateSet(v, 1)};
  EXPECT_EQ(thrown([&] { evfuse::generate_topology(u, foreign); }), ErrorCode::UniverseMismatch);
  EXPECT_EQ(thrown([] { evfuse::min_dense({}); }), ErrorCode::EmptyEvidenceList);
  EXPECT_EQ(thrown([] { evfuse::maximal_fip_families({}); }), ErrorCode::EmptyEvidenceList);
  const std::vector<StateSet> with_empty = {StateSet(u, 1), StateSet(u, 0)};
  EXPECT_EQ(thrown([&] { evfuse::min_dense(with_empty); }), ErrorCode::EmptyEvidence);
}

TEST(Topology, CapacityIsEnforced) {
  // Singletons of 21 states generate the full power set, 2^21 opens.
  const auto u = fixture::universe(21);
  std::vector<StateSet> singletons;
  for (unsigned i = 0; i < 21; ++i) singletons.emplace_back(u, Mask{1} << i);
  EXPECT_EQ(thrown([&] { evfuse::generate_topology(u, singletons); }), ErrorCode::CapacityExceeded);
}

TEST(Topology, EmptySubbasisGivesIndiscreteTopology) {
  const auto u = fixture::universe(3);
  const auto t = evfuse::generate_topology(u, {});
  EXPECT_EQ(bits_of(t.opens()), (std::vector<Mask>{0, 0b111}));
}

TEST(TopologyProperty, MatchesBothClosureOracles) {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 300; ++k) {
    const unsigned n = 2 + static_cast<unsigned>(rng() % 7);
    const unsigned m = 1 + static_cast<unsigned>(rng() % 5);
    const auto u = fixture::universe(n);
    const auto masks = fixture::random_sets(rng, n, m);
    std::vector<StateSet> sub;
    for (Mask b : masks) sub.emplace_back(u, b);
    const auto t = evfuse::generate_topology(u, sub);
    const auto got = bits_of(t.opens());
    ASSERT_EQ(got, oracle::fixpoint_topology(masks, u.full_mask()));
    ASSERT_EQ(got, oracle::basis_topology(masks, u.full_mask()));
    for (Mask b : masks) ASSERT_TRUE(t.contains(StateSet(u, b)));
    for (Mask a : got) {
      ASSERT_TRUE(evfuse::masks::is_open(a, masks, u.full_mask()));
    }
    std::uniform_int_distribution<Mask> pick(0, u.full_mask());
    for (int q = 0; q < 20; ++q) {
      const Mask x = pick(rng);
      const bool open = std::binary_search(got.begin(), got.end(), x,
                                           [](Mask a, Mask b) { return evfuse::canonical_less(a, b); });
      ASSERT_EQ(evfuse::masks::is_open(x, masks, u.full_mask()), open);
    }
  }
}

TEST(TopologyProperty, DensenessViaMinimalOpensMatchesDefinition) {
  std::mt19937_64 rng(202);
  for (int k = 0; k < 200; ++k) {
    const unsigned n = 2 + static_cast<unsigned>(rng() % 7);
    const unsigned m = 1 + static_cast<unsigned>(rng() % 5);
    const auto u = fixture::universe(n);
    const auto masks = fixture::random_sets(rng, n, m);
    std::vector<StateSet> sub;
    for (Mask b : masks) sub.emplace_back(u, b);
    const auto t = evfuse::generate_topology(u, sub);
    const auto minimal = t.minimal_nonempty_opens();
    const auto opens = bits_of(t.opens());
    for (Mask p = 0; p <= u.full_mask(); ++p) {
      const StateSet ps(u, p);
      const bool via_minimal =
          std::all_of(minimal.begin(), minimal.end(), [&](const StateSet& o) { return !(o & ps).empty(); });
      ASSERT_EQ(evfuse::is_dense(ps, t), oracle::dense_in(p, opens));
      ASSERT_EQ(via_minimal, oracle::dense_in(p, opens));
    }
  }
}

TEST(TopologyProperty, MaximalFipAndMinDenseMatchBruteForce) {
  std::mt19937_64 rng(303);
  for (int k = 0; k < 300; ++k) {
    const unsigned n = 2 + static_cast<unsigned>(rng() % 7);
    const unsigned m = 1 + static_cast<unsigned>(rng() % 6);
    const auto u = fixture::universe(n);
    const auto masks = fixture::random_sets(rng, n, m);
    std::vector<StateSet> sub;
    for (Mask b : masks) sub.emplace_back(u, b);

    const auto fams = evfuse::maximal_fip_families(sub);
    const auto expected = oracle::maximal_fip(masks);
    ASSERT_EQ(fams.size(), expected.size());
    for (std::size_t i = 0; i < fams.size(); ++i) {
      std::uint32_t bits = 0;
      for (auto idx : fams[i].members) bits |= 1U << idx;
      ASSERT_EQ(bits, expected[i].members);
      ASSERT_EQ(fams[i].intersection.bits(), expected[i].meet);
    }
    ASSERT_EQ(evfuse::min_dense(sub).bits(), oracle::min_dense(masks, u.full_mask()));
  }
}

}  // namespace
