#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evfuse/state_set.hpp"

namespace evfuse {

// Mask-level primitives. These work on raw bit masks of one universe and are
// what the fusion pipeline calls in its inner loops.
namespace masks {

/// For every state x of the universe, the smallest set containing x that can
/// be formed by intersecting members of `sets` (the full universe when no
/// member contains x). Every open of the generated topology is a union of
/// these neighbourhoods.
std::vector<Mask> minimal_neighbourhoods(std::span<const Mask> sets, Mask universe);

/// T is open in the topology generated by `sets` over `universe`.
bool is_open(Mask t, std::span<const Mask> sets, Mask universe);

/// Smallest dense open of the topology generated by a non-empty list of
/// non-empty sets, built from the maximal finite-intersection families.
Mask min_dense(std::span<const Mask> sets);

}  // namespace masks

/// Explicit topology on a finite universe: deduplicated opens in canonical
/// order (cardinality, then bit value).
class Topology {
 public:
  const StateUniverse& universe() const { return universe_; }
  std::span<const StateSet> opens() const { return opens_; }
  std::size_t size() const { return opens_.size(); }

  bool contains(const StateSet& s) const;

  /// Non-empty opens with no non-empty open strictly inside them.
  std::vector<StateSet> minimal_nonempty_opens() const;

 private:
  friend Topology generate_topology(const StateUniverse&, std::span<const StateSet>);
  Topology(StateUniverse u, std::vector<StateSet> opens) : universe_(std::move(u)), opens_(std::move(opens)) {}

  StateUniverse universe_;
  std::vector<StateSet> opens_;
};

/// Largest topology we are willing to materialise.
inline constexpr std::size_t kMaxOpens = std::size_t{1} << 20;

/// Smallest topology on `u` containing every subbasis member, always
/// including the empty set and the full universe. Throws UniverseMismatch,
/// or CapacityExceeded past kMaxOpens opens.
Topology generate_topology(const StateUniverse& u, std::span<const StateSet> subbasis);

/// True iff p meets every non-empty open of t.
bool is_dense(const StateSet& p, const Topology& t);

/// e ⊆ p.
bool supports(const StateSet& e, const StateSet& p);

/// Non-empty opens of t contained in p, in canonical order.
std::vector<StateSet> arguments_for(const Topology& t, const StateSet& p);

/// A family of evidence sets, as indices into the caller's list, together
/// with its (non-empty) intersection.
struct Family {
  std::vector<std::size_t> members;
  StateSet intersection;
};

/// Families with non-empty intersection that cannot be extended by any other
/// input set without the intersection becoming empty. Ordered by the bit
/// pattern of member indices. Throws EmptyEvidenceList or UniverseMismatch.
std::vector<Family> maximal_fip_families(std::span<const StateSet> evidence);

/// ⊆-minimum dense open of the topology generated by `evidence`: the union of
/// the intersections of the maximal finite-intersection families.
StateSet min_dense(std::span<const StateSet> evidence);

}  // namespace evfuse
