#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "evfuse/dst.hpp"
#include "evfuse/evidence.hpp"
#include "evfuse/fusion.hpp"
#include "evfuse/rational.hpp"
#include "evfuse/topology.hpp"

// Executable checks for the axioms and equivalences the model is supposed to
// satisfy. Failures are returned as data, each with enough context to replay.
namespace evfuse::verify {

struct CheckOutcome {
  std::string check;
  bool passed = true;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
  /// Canonical frame document the check ran on, when there is one.
  std::optional<std::string> frame;

  /// {"check": ..., "frame": <frame document or null>, "detail": {...}}
  nlohmann::ordered_json witness() const;
};

/// Total is exactly one and every value lies in [0, 1].
CheckOutcome check_mass_axioms(std::span<const Rational> values);

/// Nothing on ∅, values in [0, 1], total exactly one.
CheckOutcome check_bpa_axioms(std::span<const std::pair<Mask, Rational>> focal);
CheckOutcome check_bpa_axioms(const dst::BasicProbabilityAssignment& m);

/// δ over all subsets of the items is a mass function and its marginals give
/// back the item certainties. The table defaults to delta_table(f).
CheckOutcome check_delta(const QuantitativeEvidenceFrame& f);
CheckOutcome check_delta(const QuantitativeEvidenceFrame& f, std::span<const Rational> deltas);

using BeliefEvaluator = std::function<Rational(Mask)>;

/// Bel(∅) = 0, Bel(S) = 1, values in [0, 1], monotone on the pool, and
/// superadditive for every union of 2..n_max distinct pool members.
CheckOutcome check_belief_axioms(const BeliefEvaluator& bel, const StateUniverse& u, unsigned n_max,
                                 std::span<const Mask> pool);

/// Every subset when the universe is small enough, otherwise ∅, S,
/// singletons, co-singletons and the supplied extra sets, capped at `limit`.
std::vector<Mask> proposition_pool(const StateUniverse& u, std::span<const Mask> extra, std::size_t limit = 40);

/// The allocation-function definition via validate_allocators().
CheckOutcome check_allocation_definition(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators);

/// i(E) ⊆ a(E) ⊆ u(E) at every E for every allocator.
CheckOutcome check_sandwich(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators);

/// δ_J(a, ·) is a basic probability assignment.
CheckOutcome check_justified_bpa(const QuantitativeEvidenceFrame& f, const Allocator& a, const JustificationFrame& j);

/// Under the Dempster-Shafer frame of justification, Bel equals the belief of
/// the Dempster combination of the items' simple support functions, exactly,
/// at every proposition. `a` defaults to the intersection allocator.
CheckOutcome check_prop5(const QuantitativeEvidenceFrame& f);
CheckOutcome check_prop5(const QuantitativeEvidenceFrame& f, const Allocator& a);

/// Under the strong-denseness frame, Bel(P) > 0 exactly when a dense open
/// lies inside P. `a` defaults to the min-dense allocator.
CheckOutcome check_prop6(const QuantitativeEvidenceFrame& f);
CheckOutcome check_prop6(const QuantitativeEvidenceFrame& f, const Allocator& a);

using MinDenseFn = std::function<Mask(std::span<const Mask>)>;

/// For every non-empty E: the candidate minimum is an open of the topology
/// generated by E, is dense there, and lies inside every dense open.
CheckOutcome check_lemma1(const QuantitativeEvidenceFrame& f);
CheckOutcome check_lemma1(const QuantitativeEvidenceFrame& f, const MinDenseFn& candidate);

/// Allocators that never return ∅ need no normalization under the
/// Dempster-Shafer frame.
CheckOutcome check_no_normalization(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators);

/// Deterministic per seed: 2..max_states states named s0.., 1..max_items
/// items named E1.. with non-empty strict-subset contents and certainties
/// n/d, d ≤ 32, in (0, 1).
QuantitativeEvidenceFrame random_frame(std::uint64_t seed, std::size_t max_states, std::size_t max_items);

/// Every check above on one frame, with i, u, d and yager under both
/// built-in frames of justification.
std::vector<CheckOutcome> run_all(const QuantitativeEvidenceFrame& f);
std::vector<CheckOutcome> run_all(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators);

}  // namespace evfuse::verify
