#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "evfuse/evidence.hpp"
#include "evfuse/rational.hpp"
#include "evfuse/state_set.hpp"
#include "evfuse/topology.hpp"

// Classical Dempster-Shafer machinery, kept apart from the fusion pipeline so
// it can serve as an independent reference for it.
namespace evfuse::dst {

/// Mass on subsets of a universe. Only non-zero focal sets are stored, in
/// canonical order; nothing on ∅; values sum to exactly one.
class BasicProbabilityAssignment {
 public:
  /// Validates the invariants; throws InvalidArgument. Zero entries are
  /// dropped and repeated focal sets are merged.
  static BasicProbabilityAssignment make(StateUniverse u, std::vector<std::pair<Mask, Rational>> focal);

  /// Vacuous assignment m(S) = 1.
  static BasicProbabilityAssignment vacuous(StateUniverse u);

  const StateUniverse& universe() const { return universe_; }
  const std::vector<std::pair<Mask, Rational>>& focal() const { return focal_; }
  Rational mass(Mask a) const;

  friend bool operator==(const BasicProbabilityAssignment& a, const BasicProbabilityAssignment& b) {
    return a.universe_ == b.universe_ && a.focal_ == b.focal_;
  }

 private:
  explicit BasicProbabilityAssignment(StateUniverse u) : universe_(std::move(u)) {}

  StateUniverse universe_;
  std::vector<std::pair<Mask, Rational>> focal_;
};

/// m(E_i) = p_i, m(S) = 1 − p_i. Throws IndexOutOfRange.
BasicProbabilityAssignment simple_support(const QuantitativeEvidenceFrame& f, std::size_t index);

/// Dempster's rule. Throws TotalConflict when every pair of focal sets is
/// disjoint, UniverseMismatch on mixed universes.
BasicProbabilityAssignment drc_combine(const BasicProbabilityAssignment& m1, const BasicProbabilityAssignment& m2);

/// Left fold of drc_combine over the simple support functions, in item order.
BasicProbabilityAssignment combine_frame(const QuantitativeEvidenceFrame& f);

/// Σ_{A⊆P} m(A). Throws UniverseMismatch.
Rational bel_from_bpa(const BasicProbabilityAssignment& m, const StateSet& p);
Rational bel_from_bpa(const BasicProbabilityAssignment& m, Mask p);

/// Qualitative belief: some dense open of the evidential topology lies
/// inside P. Decided by scanning the materialised topology. Throws
/// FrameMismatch.
bool tme_believes(const QuantitativeEvidenceFrame& f, const StateSet& p);
/// Same, against an already generated evidential topology.
bool tme_believes(const Topology& t, const StateSet& p);

}  // namespace evfuse::dst
