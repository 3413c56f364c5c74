#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evfuse/evidence.hpp"
#include "evfuse/rational.hpp"
#include "evfuse/state_set.hpp"

namespace evfuse {

// ---------------------------------------------------------------------------
// Quantitative layer: the mass δ that the item certainties induce on subsets
// of the item list.

/// δ(E) = Π_{i∈E} p_i · Π_{i∉E} (1 − p_i). Throws FrameMismatch.
Rational delta(const QuantitativeEvidenceFrame& f, EvidenceSubset e);

/// δ for every subset, indexed by the subset's bit pattern. Throws
/// CapacityExceeded past kMaxEnumeratedItems items.
std::vector<Rational> delta_table(const QuantitativeEvidenceFrame& f);

// ---------------------------------------------------------------------------
// Qualitative layer: which opens of the evidential topology an agent accepts
// as justification.

enum class JustificationKind { DempsterShafer, StrongDenseness, Custom };

class JustificationFrame {
 public:
  JustificationKind kind() const { return kind_; }
  const StateUniverse& universe() const { return universe_; }

  /// "ds", "sd" or "custom".
  std::string_view name() const;

  bool contains(Mask t) const;
  bool contains(const StateSet& t) const;

  /// Explicit members of a custom frame, in canonical order. Empty for the
  /// built-in kinds, whose membership is decided by predicate.
  const std::vector<Mask>& custom_members() const { return custom_; }

 private:
  friend JustificationFrame justification_frame(const QuantitativeEvidenceFrame&, JustificationKind);
  friend JustificationFrame custom_justification_frame(const QuantitativeEvidenceFrame&, std::span<const StateSet>);
  JustificationFrame(StateUniverse u, JustificationKind kind) : universe_(std::move(u)), kind_(kind) {}

  StateUniverse universe_;
  JustificationKind kind_;
  std::vector<Mask> subbasis_;
  std::vector<Mask> neighbourhoods_;
  std::vector<Mask> custom_;
};

/// DempsterShafer: every non-empty open. StrongDenseness: every dense open.
/// Pass Custom to custom_justification_frame instead.
JustificationFrame justification_frame(const QuantitativeEvidenceFrame& f, JustificationKind kind);

/// Throws CustomFrameContainsEmpty, CustomFrameNotOpen,
/// CustomFrameMissingTotalSet or FrameMismatch.
JustificationFrame custom_justification_frame(const QuantitativeEvidenceFrame& f, std::span<const StateSet> members);

/// Members listed explicitly, in canonical order. Materialises the topology
/// for the built-in kinds.
std::vector<StateSet> justification_members(const QuantitativeEvidenceFrame& f, const JustificationFrame& j);

// ---------------------------------------------------------------------------
// Bridging layer: evidence allocation functions send each subset of the item
// list to an open of the topology.

enum class AllocatorKind { Intersection, Union, MinDense, YagerStyle, CustomTable };

class Allocator {
 public:
  static Allocator intersection() { return Allocator(AllocatorKind::Intersection, "i"); }
  static Allocator union_of() { return Allocator(AllocatorKind::Union, "u"); }
  static Allocator min_dense() { return Allocator(AllocatorKind::MinDense, "d"); }
  static Allocator yager_style() { return Allocator(AllocatorKind::YagerStyle, "yager"); }

  /// Explicit image per subset, indexed by bit pattern; the table must have
  /// 2^m entries for the frame it is used with. Images are taken as given,
  /// including the image of the empty subset.
  static Allocator custom(std::string name, std::vector<Mask> table);

  /// "i", "u", "d" or "yager". Throws InvalidAllocator otherwise.
  static Allocator builtin(std::string_view name);

  AllocatorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<Mask>& table() const { return table_; }

 private:
  Allocator(AllocatorKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  AllocatorKind kind_;
  std::string name_;
  std::vector<Mask> table_;
};

/// Builds a custom allocator from (evidence subset, image) pairs covering
/// every subset exactly once. Throws InvalidAllocator on a missing or
/// repeated subset, FrameMismatch on foreign sets.
Allocator custom_allocator(const QuantitativeEvidenceFrame& f, std::string name,
                           std::span<const std::pair<EvidenceSubset, StateSet>> map);

/// Image of one subset. Built-ins send the empty subset to the full universe.
StateSet allocate(const QuantitativeEvidenceFrame& f, const Allocator& a, EvidenceSubset e);

struct AllocationIssue {
  int condition;  // 1, 2 or 3 of the allocation-function definition
  std::vector<std::string> allocators;
  EvidenceSubset witness;
  std::string detail;
};
using AllocationReport = std::vector<AllocationIssue>;

/// Checks, for every subset E of the items: (1) f(∅) = S; (2) f(E) is empty,
/// or is open and dense in the topology generated by E; (3) any two
/// allocators' images at E are ⊆-comparable. Never throws except
/// CapacityExceeded.
AllocationReport validate_allocators(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators);

// ---------------------------------------------------------------------------
// δ_τ, δ_J and the multi-layer belief function.

/// δ_τ(a, ·): mass pushed onto each open by an allocator. Only non-zero
/// entries are stored, in canonical order of the open.
class AllocationMass {
 public:
  const StateUniverse& universe() const { return universe_; }
  const std::string& allocator() const { return allocator_; }
  const std::vector<std::pair<Mask, Rational>>& entries() const { return entries_; }

  Rational at(Mask t) const;
  Rational total() const;

 private:
  friend AllocationMass allocation_mass(const QuantitativeEvidenceFrame&, const Allocator&, std::span<const Rational>);
  AllocationMass(StateUniverse u, std::string allocator) : universe_(std::move(u)), allocator_(std::move(allocator)) {}

  StateUniverse universe_;
  std::string allocator_;
  std::vector<std::pair<Mask, Rational>> entries_;
};

AllocationMass allocation_mass(const QuantitativeEvidenceFrame& f, const Allocator& a);
/// Same, reusing a precomputed delta_table(f).
AllocationMass allocation_mass(const QuantitativeEvidenceFrame& f, const Allocator& a, std::span<const Rational> deltas);

/// Σ_{T∈J} δ_τ(a,T); strictly positive for valid frames.
Rational normalization_factor(const AllocationMass& mass, const JustificationFrame& j);
/// δ_τ(a,t)/N.f. when t ∈ J, else 0.
Rational delta_J(const AllocationMass& mass, const JustificationFrame& j, Mask t);
/// Σ_{A⊆P} δ_J(a,A).
Rational bel(const AllocationMass& mass, const JustificationFrame& j, Mask p);

// Frame-level entry points. All throw FrameMismatch when a set or
// justification frame is over another universe, and CapacityExceeded past
// kMaxEnumeratedItems items.
Rational delta_tau(const QuantitativeEvidenceFrame& f, const Allocator& a, const StateSet& t);
Rational normalization_factor(const QuantitativeEvidenceFrame& f, const Allocator& a, const JustificationFrame& j);
Rational delta_J(const QuantitativeEvidenceFrame& f, const Allocator& a, const JustificationFrame& j, const StateSet& t);
Rational bel(const QuantitativeEvidenceFrame& f, const Allocator& a, const JustificationFrame& j, const StateSet& p);

/// One row per proposition, one column per allocator, plus the per-allocator
/// uncertainty (δ_J of the full universe) and normalization factor.
struct BeliefReport {
  std::string justification;
  std::vector<std::string> allocators;
  std::vector<StateSet> propositions;
  std::vector<std::vector<Rational>> beliefs;  // [proposition][allocator]
  std::vector<Rational> uncertainty;
  std::vector<Rational> normalization;
};

BeliefReport belief_report(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators,
                           const JustificationFrame& j, std::span<const StateSet> propositions);

/// Report JSON:
/// {"justification", "allocators", "rows": [{"proposition", "beliefs":
///  {alloc: {"num", "den", "rendered"}}}], "uncertainty": {...},
///  "normalization": {...}}. num/den are decimal strings.
std::string report_to_json(const BeliefReport& r, unsigned precision);

}  // namespace evfuse
