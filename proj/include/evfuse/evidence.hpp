#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evfuse/error.hpp"
#include "evfuse/rational.hpp"
#include "evfuse/state_set.hpp"

namespace evfuse {

struct EvidenceItem {
  std::string name;
  StateSet content;
  Rational certainty;
};

/// A finite universe plus named pieces of evidence, each with a certainty.
///
/// Construction does not validate; use validate_frame() or parse_frame() to
/// enforce the frame constraints (non-empty strict-subset contents, unique
/// names, certainties in the open unit interval).
class QuantitativeEvidenceFrame {
 public:
  QuantitativeEvidenceFrame(StateUniverse universe, std::vector<EvidenceItem> items)
      : universe_(std::move(universe)), items_(std::move(items)) {}

  const StateUniverse& universe() const { return universe_; }
  const std::vector<EvidenceItem>& items() const { return items_; }
  const EvidenceItem& item(std::size_t i) const { return items_.at(i); }
  std::size_t arity() const { return items_.size(); }

  /// Content masks, in item order.
  std::vector<Mask> content_masks() const;

  /// Index of the item with this name, or -1.
  int index_of(std::string_view name) const;

 private:
  StateUniverse universe_;
  std::vector<EvidenceItem> items_;
};

/// Subset of the frame's items, bit i standing for item i.
struct EvidenceSubset {
  std::uint32_t bits = 0;

  bool contains(std::size_t i) const { return ((bits >> i) & 1U) != 0; }
  std::size_t size() const;
  friend bool operator==(EvidenceSubset, EvidenceSubset) = default;
};

/// Subsets of the item list are enumerated exhaustively, so the number of
/// items a computation may touch is bounded.
inline constexpr std::size_t kMaxEnumeratedItems = 24;

/// Throws FrameMismatch when `e` names an item the frame does not have.
void require_subset_of(const QuantitativeEvidenceFrame& f, EvidenceSubset e);

/// Throws CapacityExceeded when 2^arity would exceed the enumeration cap.
void require_enumerable(const QuantitativeEvidenceFrame& f);

/// Subset by item names; throws FrameMismatch on an unknown name.
EvidenceSubset evidence_subset(const QuantitativeEvidenceFrame& f, std::initializer_list<std::string_view> names);

/// "{E1,E2}", or "{}".
std::string describe(const QuantitativeEvidenceFrame& f, EvidenceSubset e);

/// All 2^m subsets, ordered by size and then by bit pattern.
std::vector<EvidenceSubset> canonical_subsets(std::size_t arity);

struct ValidationIssue {
  ErrorCode code;
  std::string detail;
};
using ValidationReport = std::vector<ValidationIssue>;

/// Lists every violated frame constraint; never throws.
ValidationReport validate_frame(const QuantitativeEvidenceFrame& f);

/// Parses the frame JSON document:
///   {"states": [...], "evidence": [{"name", "states", "certainty"}, ...]}
/// Certainties are strings ("0.45" or "9/20") and are read exactly.
QuantitativeEvidenceFrame parse_frame(std::string_view document);

/// Canonical JSON text (two-space indent, trailing newline). parse_frame of
/// the result reproduces the frame.
std::string serialize_frame(const QuantitativeEvidenceFrame& f);

/// Document for the autonomous-car running example.
std::string_view car_example_document();

}  // namespace evfuse
