#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evfuse {

/// Raw bit representation of a subset of a universe: bit k set means the
/// k-th state is a member.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxStates = 64;

inline int popcount(Mask m) { return std::popcount(m); }

/// Orders masks by cardinality first, then by numeric value. All listings of
/// opens, focal sets and propositions use this order.
inline bool canonical_less(Mask a, Mask b) {
  const int pa = popcount(a);
  const int pb = popcount(b);
  return pa != pb ? pa < pb : a < b;
}

/// Finite, ordered set of named states. Cheap to copy; copies share the
/// same label table.
class StateUniverse {
 public:
  /// Throws EmptyUniverse, TooManyStates or DuplicateLabel.
  static StateUniverse make(std::vector<std::string> labels);

  std::size_t size() const { return impl_->labels.size(); }
  const std::vector<std::string>& labels() const { return impl_->labels; }
  const std::string& label(std::size_t index) const { return impl_->labels.at(index); }

  /// Index of a state by name, or -1.
  int index_of(std::string_view name) const;

  Mask full_mask() const {
    return size() == kMaxStates ? ~Mask{0} : ((Mask{1} << size()) - 1);
  }

  /// Same object or same label sequence.
  friend bool operator==(const StateUniverse& a, const StateUniverse& b) {
    return a.impl_ == b.impl_ || a.impl_->labels == b.impl_->labels;
  }

 private:
  struct Impl {
    std::vector<std::string> labels;
  };
  explicit StateUniverse(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

class StateSet {
 public:
  StateSet(StateUniverse universe, Mask bits);

  static StateSet empty(const StateUniverse& u) { return StateSet(u, 0); }
  static StateSet full(const StateUniverse& u) { return StateSet(u, u.full_mask()); }

  /// Throws UnknownState. Repeated names are harmless.
  static StateSet of(const StateUniverse& u, std::span<const std::string> names);
  static StateSet of(const StateUniverse& u, std::initializer_list<std::string_view> names);

  const StateUniverse& universe() const { return universe_; }
  Mask bits() const { return bits_; }
  std::size_t size() const { return static_cast<std::size_t>(popcount(bits_)); }
  bool empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == universe_.full_mask(); }
  bool contains(std::size_t state) const { return state < 64 && ((bits_ >> state) & 1U) != 0; }

  std::vector<std::string> names() const;

  /// "{dp,do,dm}" with members in universe order; "{}" for the empty set.
  std::string to_string() const;

  StateSet operator&(const StateSet& o) const;
  StateSet operator|(const StateSet& o) const;
  StateSet complement() const { return StateSet(universe_, ~bits_ & universe_.full_mask()); }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.bits_ == b.bits_ && a.universe_ == b.universe_;
  }

 private:
  StateUniverse universe_;
  Mask bits_;
};

/// Throws UniverseMismatch unless both sets share a universe.
void require_same_universe(const StateSet& a, const StateSet& b);

/// All three throw UniverseMismatch on mixed universes; the list versions also
/// throw EmptyEvidenceList on an empty input.
StateSet intersect_all(std::span<const StateSet> sets);
StateSet union_all(std::span<const StateSet> sets);
bool is_subset(const StateSet& a, const StateSet& b);

/// Canonical (cardinality, value) order; universes must match.
bool canonical_less(const StateSet& a, const StateSet& b);

}  // namespace evfuse
