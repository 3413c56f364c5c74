#include "evfuse/state_set.hpp"

#include <unordered_set>

#include "evfuse/error.hpp"

namespace evfuse {

StateUniverse StateUniverse::make(std::vector<std::string> labels) {
  if (labels.empty()) throw Error(ErrorCode::EmptyUniverse, "a universe needs at least one state");
  if (labels.size() > kMaxStates) {
    throw Error(ErrorCode::TooManyStates,
                std::to_string(labels.size()) + " states given, at most 64 supported");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw Error(ErrorCode::InvalidArgument, "state labels must be non-empty");
    if (!seen.insert(l).second) throw Error(ErrorCode::DuplicateLabel, "state '" + l + "' appears twice");
  }
  auto impl = std::make_shared<Impl>();
  impl->labels = std::move(labels);
  return StateUniverse(std::move(impl));
}

int StateUniverse::index_of(std::string_view name) const {
  const auto& ls = impl_->labels;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i] == name) return static_cast<int>(i);
  }
  return -1;
}

StateSet::StateSet(StateUniverse universe, Mask bits)
    : universe_(std::move(universe)), bits_(bits & universe_.full_mask()) {}

StateSet StateSet::of(const StateUniverse& u, std::span<const std::string> names) {
  Mask bits = 0;
  for (const auto& n : names) {
    const int idx = u.index_of(n);
    if (idx < 0) throw Error(ErrorCode::UnknownState, "unknown state '" + n + "'");
    bits |= Mask{1} << idx;
  }
  return StateSet(u, bits);
}

StateSet StateSet::of(const StateUniverse& u, std::initializer_list<std::string_view> names) {
  std::vector<std::string> v(names.begin(), names.end());
  return of(u, v);
}

std::vector<std::string> StateSet::names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    if (contains(i)) out.push_back(universe_.label(i));
  }
  return out;
}

std::string StateSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& n : names()) {
    if (!first) out.push_back(',');
    out += n;
    first = false;
  }
  out.push_back('}');
  return out;
}

StateSet StateSet::operator&(const StateSet& o) const {
  require_same_universe(*this, o);
  return StateSet(universe_, bits_ & o.bits_);
}

StateSet StateSet::operator|(const StateSet& o) const {
  require_same_universe(*this, o);
  return StateSet(universe_, bits_ | o.bits_);
}

void require_same_universe(const StateSet& a, const StateSet& b) {
  if (!(a.universe() == b.universe())) {
    throw Error(ErrorCode::UniverseMismatch, "sets belong to different universes");
  }
}

StateSet intersect_all(std::span<const StateSet> sets) {
  if (sets.empty()) throw Error(ErrorCode::EmptyEvidenceList, "intersection of an empty list");
  StateSet acc = sets.front();
  for (const auto& s : sets.subspan(1)) acc = acc & s;
  return acc;
}

StateSet union_all(std::span<const StateSet> sets) {
  if (sets.empty()) throw Error(ErrorCode::EmptyEvidenceList, "union of an empty list");
  StateSet acc = sets.front();
  for (const auto& s : sets.subspan(1)) acc = acc | s;
  return acc;
}

bool is_subset(const StateSet& a, const StateSet& b) {
  require_same_universe(a, b);
  return (a.bits() & ~b.bits()) == 0;
}

bool canonical_less(const StateSet& a, const StateSet& b) {
  require_same_universe(a, b);
  return canonical_less(a.bits(), b.bits());
}

}  // namespace evfuse
