#include "evfuse/dst.hpp"

#include <algorithm>
#include <map>

#include "evfuse/topology.hpp"

namespace evfuse::dst {

namespace {

auto canonical_order = [](Mask a, Mask b) { return canonical_less(a, b); };
using FocalMap = std::map<Mask, Rational, decltype(canonical_order)>;

}  // namespace

BasicProbabilityAssignment BasicProbabilityAssignment::make(StateUniverse u,
                                                            std::vector<std::pair<Mask, Rational>> focal) {
  FocalMap merged(canonical_order);
  const Mask full = u.full_mask();
  for (auto& [a, v] : focal) {
    if ((a & ~full) != 0) throw Error(ErrorCode::InvalidArgument, "focal set outside the universe");
    if (v.sign() < 0) throw Error(ErrorCode::InvalidArgument, "negative mass");
    if (v.is_zero()) continue;
    if (a == 0) throw Error(ErrorCode::InvalidArgument, "mass on the empty set");
    merged[a] += v;
  }
  Rational total(0);
  BasicProbabilityAssignment m(std::move(u));
  for (auto& [a, v] : merged) {
    total += v;
    m.focal_.emplace_back(a, std::move(v));
  }
  if (total != Rational(1)) throw Error(ErrorCode::InvalidArgument, "masses sum to " + total.to_string() + ", not 1");
  return m;
}

BasicProbabilityAssignment BasicProbabilityAssignment::vacuous(StateUniverse u) {
  const Mask full = u.full_mask();
  return make(std::move(u), {{full, Rational(1)}});
}

Rational BasicProbabilityAssignment::mass(Mask a) const {
  for (const auto& [m, v] : focal_) {
    if (m == a) return v;
  }
  return Rational(0);
}

BasicProbabilityAssignment simple_support(const QuantitativeEvidenceFrame& f, std::size_t index) {
  if (index >= f.arity()) {
    throw Error(ErrorCode::IndexOutOfRange, "item " + std::to_string(index) + " of " + std::to_string(f.arity()));
  }
  const auto& it = f.item(index);
  return BasicProbabilityAssignment::make(
      f.universe(), {{it.content.bits(), it.certainty}, {f.universe().full_mask(), Rational(1) - it.certainty}});
}

BasicProbabilityAssignment drc_combine(const BasicProbabilityAssignment& m1, const BasicProbabilityAssignment& m2) {
  if (!(m1.universe() == m2.universe())) throw Error(ErrorCode::UniverseMismatch, "assignments over different universes");
  FocalMap joint(canonical_order);
  Rational conflict(0);
  for (const auto& [a, va] : m1.focal()) {
    for (const auto& [b, vb] : m2.focal()) {
      const Mask c = a & b;
      if (c == 0) {
        conflict += va * vb;
      } else {
        joint[c] += va * vb;
      }
    }
  }
  const Rational k = Rational(1) - conflict;
  if (k.is_zero()) throw Error(ErrorCode::TotalConflict, "the assignments are totally conflicting");
  std::vector<std::pair<Mask, Rational>> focal;
  for (auto& [c, v] : joint) focal.emplace_back(c, v / k);
  return BasicProbabilityAssignment::make(m1.universe(), std::move(focal));
}

BasicProbabilityAssignment combine_frame(const QuantitativeEvidenceFrame& f) {
  auto acc = BasicProbabilityAssignment::vacuous(f.universe());
  for (std::size_t i = 0; i < f.arity(); ++i) acc = drc_combine(acc, simple_support(f, i));
  return acc;
}

Rational bel_from_bpa(const BasicProbabilityAssignment& m, Mask p) {
  Rational sum(0);
  for (const auto& [a, v] : m.focal()) {
    if ((a & ~p) == 0) sum += v;
  }
  return sum;
}

Rational bel_from_bpa(const BasicProbabilityAssignment& m, const StateSet& p) {
  if (!(m.universe() == p.universe())) throw Error(ErrorCode::UniverseMismatch, "proposition over another universe");
  return bel_from_bpa(m, p.bits());
}

bool tme_believes(const QuantitativeEvidenceFrame& f, const StateSet& p) {
  if (!(f.universe() == p.universe())) throw Error(ErrorCode::FrameMismatch, "proposition over another universe");
  std::vector<StateSet> subbasis;
  for (const auto& it : f.items()) subbasis.push_back(it.content);
  return tme_believes(generate_topology(f.universe(), subbasis), p);
}

bool tme_believes(const Topology& t, const StateSet& p) {
  if (!(t.universe() == p.universe())) throw Error(ErrorCode::FrameMismatch, "proposition over another universe");
  return std::any_of(t.opens().begin(), t.opens().end(), [&](const StateSet& o) {
    return !o.empty() && is_subset(o, p) && is_dense(o, t);
  });
}

}  // namespace evfuse::dst
