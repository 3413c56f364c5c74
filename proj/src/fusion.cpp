#include "evfuse/fusion.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "evfuse/topology.hpp"

namespace evfuse {

namespace {

void require_universe(const QuantitativeEvidenceFrame& f, const StateUniverse& u, const char* what) {
  if (!(f.universe() == u)) throw Error(ErrorCode::FrameMismatch, std::string(what) + " is over another universe");
}

std::vector<Mask> selected(std::span<const Mask> items, std::uint32_t bits) {
  std::vector<Mask> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (((bits >> i) & 1U) != 0) out.push_back(items[i]);
  }
  return out;
}

Mask image_of(const Allocator& a, std::span<const Mask> items, Mask full, std::uint32_t bits) {
  if (a.kind() == AllocatorKind::CustomTable) {
    if (a.table().size() != (std::size_t{1} << items.size())) {
      throw Error(ErrorCode::InvalidAllocator, "allocator '" + a.name() + "' has a table for another frame");
    }
    return a.table()[bits] & full;
  }
  if (bits == 0) return full;
  Mask meet = full;
  Mask join = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (((bits >> i) & 1U) == 0) continue;
    meet &= items[i];
    join |= items[i];
  }
  switch (a.kind()) {
    case AllocatorKind::Intersection: return meet;
    case AllocatorKind::Union: return join;
    case AllocatorKind::YagerStyle: return meet != 0 ? meet : full;
    case AllocatorKind::MinDense: {
      const auto sets = selected(items, bits);
      return masks::min_dense(sets);
    }
    case AllocatorKind::CustomTable: break;
  }
  return full;
}

bool dense_in(Mask t, std::span<const Mask> neighbourhoods) {
  return std::all_of(neighbourhoods.begin(), neighbourhoods.end(), [t](Mask n) { return (n & t) != 0; });
}

std::string alloc_label(const Allocator& a) { return "'" + a.name() + "'"; }

}  // namespace

// ---------------------------------------------------------------------------

Rational delta(const QuantitativeEvidenceFrame& f, EvidenceSubset e) {
  require_subset_of(f, e);
  Rational out(1);
  const Rational one(1);
  for (std::size_t i = 0; i < f.arity(); ++i) {
    const auto& p = f.item(i).certainty;
    out *= e.contains(i) ? p : one - p;
  }
  return out;
}

std::vector<Rational> delta_table(const QuantitativeEvidenceFrame& f) {
  require_enumerable(f);
  std::vector<Rational> table(std::size_t{1} << f.arity());
  table[0] = Rational(1);
  const Rational one(1);
  for (std::size_t i = 0; i < f.arity(); ++i) {
    const Rational& p = f.item(i).certainty;
    const Rational q = one - p;
    const std::size_t half = std::size_t{1} << i;
    for (std::size_t b = 0; b < half; ++b) {
      table[b | half] = table[b] * p;
      table[b] *= q;
    }
  }
  return table;
}

// ---------------------------------------------------------------------------

std::string_view JustificationFrame::name() const {
  switch (kind_) {
    case JustificationKind::DempsterShafer: return "ds";
    case JustificationKind::StrongDenseness: return "sd";
    case JustificationKind::Custom: return "custom";
  }
  return "custom";
}

bool JustificationFrame::contains(Mask t) const {
  switch (kind_) {
    case JustificationKind::Custom:
      return std::binary_search(custom_.begin(), custom_.end(), t,
                                [](Mask a, Mask b) { return canonical_less(a, b); });
    case JustificationKind::DempsterShafer:
      return t != 0 && masks::is_open(t, subbasis_, universe_.full_mask());
    case JustificationKind::StrongDenseness:
      return t != 0 && masks::is_open(t, subbasis_, universe_.full_mask()) && dense_in(t, neighbourhoods_);
  }
  return false;
}

bool JustificationFrame::contains(const StateSet& t) const { return t.universe() == universe_ && contains(t.bits()); }

JustificationFrame justification_frame(const QuantitativeEvidenceFrame& f, JustificationKind kind) {
  if (kind == JustificationKind::Custom) {
    throw Error(ErrorCode::InvalidArgument, "custom frames need an explicit member list");
  }
  JustificationFrame j(f.universe(), kind);
  j.subbasis_ = f.content_masks();
  j.neighbourhoods_ = masks::minimal_neighbourhoods(j.subbasis_, f.universe().full_mask());
  return j;
}

JustificationFrame custom_justification_frame(const QuantitativeEvidenceFrame& f, std::span<const StateSet> members) {
  JustificationFrame j(f.universe(), JustificationKind::Custom);
  j.subbasis_ = f.content_masks();
  const Mask full = f.universe().full_mask();
  for (const auto& m : members) {
    require_universe(f, m.universe(), "justification member");
    if (m.empty()) throw Error(ErrorCode::CustomFrameContainsEmpty, "a justification frame cannot contain {}");
    if (!masks::is_open(m.bits(), j.subbasis_, full)) {
      throw Error(ErrorCode::CustomFrameNotOpen, m.to_string() + " is not open in the evidential topology");
    }
    j.custom_.push_back(m.bits());
  }
  std::sort(j.custom_.begin(), j.custom_.end(), [](Mask a, Mask b) { return canonical_less(a, b); });
  j.custom_.erase(std::unique(j.custom_.begin(), j.custom_.end()), j.custom_.end());
  if (!std::binary_search(j.custom_.begin(), j.custom_.end(), full,
                          [](Mask a, Mask b) { return canonical_less(a, b); })) {
    throw Error(ErrorCode::CustomFrameMissingTotalSet, "a justification frame must contain the full state set");
  }
  return j;
}

std::vector<StateSet> justification_members(const QuantitativeEvidenceFrame& f, const JustificationFrame& j) {
  require_universe(f, j.universe(), "justification frame");
  std::vector<StateSet> out;
  if (j.kind() == JustificationKind::Custom) {
    for (Mask m : j.custom_members()) out.emplace_back(f.universe(), m);
    return out;
  }
  std::vector<StateSet> subbasis;
  for (const auto& it : f.items()) subbasis.push_back(it.content);
  const Topology t = generate_topology(f.universe(), subbasis);
  for (const auto& o : t.opens()) {
    if (j.contains(o.bits())) out.push_back(o);
  }
  return out;
}

// ---------------------------------------------------------------------------

Allocator Allocator::custom(std::string name, std::vector<Mask> table) {
  Allocator a(AllocatorKind::CustomTable, std::move(name));
  a.table_ = std::move(table);
  return a;
}

Allocator Allocator::builtin(std::string_view name) {
  if (name == "i") return intersection();
  if (name == "u") return union_of();
  if (name == "d") return min_dense();
  if (name == "yager") return yager_style();
  throw Error(ErrorCode::InvalidAllocator, "unknown allocator '" + std::string(name) + "' (expected i, u, d or yager)");
}

Allocator custom_allocator(const QuantitativeEvidenceFrame& f, std::string name,
                           std::span<const std::pair<EvidenceSubset, StateSet>> map) {
  require_enumerable(f);
  const std::size_t n = std::size_t{1} << f.arity();
  std::vector<Mask> table(n);
  std::vector<bool> seen(n, false);
  for (const auto& [e, image] : map) {
    require_subset_of(f, e);
    require_universe(f, image.universe(), "allocator image");
    if (seen[e.bits]) {
      throw Error(ErrorCode::InvalidAllocator, "allocator '" + name + "' lists " + describe(f, e) + " twice");
    }
    seen[e.bits] = true;
    table[e.bits] = image.bits();
  }
  for (std::uint32_t b = 0; b < n; ++b) {
    if (!seen[b]) {
      throw Error(ErrorCode::InvalidAllocator,
                  "allocator '" + name + "' has no image for " + describe(f, EvidenceSubset{b}));
    }
  }
  return Allocator::custom(std::move(name), std::move(table));
}

StateSet allocate(const QuantitativeEvidenceFrame& f, const Allocator& a, EvidenceSubset e) {
  require_subset_of(f, e);
  const auto items = f.content_masks();
  return StateSet(f.universe(), image_of(a, items, f.universe().full_mask(), e.bits));
}

AllocationReport validate_allocators(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators) {
  require_enumerable(f);
  AllocationReport report;
  const auto items = f.content_masks();
  const Mask full = f.universe().full_mask();
  const std::uint32_t n = std::uint32_t{1} << f.arity();
  std::vector<Mask> images(allocators.size());

  for (std::uint32_t bits = 0; bits < n; ++bits) {
    const EvidenceSubset e{bits};
    for (std::size_t k = 0; k < allocators.size(); ++k) images[k] = image_of(allocators[k], items, full, bits);

    if (bits == 0) {
      for (std::size_t k = 0; k < allocators.size(); ++k) {
        if (images[k] != full) {
          report.push_back({1, {allocators[k].name()}, e,
                            alloc_label(allocators[k]) + " sends {} to " + StateSet(f.universe(), images[k]).to_string()});
        }
      }
    } else {
      const auto sets = selected(items, bits);
      const auto neighbourhoods = masks::minimal_neighbourhoods(sets, full);
      for (std::size_t k = 0; k < allocators.size(); ++k) {
        const Mask t = images[k];
        if (t == 0) continue;
        if (!masks::is_open(t, sets, full)) {
          report.push_back({2, {allocators[k].name()}, e,
                            alloc_label(allocators[k]) + " image " + StateSet(f.universe(), t).to_string() +
                                " is not open in the topology generated by " + describe(f, e)});
        } else if (!dense_in(t, neighbourhoods)) {
          report.push_back({2, {allocators[k].name()}, e,
                            alloc_label(allocators[k]) + " image " + StateSet(f.universe(), t).to_string() +
                                " is not dense in the topology generated by " + describe(f, e)});
        }
      }
    }

    for (std::size_t a = 0; a < allocators.size(); ++a) {
      for (std::size_t b = a + 1; b < allocators.size(); ++b) {
        const Mask x = images[a];
        const Mask y = images[b];
        if ((x & ~y) != 0 && (y & ~x) != 0) {
          report.push_back({3, {allocators[a].name(), allocators[b].name()}, e,
                            alloc_label(allocators[a]) + " and " + alloc_label(allocators[b]) +
                                " give incomparable images " + StateSet(f.universe(), x).to_string() + " and " +
                                StateSet(f.universe(), y).to_string() + " at " + describe(f, e)});
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

Rational AllocationMass::at(Mask t) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                             [](const auto& e, Mask m) { return canonical_less(e.first, m); });
  return it != entries_.end() && it->first == t ? it->second : Rational(0);
}

Rational AllocationMass::total() const {
  Rational sum(0);
  for (const auto& [m, v] : entries_) sum += v;
  return sum;
}

AllocationMass allocation_mass(const QuantitativeEvidenceFrame& f, const Allocator& a) {
  const auto deltas = delta_table(f);
  return allocation_mass(f, a, deltas);
}

AllocationMass allocation_mass(const QuantitativeEvidenceFrame& f, const Allocator& a, std::span<const Rational> deltas) {
  require_enumerable(f);
  const auto items = f.content_masks();
  const Mask full = f.universe().full_mask();
  if (deltas.size() != (std::size_t{1} << f.arity())) {
    throw Error(ErrorCode::FrameMismatch, "delta table does not match the frame");
  }
  auto order = [](Mask x, Mask y) { return canonical_less(x, y); };
  std::map<Mask, Rational, decltype(order)> acc(order);
  for (std::uint32_t bits = 0; bits < deltas.size(); ++bits) {
    const Mask t = image_of(a, items, full, bits);
    acc[t] += deltas[bits];
  }
  AllocationMass mass(f.universe(), a.name());
  for (auto& [t, v] : acc) {
    // Images outside the evidential topology carry no mass by definition.
    if (v.is_zero() || !masks::is_open(t, items, full)) continue;
    mass.entries_.emplace_back(t, std::move(v));
  }
  return mass;
}

Rational normalization_factor(const AllocationMass& mass, const JustificationFrame& j) {
  if (!(mass.universe() == j.universe())) throw Error(ErrorCode::FrameMismatch, "justification frame over another universe");
  Rational sum(0);
  for (const auto& [t, v] : mass.entries()) {
    if (j.contains(t)) sum += v;
  }
  return sum;
}

Rational delta_J(const AllocationMass& mass, const JustificationFrame& j, Mask t) {
  if (!j.contains(t)) return Rational(0);
  const Rational v = mass.at(t);
  if (v.is_zero()) return v;
  return v / normalization_factor(mass, j);
}

Rational bel(const AllocationMass& mass, const JustificationFrame& j, Mask p) {
  const Rational nf = normalization_factor(mass, j);
  Rational sum(0);
  for (const auto& [t, v] : mass.entries()) {
    if ((t & ~p) == 0 && j.contains(t)) sum += v;
  }
  return sum.is_zero() ? sum : sum / nf;
}

Rational delta_tau(const QuantitativeEvidenceFrame& f, const Allocator& a, const StateSet& t) {
  require_universe(f, t.universe(), "set");
  return allocation_mass(f, a).at(t.bits());
}

Rational normalization_factor(const QuantitativeEvidenceFrame& f, const Allocator& a, const JustificationFrame& j) {
  require_universe(f, j.universe(), "justification frame");
  return normalization_factor(allocation_mass(f, a), j);
}

Rational delta_J(const QuantitativeEvidenceFrame& f, const Allocator& a, const JustificationFrame& j, const StateSet& t) {
  require_universe(f, t.universe(), "set");
  require_universe(f, j.universe(), "justification frame");
  return delta_J(allocation_mass(f, a), j, t.bits());
}

Rational bel(const QuantitativeEvidenceFrame& f, const Allocator& a, const JustificationFrame& j, const StateSet& p) {
  require_universe(f, p.universe(), "proposition");
  require_universe(f, j.universe(), "justification frame");
  return bel(allocation_mass(f, a), j, p.bits());
}

BeliefReport belief_report(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators,
                           const JustificationFrame& j, std::span<const StateSet> propositions) {
  require_universe(f, j.universe(), "justification frame");
  for (const auto& p : propositions) require_universe(f, p.universe(), "proposition");
  const auto deltas = delta_table(f);

  BeliefReport r;
  r.justification = std::string(j.name());
  r.propositions.assign(propositions.begin(), propositions.end());
  r.beliefs.assign(propositions.size(), {});
  const Mask full = f.universe().full_mask();
  for (const auto& a : allocators) {
    const AllocationMass mass = allocation_mass(f, a, deltas);
    r.allocators.push_back(a.name());
    r.normalization.push_back(normalization_factor(mass, j));
    r.uncertainty.push_back(delta_J(mass, j, full));
    for (std::size_t k = 0; k < propositions.size(); ++k) {
      r.beliefs[k].push_back(bel(mass, j, propositions[k].bits()));
    }
  }
  return r;
}

std::string report_to_json(const BeliefReport& r, unsigned precision) {
  using ordered_json = nlohmann::ordered_json;
  auto value = [precision](const Rational& v) {
    ordered_json o;
    o["num"] = v.numerator_string();
    o["den"] = v.denominator_string();
    o["rendered"] = v.to_decimal(precision);
    return o;
  };
  auto per_allocator = [&](const std::vector<Rational>& vs) {
    ordered_json o = ordered_json::object();
    for (std::size_t a = 0; a < r.allocators.size(); ++a) o[r.allocators[a]] = value(vs[a]);
    return o;
  };
  ordered_json doc;
  doc["justification"] = r.justification;
  doc["allocators"] = r.allocators;
  doc["rows"] = ordered_json::array();
  for (std::size_t k = 0; k < r.propositions.size(); ++k) {
    ordered_json row;
    row["proposition"] = r.propositions[k].names();
    row["beliefs"] = per_allocator(r.beliefs[k]);
    doc["rows"].push_back(std::move(row));
  }
  doc["uncertainty"] = per_allocator(r.uncertainty);
  doc["normalization"] = per_allocator(r.normalization);
  return doc.dump(2) + "\n";
}

}  // namespace evfuse
