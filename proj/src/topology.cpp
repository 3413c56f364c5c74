#include "evfuse/topology.hpp"

#include <algorithm>
#include <unordered_set>

#include "evfuse/error.hpp"

namespace evfuse {

namespace masks {

std::vector<Mask> minimal_neighbourhoods(std::span<const Mask> sets, Mask universe) {
  std::vector<Mask> out;
  for (Mask rest = universe; rest != 0; rest &= rest - 1) {
    const Mask x = rest & (~rest + 1);
    Mask n = universe;
    for (Mask s : sets) {
      if ((s & x) != 0) n &= s;
    }
    out.push_back(n);
  }
  return out;
}

bool is_open(Mask t, std::span<const Mask> sets, Mask universe) {
  if (t == 0 || t == universe) return true;
  if ((t & ~universe) != 0) return false;
  for (Mask rest = t; rest != 0; rest &= rest - 1) {
    const Mask x = rest & (~rest + 1);
    Mask n = universe;
    for (Mask s : sets) {
      if ((s & x) != 0) n &= s;
    }
    if ((n & ~t) != 0) return false;
  }
  return true;
}

namespace {

// For each covered state x, the family (as an index bitset) of sets that
// contain x. A family with non-empty intersection is contained in the family
// of any point of that intersection, so the maximal finite-intersection
// families are exactly the maximal ones among these.
std::vector<std::uint64_t> maximal_point_families(std::span<const Mask> sets) {
  Mask covered = 0;
  for (Mask s : sets) covered |= s;
  std::vector<std::uint64_t> families;
  for (Mask rest = covered; rest != 0; rest &= rest - 1) {
    const Mask x = rest & (~rest + 1);
    std::uint64_t fam = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if ((sets[i] & x) != 0) fam |= std::uint64_t{1} << i;
    }
    families.push_back(fam);
  }
  std::sort(families.begin(), families.end());
  families.erase(std::unique(families.begin(), families.end()), families.end());

  std::vector<std::uint64_t> maximal;
  for (std::uint64_t f : families) {
    const bool dominated = std::any_of(families.begin(), families.end(), [f](std::uint64_t g) {
      return g != f && (f & ~g) == 0;
    });
    if (!dominated) maximal.push_back(f);
  }
  return maximal;
}

Mask intersection_of(std::span<const Mask> sets, std::uint64_t family) {
  Mask acc = ~Mask{0};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (((family >> i) & 1U) != 0) acc &= sets[i];
  }
  return acc;
}

}  // namespace

Mask min_dense(std::span<const Mask> sets) {
  Mask out = 0;
  for (std::uint64_t fam : maximal_point_families(sets)) out |= intersection_of(sets, fam);
  return out;
}

}  // namespace masks

bool Topology::contains(const StateSet& s) const {
  if (!(s.universe() == universe_)) return false;
  auto it = std::lower_bound(opens_.begin(), opens_.end(), s.bits(),
                             [](const StateSet& o, Mask m) { return canonical_less(o.bits(), m); });
  return it != opens_.end() && it->bits() == s.bits();
}

std::vector<StateSet> Topology::minimal_nonempty_opens() const {
  std::vector<StateSet> out;
  for (const auto& o : opens_) {
    if (o.empty()) continue;
    const bool has_smaller = std::any_of(opens_.begin(), opens_.end(), [&](const StateSet& p) {
      return !p.empty() && p.bits() != o.bits() && (p.bits() & ~o.bits()) == 0;
    });
    if (!has_smaller) out.push_back(o);
  }
  return out;
}

Topology generate_topology(const StateUniverse& u, std::span<const StateSet> subbasis) {
  std::vector<Mask> sets;
  sets.reserve(subbasis.size());
  for (const auto& s : subbasis) {
    if (!(s.universe() == u)) throw Error(ErrorCode::UniverseMismatch, "subbasis set over another universe");
    sets.push_back(s.bits());
  }
  const Mask full = u.full_mask();
  std::vector<Mask> basis = masks::minimal_neighbourhoods(sets, full);
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());

  // Every open is a union of minimal neighbourhoods, so closing {∅} under
  // "add one neighbourhood" reaches the whole topology.
  std::unordered_set<Mask> seen{0, full};
  std::vector<Mask> frontier{0};
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask o : frontier) {
      for (Mask b : basis) {
        const Mask m = o | b;
        if (seen.insert(m).second) {
          if (seen.size() > kMaxOpens) {
            throw Error(ErrorCode::CapacityExceeded, "generated topology exceeds " +
                                                         std::to_string(kMaxOpens) + " opens");
          }
          next.push_back(m);
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<Mask> ordered(seen.begin(), seen.end());
  std::sort(ordered.begin(), ordered.end(), [](Mask a, Mask b) { return canonical_less(a, b); });
  std::vector<StateSet> opens;
  opens.reserve(ordered.size());
  for (Mask m : ordered) opens.emplace_back(u, m);
  return Topology(u, std::move(opens));
}

bool is_dense(const StateSet& p, const Topology& t) {
  if (!(p.universe() == t.universe())) throw Error(ErrorCode::UniverseMismatch, "proposition over another universe");
  return std::all_of(t.opens().begin(), t.opens().end(),
                     [&](const StateSet& o) { return o.empty() || (o.bits() & p.bits()) != 0; });
}

bool supports(const StateSet& e, const StateSet& p) { return is_subset(e, p); }

std::vector<StateSet> arguments_for(const Topology& t, const StateSet& p) {
  if (!(p.universe() == t.universe())) throw Error(ErrorCode::UniverseMismatch, "proposition over another universe");
  std::vector<StateSet> out;
  for (const auto& o : t.opens()) {
    if (!o.empty() && (o.bits() & ~p.bits()) == 0) out.push_back(o);
  }
  return out;
}

namespace {

std::vector<Mask> checked_masks(std::span<const StateSet> evidence) {
  if (evidence.empty()) throw Error(ErrorCode::EmptyEvidenceList, "no evidence sets given");
  if (evidence.size() > 64) throw Error(ErrorCode::CapacityExceeded, "at most 64 evidence sets supported");
  std::vector<Mask> out;
  for (const auto& e : evidence) {
    require_same_universe(evidence.front(), e);
    if (e.empty()) throw Error(ErrorCode::EmptyEvidence, "evidence sets must be non-empty");
    out.push_back(e.bits());
  }
  return out;
}

}  // namespace

std::vector<Family> maximal_fip_families(std::span<const StateSet> evidence) {
  const std::vector<Mask> sets = checked_masks(evidence);
  std::vector<Family> out;
  for (std::uint64_t fam : masks::maximal_point_families(sets)) {
    Family f{{}, StateSet(evidence.front().universe(), masks::intersection_of(sets, fam))};
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (((fam >> i) & 1U) != 0) f.members.push_back(i);
    }
    out.push_back(std::move(f));
  }
  return out;
}

StateSet min_dense(std::span<const StateSet> evidence) {
  const std::vector<Mask> sets = checked_masks(evidence);
  return StateSet(evidence.front().universe(), masks::min_dense(sets));
}

}  // namespace evfuse
