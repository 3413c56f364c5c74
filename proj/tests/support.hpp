#pragma once

// Reference implementations used as oracles, plus shared fixtures. These are
// deliberately naive and share nothing with the library beyond value types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "evfuse/error.hpp"
#include "evfuse/evidence.hpp"
#include "evfuse/rational.hpp"
#include "evfuse/state_set.hpp"

namespace evfuse {

inline void PrintTo(const Rational& r, std::ostream* os) { *os << r.to_string(); }
inline void PrintTo(const StateSet& s, std::ostream* os) { *os << s.to_string(); }

}  // namespace evfuse

namespace oracle {

using evfuse::Mask;
using evfuse::Rational;

inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline std::vector<Mask> sorted(std::set<Mask> s) {
  std::vector<Mask> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), [](Mask a, Mask b) { return evfuse::canonical_less(a, b); });
  return v;
}

// Closure of {∅, S} ∪ sets under pairwise union and intersection, repeated
// until nothing new appears.
inline std::vector<Mask> fixpoint_topology(const std::vector<Mask>& sets, Mask full) {
  std::set<Mask> opens = {0, full};
  opens.insert(sets.begin(), sets.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Mask> now(opens.begin(), opens.end());
    for (Mask a : now) {
      for (Mask b : now) {
        grew |= opens.insert(a | b).second;
        grew |= opens.insert(a & b).second;
      }
    }
  }
  return sorted(opens);
}

// Basis = S plus every finite intersection of the sets. T is open iff it is
// the union of the basis elements it contains.
inline std::vector<Mask> basis_topology(const std::vector<Mask>& sets, Mask full) {
  std::set<Mask> basis = {full};
  const std::uint32_t m = static_cast<std::uint32_t>(sets.size());
  for (std::uint32_t fam = 1; fam < (1U << m); ++fam) {
    Mask meet = full;
    for (std::uint32_t i = 0; i < m; ++i) {
      if ((fam >> i) & 1U) meet &= sets[i];
    }
    basis.insert(meet);
  }
  std::set<Mask> opens;
  for (Mask t = 0;; ++t) {
    if (subset(t, full)) {
      Mask cover = 0;
      for (Mask b : basis) {
        if (subset(b, t)) cover |= b;
      }
      if (cover == t) opens.insert(t);
    }
    if (t == full) break;
  }
  return sorted(opens);
}

inline bool dense_in(Mask p, const std::vector<Mask>& opens) {
  for (Mask o : opens) {
    if (o != 0 && (o & p) == 0) return false;
  }
  return true;
}

// ⊆-least dense open, found by scanning the materialised topology.
inline Mask min_dense(const std::vector<Mask>& sets, Mask full) {
  const auto opens = basis_topology(sets, full);
  std::vector<Mask> dense;
  for (Mask o : opens) {
    if (dense_in(o, opens)) dense.push_back(o);
  }
  for (Mask d : dense) {
    if (std::all_of(dense.begin(), dense.end(), [d](Mask o) { return subset(d, o); })) return d;
  }
  throw std::logic_error("no least dense open");
}

struct Family {
  std::uint32_t members;
  Mask meet;
};

// Every subfamily with non-empty intersection that no strictly larger
// subfamily with non-empty intersection contains.
inline std::vector<Family> maximal_fip(const std::vector<Mask>& sets) {
  const std::uint32_t m = static_cast<std::uint32_t>(sets.size());
  std::vector<Family> fip;
  for (std::uint32_t fam = 1; fam < (1U << m); ++fam) {
    Mask meet = ~Mask{0};
    for (std::uint32_t i = 0; i < m; ++i) {
      if ((fam >> i) & 1U) meet &= sets[i];
    }
    if (meet != 0) fip.push_back({fam, meet});
  }
  std::vector<Family> out;
  for (const auto& f : fip) {
    const bool extendable = std::any_of(fip.begin(), fip.end(), [&](const Family& g) {
      return g.members != f.members && (f.members & ~g.members) == 0;
    });
    if (!extendable) out.push_back(f);
  }
  return out;
}

struct Frame {
  Mask full = 0;
  std::vector<Mask> contents;
  std::vector<Rational> p;
};

inline Frame from(const evfuse::QuantitativeEvidenceFrame& f) {
  Frame o;
  o.full = f.universe().full_mask();
  for (const auto& it : f.items()) {
    o.contents.push_back(it.content.bits());
    o.p.push_back(it.certainty);
  }
  return o;
}

inline Rational delta(const Frame& f, std::uint32_t e) {
  Rational r(1);
  for (std::size_t i = 0; i < f.p.size(); ++i) {
    r *= ((e >> i) & 1U) ? f.p[i] : Rational(1) - f.p[i];
  }
  return r;
}

enum class Alloc { I, U, D, Yager };

inline Mask image(const Frame& f, Alloc a, std::uint32_t e) {
  if (e == 0) return f.full;
  std::vector<Mask> chosen;
  for (std::size_t i = 0; i < f.contents.size(); ++i) {
    if ((e >> i) & 1U) chosen.push_back(f.contents[i]);
  }
  Mask meet = f.full;
  Mask join = 0;
  for (Mask c : chosen) {
    meet &= c;
    join |= c;
  }
  switch (a) {
    case Alloc::I:
      return meet;
    case Alloc::U:
      return join;
    case Alloc::D:
      return min_dense(chosen, f.full);
    case Alloc::Yager:
      return meet != 0 ? meet : f.full;
  }
  return 0;
}

enum class Just { DS, SD };

// Bel straight from the definitions: δ_τ by preimage sums, δ_J by
// normalising over the justification frame, Bel by summing δ_J over every
// subset of P.
inline Rational bel(const Frame& f, Alloc a, Just j, Mask p) {
  const auto opens = basis_topology(f.contents, f.full);
  const std::set<Mask> open_set(opens.begin(), opens.end());
  std::map<Mask, Rational> tau;
  for (std::uint32_t e = 0; e < (1U << f.contents.size()); ++e) {
    const Mask t = image(f, a, e);
    if (open_set.count(t) != 0) tau[t] += delta(f, e);
  }
  auto justified = [&](Mask t) {
    if (t == 0 || open_set.count(t) == 0) return false;
    return j == Just::DS || dense_in(t, opens);
  };
  Rational nf(0);
  for (const auto& [t, v] : tau) {
    if (justified(t)) nf += v;
  }
  Rational sum(0);
  for (Mask sub = p;; sub = (sub - 1) & p) {
    if (justified(sub) && tau.count(sub) != 0) sum += tau[sub];
    if (sub == 0) break;
  }
  return sum / nf;
}

}  // namespace oracle

namespace fixture {

inline evfuse::QuantitativeEvidenceFrame car() { return evfuse::parse_frame(evfuse::car_example_document()); }

inline evfuse::StateSet set(const evfuse::QuantitativeEvidenceFrame& f, std::initializer_list<std::string_view> names) {
  return evfuse::StateSet::of(f.universe(), names);
}

// Random list of `m` non-empty strict subsets of an `n`-state universe.
inline std::vector<evfuse::Mask> random_sets(std::mt19937_64& rng, unsigned n, unsigned m) {
  const evfuse::Mask full = (evfuse::Mask{1} << n) - 1;
  std::uniform_int_distribution<evfuse::Mask> pick(1, full - 1);
  std::vector<evfuse::Mask> out;
  for (unsigned i = 0; i < m; ++i) out.push_back(pick(rng));
  return out;
}

inline evfuse::StateUniverse universe(unsigned n) {
  std::vector<std::string> labels;
  for (unsigned i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  return evfuse::StateUniverse::make(labels);
}

// Code of the evfuse::Error the body throws, if any.
inline std::optional<evfuse::ErrorCode> thrown(const std::function<void()>& body) {
  try {
    body();
  } catch (const evfuse::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace fixture
