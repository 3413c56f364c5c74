#include "evfuse/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace evfuse::verify {

namespace {

using ordered_json = nlohmann::ordered_json;

CheckOutcome pass(std::string name, ordered_json detail = ordered_json::object()) {
  return CheckOutcome{std::move(name), true, std::move(detail), std::nullopt};
}

CheckOutcome fail(std::string name, ordered_json detail, const QuantitativeEvidenceFrame* f = nullptr) {
  CheckOutcome o{std::move(name), false, std::move(detail), std::nullopt};
  if (f != nullptr) o.frame = serialize_frame(*f);
  return o;
}

// Ties a generic outcome to the frame it came from.
CheckOutcome on_frame(CheckOutcome o, const QuantitativeEvidenceFrame& f) {
  if (!o.passed) o.frame = serialize_frame(f);
  return o;
}

std::string set_text(const StateUniverse& u, Mask m) { return StateSet(u, m).to_string(); }

bool within_unit(const Rational& v) { return v.sign() >= 0 && v <= Rational(1); }

std::vector<StateSet> contents(const QuantitativeEvidenceFrame& f) {
  std::vector<StateSet> out;
  for (const auto& it : f.items()) out.push_back(it.content);
  return out;
}

// Enumerating every proposition is only sensible for small universes.
constexpr std::size_t kMaxExhaustiveStates = 20;

void require_exhaustive(const QuantitativeEvidenceFrame& f) {
  if (f.universe().size() > kMaxExhaustiveStates) {
    throw Error(ErrorCode::CapacityExceeded, "exhaustive proposition checks support at most 20 states");
  }
}

}  // namespace

ordered_json CheckOutcome::witness() const {
  ordered_json w;
  w["check"] = check;
  w["frame"] = frame ? ordered_json::parse(*frame) : ordered_json(nullptr);
  w["detail"] = detail;
  return w;
}

CheckOutcome check_mass_axioms(std::span<const Rational> values) {
  Rational total(0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!within_unit(values[k])) {
      return fail("mass_axioms", {{"index", k}, {"value", values[k].to_string()}, {"reason", "value outside [0,1]"}});
    }
    total += values[k];
  }
  if (total != Rational(1)) return fail("mass_axioms", {{"total", total.to_string()}, {"reason", "total is not 1"}});
  return pass("mass_axioms", {{"total", total.to_string()}, {"entries", values.size()}});
}

CheckOutcome check_bpa_axioms(std::span<const std::pair<Mask, Rational>> focal) {
  Rational total(0);
  for (const auto& [a, v] : focal) {
    if (a == 0 && !v.is_zero()) return fail("bpa_axioms", {{"reason", "mass on the empty set"}, {"value", v.to_string()}});
    if (!within_unit(v)) return fail("bpa_axioms", {{"reason", "value outside [0,1]"}, {"value", v.to_string()}});
    total += v;
  }
  if (total != Rational(1)) return fail("bpa_axioms", {{"reason", "total is not 1"}, {"total", total.to_string()}});
  return pass("bpa_axioms", {{"focal_sets", focal.size()}});
}

CheckOutcome check_bpa_axioms(const dst::BasicProbabilityAssignment& m) { return check_bpa_axioms(m.focal()); }

CheckOutcome check_delta(const QuantitativeEvidenceFrame& f) {
  const auto table = delta_table(f);
  return check_delta(f, table);
}

CheckOutcome check_delta(const QuantitativeEvidenceFrame& f, std::span<const Rational> deltas) {
  if (deltas.size() != (std::size_t{1} << f.arity())) {
    return fail("delta", {{"reason", "table size does not match the frame"}}, &f);
  }
  CheckOutcome mass = check_mass_axioms(deltas);
  if (!mass.passed) {
    mass.check = "delta";
    return on_frame(std::move(mass), f);
  }
  for (std::size_t i = 0; i < f.arity(); ++i) {
    Rational marginal(0);
    for (std::size_t b = 0; b < deltas.size(); ++b) {
      if (((b >> i) & 1U) != 0) marginal += deltas[b];
    }
    if (marginal != f.item(i).certainty) {
      return fail("delta",
                  {{"reason", "marginal differs from certainty"},
                   {"item", f.item(i).name},
                   {"marginal", marginal.to_string()},
                   {"certainty", f.item(i).certainty.to_string()}},
                  &f);
    }
  }
  return pass("delta", {{"subsets", deltas.size()}});
}

CheckOutcome check_belief_axioms(const BeliefEvaluator& bel, const StateUniverse& u, unsigned n_max,
                                 std::span<const Mask> pool) {
  const std::string name = "belief_axioms";
  const Mask full = u.full_mask();
  if (!bel(0).is_zero()) return fail(name, {{"reason", "Bel({}) is not 0"}, {"value", bel(0).to_string()}});
  if (bel(full) != Rational(1)) return fail(name, {{"reason", "Bel(S) is not 1"}, {"value", bel(full).to_string()}});

  std::vector<Mask> props(pool.begin(), pool.end());
  std::sort(props.begin(), props.end(), [](Mask a, Mask b) { return canonical_less(a, b); });
  props.erase(std::unique(props.begin(), props.end()), props.end());

  // Belief of every set the checks below can touch, computed once.
  std::vector<std::pair<Mask, Rational>> cache;
  auto value = [&](Mask m) -> const Rational& {
    auto it = std::lower_bound(cache.begin(), cache.end(), m, [](const auto& e, Mask k) { return e.first < k; });
    if (it == cache.end() || it->first != m) it = cache.insert(it, {m, bel(m)});
    return it->second;
  };

  for (Mask p : props) {
    if (!within_unit(value(p))) {
      return fail(name, {{"reason", "value outside [0,1]"}, {"proposition", set_text(u, p)}, {"value", value(p).to_string()}});
    }
  }
  for (Mask p : props) {
    for (Mask q : props) {
      if ((p & ~q) == 0 && value(q) < value(p)) {
        return fail(name, {{"reason", "not monotone"},
                           {"subset", set_text(u, p)},
                           {"superset", set_text(u, q)},
                           {"bel_subset", value(p).to_string()},
                           {"bel_superset", value(q).to_string()}});
      }
    }
  }

  // Bel(A_1 ∪ ... ∪ A_n) ≥ Σ_{∅≠I} (−1)^{|I|+1} Bel(∩_{i∈I} A_i)
  const std::size_t n_pool = props.size();
  std::vector<std::size_t> idx;
  std::size_t tuples = 0;
  std::function<CheckOutcome(std::size_t)> walk = [&](std::size_t start) -> CheckOutcome {
    if (idx.size() >= 2) {
      ++tuples;
      Mask joined = 0;
      for (auto k : idx) joined |= props[k];
      Rational bound(0);
      const std::size_t n = idx.size();
      for (std::uint32_t sel = 1; sel < (std::uint32_t{1} << n); ++sel) {
        Mask meet = full;
        for (std::size_t k = 0; k < n; ++k) {
          if (((sel >> k) & 1U) != 0) meet &= props[idx[k]];
        }
        if (std::popcount(sel) % 2 == 1) {
          bound += value(meet);
        } else {
          bound -= value(meet);
        }
      }
      if (value(joined) < bound) {
        ordered_json sets = ordered_json::array();
        for (auto k : idx) sets.push_back(set_text(u, props[k]));
        return fail(name, {{"reason", "superadditivity violated"},
                           {"sets", sets},
                           {"bel_union", value(joined).to_string()},
                           {"bound", bound.to_string()}});
      }
    }
    if (idx.size() == n_max) return pass(name);
    for (std::size_t k = start; k < n_pool; ++k) {
      idx.push_back(k);
      CheckOutcome o = walk(k + 1);
      idx.pop_back();
      if (!o.passed) return o;
    }
    return pass(name);
  };
  CheckOutcome o = walk(0);
  if (o.passed) o.detail = {{"propositions", n_pool}, {"unions_checked", tuples}, {"n_max", n_max}};
  return o;
}

std::vector<Mask> proposition_pool(const StateUniverse& u, std::span<const Mask> extra, std::size_t limit) {
  const std::size_t n = u.size();
  const Mask full = u.full_mask();
  std::vector<Mask> pool;
  if (n < 63 && (std::size_t{1} << n) <= limit) {
    for (Mask m = 0; m <= full; ++m) pool.push_back(m);
    return pool;
  }
  auto add = [&](Mask m) {
    if (pool.size() < limit && std::find(pool.begin(), pool.end(), m) == pool.end()) pool.push_back(m);
  };
  add(0);
  add(full);
  for (Mask m : extra) add(m & full);
  for (std::size_t i = 0; i < n; ++i) add(Mask{1} << i);
  for (std::size_t i = 0; i < n; ++i) add(full & ~(Mask{1} << i));
  return pool;
}

CheckOutcome check_allocation_definition(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators) {
  const auto report = validate_allocators(f, allocators);
  if (report.empty()) return pass("allocation_definition", {{"allocators", allocators.size()}});
  const auto& issue = report.front();
  return fail("allocation_definition",
              {{"condition", issue.condition},
               {"allocators", issue.allocators},
               {"witness", describe(f, issue.witness)},
               {"reason", issue.detail},
               {"violations", report.size()}},
              &f);
}

CheckOutcome check_sandwich(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators) {
  require_enumerable(f);
  const Allocator lo = Allocator::intersection();
  const Allocator hi = Allocator::union_of();
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << f.arity()); ++b) {
    const EvidenceSubset e{b};
    const Mask lower = allocate(f, lo, e).bits();
    const Mask upper = allocate(f, hi, e).bits();
    for (const auto& a : allocators) {
      const Mask img = allocate(f, a, e).bits();
      if ((lower & ~img) != 0 || (img & ~upper) != 0) {
        return fail("sandwich",
                    {{"allocator", a.name()},
                     {"witness", describe(f, e)},
                     {"image", set_text(f.universe(), img)},
                     {"intersection", set_text(f.universe(), lower)},
                     {"union", set_text(f.universe(), upper)}},
                    &f);
      }
    }
  }
  return pass("sandwich", {{"allocators", allocators.size()}});
}

CheckOutcome check_justified_bpa(const QuantitativeEvidenceFrame& f, const Allocator& a, const JustificationFrame& j) {
  const AllocationMass mass = allocation_mass(f, a);
  std::vector<std::pair<Mask, Rational>> focal;
  for (const auto& [t, v] : mass.entries()) {
    const Rational dj = delta_J(mass, j, t);
    if (!dj.is_zero()) focal.emplace_back(t, dj);
  }
  CheckOutcome o = check_bpa_axioms(focal);
  o.check = "justified_bpa";
  o.detail["allocator"] = a.name();
  o.detail["justification"] = std::string(j.name());
  return on_frame(std::move(o), f);
}

CheckOutcome check_prop5(const QuantitativeEvidenceFrame& f) { return check_prop5(f, Allocator::intersection()); }

CheckOutcome check_prop5(const QuantitativeEvidenceFrame& f, const Allocator& a) {
  require_exhaustive(f);
  const auto combined = dst::combine_frame(f);
  const auto mass = allocation_mass(f, a);
  const auto ds = justification_frame(f, JustificationKind::DempsterShafer);
  const Mask full = f.universe().full_mask();
  for (Mask p = 0;; ++p) {
    const Rational layered = bel(mass, ds, p);
    const Rational classical = dst::bel_from_bpa(combined, p);
    if (layered != classical) {
      return fail("prop5",
                  {{"allocator", a.name()},
                   {"proposition", set_text(f.universe(), p)},
                   {"multi_layer", layered.to_string()},
                   {"dempster", classical.to_string()}},
                  &f);
    }
    if (p == full) break;
  }
  return pass("prop5", {{"propositions", std::uint64_t{full} + 1}});
}

CheckOutcome check_prop6(const QuantitativeEvidenceFrame& f) { return check_prop6(f, Allocator::min_dense()); }

CheckOutcome check_prop6(const QuantitativeEvidenceFrame& f, const Allocator& a) {
  require_exhaustive(f);
  const auto topology = generate_topology(f.universe(), contents(f));
  const auto mass = allocation_mass(f, a);
  const auto sd = justification_frame(f, JustificationKind::StrongDenseness);
  const Mask full = f.universe().full_mask();
  for (Mask p = 0;; ++p) {
    const bool layered = bel(mass, sd, p).sign() > 0;
    const bool qualitative = dst::tme_believes(topology, StateSet(f.universe(), p));
    if (layered != qualitative) {
      return fail("prop6",
                  {{"allocator", a.name()},
                   {"proposition", set_text(f.universe(), p)},
                   {"multi_layer_positive", layered},
                   {"topological_belief", qualitative}},
                  &f);
    }
    if (p == full) break;
  }
  return pass("prop6", {{"propositions", std::uint64_t{full} + 1}});
}

CheckOutcome check_lemma1(const QuantitativeEvidenceFrame& f) {
  return check_lemma1(f, [](std::span<const Mask> sets) { return masks::min_dense(sets); });
}

CheckOutcome check_lemma1(const QuantitativeEvidenceFrame& f, const MinDenseFn& candidate) {
  require_enumerable(f);
  const auto items = contents(f);
  for (std::uint32_t b = 1; b < (std::uint32_t{1} << f.arity()); ++b) {
    std::vector<StateSet> chosen;
    std::vector<Mask> chosen_masks;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (((b >> i) & 1U) != 0) {
        chosen.push_back(items[i]);
        chosen_masks.push_back(items[i].bits());
      }
    }
    const StateSet m(f.universe(), candidate(chosen_masks));
    const Topology t = generate_topology(f.universe(), chosen);
    ordered_json where = {{"evidence", describe(f, EvidenceSubset{b})}, {"candidate", m.to_string()}};
    if (!t.contains(m)) {
      where["reason"] = "candidate is not open";
      return fail("lemma1", where, &f);
    }
    if (!is_dense(m, t)) {
      where["reason"] = "candidate is not dense";
      return fail("lemma1", where, &f);
    }
    for (const auto& o : t.opens()) {
      if (is_dense(o, t) && !is_subset(m, o)) {
        where["reason"] = "a dense open does not contain the candidate";
        where["dense_open"] = o.to_string();
        return fail("lemma1", where, &f);
      }
    }
  }
  return pass("lemma1", {{"subsets", (std::uint64_t{1} << f.arity()) - 1}});
}

CheckOutcome check_no_normalization(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators) {
  const auto ds = justification_frame(f, JustificationKind::DempsterShafer);
  const auto deltas = delta_table(f);
  for (const auto& a : allocators) {
    const Rational nf = normalization_factor(allocation_mass(f, a, deltas), ds);
    if (nf != Rational(1)) {
      return fail("no_normalization", {{"allocator", a.name()}, {"normalization", nf.to_string()}}, &f);
    }
  }
  return pass("no_normalization", {{"allocators", allocators.size()}});
}

QuantitativeEvidenceFrame random_frame(std::uint64_t seed, std::size_t max_states, std::size_t max_items) {
  // mt19937_64 output is fixed by the standard; the reductions below avoid
  // the implementation-defined distributions.
  std::mt19937_64 rng(seed);
  auto below = [&rng](std::uint64_t n) { return rng() % n; };

  const std::size_t n_states = 2 + below(std::max<std::size_t>(max_states, 2) - 1);
  const std::size_t n_items = 1 + below(std::max<std::size_t>(max_items, 1));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n_states; ++i) labels.push_back("s" + std::to_string(i));
  StateUniverse u = StateUniverse::make(labels);
  const Mask full = u.full_mask();

  std::vector<EvidenceItem> items;
  for (std::size_t i = 0; i < n_items; ++i) {
    Mask content = 0;
    while (content == 0 || content == full) content = rng() & full;
    const auto den = static_cast<std::int64_t>(2 + below(31));
    const auto num = static_cast<std::int64_t>(1 + below(static_cast<std::uint64_t>(den - 1)));
    items.push_back({"E" + std::to_string(i + 1), StateSet(u, content), Rational(num, den)});
  }
  return QuantitativeEvidenceFrame(std::move(u), std::move(items));
}

std::vector<CheckOutcome> run_all(const QuantitativeEvidenceFrame& f) {
  const std::vector<Allocator> allocators = {Allocator::intersection(), Allocator::union_of(), Allocator::min_dense(),
                                             Allocator::yager_style()};
  return run_all(f, allocators);
}

std::vector<CheckOutcome> run_all(const QuantitativeEvidenceFrame& f, std::span<const Allocator> allocators) {
  const std::vector<JustificationFrame> frames = {justification_frame(f, JustificationKind::DempsterShafer),
                                                  justification_frame(f, JustificationKind::StrongDenseness)};
  std::vector<CheckOutcome> out;
  out.push_back(check_delta(f));
  out.push_back(check_allocation_definition(f, allocators));
  out.push_back(check_sandwich(f, allocators));

  std::vector<Mask> extra;
  for (const auto& it : f.items()) extra.push_back(it.content.bits());
  const auto n_extra = extra.size();
  for (std::size_t a = 0; a < n_extra; ++a) {
    for (std::size_t b = a + 1; b < n_extra; ++b) {
      extra.push_back(extra[a] | extra[b]);
      extra.push_back(extra[a] & extra[b]);
    }
  }
  const auto pool = proposition_pool(f.universe(), extra);

  const auto deltas = delta_table(f);
  for (const auto& j : frames) {
    for (const auto& a : allocators) {
      out.push_back(check_justified_bpa(f, a, j));
      const auto mass = allocation_mass(f, a, deltas);
      CheckOutcome axioms = check_belief_axioms([&](Mask p) { return bel(mass, j, p); }, f.universe(), 3, pool);
      axioms.detail["allocator"] = a.name();
      axioms.detail["justification"] = std::string(j.name());
      out.push_back(on_frame(std::move(axioms), f));
    }
  }
  out.push_back(check_prop5(f));
  out.push_back(check_prop6(f));
  out.push_back(check_lemma1(f));
  std::vector<Allocator> never_empty;
  for (const auto& a : allocators) {
    if (a.kind() == AllocatorKind::Union || a.kind() == AllocatorKind::YagerStyle || a.kind() == AllocatorKind::MinDense) {
      never_empty.push_back(a);
    }
  }
  if (!never_empty.empty()) out.push_back(check_no_normalization(f, never_empty));
  return out;
}

}  // namespace evfuse::verify
