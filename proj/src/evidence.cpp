#include "evfuse/evidence.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace evfuse {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kCarDocument = R"({
  "states": ["sp", "dp", "do", "so", "dm", "sm"],
  "evidence": [
    {"name": "E1", "states": ["dp", "dm", "do"], "certainty": "0.9"},
    {"name": "E2", "states": ["dm", "sm"], "certainty": "0.75"},
    {"name": "E3", "states": ["dp", "sp"], "certainty": "0.45"}
  ]
}
)";

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedDocument, what); }

void require_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> keys, const std::string& where) {
  if (!obj.is_object()) malformed(where + " must be an object");
  for (auto k : keys) {
    if (!obj.contains(std::string(k))) malformed(where + " is missing key '" + std::string(k) + "'");
  }
  for (const auto& [k, v] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) malformed(where + " has unknown key '" + k + "'");
  }
}

std::vector<std::string> string_list(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) malformed(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) malformed(where + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<Mask> QuantitativeEvidenceFrame::content_masks() const {
  std::vector<Mask> out;
  out.reserve(items_.size());
  for (const auto& it : items_) out.push_back(it.content.bits());
  return out;
}

int QuantitativeEvidenceFrame::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t EvidenceSubset::size() const { return static_cast<std::size_t>(std::popcount(bits)); }

void require_subset_of(const QuantitativeEvidenceFrame& f, EvidenceSubset e) {
  if (f.arity() < 32 && (e.bits >> f.arity()) != 0) {
    throw Error(ErrorCode::FrameMismatch, "evidence subset names items the frame does not have");
  }
}

void require_enumerable(const QuantitativeEvidenceFrame& f) {
  if (f.arity() > kMaxEnumeratedItems) {
    throw Error(ErrorCode::CapacityExceeded, std::to_string(f.arity()) + " evidence items; at most " +
                                                 std::to_string(kMaxEnumeratedItems) +
                                                 " can be enumerated");
  }
}

EvidenceSubset evidence_subset(const QuantitativeEvidenceFrame& f, std::initializer_list<std::string_view> names) {
  EvidenceSubset e;
  for (auto n : names) {
    const int idx = f.index_of(n);
    if (idx < 0 || idx >= 32) throw Error(ErrorCode::FrameMismatch, "no evidence item '" + std::string(n) + "'");
    e.bits |= std::uint32_t{1} << idx;
  }
  return e;
}

std::string describe(const QuantitativeEvidenceFrame& f, EvidenceSubset e) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < f.arity() && i < 32; ++i) {
    if (!e.contains(i)) continue;
    if (!first) out.push_back(',');
    out += f.item(i).name;
    first = false;
  }
  out.push_back('}');
  return out;
}

std::vector<EvidenceSubset> canonical_subsets(std::size_t arity) {
  std::vector<EvidenceSubset> out;
  const std::uint32_t n = std::uint32_t{1} << arity;
  out.reserve(n);
  for (std::uint32_t b = 0; b < n; ++b) out.push_back({b});
  std::stable_sort(out.begin(), out.end(), [](EvidenceSubset a, EvidenceSubset b) {
    return std::popcount(a.bits) != std::popcount(b.bits) ? std::popcount(a.bits) < std::popcount(b.bits)
                                                          : a.bits < b.bits;
  });
  return out;
}

ValidationReport validate_frame(const QuantitativeEvidenceFrame& f) {
  ValidationReport report;
  if (f.items().empty()) report.push_back({ErrorCode::EmptyEvidenceList, "the frame has no evidence items"});
  std::unordered_set<std::string> names;
  const Rational zero(0);
  const Rational one(1);
  for (const auto& it : f.items()) {
    const std::string label = "evidence '" + it.name + "'";
    if (!names.insert(it.name).second) report.push_back({ErrorCode::DuplicateName, label + " is defined twice"});
    if (!(it.content.universe() == f.universe())) {
      report.push_back({ErrorCode::UniverseMismatch, label + " is over another universe"});
      continue;
    }
    if (it.content.empty()) report.push_back({ErrorCode::EmptyEvidence, label + " has no states"});
    if (it.content.is_full()) report.push_back({ErrorCode::FullSetEvidence, label + " covers every state"});
    if (it.certainty <= zero || it.certainty >= one) {
      report.push_back({ErrorCode::CertaintyOutOfRange,
                        label + " has certainty " + it.certainty.to_string() + " outside (0,1)"});
    }
  }
  return report;
}

QuantitativeEvidenceFrame parse_frame(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  require_keys(doc, {"states", "evidence"}, "frame document");
  StateUniverse universe = StateUniverse::make(string_list(doc["states"], "\"states\""));

  const auto& evidence = doc["evidence"];
  if (!evidence.is_array()) malformed("\"evidence\" must be an array");
  std::vector<EvidenceItem> items;
  for (const auto& entry : evidence) {
    require_keys(entry, {"name", "states", "certainty"}, "evidence entry");
    if (!entry["name"].is_string()) malformed("evidence \"name\" must be a string");
    if (!entry["certainty"].is_string()) {
      malformed("evidence \"certainty\" must be a decimal string such as \"0.45\"");
    }
    const auto name = entry["name"].get<std::string>();
    const auto states = string_list(entry["states"], "states of evidence '" + name + "'");
    items.push_back({name, StateSet::of(universe, states), Rational::parse(entry["certainty"].get<std::string>())});
  }

  QuantitativeEvidenceFrame frame(std::move(universe), std::move(items));
  if (auto report = validate_frame(frame); !report.empty()) {
    throw Error(report.front().code, report.front().detail);
  }
  return frame;
}

std::string serialize_frame(const QuantitativeEvidenceFrame& f) {
  ordered_json doc;
  doc["states"] = f.universe().labels();
  doc["evidence"] = ordered_json::array();
  for (const auto& it : f.items()) {
    ordered_json entry;
    entry["name"] = it.name;
    entry["states"] = it.content.names();
    entry["certainty"] = it.certainty.to_canonical();
    doc["evidence"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string_view car_example_document() { return kCarDocument; }

}  // namespace evfuse
