#include "evfuse/evfuse.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "evfuse/evidence.hpp"
#include "evfuse/fusion.hpp"
#include "evfuse/topology.hpp"
#include "evfuse/verify.hpp"

struct evf_frame {
  evfuse::QuantitativeEvidenceFrame frame;
};

struct evf_justification {
  evfuse::JustificationFrame justification;
};

struct evf_allocator {
  evfuse::Allocator allocator;
};

struct evf_report {
  evfuse::BeliefReport report;
};

namespace {

using evfuse::ErrorCode;
using ordered_json = nlohmann::ordered_json;

thread_local std::string g_last_error;
thread_local std::string g_last_error_kind;

evf_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CapacityExceeded:
      return EVF_ERR_CAPACITY;
    case ErrorCode::InvalidAllocator:
    case ErrorCode::InvalidArgument:
    case ErrorCode::IndexOutOfRange:
      return EVF_ERR_USAGE;
    default:
      return EVF_ERR_FRAME;
  }
}

evf_status fail(evf_status status, std::string kind, std::string message) {
  g_last_error_kind = std::move(kind);
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
evf_status guarded(F&& body) {
  try {
    return body();
  } catch (const evfuse::Error& e) {
    return fail(status_for(e.code()), std::string(evfuse::to_string(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(EVF_ERR_INTERNAL, "OutOfMemory", "out of memory");
  } catch (const std::exception& e) {
    return fail(EVF_ERR_INTERNAL, "Internal", e.what());
  }
}

evf_status null_argument(const char* what) {
  return fail(EVF_ERR_USAGE, "InvalidArgument", std::string("null ") + what);
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

ordered_json rational_json(const evfuse::Rational& v, unsigned precision) {
  ordered_json o;
  o["num"] = v.numerator_string();
  o["den"] = v.denominator_string();
  o["rendered"] = v.to_decimal(precision);
  return o;
}

ordered_json subset_names(const evfuse::QuantitativeEvidenceFrame& f, evfuse::EvidenceSubset e) {
  ordered_json names = ordered_json::array();
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (e.contains(i)) names.push_back(f.item(i).name);
  }
  return names;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<evfuse::StateSet> parse_propositions(const evfuse::StateUniverse& u, const char* text) {
  std::vector<evfuse::StateSet> out;
  if (text == nullptr || trim(text).empty()) return out;
  for (const auto& segment : split(text, ';')) {
    std::vector<std::string> names;
    if (!segment.empty()) {
      for (auto& n : split(segment, ',')) {
        if (n.empty()) throw evfuse::Error(ErrorCode::InvalidArgument, "empty state name in proposition '" + segment + "'");
        names.push_back(std::move(n));
      }
    }
    out.push_back(evfuse::StateSet::of(u, names));
  }
  return out;
}

std::vector<std::string> string_array(const nlohmann::json& v, const char* where) {
  if (!v.is_array()) throw evfuse::Error(ErrorCode::MalformedDocument, std::string(where) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw evfuse::Error(ErrorCode::MalformedDocument, std::string(where) + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

nlohmann::json parse_document(const char* json, size_t len) {
  try {
    return nlohmann::json::parse(std::string_view(json, len));
  } catch (const nlohmann::json::parse_error& e) {
    throw evfuse::Error(ErrorCode::MalformedDocument, std::string("invalid JSON: ") + e.what());
  }
}

void require_only_key(const nlohmann::json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || doc.size() != 1) {
    throw evfuse::Error(ErrorCode::MalformedDocument, std::string("expected an object with the single key \"") + key + "\"");
  }
}

std::vector<evfuse::Allocator> unwrap(const evf_allocator* const* allocators, size_t count) {
  std::vector<evfuse::Allocator> out;
  for (size_t k = 0; k < count; ++k) {
    if (allocators[k] == nullptr) throw evfuse::Error(ErrorCode::InvalidArgument, "null allocator");
    out.push_back(allocators[k]->allocator);
  }
  return out;
}

}  // namespace

extern "C" {

const char* evf_version(void) { return "1.0.0"; }
const char* evf_last_error(void) { return g_last_error.c_str(); }
const char* evf_last_error_kind(void) { return g_last_error_kind.c_str(); }
void evf_string_free(char* s) { std::free(s); }

evf_status evf_frame_parse(const char* json, size_t len, evf_frame** out) {
  if (json == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] {
    *out = new evf_frame{evfuse::parse_frame(std::string_view(json, len))};
    return EVF_OK;
  });
}

evf_status evf_frame_car_example(evf_frame** out) {
  if (out == nullptr) return null_argument("argument");
  return guarded([&] {
    *out = new evf_frame{evfuse::parse_frame(evfuse::car_example_document())};
    return EVF_OK;
  });
}

evf_status evf_frame_random(uint64_t seed, size_t max_states, size_t max_items, evf_frame** out) {
  if (out == nullptr) return null_argument("argument");
  return guarded([&] {
    if (max_states < 2 || max_states > evfuse::kMaxStates || max_items < 1) {
      throw evfuse::Error(ErrorCode::InvalidArgument, "random frames need 2..64 states and at least one item");
    }
    *out = new evf_frame{evfuse::verify::random_frame(seed, max_states, max_items)};
    return EVF_OK;
  });
}

void evf_frame_free(evf_frame* frame) { delete frame; }

size_t evf_frame_state_count(const evf_frame* frame) { return frame ? frame->frame.universe().size() : 0; }

const char* evf_frame_state_label(const evf_frame* frame, size_t index) {
  if (frame == nullptr || index >= frame->frame.universe().size()) return nullptr;
  return frame->frame.universe().label(index).c_str();
}

size_t evf_frame_item_count(const evf_frame* frame) { return frame ? frame->frame.arity() : 0; }

const char* evf_frame_item_name(const evf_frame* frame, size_t index) {
  if (frame == nullptr || index >= frame->frame.arity()) return nullptr;
  return frame->frame.item(index).name.c_str();
}

evf_status evf_frame_to_json(const evf_frame* frame, char** out) {
  if (frame == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] {
    *out = copy_string(evfuse::serialize_frame(frame->frame));
    return EVF_OK;
  });
}

evf_status evf_topology_json(const evf_frame* frame, char** out) {
  if (frame == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] {
    const auto& f = frame->frame;
    std::vector<evfuse::StateSet> subbasis;
    for (const auto& it : f.items()) subbasis.push_back(it.content);
    const auto topology = evfuse::generate_topology(f.universe(), subbasis);
    ordered_json doc;
    doc["opens"] = ordered_json::array();
    for (const auto& o : topology.opens()) {
      doc["opens"].push_back({{"states", o.names()}, {"dense", evfuse::is_dense(o, topology)}});
    }
    doc["min_dense"] = evfuse::min_dense(subbasis).names();
    *out = copy_string(doc.dump(2) + "\n");
    return EVF_OK;
  });
}

evf_status evf_justification_builtin(const evf_frame* frame, const char* kind, evf_justification** out) {
  if (frame == nullptr || kind == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] {
    const std::string_view k(kind);
    evfuse::JustificationKind jk;
    if (k == "ds") {
      jk = evfuse::JustificationKind::DempsterShafer;
    } else if (k == "sd") {
      jk = evfuse::JustificationKind::StrongDenseness;
    } else {
      throw evfuse::Error(ErrorCode::InvalidArgument, "unknown justification frame '" + std::string(k) + "' (expected ds or sd)");
    }
    *out = new evf_justification{evfuse::justification_frame(frame->frame, jk)};
    return EVF_OK;
  });
}

evf_status evf_justification_custom(const evf_frame* frame, const char* json, size_t len, evf_justification** out) {
  if (frame == nullptr || json == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] {
    const auto doc = parse_document(json, len);
    require_only_key(doc, "opens");
    if (!doc["opens"].is_array()) throw evfuse::Error(ErrorCode::MalformedDocument, "\"opens\" must be an array");
    std::vector<evfuse::StateSet> members;
    for (const auto& o : doc["opens"]) {
      members.push_back(evfuse::StateSet::of(frame->frame.universe(), string_array(o, "each open")));
    }
    *out = new evf_justification{evfuse::custom_justification_frame(frame->frame, members)};
    return EVF_OK;
  });
}

void evf_justification_free(evf_justification* j) { delete j; }

evf_status evf_mass_json(const evf_frame* frame, unsigned precision, char** out) {
  if (frame == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] {
    const auto& f = frame->frame;
    const auto table = evfuse::delta_table(f);
    ordered_json doc;
    doc["rows"] = ordered_json::array();
    evfuse::Rational total(0);
    for (auto e : evfuse::canonical_subsets(f.arity())) {
      doc["rows"].push_back({{"evidence", subset_names(f, e)}, {"mass", rational_json(table[e.bits], precision)}});
      total += table[e.bits];
    }
    doc["total"] = rational_json(total, precision);
    *out = copy_string(doc.dump(2) + "\n");
    return EVF_OK;
  });
}

evf_status evf_allocator_builtin(const evf_frame* frame, const char* name, evf_allocator** out) {
  if (frame == nullptr || name == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] {
    *out = new evf_allocator{evfuse::Allocator::builtin(name)};
    return EVF_OK;
  });
}

evf_status evf_allocator_custom(const evf_frame* frame, const char* name, const char* json, size_t len,
                                evf_allocator** out) {
  if (frame == nullptr || name == nullptr || json == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] {
    const auto& f = frame->frame;
    const auto doc = parse_document(json, len);
    require_only_key(doc, "map");
    if (!doc["map"].is_array()) throw evfuse::Error(ErrorCode::MalformedDocument, "\"map\" must be an array");
    std::vector<std::pair<evfuse::EvidenceSubset, evfuse::StateSet>> map;
    for (const auto& entry : doc["map"]) {
      if (!entry.is_object() || entry.size() != 2 || !entry.contains("evidence") || !entry.contains("image")) {
        throw evfuse::Error(ErrorCode::MalformedDocument, "map entries must have exactly \"evidence\" and \"image\"");
      }
      evfuse::EvidenceSubset e;
      for (const auto& n : string_array(entry["evidence"], "\"evidence\"")) {
        const int idx = f.index_of(n);
        if (idx < 0 || idx >= 32) throw evfuse::Error(ErrorCode::FrameMismatch, "no evidence item '" + n + "'");
        e.bits |= std::uint32_t{1} << idx;
      }
      map.emplace_back(e, evfuse::StateSet::of(f.universe(), string_array(entry["image"], "\"image\"")));
    }
    *out = new evf_allocator{evfuse::custom_allocator(f, name, map)};
    return EVF_OK;
  });
}

void evf_allocator_free(evf_allocator* a) { delete a; }

const char* evf_allocator_name(const evf_allocator* a) { return a ? a->allocator.name().c_str() : nullptr; }

evf_status evf_allocate_json(const evf_frame* frame, const evf_allocator* const* allocators, size_t count,
                             unsigned precision, char** out) {
  if (frame == nullptr || out == nullptr || (allocators == nullptr && count > 0)) return null_argument("argument");
  return guarded([&] {
    const auto& f = frame->frame;
    const auto allocs = unwrap(allocators, count);
    const auto table = evfuse::delta_table(f);
    ordered_json doc;
    doc["allocators"] = ordered_json::array();
    for (const auto& a : allocs) doc["allocators"].push_back(a.name());
    doc["rows"] = ordered_json::array();
    for (auto e : evfuse::canonical_subsets(f.arity())) {
      ordered_json images = ordered_json::object();
      for (const auto& a : allocs) images[a.name()] = evfuse::allocate(f, a, e).names();
      doc["rows"].push_back(
          {{"evidence", subset_names(f, e)}, {"images", images}, {"delta", rational_json(table[e.bits], precision)}});
    }
    doc["violations"] = ordered_json::array();
    for (const auto& issue : evfuse::validate_allocators(f, allocs)) {
      doc["violations"].push_back({{"condition", issue.condition},
                                   {"allocators", issue.allocators},
                                   {"witness", subset_names(f, issue.witness)},
                                   {"detail", issue.detail}});
    }
    *out = copy_string(doc.dump(2) + "\n");
    return EVF_OK;
  });
}

evf_status evf_believe(const evf_frame* frame, const evf_justification* j, const evf_allocator* const* allocators,
                       size_t count, const char* propositions, evf_report** out) {
  if (frame == nullptr || j == nullptr || out == nullptr || (allocators == nullptr && count > 0)) {
    return null_argument("argument");
  }
  return guarded([&] {
    const auto props = parse_propositions(frame->frame.universe(), propositions);
    const auto allocs = unwrap(allocators, count);
    *out = new evf_report{evfuse::belief_report(frame->frame, allocs, j->justification, props)};
    return EVF_OK;
  });
}

void evf_report_free(evf_report* r) { delete r; }

size_t evf_report_proposition_count(const evf_report* r) { return r ? r->report.propositions.size() : 0; }
size_t evf_report_allocator_count(const evf_report* r) { return r ? r->report.allocators.size() : 0; }

evf_status evf_report_belief(const evf_report* r, size_t row, size_t col, unsigned precision, int exact, char** out) {
  if (r == nullptr || out == nullptr) return null_argument("argument");
  if (row >= r->report.propositions.size() || col >= r->report.allocators.size()) {
    return fail(EVF_ERR_USAGE, "IndexOutOfRange", "report cell out of range");
  }
  return guarded([&] {
    const auto& v = r->report.beliefs[row][col];
    *out = copy_string(exact != 0 ? v.to_string() : v.to_decimal(precision));
    return EVF_OK;
  });
}

evf_status evf_report_to_json(const evf_report* r, unsigned precision, char** out) {
  if (r == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] {
    *out = copy_string(evfuse::report_to_json(r->report, precision));
    return EVF_OK;
  });
}

namespace {

evf_status verify_report(const std::vector<evfuse::verify::CheckOutcome>& outcomes, char** out) {
  ordered_json doc;
  bool all = true;
  doc["passed"] = true;
  doc["checks"] = ordered_json::array();
  doc["witnesses"] = ordered_json::array();
  for (const auto& o : outcomes) {
    all = all && o.passed;
    doc["checks"].push_back({{"check", o.check}, {"passed", o.passed}, {"detail", o.detail}});
    if (!o.passed) doc["witnesses"].push_back(o.witness());
  }
  doc["passed"] = all;
  *out = copy_string(doc.dump(2) + "\n");
  if (!all) return fail(EVF_ERR_VERIFY, "VerificationFailed", "one or more checks failed");
  return EVF_OK;
}

}  // namespace

evf_status evf_verify_json(const evf_frame* frame, char** out) {
  if (frame == nullptr || out == nullptr) return null_argument("argument");
  return guarded([&] { return verify_report(evfuse::verify::run_all(frame->frame), out); });
}

evf_status evf_verify_allocators_json(const evf_frame* frame, const evf_allocator* const* allocators, size_t count,
                                      char** out) {
  if (frame == nullptr || out == nullptr || (allocators == nullptr && count > 0)) return null_argument("argument");
  return guarded([&] {
    const auto allocs = unwrap(allocators, count);
    return verify_report(evfuse::verify::run_all(frame->frame, allocs), out);
  });
}

}  // extern "C"
