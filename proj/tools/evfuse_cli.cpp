// Command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evfuse/evfuse.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 1;

// Exit code carrying the library status, with the diagnostic already printed.
struct Failure {
  int code;
};

struct Config {
  std::string frame_path;
  std::string justification = "ds";
  std::string allocators = "i,u,d";
  std::string verify_allocators = "i,u,d,yager";
  std::string propositions;
  unsigned precision = 2;
  std::string output = "table";
  bool exact = false;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool use_seed = false;
  std::size_t max_states = 6;
  std::size_t max_items = 5;
};

void check(evf_status status) {
  if (status == EVF_OK) return;
  std::cerr << "error: " << evf_last_error() << "\n";
  throw Failure{static_cast<int>(status)};
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw Failure{kExitUsage};
}

struct StringDeleter {
  void operator()(char* s) const { evf_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using Frame = std::unique_ptr<evf_frame, HandleDeleter<evf_frame, evf_frame_free>>;
using Justification = std::unique_ptr<evf_justification, HandleDeleter<evf_justification, evf_justification_free>>;
using AllocatorHandle = std::unique_ptr<evf_allocator, HandleDeleter<evf_allocator, evf_allocator_free>>;
using Report = std::unique_ptr<evf_report, HandleDeleter<evf_report, evf_report_free>>;

std::string take(char* raw) {
  OwnedString owned(raw);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    throw Failure{EVF_ERR_FRAME};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) usage_error("cannot write '" + path.string() + "'");
  out << text;
}

// Accepts either a frame document or a verification witness wrapping one.
Frame load_frame(const Config& cfg) {
  evf_frame* raw = nullptr;
  if (cfg.use_seed) {
    check(evf_frame_random(cfg.seed, cfg.max_states, cfg.max_items, &raw));
    return Frame(raw);
  }
  if (cfg.frame_path.empty()) usage_error("--frame is required");
  std::string text = read_file(cfg.frame_path);
  const auto doc = ordered_json::parse(text, nullptr, false);
  if (!doc.is_discarded() && doc.is_object() && doc.contains("check") && doc.contains("frame") &&
      doc["frame"].is_object()) {
    text = doc["frame"].dump();
  }
  check(evf_frame_parse(text.data(), text.size(), &raw));
  return Frame(raw);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<AllocatorHandle> load_allocators(const evf_frame* frame, const std::string& list) {
  std::vector<AllocatorHandle> out;
  for (const auto& token : split_list(list, ',')) {
    evf_allocator* raw = nullptr;
    if (token.rfind("custom:", 0) == 0) {
      const std::string path = token.substr(7);
      const std::string text = read_file(path);
      const std::string name = std::filesystem::path(path).stem().string();
      check(evf_allocator_custom(frame, name.c_str(), text.data(), text.size(), &raw));
    } else {
      check(evf_allocator_builtin(frame, token.c_str(), &raw));
    }
    out.emplace_back(raw);
  }
  if (out.empty()) usage_error("--alloc needs at least one allocator");
  return out;
}

Justification load_justification(const evf_frame* frame, const std::string& selector) {
  evf_justification* raw = nullptr;
  if (selector.rfind("custom:", 0) == 0) {
    const std::string text = read_file(selector.substr(7));
    check(evf_justification_custom(frame, text.data(), text.size(), &raw));
  } else {
    check(evf_justification_builtin(frame, selector.c_str(), &raw));
  }
  return Justification(raw);
}

std::vector<const evf_allocator*> raw_pointers(const std::vector<AllocatorHandle>& allocs) {
  std::vector<const evf_allocator*> out;
  for (const auto& a : allocs) out.push_back(a.get());
  return out;
}

std::string set_text(const ordered_json& names) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : names) {
    if (!first) out.push_back(',');
    out += n.get<std::string>();
    first = false;
  }
  return out + "}";
}

std::string value_text(const ordered_json& v, bool exact) {
  if (!exact) return v["rendered"].get<std::string>();
  const auto den = v["den"].get<std::string>();
  return den == "1" ? v["num"].get<std::string>() : v["num"].get<std::string>() + "/" + den;
}

// First `left` columns are left-aligned, the rest right-aligned.
std::string render_table(const std::vector<std::vector<std::string>>& rows, std::size_t left) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) line += "  ";
      const std::string pad(width[c] - r[c].size(), ' ');
      line += c < left ? r[c] + pad : pad + r[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string format_topology(const ordered_json& doc) {
  std::vector<std::vector<std::string>> rows = {{"open", "dense"}};
  for (const auto& o : doc["opens"]) rows.push_back({set_text(o["states"]), o["dense"].get<bool>() ? "yes" : "no"});
  return render_table(rows, 2) + "minimum dense open: " + set_text(doc["min_dense"]) + "\n";
}

std::string format_mass(const ordered_json& doc, bool exact) {
  std::vector<std::vector<std::string>> rows = {{"evidence", "delta"}};
  for (const auto& r : doc["rows"]) rows.push_back({set_text(r["evidence"]), value_text(r["mass"], exact)});
  rows.push_back({"total", value_text(doc["total"], exact)});
  return render_table(rows, 1);
}

std::string format_allocation(const ordered_json& doc, bool exact) {
  std::vector<std::string> header = {"evidence"};
  for (const auto& a : doc["allocators"]) header.push_back(a.get<std::string>());
  header.push_back("delta");
  std::vector<std::vector<std::string>> rows = {header};
  for (const auto& r : doc["rows"]) {
    std::vector<std::string> row = {set_text(r["evidence"])};
    for (const auto& a : doc["allocators"]) row.push_back(set_text(r["images"][a.get<std::string>()]));
    row.push_back(value_text(r["delta"], exact));
    rows.push_back(std::move(row));
  }
  std::string out = render_table(rows, header.size() - 1);
  for (const auto& v : doc["violations"]) {
    out += "violation (condition " + std::to_string(v["condition"].get<int>()) + "): " + v["detail"].get<std::string>() + "\n";
  }
  return out;
}

std::string format_report(const ordered_json& doc, bool exact) {
  std::vector<std::string> header = {"proposition", "P"};
  for (const auto& a : doc["allocators"]) header.push_back(a.get<std::string>());
  std::vector<std::vector<std::string>> rows = {header};
  std::size_t k = 0;
  auto cells = [&](const ordered_json& per_alloc) {
    std::vector<std::string> out;
    for (const auto& a : doc["allocators"]) out.push_back(value_text(per_alloc[a.get<std::string>()], exact));
    return out;
  };
  for (const auto& r : doc["rows"]) {
    std::vector<std::string> row = {"(" + std::to_string(++k) + ")", set_text(r["proposition"])};
    for (auto& c : cells(r["beliefs"])) row.push_back(std::move(c));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> unc = {"Uncertainty", "S"};
  for (auto& c : cells(doc["uncertainty"])) unc.push_back(std::move(c));
  rows.push_back(std::move(unc));
  std::vector<std::string> nf = {"N.f.", doc["justification"].get<std::string>()};
  for (auto& c : cells(doc["normalization"])) nf.push_back(std::move(c));
  rows.push_back(std::move(nf));
  return "justification: " + doc["justification"].get<std::string>() + "\n" + render_table(rows, 2);
}

int cmd_topology(const Config& cfg) {
  const Frame frame = load_frame(cfg);
  char* raw = nullptr;
  check(evf_topology_json(frame.get(), &raw));
  const std::string text = take(raw);
  std::cout << (cfg.output == "json" ? text : format_topology(ordered_json::parse(text)));
  return 0;
}

int cmd_mass(const Config& cfg) {
  const Frame frame = load_frame(cfg);
  char* raw = nullptr;
  check(evf_mass_json(frame.get(), cfg.precision, &raw));
  const std::string text = take(raw);
  std::cout << (cfg.output == "json" ? text : format_mass(ordered_json::parse(text), cfg.exact));
  return 0;
}

int cmd_allocate(const Config& cfg) {
  const Frame frame = load_frame(cfg);
  const auto allocs = load_allocators(frame.get(), cfg.allocators);
  const auto ptrs = raw_pointers(allocs);
  char* raw = nullptr;
  check(evf_allocate_json(frame.get(), ptrs.data(), ptrs.size(), cfg.precision, &raw));
  const std::string text = take(raw);
  std::cout << (cfg.output == "json" ? text : format_allocation(ordered_json::parse(text), cfg.exact));
  return 0;
}

std::string believe_text(const evf_frame* frame, const std::string& justification, const std::string& allocators,
                         const std::string& propositions, unsigned precision, const std::string& output, bool exact) {
  const Justification j = load_justification(frame, justification);
  const auto allocs = load_allocators(frame, allocators);
  const auto ptrs = raw_pointers(allocs);
  evf_report* raw_report = nullptr;
  check(evf_believe(frame, j.get(), ptrs.data(), ptrs.size(), propositions.c_str(), &raw_report));
  const Report report(raw_report);
  char* raw = nullptr;
  check(evf_report_to_json(report.get(), precision, &raw));
  const std::string text = take(raw);
  return output == "json" ? text : format_report(ordered_json::parse(text), exact);
}

int cmd_believe(const Config& cfg) {
  const Frame frame = load_frame(cfg);
  std::cout << believe_text(frame.get(), cfg.justification, cfg.allocators, cfg.propositions, cfg.precision,
                            cfg.output, cfg.exact);
  return 0;
}

int cmd_verify(const Config& cfg) {
  const Frame frame = load_frame(cfg);
  const auto allocs = load_allocators(frame.get(), cfg.verify_allocators);
  const auto ptrs = raw_pointers(allocs);
  char* raw = nullptr;
  const evf_status status = evf_verify_allocators_json(frame.get(), ptrs.data(), ptrs.size(), &raw);
  if (raw == nullptr) check(status);
  const std::string text = take(raw);
  if (cfg.output == "json") {
    std::cout << text;
  } else {
    const auto doc = ordered_json::parse(text);
    for (const auto& c : doc["checks"]) {
      std::cout << (c["passed"].get<bool>() ? "PASS  " : "FAIL  ") << c["check"].get<std::string>();
      if (c["detail"].contains("allocator")) std::cout << " " << c["detail"]["allocator"].get<std::string>();
      if (c["detail"].contains("justification")) std::cout << "/" << c["detail"]["justification"].get<std::string>();
      std::cout << "\n";
    }
    for (const auto& w : doc["witnesses"]) std::cout << "witness: " << w.dump() << "\n";
  }
  if (status != EVF_OK) {
    std::cerr << "error: " << evf_last_error() << "\n";
    return static_cast<int>(status);
  }
  return 0;
}

constexpr const char* kCarPropositions = "dp,do,dm;sp,dp";

int cmd_demo(const Config& cfg) {
  evf_frame* raw_frame = nullptr;
  check(evf_frame_car_example(&raw_frame));
  const Frame frame(raw_frame);
  char* raw = nullptr;
  check(evf_frame_to_json(frame.get(), &raw));
  const std::string fixture = take(raw);

  const std::string car_a = believe_text(frame.get(), "ds", "i,u,d", kCarPropositions, cfg.precision, "table", cfg.exact);
  const std::string car_b = believe_text(frame.get(), "sd", "i,u,d", kCarPropositions, cfg.precision, "table", cfg.exact);

  if (!cfg.out_dir.empty()) {
    const std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) usage_error("cannot create '" + dir.string() + "'");
    write_file(dir / "car.json", fixture);
    write_file(dir / "car_a.txt", car_a);
    write_file(dir / "car_b.txt", car_b);
    write_file(dir / "car_a.json", believe_text(frame.get(), "ds", "i,u,d", kCarPropositions, cfg.precision, "json", false));
    write_file(dir / "car_b.json", believe_text(frame.get(), "sd", "i,u,d", kCarPropositions, cfg.precision, "json", false));
  }
  std::cout << "# frame (car.json)\n" << fixture << "\n# Car A\n" << car_a << "\n# Car B\n" << car_b;
  return 0;
}

void add_frame_option(CLI::App* sub, Config& cfg) {
  sub->add_option("--frame", cfg.frame_path, "Frame JSON document (or a verification witness)");
}

void add_render_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--precision", cfg.precision, "Decimal places for rendered values")->check(CLI::Range(0U, 12U));
  sub->add_option("--output", cfg.output, "table or json")->check(CLI::IsMember({"table", "json"}));
  sub->add_flag("--exact", cfg.exact, "Print exact rationals as n/d");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degrees of belief from uncertain and conflicting evidence"};
  app.require_subcommand(1);
  Config cfg;

  auto* topology = app.add_subcommand("topology", "List the opens of the evidential topology");
  add_frame_option(topology, cfg);
  topology->add_option("--output", cfg.output, "table or json")->check(CLI::IsMember({"table", "json"}));

  auto* mass = app.add_subcommand("mass", "Mass of every subset of the evidence");
  add_frame_option(mass, cfg);
  add_render_options(mass, cfg);

  auto* allocate = app.add_subcommand("allocate", "Images of every evidence subset under the allocators");
  add_frame_option(allocate, cfg);
  allocate->add_option("--alloc", cfg.allocators, "Comma-separated: i,u,d,yager or custom:<path>");
  add_render_options(allocate, cfg);

  auto* believe = app.add_subcommand("believe", "Degrees of belief for propositions");
  add_frame_option(believe, cfg);
  believe->add_option("--justification", cfg.justification, "ds, sd or custom:<path>");
  believe->add_option("--alloc", cfg.allocators, "Comma-separated: i,u,d,yager or custom:<path>");
  believe->add_option("--props", cfg.propositions, "Propositions, e.g. \"dp,do,dm;sp,dp\"");
  add_render_options(believe, cfg);

  auto* verify = app.add_subcommand("verify", "Run every consistency check on a frame");
  add_frame_option(verify, cfg);
  verify->add_option("--alloc", cfg.verify_allocators, "Allocators to check (default i,u,d,yager)");
  verify->add_option("--seed", cfg.seed, "Check a random frame generated from this seed instead")
      ->each([&cfg](const std::string&) { cfg.use_seed = true; });
  verify->add_option("--max-states", cfg.max_states, "States in the random frame (upper bound)")->check(CLI::Range(2, 64));
  verify->add_option("--max-items", cfg.max_items, "Evidence items in the random frame (upper bound)")->check(CLI::Range(1, 24));
  verify->add_option("--output", cfg.output, "table or json")->check(CLI::IsMember({"table", "json"}));

  auto* demo = app.add_subcommand("demo", "Print the bundled car example and both reports");
  demo->add_option("--out-dir", cfg.out_dir, "Also write the fixture and reports into this directory");
  demo->add_option("--precision", cfg.precision, "Decimal places")->check(CLI::Range(0U, 12U));
  demo->add_flag("--exact", cfg.exact, "Print exact rationals as n/d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*topology) return cmd_topology(cfg);
    if (*mass) return cmd_mass(cfg);
    if (*allocate) return cmd_allocate(cfg);
    if (*believe) return cmd_believe(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*demo) return cmd_demo(cfg);
  } catch (const Failure& f) {
    return f.code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EVF_ERR_INTERNAL;
  }
  return kExitUsage;
}
