#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commacat/commacat.hpp"

namespace {

using commacat::Json;

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kTaskError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

std::optional<std::size_t> env_max_dim() {
  const char* v = std::getenv("COMMACAT_MAX_DIM");
  if (!v || !*v) return std::nullopt;
  try {
    return static_cast<std::size_t>(std::stoul(v));
  } catch (const std::exception&) {
    throw InputError("COMMACAT_MAX_DIM is not a number: " + std::string(v));
  }
}

Json load_input(const std::string& doc_path, const std::string& fixture, std::optional<std::size_t> max_dim) {
  if (!fixture.empty()) {
    try {
      return commacat::fixture_document(fixture, max_dim.value_or(4));
    } catch (const commacat::Error& e) {
      throw InputError(e.what());
    }
  }
  if (doc_path.empty()) throw InputError("give a document path or --fixture");
  return read_json(doc_path);
}

/// Keeps the tasks named `task`, or runs it with default parameters when the
/// document has none of that name.
void select_task(Json& doc, const std::string& task) {
  Json kept = Json::array();
  if (doc.contains("tasks") && doc["tasks"].is_array())
    for (const auto& t : doc["tasks"])
      if (t.is_object() && t.value("task", "") == task) kept.push_back(t);
  if (kept.empty()) kept.push_back({{"task", task}});
  doc["tasks"] = std::move(kept);
}

void print_violations(const commacat::ValidationReport& r) {
  for (const auto& v : r.violations) std::cerr << v << "\n";
}

int cmd_run(const std::string& doc_path, const std::string& fixture, const std::string& task,
            const std::string& format, std::optional<std::size_t> max_dim, std::size_t iso_cap) {
  Json doc = load_input(doc_path, fixture, max_dim);
  if (!task.empty()) select_task(doc, task);
  commacat::LoadOptions lo;
  lo.max_dim = max_dim;
  lo.iso_cap = iso_cap;
  commacat::Workspace ws;
  try {
    ws = commacat::load_document(doc, lo);
  } catch (const commacat::DocumentInvalid& e) {
    print_violations(e.report);
    return kInvalid;
  }
  commacat::TorsionOptions opt;
  opt.iso_cap = iso_cap;
  const commacat::Runner runner(ws, opt);
  commacat::Report report;
  try {
    report = runner.run_all(ws.tasks);
  } catch (const std::exception& e) {
    std::cerr << "task error: " << e.what() << "\n";
    return kTaskError;
  }
  if (format == "text") std::cout << commacat::render_text(report);
  else std::cout << runner.report_json(report).dump(2) << "\n";
  return kOk;
}

int cmd_validate(const std::string& doc_path, const std::string& fixture, bool certificate,
                 std::optional<std::size_t> max_dim, std::size_t iso_cap) {
  const Json doc = load_input(doc_path, fixture, max_dim);
  if (certificate) {
    commacat::ReplaySummary s;
    try {
      s = commacat::replay_report(doc, iso_cap);
    } catch (const std::exception& e) {
      std::cerr << "not a report: " << e.what() << "\n";
      return kInvalid;
    }
    for (const auto& f : s.failures) std::cout << "not confirmed: " << f << "\n";
    std::cout << s.checked - s.failures.size() << " of " << s.checked << " certificates confirmed\n";
    return s.failures.empty() ? kOk : kInvalid;
  }
  commacat::LoadOptions lo;
  lo.max_dim = max_dim;
  lo.iso_cap = iso_cap;
  const auto r = commacat::validate_document(doc, lo);
  if (r.valid()) {
    std::cout << "valid\n";
    return kOk;
  }
  for (const auto& v : r.violations) std::cout << v << "\n";
  return kInvalid;
}

int cmd_export(const std::string& fixture, std::optional<std::size_t> max_dim) {
  std::cout << commacat::canonical_dump(load_input("", fixture, max_dim));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comma categories over triangular matrix algebras: computations and claim verification"};
  app.require_subcommand(1);

  std::string doc_path, fixture, task, format = "json";
  std::optional<std::size_t> max_dim;
  std::size_t iso_cap = 16;
  bool certificate = false;

  auto* run = app.add_subcommand("run", "execute the tasks of a document and print a report");
  run->add_option("doc", doc_path, "document path");
  run->add_option("--fixture", fixture, "built-in corpus instead of a document")
      ->check(CLI::IsMember({"a2", "dual-numbers"}));
  run->add_option("--task", task, "run only tasks of this name");
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  run->add_option("--max-dim", max_dim, "total dimension cap for generated T-universes");
  run->add_option("--iso-cap", iso_cap, "largest Hom dimension searched for isomorphisms");

  auto* validate = app.add_subcommand("validate", "check a document, or replay a report's certificates");
  validate->add_option("doc", doc_path, "document or report path");
  validate->add_option("--fixture", fixture, "built-in corpus instead of a document")
      ->check(CLI::IsMember({"a2", "dual-numbers"}));
  validate->add_flag("--certificate", certificate, "treat the input as a report and replay its certificates");
  validate->add_option("--max-dim", max_dim, "total dimension cap for generated T-universes");
  validate->add_option("--iso-cap", iso_cap, "largest Hom dimension searched for isomorphisms");

  auto* exp = app.add_subcommand("export", "print the canonical document of a built-in corpus");
  exp->add_option("--fixture", fixture, "built-in corpus")->required()->check(CLI::IsMember({"a2", "dual-numbers"}));
  exp->add_option("--max-dim", max_dim, "total dimension cap for generated T-universes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!max_dim) max_dim = env_max_dim();
    if (run->parsed()) return cmd_run(doc_path, fixture, task, format, max_dim, iso_cap);
    if (validate->parsed()) return cmd_validate(doc_path, fixture, certificate, max_dim, iso_cap);
    return cmd_export(fixture, max_dim);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTaskError;
  }
}
