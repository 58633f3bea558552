#include "session/session.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "desugar/core_printer.hpp"
#include "runtime/stack.hpp"
#include "syntax/parser.hpp"

#ifndef EFF_DEFAULT_PRELUDE
#define EFF_DEFAULT_PRELUDE "prelude"
#endif

namespace eff {

Session::Session(SessionOptions options)
    : options_(std::move(options)), runtime_(options_.io) {}

Session::~Session() {
  // Long environment chains and lists are freed iteratively, but a deep
  // continuation can still nest; tear down on a big stack.
  runtime::run_with_large_stack([this] {
    core_items_.clear();
    syntax_items_.clear();
  });
}

void Session::run_source(std::string_view source, const std::string& file,
                         const std::function<void(const Echo&)>& echo) {
  runtime::run_with_large_stack([&] { run_items(source, file, false, echo); });
}

void Session::run_items(std::string_view source, const std::string& file, bool quiet,
                        const std::function<void(const Echo&)>& echo) {
  std::vector<syntax::Item> items = syntax::parse_program(source);
  for (auto& item : items) {
    syntax_items_.push_back(std::move(item));
    desugar::ItemResult d = desugar::desugar_item(syntax_items_.back(), names_);
    for (const auto& diag : d.diagnostics) {
      if (diag.severity == desugar::Severity::Error) throw DesugarError(diag);
      if (quiet) continue;  // the prelude's own sequencing is deliberate
      if (options_.sequencing == Sequencing::Error) throw DesugarError(diag);
      if (options_.sequencing == Sequencing::Warn && options_.warn) {
        options_.warn(desugar::render(diag, file));
      }
    }
    core_items_.push_back(std::move(d.item));
    const core::Item& ci = core_items_.back();
    types::TypePtr type;
    if (options_.typecheck) type = checker_.check_item(ci);
    if (const auto* def = std::get_if<core::Define>(&ci)) {
      runtime_.define(*def);
    } else if (const auto* rec = std::get_if<core::DefineRec>(&ci)) {
      runtime_.define_rec(*rec);
    } else if (const auto* run = std::get_if<core::Run>(&ci)) {
      runtime::Value v = runtime_.run(*run->comp);
      if (echo) echo(Echo{std::move(v), type ? types::to_string(type) : std::string()});
    }
  }
}

void Session::load_prelude(const std::string& dir) {
  std::ifstream manifest(dir + "/MANIFEST");
  if (!manifest) throw PreludeError(dir + "/MANIFEST", "cannot open prelude manifest", nullptr);
  std::string line;
  std::vector<std::string> files;
  while (std::getline(manifest, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    files.push_back(line.substr(b, line.find_last_not_of(" \t\r") - b + 1));
  }
  for (const auto& name : files) {
    const std::string path = dir + "/" + name;
    std::string text;
    try {
      text = read_file(path);
    } catch (const std::exception& e) {
      throw PreludeError(path, e.what(), std::current_exception());
    }
    try {
      runtime::run_with_large_stack([&] { run_items(text, path, true, {}); });
    } catch (const Error& e) {
      throw PreludeError(path, to_string(e.span().begin) + ": " + e.what(), std::current_exception());
    }
  }
}

std::string default_prelude_dir() {
  if (const char* env = std::getenv("EFF_PRELUDE"); env && *env) return env;
  return EFF_DEFAULT_PRELUDE;
}

std::string dump_program(std::string_view source) {
  std::string out;
  runtime::run_with_large_stack([&] {
    std::vector<syntax::Item> items = syntax::parse_program(source);
    desugar::NameSupply names;
    for (const auto& item : items) {
      desugar::ItemResult d = desugar::desugar_item(item, names);
      out += core::dump_item(d.item);
      out += '\n';
    }
  });
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace eff
