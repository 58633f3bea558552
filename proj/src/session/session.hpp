#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "common/source.hpp"
#include "desugar/desugar.hpp"
#include "runtime/runtime.hpp"
#include "typecheck/infer.hpp"

namespace eff {

enum class Sequencing { Warn, Error, Silent };

// A desugaring error, or a sequencing warning promoted to an error.
class DesugarError : public Error {
 public:
  DesugarError(const desugar::Diagnostic& d)
      : Error(d.message, d.span), code_(d.code) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Wraps an error raised while loading a prelude file.
class PreludeError : public std::runtime_error {
 public:
  PreludeError(std::string file, std::string message, std::exception_ptr cause)
      : std::runtime_error(file + ": " + message), file_(std::move(file)), cause_(std::move(cause)) {}
  const std::string& file() const { return file_; }
  const std::exception_ptr& cause() const { return cause_; }

 private:
  std::string file_;
  std::exception_ptr cause_;
};

struct SessionOptions {
  bool typecheck = true;
  Sequencing sequencing = Sequencing::Warn;
  runtime::Io io;
  // Rendered warnings ("file:line:col: warning[code]: ...").
  std::function<void(const std::string&)> warn;
};

// The toplevel answer of one computation item.
struct Echo {
  runtime::Value value;
  std::string type;  // empty when type checking is off
};

// One interpreter instance: global types, environment and store persist
// across calls. Every call runs on a thread with a very large stack.
class Session {
 public:
  explicit Session(SessionOptions options = {});
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  // Runs the items of `source` in order; the first error propagates
  // (LexError, ParseError, DesugarError, types::TypeError, RuntimeError).
  void run_source(std::string_view source, const std::string& file,
                  const std::function<void(const Echo&)>& echo = {});

  // Loads the files listed in <dir>/MANIFEST, one name per line.
  void load_prelude(const std::string& dir);

  runtime::Runtime& runtime() { return runtime_; }
  typecheck::Checker& checker() { return checker_; }
  const SessionOptions& options() const { return options_; }

 private:
  void run_items(std::string_view source, const std::string& file, bool quiet,
                 const std::function<void(const Echo&)>& echo);

  SessionOptions options_;
  runtime::Runtime runtime_;
  typecheck::Checker checker_;
  desugar::NameSupply names_;
  // Closures and environments point into these, so they live as long as the
  // session. A deque keeps element addresses stable.
  std::deque<syntax::Item> syntax_items_;
  std::deque<core::Item> core_items_;
};

// Default prelude directory: $EFF_PRELUDE, else the configured one.
std::string default_prelude_dir();

// S-expression dump of the desugared program, one item per line.
std::string dump_program(std::string_view source);

std::string read_file(const std::string& path);

}  // namespace eff
