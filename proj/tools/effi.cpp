// Command-line driver: runs files in one shared session, or a REPL.
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eff/eff.h"

namespace {

void print_echo(void*, const char* value, const char* type) {
  if (type) {
    std::printf("%s : %s\n", value, type);
  } else {
    std::printf("%s\n", value);
  }
  std::fflush(stdout);
}

void report(const eff_session* s, eff_status st) {
  const char* msg = eff_error_message(s);
  std::fprintf(stderr, "%s\n", *msg ? msg : eff_status_name(st));
}

int repl(eff_session* s) {
  const bool tty = isatty(STDIN_FILENO);
  std::string buffer;
  std::string line;
  for (;;) {
    if (tty) {
      std::fputs(buffer.empty() ? "# " : "  ", stdout);
      std::fflush(stdout);
    }
    if (!std::getline(std::cin, line)) break;
    buffer += line;
    buffer += '\n';
    if (buffer.find_first_not_of(" \t\r\n") == std::string::npos) {
      buffer.clear();
      continue;
    }
    const eff_status st = eff_run_source(s, buffer.data(), buffer.size(), "<stdin>");
    if (st == EFF_ERR_INCOMPLETE_INPUT) continue;
    if (st != EFF_OK) report(s, st);
    buffer.clear();
  }
  if (tty) std::fputc('\n', stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpreter for eff, a language with algebraic effects and handlers"};
  std::vector<std::string> files;
  bool no_typecheck = false;
  bool print_ast = false;
  bool no_prelude = false;
  std::string sequencing = "warn";
  std::string prelude;
  app.add_option("files", files, "Source files, run in order in one session (none: REPL)");
  app.add_flag("--no-typecheck", no_typecheck, "Run programs without type checking");
  app.add_option("--sequencing", sequencing, "Sequencing diagnostics: warn, error or silent")
      ->check(CLI::IsMember({"warn", "error", "silent"}));
  app.add_option("--prelude", prelude, "Prelude directory (default: $EFF_PRELUDE or the built-in one)");
  app.add_flag("--no-prelude", no_prelude, "Start without the prelude");
  app.add_flag("--ast", print_ast, "Print the desugared program instead of running it");
  app.set_version_flag("--version", std::string(eff_version()));
  CLI11_PARSE(app, argc, argv);

  if (print_ast) {
    int code = 0;
    for (const auto& path : files) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        std::fprintf(stderr, "cannot open %s\n", path.c_str());
        return EFF_ERR_IO;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      const std::string text = ss.str();
      char* out = nullptr;
      char* error = nullptr;
      const eff_status st = eff_dump_source(text.data(), text.size(), &out, &error);
      if (st == EFF_OK) {
        std::fputs(out, stdout);
      } else {
        std::fprintf(stderr, "%s: %s\n", path.c_str(), error ? error : eff_status_name(st));
        code = st;
      }
      eff_string_free(out);
      eff_string_free(error);
      if (code) return code;
    }
    return 0;
  }

  eff_options opts;
  eff_options_init(&opts);
  opts.typecheck = no_typecheck ? 0 : 1;
  opts.sequencing = sequencing == "error"    ? EFF_SEQUENCING_ERROR
                    : sequencing == "silent" ? EFF_SEQUENCING_SILENT
                                             : EFF_SEQUENCING_WARN;
  if (no_prelude) {
    opts.prelude_dir = "";
  } else if (!prelude.empty()) {
    opts.prelude_dir = prelude.c_str();
  }
  opts.echo = print_echo;

  eff_session* session = nullptr;
  eff_status st = eff_session_create(&opts, &session);
  if (st != EFF_OK) {
    if (session) report(session, st);
    eff_session_destroy(session);
    return st;
  }
  int code = 0;
  if (files.empty()) {
    code = repl(session);
  } else {
    for (const auto& path : files) {
      st = eff_run_file(session, path.c_str());
      if (st != EFF_OK) {
        report(session, st);
        code = st;
        break;
      }
    }
  }
  eff_session_destroy(session);
  return code;
}
