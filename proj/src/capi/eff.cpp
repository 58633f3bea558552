#include "eff/eff.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <memory>
#include <string>

#include "session/session.hpp"
#include "typecheck/types.hpp"

struct eff_session {
  eff_options options;
  std::unique_ptr<eff::Session> session;
  std::string error;
  std::string last_value;
  std::string last_type;
  std::string stdin_line;
};

namespace {

struct Failure {
  eff_status status;
  std::string message;
};

std::string located(const std::string& file, const eff::Error& e, const char* category) {
  return file + ":" + eff::to_string(e.span().begin) + ": " + category + ": " + e.what();
}

// Maps the exception in flight to a status and a rendered message.
Failure classify(const std::string& file) {
  try {
    throw;
  } catch (const eff::PreludeError& e) {
    Failure f{EFF_ERR_INTERNAL, "error while loading the prelude: " + std::string(e.what())};
    if (e.cause()) {
      try {
        std::rethrow_exception(e.cause());
      } catch (...) {
        f.status = classify(e.file()).status;
      }
    } else {
      f.status = EFF_ERR_IO;
    }
    if (f.status == EFF_ERR_INCOMPLETE_INPUT) f.status = EFF_ERR_PARSE;
    return f;
  } catch (const eff::ParseError& e) {
    return {e.at_end() ? EFF_ERR_INCOMPLETE_INPUT : EFF_ERR_PARSE, located(file, e, "syntax error")};
  } catch (const eff::LexError& e) {
    const bool open = std::strncmp(e.what(), "unterminated", 12) == 0;
    return {open ? EFF_ERR_INCOMPLETE_INPUT : EFF_ERR_PARSE, located(file, e, "syntax error")};
  } catch (const eff::DesugarError& e) {
    if (e.code() == "sequencing") return {EFF_ERR_TYPE, located(file, e, "error[sequencing]")};
    return {EFF_ERR_PARSE, located(file, e, ("error[" + e.code() + "]").c_str())};
  } catch (const eff::types::TypeError& e) {
    return {EFF_ERR_TYPE, located(file, e, "type error")};
  } catch (const eff::runtime::RuntimeError& e) {
    if (e.located()) return {EFF_ERR_RUNTIME, located(file, e, "runtime error")};
    return {EFF_ERR_RUNTIME, file + ": runtime error: " + e.what()};
  } catch (const eff::runtime::Aborted& e) {
    return {EFF_ERR_ABORTED, e.what()};
  } catch (const std::bad_alloc&) {
    return {EFF_ERR_INTERNAL, "out of memory"};
  } catch (const std::exception& e) {
    return {EFF_ERR_INTERNAL, e.what()};
  } catch (...) {
    return {EFF_ERR_INTERNAL, "unknown error"};
  }
}

eff_status fail(eff_session* s, const std::string& file) {
  Failure f = classify(file);
  s->error = std::move(f.message);
  return f.status;
}

eff::runtime::Io make_io(eff_session* s) {
  eff::runtime::Io io;
  io.write = [s](std::string_view data) {
    if (s->options.write) {
      if (s->options.write(s->options.user, data.data(), data.size()) != 0) throw eff::runtime::Aborted();
    } else {
      std::fwrite(data.data(), 1, data.size(), stdout);
      std::fflush(stdout);
    }
  };
  io.read_line = [s]() -> std::optional<std::string> {
    if (s->options.read_line) {
      std::size_t len = 0;
      const char* line = s->options.read_line(s->options.user, &len);
      if (!line) return std::nullopt;
      return std::string(line, len);
    }
    if (!std::getline(std::cin, s->stdin_line)) return std::nullopt;
    if (!s->stdin_line.empty() && s->stdin_line.back() == '\r') s->stdin_line.pop_back();
    return s->stdin_line;
  };
  return io;
}

}  // namespace

extern "C" {

void eff_options_init(eff_options* options) {
  if (!options) return;
  std::memset(options, 0, sizeof *options);
  options->typecheck = 1;
  options->sequencing = EFF_SEQUENCING_WARN;
}

eff_status eff_session_create(const eff_options* options, eff_session** out) {
  if (!out) return EFF_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  eff_session* s = nullptr;
  try {
    s = new eff_session();
    if (options) {
      s->options = *options;
    } else {
      eff_options_init(&s->options);
    }
    if (s->options.sequencing < EFF_SEQUENCING_WARN || s->options.sequencing > EFF_SEQUENCING_SILENT) {
      delete s;
      return EFF_ERR_INVALID_ARGUMENT;
    }
    eff::SessionOptions so;
    so.typecheck = s->options.typecheck != 0;
    so.sequencing = static_cast<eff::Sequencing>(s->options.sequencing);
    so.io = make_io(s);
    so.warn = [s](const std::string& msg) {
      if (s->options.diagnostic) {
        s->options.diagnostic(s->options.user, msg.c_str());
      } else {
        std::fprintf(stderr, "%s\n", msg.c_str());
      }
    };
    s->session = std::make_unique<eff::Session>(std::move(so));
  } catch (...) {
    delete s;
    return EFF_ERR_INTERNAL;
  }
  *out = s;
  try {
    const std::string dir = s->options.prelude_dir ? s->options.prelude_dir : eff::default_prelude_dir();
    if (!dir.empty()) s->session->load_prelude(dir);
  } catch (...) {
    return fail(s, "prelude");
  }
  return EFF_OK;
}

void eff_session_destroy(eff_session* session) { delete session; }

eff_status eff_run_source(eff_session* s, const char* source, size_t len, const char* name) {
  if (!s || (!source && len > 0)) return EFF_ERR_INVALID_ARGUMENT;
  const std::string file = name ? name : "<input>";
  s->error.clear();
  try {
    s->session->run_source(std::string_view(source ? source : "", len), file, [&](const eff::Echo& e) {
      s->last_value = eff::runtime::to_string(e.value);
      s->last_type = e.type;
      if (s->options.echo) {
        s->options.echo(s->options.user, s->last_value.c_str(),
                        s->options.typecheck ? s->last_type.c_str() : nullptr);
      }
    });
  } catch (...) {
    return fail(s, file);
  }
  return EFF_OK;
}

eff_status eff_run_file(eff_session* s, const char* path) {
  if (!s || !path) return EFF_ERR_INVALID_ARGUMENT;
  std::string text;
  try {
    text = eff::read_file(path);
  } catch (const std::exception& e) {
    s->error = e.what();
    return EFF_ERR_IO;
  }
  eff_status st = eff_run_source(s, text.data(), text.size(), path);
  return st == EFF_ERR_INCOMPLETE_INPUT ? EFF_ERR_PARSE : st;
}

const char* eff_error_message(const eff_session* s) { return s ? s->error.c_str() : ""; }
const char* eff_last_value(const eff_session* s) { return s ? s->last_value.c_str() : ""; }
const char* eff_last_type(const eff_session* s) { return s ? s->last_type.c_str() : ""; }

static char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

eff_status eff_dump_source(const char* source, size_t len, char** out, char** error) {
  if (!out || (!source && len > 0)) return EFF_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  if (error) *error = nullptr;
  try {
    *out = copy_string(eff::dump_program(std::string_view(source ? source : "", len)));
    return EFF_OK;
  } catch (...) {
    Failure f = classify("<input>");
    if (error) *error = copy_string(f.message);
    return f.status == EFF_ERR_INCOMPLETE_INPUT ? EFF_ERR_PARSE : f.status;
  }
}

void eff_string_free(char* s) { std::free(s); }

const char* eff_status_name(eff_status status) {
  switch (status) {
    case EFF_OK: return "ok";
    case EFF_ERR_RUNTIME: return "runtime error";
    case EFF_ERR_TYPE: return "type error";
    case EFF_ERR_PARSE: return "syntax error";
    case EFF_ERR_IO: return "i/o error";
    case EFF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case EFF_ERR_INCOMPLETE_INPUT: return "incomplete input";
    case EFF_ERR_ABORTED: return "aborted";
    case EFF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* eff_version(void) { return "0.1.0"; }

}  // extern "C"
