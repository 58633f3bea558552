#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "eff/eff.h"

namespace {

struct Capture {
  std::string output;
  std::vector<std::string> echoes;
  std::vector<std::string> diagnostics;
  std::vector<std::string> input;
  std::size_t next_line = 0;
  std::size_t write_limit = 0;  // abort after this many bytes when nonzero
};

int on_write(void* user, const char* data, size_t len) {
  auto* c = static_cast<Capture*>(user);
  c->output.append(data, len);
  return c->write_limit != 0 && c->output.size() >= c->write_limit;
}

const char* on_read(void* user, size_t* len) {
  auto* c = static_cast<Capture*>(user);
  if (c->next_line >= c->input.size()) return nullptr;
  const std::string& line = c->input[c->next_line++];
  *len = line.size();
  return line.c_str();
}

void on_echo(void* user, const char* value, const char* type) {
  static_cast<Capture*>(user)->echoes.push_back(std::string(value) + (type ? " : " + std::string(type) : ""));
}

void on_diagnostic(void* user, const char* message) {
  static_cast<Capture*>(user)->diagnostics.push_back(message);
}

struct Fixture {
  Capture cap;
  eff_session* session = nullptr;

  explicit Fixture(int typecheck = 1, eff_sequencing seq = EFF_SEQUENCING_WARN,
                   const char* prelude = EFF_TEST_PRELUDE) {
    eff_options opts;
    eff_options_init(&opts);
    opts.typecheck = typecheck;
    opts.sequencing = seq;
    opts.prelude_dir = prelude;
    opts.write = on_write;
    opts.read_line = on_read;
    opts.echo = on_echo;
    opts.diagnostic = on_diagnostic;
    opts.user = &cap;
    REQUIRE(eff_session_create(&opts, &session) == EFF_OK);
  }
  ~Fixture() { eff_session_destroy(session); }

  eff_status run(const std::string& src) {
    return eff_run_source(session, src.data(), src.size(), "input.eff");
  }
};

}  // namespace

TEST_CASE("options defaults and version") {
  eff_options opts;
  std::memset(&opts, 0xff, sizeof opts);
  eff_options_init(&opts);
  CHECK(opts.typecheck == 1);
  CHECK(opts.sequencing == EFF_SEQUENCING_WARN);
  CHECK(opts.prelude_dir == nullptr);
  CHECK(opts.write == nullptr);
  CHECK(opts.user == nullptr);
  CHECK(std::string(eff_version()) == "0.1.0");
  CHECK(std::string(eff_status_name(EFF_ERR_TYPE)) != "");
}

TEST_CASE("running source, echoes and persistent definitions") {
  Fixture f;
  CHECK(f.run("let x = 4") == EFF_OK);
  CHECK(f.run("x * x") == EFF_OK);
  CHECK(std::string(eff_last_value(f.session)) == "16");
  CHECK(std::string(eff_last_type(f.session)) == "int");
  CHECK(f.run("with accumulate handle std#write \"hello\"; std#write \"world\"; 3 * 14") == EFF_OK);
  REQUIRE(f.cap.echoes.size() == 2);
  CHECK(f.cap.echoes[1] == "(42, [\"hello\"; \"world\"]) : int * string list");
  CHECK(f.run("std#write \"out\"") == EFF_OK);
  CHECK(f.cap.output == "out");
  f.cap.input = {"line one"};
  CHECK(f.run("std#read ()") == EFF_OK);
  CHECK(std::string(eff_last_value(f.session)) == "\"line one\"");
}

TEST_CASE("error statuses and messages") {
  Fixture f;
  CHECK(f.run("1 +") == EFF_ERR_INCOMPLETE_INPUT);
  CHECK(f.run("1 + )") == EFF_ERR_PARSE);
  CHECK(std::string(eff_error_message(f.session)).find("input.eff:1:5: syntax error") == 0);
  CHECK(f.run("1 + true") == EFF_ERR_TYPE);
  CHECK(std::string(eff_error_message(f.session)).find("type error: cannot unify") != std::string::npos);
  CHECK(f.run("let c = new choice ;; c#decide ()") == EFF_ERR_RUNTIME);
  CHECK(std::string(eff_error_message(f.session)).find("uncaught operation") != std::string::npos);
  CHECK(f.run("1 / 0") == EFF_ERR_RUNTIME);
  CHECK(f.run("\"abc") == EFF_ERR_INCOMPLETE_INPUT);
  CHECK(f.run("let rec x = 1 in x") == EFF_ERR_PARSE);
  // The session survives errors.
  CHECK(f.run("1 + 1") == EFF_OK);
  CHECK(std::string(eff_error_message(f.session)) == "");
  CHECK(eff_run_source(nullptr, "1", 1, "x") == EFF_ERR_INVALID_ARGUMENT);
  CHECK(eff_run_file(f.session, "/nonexistent/file.eff") == EFF_ERR_IO);
}

TEST_CASE("sequencing modes and type checking switch") {
  const std::string src = "(1, std#write \"a\"; 2, std#write \"b\"; 3)";
  {
    Fixture f(1, EFF_SEQUENCING_WARN);
    CHECK(f.run("let g x = x in g (g 1) + g 2") == EFF_OK);
    CHECK(f.cap.diagnostics.size() == 1);
    CHECK(f.cap.diagnostics[0].find("warning[sequencing]") != std::string::npos);
  }
  {
    Fixture f(1, EFF_SEQUENCING_ERROR);
    CHECK(f.run("let g x = x in g (g 1) + g 2") == EFF_ERR_TYPE);
    CHECK(f.run("let g x = x in g 1 + 2") == EFF_OK);
  }
  {
    Fixture f(1, EFF_SEQUENCING_SILENT);
    CHECK(f.run("let g x = x in g (g 1) + g 2") == EFF_OK);
    CHECK(f.cap.diagnostics.empty());
  }
  {
    Fixture f(0, EFF_SEQUENCING_SILENT);
    CHECK(f.run("(fun k -> k k) (fun k -> 5)") == EFF_OK);
    CHECK(f.cap.echoes.back() == "5");
  }
}

TEST_CASE("aborting from the write callback") {
  Fixture f(0, EFF_SEQUENCING_SILENT);
  f.cap.write_limit = 3;
  CHECK(f.run("let rec loop n = std#write \"x\"; loop (n + 1) in loop 0") == EFF_ERR_ABORTED);
  CHECK(f.cap.output == "xxx");
}

TEST_CASE("sessions without prelude and prelude failures") {
  Fixture bare(1, EFF_SEQUENCING_WARN, "");
  CHECK(bare.run("map") == EFF_ERR_TYPE);
  CHECK(bare.run("1 + 1") == EFF_OK);

  eff_options opts;
  eff_options_init(&opts);
  opts.prelude_dir = "/nonexistent";
  eff_session* s = nullptr;
  CHECK(eff_session_create(&opts, &s) != EFF_OK);
  REQUIRE(s != nullptr);
  CHECK(std::string(eff_error_message(s)).find("prelude") != std::string::npos);
  eff_session_destroy(s);
  CHECK(eff_session_create(nullptr, nullptr) == EFF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("dumping desugared source") {
  char* out = nullptr;
  char* err = nullptr;
  const std::string src = "f (g x)";
  REQUIRE(eff_dump_source(src.data(), src.size(), &out, &err) == EFF_OK);
  CHECK(std::string(out).find("let") != std::string::npos);
  eff_string_free(out);
  const std::string bad = "let = ";
  CHECK(eff_dump_source(bad.data(), bad.size(), &out, &err) != EFF_OK);
  CHECK(err != nullptr);
  eff_string_free(err);
}
