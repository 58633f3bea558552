#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "session/session.hpp"

using namespace eff;
namespace fs = std::filesystem;

namespace {

// Program output and "value : type" echoes in execution order; an error ends
// the transcript with "error: <message>".
std::string transcript(const std::string& source) {
  std::string out;
  SessionOptions opts;
  opts.sequencing = Sequencing::Silent;
  opts.io.write = [&](std::string_view s) { out += s; };
  Session session(opts);
  session.load_prelude(EFF_TEST_PRELUDE);
  try {
    session.run_source(source, "corpus", [&](const Echo& e) {
      out += runtime::to_string(e.value) + " : " + e.type + "\n";
    });
  } catch (const std::exception& e) {
    out += std::string("error: ") + e.what() + "\n";
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("corpus programs match their golden transcripts") {
  const bool update = std::getenv("EFF_UPDATE_GOLDEN") != nullptr;
  int files = 0;
  for (const auto& entry : fs::directory_iterator(EFF_TEST_CORPUS)) {
    if (entry.path().extension() != ".eff") continue;
    ++files;
    const fs::path golden = fs::path(entry.path()).replace_extension(".out");
    const auto start = std::chrono::steady_clock::now();
    const std::string got = transcript(slurp(entry.path()));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (update) std::ofstream(golden, std::ios::binary) << got;
    INFO(entry.path().filename().string());
    REQUIRE(fs::exists(golden));
    CHECK(got == slurp(golden));
    CHECK(seconds < 1.0);
  }
  CHECK(files >= 10);
}
