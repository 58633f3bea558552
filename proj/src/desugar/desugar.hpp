#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "desugar/core.hpp"
#include "syntax/ast.hpp"

namespace eff::desugar {

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string code;
  std::string message;
  Span span;
};

// "<file>:<line>:<col>: warning[code]: message"
std::string render(const Diagnostic& d, std::string_view file);

// Fresh names start with '$', which no identifier token can contain.
class NameSupply {
 public:
  std::string fresh() { return "$" + std::to_string(next_++); }

 private:
  int next_ = 1;
};

struct Result {
  core::CompPtr comp;
  std::vector<Diagnostic> diagnostics;
};

struct ItemResult {
  core::Item item;
  std::vector<Diagnostic> diagnostics;
};

Result desugar(const syntax::Term& term, NameSupply& names);
Result desugar(const syntax::Term& term);
ItemResult desugar_item(const syntax::Item& item, NameSupply& names);

// True iff the term lies in the expression fragment already.
bool is_expression(const syntax::Term& term);

}  // namespace eff::desugar
