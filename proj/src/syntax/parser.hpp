#pragma once

#include <string_view>
#include <vector>

#include "syntax/ast.hpp"
#include "syntax/lexer.hpp"

namespace eff::syntax {

std::vector<Item> parse_program(const std::vector<Token>& tokens);

// Convenience: tokenize and parse in one go.
std::vector<Item> parse_program(std::string_view source);

// Parses a single term (the whole input must be one term).
TermPtr parse_term(std::string_view source);

TypeExprPtr parse_type(std::string_view source);

}  // namespace eff::syntax
