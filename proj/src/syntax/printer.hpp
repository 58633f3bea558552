#pragma once

#include <string>
#include <vector>

#include "syntax/ast.hpp"

namespace eff::syntax {

// Fully parenthesized concrete syntax; parse_term(print_term(t)) has the same
// dump as t.
std::string print_term(const Term& term);
std::string print_pattern(const Pattern& pattern);
std::string print_type_expr(const TypeExpr& type);
std::string print_item(const Item& item);
std::string print_program(const std::vector<Item>& items);

// S-expressions without source positions, for structural comparison and
// --ast output.
std::string dump_term(const Term& term);
std::string dump_pattern(const Pattern& pattern);
std::string dump_type_expr(const TypeExpr& type);
std::string dump_literal(const Literal& lit);
std::string dump_item(const Item& item);

}  // namespace eff::syntax
