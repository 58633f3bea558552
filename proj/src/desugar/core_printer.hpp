#pragma once

#include <string>

#include "desugar/core.hpp"
#include "syntax/ast.hpp"

namespace eff::core {

// Embeds core back into surface syntax. Desugaring the result reproduces
// the original up to source positions.
syntax::TermPtr to_surface(const Comp& c);
syntax::TermPtr to_surface(const Expr& e);

// Surface rendering (fresh variables print as `$n`).
std::string print_comp(const Comp& c);

// S-expressions without positions.
std::string dump_expr(const Expr& e);
std::string dump_comp(const Comp& c);
std::string dump_item(const Item& item);

}  // namespace eff::core
