#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "common/source.hpp"

namespace eff::syntax {

enum class TokenKind {
  Keyword,
  Identifier,
  TypeVariable,  // 'a
  IntLiteral,
  FloatLiteral,
  StringLiteral,
  Symbol,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  // Identifier/keyword/symbol spelling, or the decoded contents of a string
  // literal. Numeric literals keep their source spelling.
  std::string text;
  Position position;
  Position end;
  std::int64_t int_value = 0;
  double float_value = 0.0;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
  bool is_symbol(std::string_view t) const { return is(TokenKind::Symbol, t); }
};

const char* to_string(TokenKind kind);

bool is_reserved_word(std::string_view word);

// The returned stream always ends with a single End token.
std::vector<Token> tokenize(std::string_view source);

}  // namespace eff::syntax
