#include "syntax/lexer.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <cstdlib>

namespace eff::syntax {
namespace {

constexpr std::array kReserved = {
    "let",  "rec",     "and",   "in",       "fun",      "function", "handler",
    "handle", "with",  "val",   "finally",  "operation", "effect",  "end",
    "new",  "type",    "match", "if",       "then",     "else",     "true",
    "false", "for",    "while", "do",       "done",     "to",       "of",
};

// Longest match first.
constexpr std::array kSymbols = {
    ";;", "::", ":=", "->", "=>", "<>", "<=", ">=", "||", "&&", "+.", "-.", "*.", "/.",
    "(",  ")",  "[",  "]",  ",",  ";",  "|",  "=",  "<",  ">",  "@",  "+",  "-",  "*",
    "/",  ":",  "#",  "!",  "_",
};

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blanks();
      Token tok;
      tok.position = pos_;
      if (at_end()) {
        tok.kind = TokenKind::End;
        tok.end = pos_;
        out.push_back(std::move(tok));
        return out;
      }
      lex_one(tok);
      tok.end = pos_;
      out.push_back(std::move(tok));
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }

  void advance() {
    const char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      // Columns count code points, so UTF-8 continuation bytes are skipped.
      ++pos_.column;
    }
  }

  [[noreturn]] void fail(const std::string& msg, Position at) const {
    throw LexError(msg, Span{at, pos_});
  }

  void skip_blanks() {
    for (;;) {
      while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                           peek() == '\r')) {
        advance();
      }
      if (peek() == '(' && peek(1) == '*') {
        skip_comment();
        continue;
      }
      return;
    }
  }

  void skip_comment() {
    const Position start = pos_;
    int depth = 0;
    while (!at_end()) {
      if (peek() == '(' && peek(1) == '*') {
        advance();
        advance();
        ++depth;
      } else if (peek() == '*' && peek(1) == ')') {
        advance();
        advance();
        if (--depth == 0) return;
      } else {
        advance();
      }
    }
    fail("unterminated comment", start);
  }

  void lex_one(Token& tok) {
    const char c = peek();
    if (is_ident_start(c) && !(c == '_' && !is_ident_char(peek(1)))) {
      lex_word(tok);
    } else if (c == '\'' && is_ident_start(peek(1))) {
      advance();
      std::string name = "'";
      while (!at_end() && is_ident_char(peek()) && peek() != '\'') {
        name += peek();
        advance();
      }
      tok.kind = TokenKind::TypeVariable;
      tok.text = std::move(name);
    } else if (is_digit(c)) {
      lex_number(tok);
    } else if (c == '"') {
      lex_string(tok);
    } else {
      for (std::string_view sym : kSymbols) {
        if (src_.substr(i_, sym.size()) == sym) {
          for (std::size_t k = 0; k < sym.size(); ++k) advance();
          tok.kind = TokenKind::Symbol;
          tok.text = std::string(sym);
          return;
        }
      }
      fail(std::string("illegal character '") + c + "'", pos_);
    }
  }

  void lex_word(Token& tok) {
    std::string word;
    while (!at_end() && is_ident_char(peek())) {
      word += peek();
      advance();
    }
    if (word == "mod") {
      tok.kind = TokenKind::Symbol;
    } else if (is_reserved_word(word)) {
      tok.kind = TokenKind::Keyword;
    } else {
      tok.kind = TokenKind::Identifier;
    }
    tok.text = std::move(word);
  }

  void lex_number(Token& tok) {
    const Position start = pos_;
    std::string text;
    bool is_float = false;
    while (is_digit(peek())) {
      text += peek();
      advance();
    }
    if (peek() == '.') {
      is_float = true;
      text += '.';
      advance();
      while (is_digit(peek())) {
        text += peek();
        advance();
      }
    }
    if (peek() == 'e' || peek() == 'E') {
      const bool signed_exp = (peek(1) == '+' || peek(1) == '-') && is_digit(peek(2));
      if (is_digit(peek(1)) || signed_exp) {
        is_float = true;
        text += 'e';
        advance();
        if (signed_exp) {
          text += peek();
          advance();
        }
        while (is_digit(peek())) {
          text += peek();
          advance();
        }
      }
    }
    if (is_ident_char(peek()) || peek() == '.') {
      fail("malformed number", start);
    }
    tok.text = text;
    if (is_float) {
      tok.kind = TokenKind::FloatLiteral;
      errno = 0;
      tok.float_value = std::strtod(text.c_str(), nullptr);
      if (errno == ERANGE) fail("malformed number", start);
    } else {
      tok.kind = TokenKind::IntLiteral;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), tok.int_value);
      if (ec != std::errc{}) fail("malformed number (integer literal out of range)", start);
    }
  }

  void lex_string(Token& tok) {
    const Position start = pos_;
    advance();
    std::string value;
    for (;;) {
      if (at_end()) fail("unterminated string literal", start);
      const char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (at_end()) fail("unterminated string literal", start);
        const char e = peek();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          case '\\': value += '\\'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          default: fail(std::string("unknown escape sequence '\\") + e + "'", pos_);
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    tok.kind = TokenKind::StringLiteral;
    tok.text = std::move(value);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Position pos_;
};

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::TypeVariable: return "type variable";
    case TokenKind::IntLiteral: return "integer literal";
    case TokenKind::FloatLiteral: return "float literal";
    case TokenKind::StringLiteral: return "string literal";
    case TokenKind::Symbol: return "symbol";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

bool is_reserved_word(std::string_view word) {
  for (std::string_view w : kReserved) {
    if (w == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace eff::syntax
