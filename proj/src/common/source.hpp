#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace eff {

struct Position {
  int line = 1;
  int column = 1;

  auto operator<=>(const Position&) const = default;
};

struct Span {
  Position begin;
  Position end;
};

std::string to_string(const Position& pos);

// Base of every error the pipeline reports. `what()` holds the bare message;
// the position is kept separately so callers can prefix file names.
class Error : public std::runtime_error {
 public:
  Error(const std::string& message, Span span)
      : std::runtime_error(message), span_(span) {}

  const Span& span() const { return span_; }

 private:
  Span span_;
};

class LexError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, Span span, bool at_end)
      : Error(message, span), at_end_(at_end) {}

  // True when the input ended before the item was complete; the REPL uses
  // this to ask for another line instead of reporting an error.
  bool at_end() const { return at_end_; }

 private:
  bool at_end_;
};

}  // namespace eff
