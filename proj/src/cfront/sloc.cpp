#include "pwlite/cfront/sloc.hpp"

#include <cctype>

namespace pwlite {

std::size_t count_sloc(std::string_view text) {
  enum class State { Code, Line, Block, String, Char };
  State st = State::Code;
  std::size_t count = 0;
  bool has_code = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    char n = i + 1 < text.size() ? text[i + 1] : '\0';
    if (c == '\n') {
      count += has_code;
      has_code = false;
      if (st == State::Line)
        st = State::Code;
      // Unterminated literals end at the line break.
      if (st == State::String || st == State::Char)
        st = State::Code;
      continue;
    }
    switch (st) {
    case State::Code:
      if (c == '/' && n == '/') {
        st = State::Line;
        ++i;
      } else if (c == '/' && n == '*') {
        st = State::Block;
        ++i;
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        has_code = true;
        if (c == '"')
          st = State::String;
        else if (c == '\'')
          st = State::Char;
      }
      break;
    case State::Line:
      if (c == '\\' && n == '\n')
        ++i; // continued line comment
      break;
    case State::Block:
      if (c == '*' && n == '/') {
        st = State::Code;
        ++i;
      }
      break;
    case State::String:
    case State::Char:
      if (c == '\\' && n != '\n')
        ++i;
      else if ((st == State::String && c == '"') || (st == State::Char && c == '\''))
        st = State::Code;
      break;
    }
  }
  count += has_code;
  return count;
}

} // namespace pwlite
