#pragma once

#include "pwlite/cfront/source.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pwlite {

enum class TokenKind {
  Identifier,
  Number,
  CharLiteral,
  StringLiteral,
  Punct,
  Pragma,     // text holds the directive body after `#pragma`
  PureMarker, // a `/*@pure@*/` comment
  Eof,
};

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string text;
  SourceSpan span;
  bool leading_space = false;
  bool from_macro = false;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool is_ident(std::string_view t) const { return is(TokenKind::Identifier, t); }
};

struct StrippedText {
  /// Same length as the input; comment bytes other than newlines become spaces.
  std::string text;
  /// Offsets of `/*@pure@*/` marker comments.
  std::vector<std::size_t> pure_markers;
};

StrippedText strip_comments(std::string_view text);

/// Lexes `text[begin, end)`, treating backslash-newline as whitespace.
std::vector<Token> lex_range(std::string_view text, std::size_t begin,
                             std::size_t end, FileId file);

/// Joins token spellings, inserting a space where the source had one.
std::string spell(const std::vector<Token> &tokens);

} // namespace pwlite
