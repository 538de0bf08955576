#include "pwlite/cfront/token.hpp"

#include <array>
#include <cctype>

namespace pwlite {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_ident_char(char c) {
  return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

constexpr std::array<std::string_view, 23> kMultiPunct = {
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "*=",  "/=", "%=", "+=", "-=", "&=", "^=", "|=", "##"};

// Skips a quoted literal starting at `i` (the opening quote); returns the
// offset one past the closing quote or `end` if unterminated.
std::size_t skip_quoted(std::string_view text, std::size_t i, std::size_t end) {
  char q = text[i++];
  while (i < end && text[i] != q && text[i] != '\n') {
    if (text[i] == '\\' && i + 1 < end)
      ++i;
    ++i;
  }
  return i < end && text[i] == q ? i + 1 : i;
}

} // namespace

StrippedText strip_comments(std::string_view in) {
  StrippedText out;
  out.text.assign(in);
  std::string &t = out.text;
  std::size_t i = 0;
  const std::size_t n = in.size();
  while (i < n) {
    char c = in[i];
    if (c == '"' || c == '\'') {
      i = skip_quoted(in, i, n);
      continue;
    }
    if (c == '/' && i + 1 < n && in[i + 1] == '/') {
      while (i < n && in[i] != '\n') {
        // A backslash-newline continues a line comment.
        if (in[i] == '\\' && i + 1 < n && in[i + 1] == '\n') {
          t[i] = ' ';
          i += 2;
          continue;
        }
        t[i++] = ' ';
      }
      continue;
    }
    if (c == '/' && i + 1 < n && in[i + 1] == '*') {
      std::size_t start = i;
      std::size_t close = in.find("*/", i + 2);
      std::size_t stop = close == std::string_view::npos ? n : close + 2;
      if (close != std::string_view::npos &&
          in.substr(start + 2, close - start - 2) == "@pure@")
        out.pure_markers.push_back(start);
      for (; i < stop; ++i)
        if (t[i] != '\n')
          t[i] = ' ';
      continue;
    }
    ++i;
  }
  return out;
}

std::vector<Token> lex_range(std::string_view text, std::size_t begin,
                             std::size_t end, FileId file) {
  std::vector<Token> out;
  std::size_t i = begin;
  bool space = false;
  auto emit = [&](TokenKind k, std::size_t b, std::size_t e) {
    Token tok;
    tok.kind = k;
    tok.text.assign(text.substr(b, e - b));
    tok.span = {file, static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(e)};
    tok.leading_space = space;
    out.push_back(std::move(tok));
    space = false;
  };
  while (i < end) {
    char c = text[i];
    if (c == '\\' && i + 1 < end && (text[i + 1] == '\n' || text[i + 1] == '\r')) {
      i += text[i + 1] == '\r' && i + 2 < end && text[i + 2] == '\n' ? 3 : 2;
      space = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      space = true;
      continue;
    }
    std::size_t b = i;
    if (is_ident_start(c)) {
      // Wide/UTF character and string literal prefixes.
      if ((c == 'L' || c == 'u' || c == 'U') && i + 1 < end &&
          (text[i + 1] == '\'' || text[i + 1] == '"')) {
        i = skip_quoted(text, i + 1, end);
        emit(text[b + 1] == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral, b, i);
        continue;
      }
      while (i < end && is_ident_char(text[i]))
        ++i;
      emit(TokenKind::Identifier, b, i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < end && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      while (i < end) {
        char d = text[i];
        if ((d == '+' || d == '-') &&
            (text[i - 1] == 'e' || text[i - 1] == 'E' || text[i - 1] == 'p' ||
             text[i - 1] == 'P')) {
          ++i;
          continue;
        }
        if (is_ident_char(d) || d == '.') {
          ++i;
          continue;
        }
        break;
      }
      emit(TokenKind::Number, b, i);
      continue;
    }
    if (c == '"' || c == '\'') {
      i = skip_quoted(text, i, end);
      emit(c == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral, b, i);
      continue;
    }
    std::size_t len = 1;
    for (std::string_view p : kMultiPunct) {
      if (text.substr(i, p.size()) == p && i + p.size() <= end) {
        len = p.size();
        break;
      }
    }
    i += len;
    emit(TokenKind::Punct, b, i);
  }
  return out;
}

std::string spell(const std::vector<Token> &tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && tokens[i].leading_space)
      out += ' ';
    out += tokens[i].text;
  }
  return out;
}

} // namespace pwlite
