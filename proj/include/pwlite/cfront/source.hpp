#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pwlite {

using FileId = std::uint32_t;

struct SourceSpan {
  FileId file = 0;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

  bool contains(const SourceSpan &other) const {
    return file == other.file && begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const SourceSpan &, const SourceSpan &) = default;
};

struct LineCol {
  std::uint32_t line = 1;   // 1-based
  std::uint32_t column = 1; // 1-based, in bytes
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A source buffer with a line-start index.
struct SourceFile {
  std::filesystem::path path;
  std::string text;
  std::vector<std::size_t> line_index{0};

  SourceFile() = default;
  SourceFile(std::filesystem::path p, std::string t);

  /// Reads a file from disk. Throws IoError when unreadable or not valid UTF-8.
  static SourceFile load(const std::filesystem::path &p);

  std::size_t line_count() const;
  LineCol line_col(std::size_t offset) const;
  std::size_t line_start(std::uint32_t line) const;
  std::string_view line_text(std::uint32_t line) const;
  /// Leading whitespace of the line containing `offset`.
  std::string_view indentation_at(std::size_t offset) const;
};

bool is_valid_utf8(std::string_view bytes);

} // namespace pwlite
