#include "pwlite/cfront/source.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pwlite {

SourceFile::SourceFile(std::filesystem::path p, std::string t)
    : path(std::move(p)), text(std::move(t)) {
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] == '\n' && i + 1 < text.size())
      line_index.push_back(i + 1);
}

SourceFile SourceFile::load(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + p.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (!is_valid_utf8(text))
    throw IoError("'" + p.string() + "' is not valid UTF-8");
  return SourceFile(p, std::move(text));
}

std::size_t SourceFile::line_count() const {
  if (text.empty())
    return 0;
  return line_index.size();
}

LineCol SourceFile::line_col(std::size_t offset) const {
  auto it = std::upper_bound(line_index.begin(), line_index.end(), offset);
  std::size_t line = static_cast<std::size_t>(it - line_index.begin());
  std::size_t start = line_index[line - 1];
  return {static_cast<std::uint32_t>(line),
          static_cast<std::uint32_t>(offset - start + 1)};
}

std::size_t SourceFile::line_start(std::uint32_t line) const {
  if (line == 0 || line > line_index.size())
    return text.size();
  return line_index[line - 1];
}

std::string_view SourceFile::line_text(std::uint32_t line) const {
  std::size_t b = line_start(line);
  std::size_t e = text.find('\n', b);
  if (e == std::string::npos)
    e = text.size();
  return std::string_view(text).substr(b, e - b);
}

std::string_view SourceFile::indentation_at(std::size_t offset) const {
  std::string_view line = line_text(line_col(offset).line);
  std::size_t n = 0;
  while (n < line.size() && (line[n] == ' ' || line[n] == '\t'))
    ++n;
  return line.substr(0, n);
}

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    int extra = 0;
    if (c < 0x80)
      extra = 0;
    else if ((c >> 5) == 0x6 && c >= 0xC2)
      extra = 1;
    else if ((c >> 4) == 0xE)
      extra = 2;
    else if ((c >> 3) == 0x1E && c <= 0xF4)
      extra = 3;
    else
      return false;
    if (i + extra >= s.size() + (extra == 0 ? 1 : 0))
      return false;
    for (int k = 1; k <= extra; ++k)
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2)
        return false;
    i += extra + 1;
  }
  return true;
}

} // namespace pwlite
