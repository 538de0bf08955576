#pragma once

#include "pwlite/cfront/source.hpp"

#include <cstddef>
#include <string_view>

namespace pwlite {

/// Physical source lines: lines holding at least one character that is
/// neither whitespace nor inside a comment. An unterminated block comment
/// swallows the rest of the file.
std::size_t count_sloc(std::string_view text);
inline std::size_t count_sloc(const SourceFile &source) { return count_sloc(source.text); }

} // namespace pwlite
