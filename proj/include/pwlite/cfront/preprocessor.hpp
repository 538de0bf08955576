#pragma once

#include "pwlite/cfront/diagnostics.hpp"
#include "pwlite/cfront/source.hpp"
#include "pwlite/cfront/token.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace pwlite {

struct PreprocessOptions {
  std::vector<std::filesystem::path> include_paths;
  /// `NAME` or `NAME=VALUE`.
  std::vector<std::string> defines;
  /// Directory of stub headers used to satisfy `#include <...>`.
  std::filesystem::path sysroot;
};

struct LineOrigin {
  FileId file = 0;
  std::uint32_t line = 0;
};

/// Result of preprocessing one translation unit.
///
/// `output` is the expanded text (comments blanked, macros expanded, project
/// headers inlined, system headers elided); `line_origin` maps each of its
/// lines back to the file and line it came from. `tokens` is the parser
/// input: every token carries a span in original-file coordinates, and
/// tokens produced by macro expansion carry the span of the invocation.
struct PreprocessedUnit {
  SourceFile output;
  std::vector<LineOrigin> line_origin;
  std::vector<Token> tokens;
  std::vector<SourceFile> files; // files[0] is the main file, raw text
  std::vector<bool> system_file;
  std::vector<Diagnostic> diagnostics;
  bool partial = false;

  const SourceFile &file(FileId id) const { return files.at(id); }
  Diagnostic make_diag(DiagKind kind, Severity sev, const SourceSpan &at,
                       std::string message) const;
};

/// Throws FatalFileError for UnresolvedInclude, UnterminatedConditional,
/// MacroRecursion and IncludeDepth.
PreprocessedUnit preprocess(const SourceFile &source,
                            const PreprocessOptions &options);

} // namespace pwlite
