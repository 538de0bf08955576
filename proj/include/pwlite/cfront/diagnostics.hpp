#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pwlite {

enum class DiagKind {
  UnresolvedInclude,
  UnterminatedConditional,
  MacroRecursion,
  UnsupportedMacro,
  IncludeDepth,
  DirectiveError,
  SyntaxError,
  UnsupportedConstruct,
  DuplicateDeclaration,
  IoFailure,
};

std::string_view to_string(DiagKind kind);

enum class Severity { Note, Warning, Error, Fatal };

struct Diagnostic {
  DiagKind kind;
  Severity severity = Severity::Error;
  std::string file;
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  std::string message;

  /// `file:line:col: kind: message`
  std::string render() const;
};

/// Raised for errors that abandon the current file.
class FatalFileError : public std::runtime_error {
public:
  explicit FatalFileError(Diagnostic d)
      : std::runtime_error(d.render()), diag_(std::move(d)) {}
  const Diagnostic &diagnostic() const { return diag_; }

private:
  Diagnostic diag_;
};

bool has_errors(const std::vector<Diagnostic> &diags);

} // namespace pwlite
