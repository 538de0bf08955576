#include "pwlite/cfront/diagnostics.hpp"

#include <algorithm>

namespace pwlite {

std::string_view to_string(DiagKind kind) {
  switch (kind) {
  case DiagKind::UnresolvedInclude:
    return "UnresolvedInclude";
  case DiagKind::UnterminatedConditional:
    return "UnterminatedConditional";
  case DiagKind::MacroRecursion:
    return "MacroRecursion";
  case DiagKind::UnsupportedMacro:
    return "UnsupportedMacro";
  case DiagKind::IncludeDepth:
    return "IncludeDepth";
  case DiagKind::DirectiveError:
    return "DirectiveError";
  case DiagKind::SyntaxError:
    return "SyntaxError";
  case DiagKind::UnsupportedConstruct:
    return "UnsupportedConstruct";
  case DiagKind::DuplicateDeclaration:
    return "DuplicateDeclaration";
  case DiagKind::IoFailure:
    return "IoFailure";
  }
  return "?";
}

std::string Diagnostic::render() const {
  std::string out = file;
  if (line) {
    out += ':' + std::to_string(line);
    if (column)
      out += ':' + std::to_string(column);
  }
  out += ": ";
  out += to_string(kind);
  out += ": ";
  out += message;
  return out;
}

bool has_errors(const std::vector<Diagnostic> &diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic &d) {
    return d.severity == Severity::Error || d.severity == Severity::Fatal;
  });
}

} // namespace pwlite
