#pragma once

#include "pwlite/cfront/ast.hpp"
#include "pwlite/cfront/preprocessor.hpp"

namespace pwlite {

/// Parses a preprocessed unit into a TranslationUnit. Never throws for
/// syntax problems: a function body that cannot be handled becomes opaque,
/// and a broken top-level declaration is skipped; both are recorded in
/// `diagnostics`.
TranslationUnit parse_translation_unit(PreprocessedUnit pp);

/// Preprocesses and parses. Throws FatalFileError on fatal preprocessing
/// errors and IoError when an include cannot be read.
TranslationUnit parse_source(const SourceFile &source, const PreprocessOptions &options);

} // namespace pwlite
