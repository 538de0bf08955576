#pragma once

#include "pwlite/patterns/pattern.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pwlite {

enum class Paradigm { Multi, Taskwait, Taskloop };
std::string_view to_string(Paradigm p);
std::optional<Paradigm> paradigm_from(std::string_view name);

class CodegenError : public std::runtime_error {
public:
  enum class Kind { UnscopableVariable, UnsupportedPatternForTemplate, OverlappingEdits };
  CodegenError(Kind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct ScopingPlan {
  std::vector<std::string> shared;       // sorted
  std::vector<std::string> private_;     // sorted
  std::vector<std::string> firstprivate; // sorted
  std::vector<std::pair<std::string, std::string>> reduction; // (op, var), sorted by var
  std::string loop_index;
  /// The index is declared before the loop rather than in its init.
  bool index_declared_outside = false;
};

/// Data-sharing attributes for parallelizing `nest`. Throws CodegenError
/// (UnscopableVariable) when a written scalar is needed after the loop, and
/// (UnsupportedPatternForTemplate) unless the pattern is forall or
/// scalar_reduction.
ScopingPlan compute_data_scoping(const LoopNest &nest, const DefUseInfo &du,
                                 const SymbolTable &table, const PatternClass &pattern);

enum class EditKind { InsertBefore, InsertAfter, WrapBlock };

struct SourceEdit {
  std::size_t anchor = 0;
  EditKind kind = EditKind::InsertBefore;
  std::string text;
  /// WrapBlock: end of the wrapped range and the text placed after it.
  std::size_t end = 0;
  std::string text_after;
};

struct CodegenOptions {
  std::string schedule = "auto";
  std::optional<long> taskloop_grainsize;
};

std::vector<SourceEdit> generate_parallel_for(const LoopNest &nest, const ScopingPlan &plan,
                                              const SourceFile &source,
                                              const CodegenOptions &options = {});
/// Throws CodegenError (UnsupportedPatternForTemplate) for reductions.
std::vector<SourceEdit> generate_task_taskwait(const LoopNest &nest, const ScopingPlan &plan,
                                               const SourceFile &source);
std::vector<SourceEdit> generate_taskloop(const LoopNest &nest, const ScopingPlan &plan,
                                          const SourceFile &source,
                                          const CodegenOptions &options = {});

/// Applies edits in descending anchor order. At equal anchors, text
/// inserted after the preceding content comes before text inserted ahead
/// of the following content. Throws CodegenError (OverlappingEdits).
SourceFile apply_edits(const SourceFile &source, std::vector<SourceEdit> edits);

} // namespace pwlite
