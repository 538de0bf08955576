#pragma once

#include "pwlite/patterns/dependence.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pwlite {

enum class PatternKind { Forall, ScalarReduction, SparseForall, SparseReduction, Sequential, Unknown };
std::string_view to_string(PatternKind kind);

struct Reduction {
  std::string op;
  const Symbol *variable = nullptr;
};

struct PatternClass {
  PatternKind kind = PatternKind::Unknown;
  /// Scalar reductions, sorted by variable name. For sparse_reduction the
  /// single entry names the reduced array.
  std::vector<Reduction> reductions;
  /// Why the loop is sequential or unknown.
  std::string reason;
  SourceSpan reason_span;

  bool parallel() const {
    return kind == PatternKind::Forall || kind == PatternKind::ScalarReduction;
  }
  std::string str() const;
};

PatternClass classify_pattern(const LoopNest &nest, const DependenceSet &deps);

} // namespace pwlite
