#pragma once

#include "pwlite/patterns/loop_nest.hpp"
#include "pwlite/semantics/purity.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pwlite {

enum class DepKind { Flow, Anti, Output, Unknown };
std::string_view to_string(DepKind kind);

struct Dependence {
  DepKind kind = DepKind::Unknown;
  const Symbol *symbol = nullptr; // null for blocking entries without a variable
  const Access *source = nullptr; // earlier access
  const Access *sink = nullptr;
  bool carried = true;
  std::optional<long> distance; // in index units, sink minus source
  bool indirect = false;
  bool reduction = false;
  std::string op;     // reduction operator
  std::string reason; // Unknown entries: why analysis gave up
  SourceSpan span;    // where the dependence is reported
};

/// Role of a scalar referenced in a loop but declared outside it.
enum class ScalarRole { ReadOnly, Private, Reduction, Carried };

struct ScalarInfo {
  ScalarRole role = ScalarRole::ReadOnly;
  std::string op; // Reduction
  bool conditional_write = false;
};

/// Sparse writes to one array through an index array.
struct IndirectWrites {
  bool all_reduction = true; // every write is `A[B[i]] op= e`
  std::string op;            // common operator when all_reduction
  bool read_elsewhere = false;
};

struct DependenceSet {
  std::vector<Dependence> deps;
  std::map<const Symbol *, ScalarInfo> scalars;
  std::map<const Symbol *, IndirectWrites> indirect;

  bool blocked() const;
  const Dependence *first_blocking() const;
  std::vector<const Dependence *> carried() const;
};

/// Purity of the callee of a call site, as seen by the dependence test.
using CallPurity = std::function<Purity(const CallSite &)>;

/// Treats functions with a pure/const attribute in `table` as pure and
/// everything else as unknown.
CallPurity attribute_purity(const SymbolTable &table);

struct DependenceOptions {
  /// Exact pairwise test over the iteration space when the trip count is
  /// a known constant not larger than this.
  long exact_trip_limit = 256;
};

DependenceSet test_dependences(const LoopNest &nest, const DefUseInfo &du,
                               const SymbolTable &table, const CallPurity &purity,
                               const DependenceOptions &options = {});

/// Reduction operator of a scalar update unit (`s += e`, `s = s * e`,
/// `if (e < s) s = e`, ...), or empty when `unit` is not one for `s`.
std::string reduction_operator(const AstNode &unit, const Symbol &s, const SymbolTable &table);

} // namespace pwlite
