#pragma once

#include "pwlite/semantics/def_use.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pwlite {

struct LoopNest {
  const AstNode *loop = nullptr; // ForStmt
  const AstNode *function = nullptr;
  const Symbol *index_var = nullptr;
  std::optional<AffineExpr> lower;
  /// Bound from the condition, as written (`i < upper`, `i <= upper`, ...).
  std::optional<AffineExpr> upper;
  std::string cond_op; // comparison with the index on the left
  long step = 0;
  bool canonical = false;
  std::string noncanonical_reason;
  int depth = 0;
  LoopNest *parent = nullptr;
  std::vector<std::unique_ptr<LoopNest>> children;
  bool contains_while = false;
  std::vector<std::string> contains_call; // sorted, unique

  const AstNode *body() const { return loop->for_body(); }
  /// Number of iterations when lower and upper bounds are constants.
  std::optional<long> trip_count() const;
  /// Index value of iteration k (requires constant lower bound).
  long index_at(long k) const { return lower->constant + k * step; }
  bool is_innermost() const { return children.empty(); }
  /// Indices of canonical loops nested inside this one.
  std::vector<const Symbol *> inner_indices() const;
  /// Preorder list of this nest and all nested loops.
  std::vector<const LoopNest *> flatten() const;
};

using LoopForest = std::vector<std::unique_ptr<LoopNest>>;

/// Every ForStmt of `fn`, grouped into nests, outermost first.
LoopForest enumerate_loops(const AstNode &fn, const SymbolTable &table, const DefUseInfo &du);

/// Preorder list of every loop in the forest.
std::vector<const LoopNest *> all_loops(const LoopForest &forest);

} // namespace pwlite
