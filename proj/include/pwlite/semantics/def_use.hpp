#pragma once

#include "pwlite/semantics/symbols.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pwlite {

/// Linear form `sum(coeff * symbol) + constant` over integer symbols.
struct AffineExpr {
  std::map<const Symbol *, long> coeffs; // no zero entries
  long constant = 0;

  long coeff(const Symbol *s) const;
  bool is_constant() const { return coeffs.empty(); }
  /// Copy without the terms for `s`.
  AffineExpr without(const Symbol *s) const;
  AffineExpr &operator+=(const AffineExpr &o);
  AffineExpr scaled(long k) const;
  friend bool operator==(const AffineExpr &, const AffineExpr &) = default;
  std::string str() const;
};

/// Converts an integer expression to affine form; nullopt when not affine.
std::optional<AffineExpr> to_affine(const AstNode &expr, const SymbolTable &table);

enum class SubscriptForm { Whole, Affine, Indirect, Unknown };
std::string_view to_string(SubscriptForm form);

struct Subscript {
  SubscriptForm form = SubscriptForm::Whole;
  /// One entry per dimension, outermost first; empty optional for a
  /// dimension that is not affine.
  std::vector<std::optional<AffineExpr>> dims;
  std::vector<const AstNode *> dim_exprs;
  /// Indirect form: the array providing the index (`b` in `a[b[i]]`).
  const Symbol *index_array = nullptr;
};

struct Access {
  /// Null when the base of the access is not a named variable.
  const Symbol *symbol = nullptr;
  Subscript subscript;
  const AstNode *node = nullptr; // the Identifier/ArraySubscript/... node
  const AstNode *unit = nullptr; // key of the owning StmtEffects
  bool is_write = false;
  bool through_pointer = false; // dereferences a pointer-typed base
  bool address_taken = false;   // `&x`
  bool conditional = false;     // inside `&&`, `||` or `?:` operands
  int order = 0;                // evaluation order within the function
};

struct CallSite {
  std::string callee;
  const Symbol *symbol = nullptr; // null for calls through expressions
  const AstNode *node = nullptr;
  const AstNode *unit = nullptr;
  bool indirect = false; // callee is not a plain function name
};

/// Effects of one evaluation unit: an expression statement, a declarator,
/// a return value, or one control expression of if/while/for/switch.
struct StmtEffects {
  const AstNode *unit = nullptr;
  std::vector<Access> reads;
  std::vector<Access> writes;
  std::vector<CallSite> calls;
  /// Reads and writes in evaluation order.
  std::vector<Access> ordered;
};

struct DefUseInfo {
  const AstNode *function = nullptr;
  std::vector<StmtEffects> units;
  std::unordered_map<const AstNode *, std::size_t> unit_index;

  /// Effects keyed by an ExprStmt, VarDecl, ReturnStmt or control
  /// expression node; null when the node has no effects recorded.
  const StmtEffects *effects(const AstNode &unit) const;
  /// All accesses located inside `region` (span containment), in order.
  std::vector<const Access *> accesses_in(const AstNode &region) const;
  std::vector<const CallSite *> calls_in(const AstNode &region) const;
};

DefUseInfo compute_def_use(const AstNode &function, const SymbolTable &table);

} // namespace pwlite
