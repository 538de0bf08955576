#pragma once

#include "pwlite/cfront/diagnostics.hpp"
#include "pwlite/cfront/omp_directive.hpp"
#include "pwlite/cfront/source.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pwlite {

enum class NodeKind {
  TranslationUnit,
  FunctionDef,
  Declaration,
  VarDecl,
  ParamDecl,
  CompoundStmt,
  ForStmt,
  WhileStmt,
  DoStmt,
  IfStmt,
  SwitchStmt,
  CaseStmt,
  DefaultStmt,
  BreakStmt,
  ContinueStmt,
  ReturnStmt,
  ExprStmt,
  NullStmt,
  OmpPragma,
  Empty, // placeholder for an omitted for-header part
  AssignExpr,
  BinaryExpr,
  UnaryExpr,
  CallExpr,
  ArraySubscript,
  MemberExpr,
  CastExpr,
  SizeofExpr,
  ConditionalExpr,
  Identifier,
  Literal,
  InitList,
  Opaque, // body of an opaque function
};

std::string_view to_string(NodeKind kind);

enum class ShapeKind { Scalar, Array, Pointer, Struct, Function, Unknown };

std::string_view to_string(ShapeKind shape);

struct DeclInfo {
  std::string name;
  std::string base_type;
  ShapeKind shape = ShapeKind::Scalar;
  int pointer_depth = 0;
  int array_rank = 0;
  bool is_static = false;
  bool is_extern = false;
  bool is_typedef = false;
  bool is_enum_constant = false;
  bool is_function_pointer = false;
  bool attr_pure = false;  // __attribute__((pure))
  bool attr_const = false; // __attribute__((const))
  bool pure_marker = false; // preceded by a /*@pure@*/ comment
  bool variadic = false;
  bool has_init = false;
  /// VarDecl: leading children that are array dimension expressions.
  std::size_t dim_count = 0;
  /// FunctionDef: leading children that are ParamDecls.
  std::size_t param_count = 0;

  bool purity_annotated() const { return attr_pure || attr_const || pure_marker; }
};

/// Node of the syntax tree. Children are owned; parent links are set once
/// the tree is complete and the tree is read-only afterwards.
struct AstNode {
  NodeKind kind = NodeKind::Empty;
  SourceSpan span;
  std::vector<std::unique_ptr<AstNode>> children;
  const AstNode *parent = nullptr;
  /// Identifier name, literal spelling, member name or cast type.
  std::string text;
  /// Operator for Assign/Binary/Unary/Member ("." or "->") expressions.
  std::string op;
  bool prefix = false; // UnaryExpr: ++x vs x++
  bool opaque = false; // FunctionDef with an unsupported body
  std::optional<DeclInfo> decl;
  std::optional<OmpDirective> omp;

  AstNode() = default;
  AstNode(NodeKind k, SourceSpan s) : kind(k), span(s) {}

  std::size_t size() const { return children.size(); }
  const AstNode *child(std::size_t i) const {
    return i < children.size() ? children[i].get() : nullptr;
  }
  AstNode *add(std::unique_ptr<AstNode> n) {
    children.push_back(std::move(n));
    return children.back().get();
  }

  bool is(NodeKind k) const { return kind == k; }
  bool is_stmt() const;
  bool is_expr() const;

  // ForStmt
  const AstNode *for_init() const { return child(0); }
  const AstNode *for_cond() const { return child(1); }
  const AstNode *for_inc() const { return child(2); }
  const AstNode *for_body() const { return child(3); }
  // FunctionDef
  const AstNode *function_body() const;
  // VarDecl
  const AstNode *initializer() const;
  // OmpPragma
  const AstNode *attached() const { return child(0); }
};

/// Preorder walk; return false from the callback to skip a subtree.
void walk(const AstNode &node, const std::function<bool(const AstNode &)> &fn);

/// Innermost OmpPragma ancestor, or null.
const AstNode *enclosing_pragma(const AstNode &node);
const AstNode *enclosing_function(const AstNode &node);

/// Parsed translation unit together with the files its spans refer to.
struct TranslationUnit {
  std::unique_ptr<AstNode> root;
  std::vector<SourceFile> files;
  std::vector<bool> system_file;
  std::vector<Diagnostic> diagnostics;
  bool partial = false;

  const SourceFile &file(FileId id) const { return files.at(id); }
  LineCol location(const SourceSpan &span) const;
  std::string describe(const SourceSpan &span) const;
  std::string_view spelling(const SourceSpan &span) const;
  std::vector<const AstNode *> functions() const;
  /// True when parsing hit syntax errors or fatal diagnostics.
  bool failed() const;
};

void link_parents(AstNode &root);

} // namespace pwlite
