#include "pwlite/cfront/ast.hpp"

#include <algorithm>

namespace pwlite {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
  case NodeKind::TranslationUnit: return "TranslationUnit";
  case NodeKind::FunctionDef: return "FunctionDef";
  case NodeKind::Declaration: return "Declaration";
  case NodeKind::VarDecl: return "VarDecl";
  case NodeKind::ParamDecl: return "ParamDecl";
  case NodeKind::CompoundStmt: return "CompoundStmt";
  case NodeKind::ForStmt: return "ForStmt";
  case NodeKind::WhileStmt: return "WhileStmt";
  case NodeKind::DoStmt: return "DoStmt";
  case NodeKind::IfStmt: return "IfStmt";
  case NodeKind::SwitchStmt: return "SwitchStmt";
  case NodeKind::CaseStmt: return "CaseStmt";
  case NodeKind::DefaultStmt: return "DefaultStmt";
  case NodeKind::BreakStmt: return "BreakStmt";
  case NodeKind::ContinueStmt: return "ContinueStmt";
  case NodeKind::ReturnStmt: return "ReturnStmt";
  case NodeKind::ExprStmt: return "ExprStmt";
  case NodeKind::NullStmt: return "NullStmt";
  case NodeKind::OmpPragma: return "OmpPragma";
  case NodeKind::Empty: return "Empty";
  case NodeKind::AssignExpr: return "AssignExpr";
  case NodeKind::BinaryExpr: return "BinaryExpr";
  case NodeKind::UnaryExpr: return "UnaryExpr";
  case NodeKind::CallExpr: return "CallExpr";
  case NodeKind::ArraySubscript: return "ArraySubscript";
  case NodeKind::MemberExpr: return "MemberExpr";
  case NodeKind::CastExpr: return "CastExpr";
  case NodeKind::SizeofExpr: return "SizeofExpr";
  case NodeKind::ConditionalExpr: return "ConditionalExpr";
  case NodeKind::Identifier: return "Identifier";
  case NodeKind::Literal: return "Literal";
  case NodeKind::InitList: return "InitList";
  case NodeKind::Opaque: return "Opaque";
  }
  return "?";
}

std::string_view to_string(ShapeKind shape) {
  switch (shape) {
  case ShapeKind::Scalar: return "scalar";
  case ShapeKind::Array: return "array";
  case ShapeKind::Pointer: return "pointer";
  case ShapeKind::Struct: return "struct";
  case ShapeKind::Function: return "function";
  case ShapeKind::Unknown: return "unknown";
  }
  return "unknown";
}

bool AstNode::is_stmt() const {
  switch (kind) {
  case NodeKind::CompoundStmt:
  case NodeKind::ForStmt:
  case NodeKind::WhileStmt:
  case NodeKind::DoStmt:
  case NodeKind::IfStmt:
  case NodeKind::SwitchStmt:
  case NodeKind::CaseStmt:
  case NodeKind::DefaultStmt:
  case NodeKind::BreakStmt:
  case NodeKind::ContinueStmt:
  case NodeKind::ReturnStmt:
  case NodeKind::ExprStmt:
  case NodeKind::NullStmt:
  case NodeKind::OmpPragma:
  case NodeKind::Declaration:
    return true;
  default:
    return false;
  }
}

bool AstNode::is_expr() const {
  switch (kind) {
  case NodeKind::AssignExpr:
  case NodeKind::BinaryExpr:
  case NodeKind::UnaryExpr:
  case NodeKind::CallExpr:
  case NodeKind::ArraySubscript:
  case NodeKind::MemberExpr:
  case NodeKind::CastExpr:
  case NodeKind::SizeofExpr:
  case NodeKind::ConditionalExpr:
  case NodeKind::Identifier:
  case NodeKind::Literal:
  case NodeKind::InitList:
    return true;
  default:
    return false;
  }
}

const AstNode *AstNode::function_body() const {
  if (kind != NodeKind::FunctionDef || children.empty())
    return nullptr;
  return children.back().get();
}

const AstNode *AstNode::initializer() const {
  if (kind != NodeKind::VarDecl || !decl || !decl->has_init)
    return nullptr;
  return children.back().get();
}

void walk(const AstNode &node, const std::function<bool(const AstNode &)> &fn) {
  if (!fn(node))
    return;
  for (const auto &c : node.children)
    walk(*c, fn);
}

const AstNode *enclosing_pragma(const AstNode &node) {
  for (const AstNode *p = node.parent; p; p = p->parent)
    if (p->kind == NodeKind::OmpPragma)
      return p;
  return nullptr;
}

const AstNode *enclosing_function(const AstNode &node) {
  for (const AstNode *p = &node; p; p = p->parent)
    if (p->kind == NodeKind::FunctionDef)
      return p;
  return nullptr;
}

LineCol TranslationUnit::location(const SourceSpan &span) const {
  return file(span.file).line_col(span.begin);
}

std::string TranslationUnit::describe(const SourceSpan &span) const {
  LineCol lc = location(span);
  return file(span.file).path.string() + ":" + std::to_string(lc.line) + ":" +
         std::to_string(lc.column);
}

std::string_view TranslationUnit::spelling(const SourceSpan &span) const {
  const std::string &t = file(span.file).text;
  return std::string_view(t).substr(span.begin, span.end - span.begin);
}

std::vector<const AstNode *> TranslationUnit::functions() const {
  std::vector<const AstNode *> out;
  if (!root)
    return out;
  for (const auto &c : root->children)
    if (c->kind == NodeKind::FunctionDef)
      out.push_back(c.get());
  return out;
}

bool TranslationUnit::failed() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic &d) {
    return d.severity == Severity::Fatal ||
           (d.severity == Severity::Error && d.kind == DiagKind::SyntaxError);
  });
}

void link_parents(AstNode &root) {
  for (auto &c : root.children) {
    c->parent = &root;
    link_parents(*c);
  }
}

} // namespace pwlite
