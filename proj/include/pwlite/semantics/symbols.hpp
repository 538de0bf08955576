#pragma once

#include "pwlite/cfront/ast.hpp"

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace pwlite {

enum class Storage { Global, StaticFile, StaticLocal, Local, Parameter };
enum class ScopeKind { File, Function, Block, LoopBody };

std::string_view to_string(Storage storage);
std::string_view to_string(ScopeKind kind);

struct Scope;

struct Symbol {
  int id = 0;
  std::string name;
  Storage storage = Storage::Global;
  const Scope *scope = nullptr;
  ShapeKind shape = ShapeKind::Scalar;
  int rank = 0; // array rank
  int pointer_depth = 0;
  SourceSpan decl_span;
  const AstNode *decl = nullptr; // VarDecl, ParamDecl or FunctionDef
  bool unresolved = false;       // never declared; modeled as an external global
  bool from_system = false;      // declared in a stub header
  bool enum_constant = false;
  bool has_init = false;
  bool attr_pure = false; // functions: pure/const attribute or marker

  bool is_function() const { return shape == ShapeKind::Function; }
  bool is_global_storage() const {
    return storage == Storage::Global || storage == Storage::StaticFile;
  }
  /// Arrays and pointers: things that can be subscripted.
  bool is_aggregate() const { return shape == ShapeKind::Array || shape == ShapeKind::Pointer; }
};

struct Scope {
  int id = 0;
  ScopeKind kind = ScopeKind::File;
  const Scope *parent = nullptr;
  std::vector<const Symbol *> symbols;
  SourceSpan span;
  const AstNode *node = nullptr;
  int depth = 0;

  /// True when `other` is this scope or nested inside it.
  bool encloses(const Scope *other) const;
};

/// Scoped symbol table of one translation unit. Read-only once built.
class SymbolTable {
public:
  const Scope &file_scope() const { return *scopes_.front(); }
  const Symbol *resolve(const AstNode &identifier) const;
  /// Symbol introduced by a VarDecl, ParamDecl or FunctionDef node.
  const Symbol *declared_by(const AstNode &decl) const;
  /// Innermost scope containing `node`.
  const Scope *scope_of(const AstNode &node) const;
  /// Name lookup from `scope` outwards; null when not found.
  const Symbol *lookup(std::string_view name, const Scope *scope) const;
  const Symbol *function(std::string_view name) const;

  const std::vector<std::unique_ptr<Symbol>> &symbols() const { return symbols_; }
  const std::vector<std::unique_ptr<Scope>> &scopes() const { return scopes_; }
  const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

private:
  friend class SymbolTableBuilder;
  std::vector<std::unique_ptr<Scope>> scopes_;
  std::vector<std::unique_ptr<Symbol>> symbols_;
  std::unordered_map<const AstNode *, const Symbol *> resolved_;
  std::unordered_map<const AstNode *, const Symbol *> declared_;
  std::unordered_map<const AstNode *, const Scope *> scope_nodes_;
  std::unordered_map<std::string, const Symbol *> unresolved_;
  std::vector<Diagnostic> diagnostics_;
};

SymbolTable build_symbol_table(const TranslationUnit &tu);

} // namespace pwlite
