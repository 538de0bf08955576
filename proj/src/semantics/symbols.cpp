#include "pwlite/semantics/symbols.hpp"

namespace pwlite {

std::string_view to_string(Storage storage) {
  switch (storage) {
  case Storage::Global: return "global";
  case Storage::StaticFile: return "static_file";
  case Storage::StaticLocal: return "static_local";
  case Storage::Local: return "local";
  case Storage::Parameter: return "parameter";
  }
  return "?";
}

std::string_view to_string(ScopeKind kind) {
  switch (kind) {
  case ScopeKind::File: return "file";
  case ScopeKind::Function: return "function";
  case ScopeKind::Block: return "block";
  case ScopeKind::LoopBody: return "loop_body";
  }
  return "?";
}

bool Scope::encloses(const Scope *other) const {
  for (const Scope *s = other; s; s = s->parent)
    if (s == this)
      return true;
  return false;
}

const Symbol *SymbolTable::resolve(const AstNode &identifier) const {
  auto it = resolved_.find(&identifier);
  return it == resolved_.end() ? nullptr : it->second;
}

const Symbol *SymbolTable::declared_by(const AstNode &decl) const {
  auto it = declared_.find(&decl);
  return it == declared_.end() ? nullptr : it->second;
}

const Scope *SymbolTable::scope_of(const AstNode &node) const {
  for (const AstNode *n = &node; n; n = n->parent) {
    auto it = scope_nodes_.find(n);
    if (it != scope_nodes_.end())
      return it->second;
  }
  return scopes_.front().get();
}

const Symbol *SymbolTable::lookup(std::string_view name, const Scope *scope) const {
  for (const Scope *s = scope; s; s = s->parent)
    for (auto it = s->symbols.rbegin(); it != s->symbols.rend(); ++it)
      if ((*it)->name == name)
        return *it;
  return nullptr;
}

const Symbol *SymbolTable::function(std::string_view name) const {
  const Symbol *s = lookup(name, scopes_.front().get());
  return s && s->is_function() ? s : nullptr;
}

class SymbolTableBuilder {
public:
  SymbolTableBuilder(const TranslationUnit &tu, SymbolTable &table) : tu_(tu), t_(table) {}

  void run() {
    Scope *file = new_scope(ScopeKind::File, *tu_.root, nullptr);
    for (const auto &c : tu_.root->children)
      top_level(*c, file);
  }

private:
  const TranslationUnit &tu_;
  SymbolTable &t_;

  Scope *new_scope(ScopeKind kind, const AstNode &node, Scope *parent) {
    auto s = std::make_unique<Scope>();
    s->id = static_cast<int>(t_.scopes_.size());
    s->kind = kind;
    s->parent = parent;
    s->span = node.span;
    s->node = &node;
    s->depth = parent ? parent->depth + 1 : 0;
    Scope *raw = s.get();
    t_.scopes_.push_back(std::move(s));
    t_.scope_nodes_[&node] = raw;
    return raw;
  }

  bool is_system(const AstNode &n) const {
    return n.span.file < tu_.system_file.size() && tu_.system_file[n.span.file];
  }

  Symbol *find_in(Scope *scope, const std::string &name) {
    for (const Symbol *s : scope->symbols)
      if (s->name == name)
        return const_cast<Symbol *>(s);
    return nullptr;
  }

  Symbol *declare(const AstNode &node, Scope *scope, Storage storage) {
    const DeclInfo &info = *node.decl;
    if (Symbol *prev = find_in(scope, info.name)) {
      // File-scope redeclarations (prototypes, extern + definition) merge.
      if (scope->kind == ScopeKind::File) {
        if (node.kind == NodeKind::FunctionDef)
          prev->decl = &node, prev->decl_span = node.span;
        prev->attr_pure |= info.purity_annotated();
        prev->has_init |= info.has_init;
        t_.declared_[&node] = prev;
        return prev;
      }
      const SourceFile &f = tu_.file(node.span.file);
      LineCol lc = f.line_col(node.span.begin);
      t_.diagnostics_.push_back({DiagKind::DuplicateDeclaration, Severity::Warning,
                                 f.path.string(), lc.line, lc.column,
                                 "duplicate declaration of '" + info.name + "'"});
      t_.declared_[&node] = prev;
      return prev;
    }
    auto sym = std::make_unique<Symbol>();
    sym->id = static_cast<int>(t_.symbols_.size());
    sym->name = info.name;
    sym->storage = storage;
    sym->scope = scope;
    sym->shape = info.shape;
    sym->rank = info.array_rank;
    sym->pointer_depth = info.pointer_depth;
    sym->decl_span = node.span;
    sym->decl = &node;
    sym->from_system = is_system(node);
    sym->enum_constant = info.is_enum_constant;
    sym->has_init = info.has_init;
    sym->attr_pure = info.purity_annotated();
    Symbol *raw = sym.get();
    t_.symbols_.push_back(std::move(sym));
    scope->symbols.push_back(raw);
    t_.declared_[&node] = raw;
    return raw;
  }

  const Symbol *unresolved(const std::string &name) {
    auto it = t_.unresolved_.find(name);
    if (it != t_.unresolved_.end())
      return it->second;
    auto sym = std::make_unique<Symbol>();
    sym->id = static_cast<int>(t_.symbols_.size());
    sym->name = name;
    sym->storage = Storage::Global;
    sym->scope = t_.scopes_.front().get();
    sym->shape = ShapeKind::Unknown;
    sym->unresolved = true;
    const Symbol *raw = sym.get();
    t_.symbols_.push_back(std::move(sym));
    t_.unresolved_[name] = raw;
    return raw;
  }

  void top_level(const AstNode &n, Scope *file) {
    switch (n.kind) {
    case NodeKind::Declaration:
      declaration(n, file, true);
      break;
    case NodeKind::FunctionDef:
      function(n, file);
      break;
    default:
      expressions(n, file);
      break;
    }
  }

  void declaration(const AstNode &n, Scope *scope, bool file_level) {
    for (const auto &c : n.children) {
      if (c->kind != NodeKind::VarDecl || !c->decl) {
        expressions(*c, scope);
        continue;
      }
      const DeclInfo &info = *c->decl;
      for (std::size_t i = 0; i < info.dim_count; ++i)
        expressions(*c->child(i), scope);
      if (info.is_typedef)
        continue;
      Storage st;
      if (file_level)
        st = info.is_static ? Storage::StaticFile : Storage::Global;
      else if (info.is_static)
        st = Storage::StaticLocal;
      else if (info.is_extern || info.shape == ShapeKind::Function)
        st = Storage::Global;
      else
        st = Storage::Local;
      declare(*c, scope, st);
      if (const AstNode *init = c->initializer())
        expressions(*init, scope);
    }
  }

  void function(const AstNode &fn, Scope *file) {
    declare(fn, file, fn.decl && fn.decl->is_static ? Storage::StaticFile : Storage::Global);
    Scope *fs = new_scope(ScopeKind::Function, fn, file);
    const std::size_t params = fn.decl ? fn.decl->param_count : 0;
    for (std::size_t i = 0; i < params; ++i) {
      const AstNode &p = *fn.child(i);
      for (const auto &d : p.children)
        expressions(*d, fs);
      if (p.decl && !p.decl->name.empty())
        declare(p, fs, Storage::Parameter);
    }
    const AstNode *body = fn.function_body();
    if (!body || body->kind != NodeKind::CompoundStmt)
      return;
    // Parameters and the outermost block share one scope.
    t_.scope_nodes_[body] = fs;
    for (const auto &c : body->children)
      statement(*c, fs);
  }

  void statement(const AstNode &n, Scope *scope) {
    switch (n.kind) {
    case NodeKind::CompoundStmt: {
      const AstNode *p = n.parent;
      bool loop = p && (p->kind == NodeKind::ForStmt || p->kind == NodeKind::WhileStmt ||
                        p->kind == NodeKind::DoStmt);
      Scope *s = new_scope(loop ? ScopeKind::LoopBody : ScopeKind::Block, n, scope);
      for (const auto &c : n.children)
        statement(*c, s);
      break;
    }
    case NodeKind::Declaration:
      declaration(n, scope, false);
      break;
    case NodeKind::ForStmt: {
      Scope *s = new_scope(ScopeKind::LoopBody, n, scope);
      const AstNode *init = n.for_init();
      if (init->kind == NodeKind::Declaration)
        declaration(*init, s, false);
      else
        expressions(*init, s);
      expressions(*n.for_cond(), s);
      expressions(*n.for_inc(), s);
      statement(*n.for_body(), s);
      break;
    }
    default:
      for (const auto &c : n.children) {
        if (c->is_stmt())
          statement(*c, scope);
        else
          expressions(*c, scope);
      }
      break;
    }
  }

  void expressions(const AstNode &n, Scope *scope) {
    if (n.kind == NodeKind::Identifier) {
      const Symbol *s = t_.lookup(n.text, scope);
      t_.resolved_[&n] = s ? s : unresolved(n.text);
      return;
    }
    if (n.is_stmt()) {
      statement(n, scope);
      return;
    }
    for (const auto &c : n.children)
      expressions(*c, scope);
  }
};

SymbolTable build_symbol_table(const TranslationUnit &tu) {
  SymbolTable table;
  SymbolTableBuilder(tu, table).run();
  return table;
}

} // namespace pwlite
