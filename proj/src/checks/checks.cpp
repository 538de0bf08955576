#include "pwlite/checks/checks.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace pwlite {

std::string_view to_string(IssueKind kind) {
  switch (kind) {
  case IssueKind::Global: return "Global";
  case IssueKind::Scope: return "Scope";
  case IssueKind::Pure: return "Pure";
  case IssueKind::Scoping: return "Scoping";
  case IssueKind::Default: return "Default";
  }
  return "?";
}

std::string_view to_string(OpportunityKind kind) {
  return kind == OpportunityKind::Multi ? "Multi" : "SIMD";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

} // namespace

std::optional<IssueKind> issue_kind_from(std::string_view name) {
  for (IssueKind k : {IssueKind::Global, IssueKind::Scope, IssueKind::Pure, IssueKind::Scoping,
                      IssueKind::Default})
    if (lower(to_string(k)) == lower(name))
      return k;
  return std::nullopt;
}

std::optional<OpportunityKind> opportunity_kind_from(std::string_view name) {
  for (OpportunityKind k : {OpportunityKind::Multi, OpportunityKind::Simd})
    if (lower(to_string(k)) == lower(name))
      return k;
  return std::nullopt;
}

std::uint64_t issue_fingerprint(IssueKind kind, std::string_view file, std::string_view symbol,
                                std::string_view function, int discriminator) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  mix(to_string(kind));
  mix(file);
  mix(symbol);
  mix(function);
  mix(std::to_string(discriminator));
  return h;
}

namespace {

Issue make_issue(const FunctionContext &ctx, IssueKind kind, const SourceSpan &span,
                 const Symbol *symbol, std::string message, int discriminator = 0) {
  Issue is;
  is.kind = kind;
  is.span = span;
  is.file = ctx.tu.file(span.file).path.generic_string();
  LineCol lc = ctx.tu.location(span);
  is.line = lc.line;
  is.column = lc.column;
  is.symbol = symbol;
  is.symbol_name = symbol ? symbol->name : std::string();
  is.function = ctx.name();
  is.message = std::move(message);
  is.fingerprint = issue_fingerprint(kind, is.file, is.symbol_name, is.function, discriminator);
  return is;
}

bool is_variable(const Symbol *s) {
  return s && !s->is_function() && !s->enum_constant && !s->unresolved;
}

bool is_loop(const AstNode &n) {
  return n.kind == NodeKind::ForStmt || n.kind == NodeKind::WhileStmt ||
         n.kind == NodeKind::DoStmt;
}

const Scope *common_scope(const Scope *a, const Scope *b) {
  while (a->depth > b->depth)
    a = a->parent;
  while (b->depth > a->depth)
    b = b->parent;
  while (a != b) {
    a = a->parent;
    b = b->parent;
  }
  return a;
}

} // namespace

std::vector<Issue> check_global(const FunctionContext &ctx) {
  std::vector<Issue> out;
  std::set<const Symbol *> seen;
  const AstNode *body = ctx.fn.function_body();
  if (!body)
    return out;
  walk(*body, [&](const AstNode &n) {
    if (n.kind != NodeKind::Identifier)
      return true;
    const Symbol *s = ctx.table.resolve(n);
    if (!is_variable(s) || !s->is_global_storage() || s->from_system)
      return true;
    if (seen.insert(s).second)
      out.push_back(make_issue(ctx, IssueKind::Global, n.span, s,
                               "function '" + ctx.name() + "' uses global variable '" + s->name +
                                   "'"));
    return true;
  });
  return out;
}

std::vector<Issue> check_scope(const FunctionContext &ctx) {
  std::vector<Issue> out;
  const AstNode *body = ctx.fn.function_body();
  if (!body)
    return out;
  std::vector<const Symbol *> locals;
  std::map<const Symbol *, std::vector<const AstNode *>> uses;
  walk(*body, [&](const AstNode &n) {
    if (n.kind == NodeKind::VarDecl) {
      const Symbol *s = ctx.table.declared_by(n);
      if (s && s->storage == Storage::Local && s->shape == ShapeKind::Scalar)
        locals.push_back(s);
    } else if (n.kind == NodeKind::Identifier) {
      if (const Symbol *s = ctx.table.resolve(n))
        uses[s].push_back(&n);
    }
    return true;
  });

  // The value of `s` survives from one iteration of `loop` to the next.
  auto carried_by = [&](const Symbol *s, const AstNode &loop) {
    const Access *first = nullptr;
    bool written = false;
    for (const Access *a : ctx.du.accesses_in(loop)) {
      if (a->symbol != s)
        continue;
      written |= a->is_write;
      if (!first || a->order < first->order)
        first = a;
    }
    return written && first && !first->is_write;
  };

  for (const Symbol *s : locals) {
    auto it = uses.find(s);
    if (it == uses.end())
      continue;
    const Scope *decl_scope = s->scope;
    const Scope *c = nullptr;
    for (const AstNode *u : it->second) {
      const Scope *us = ctx.table.scope_of(*u);
      c = c ? common_scope(c, us) : us;
    }
    if (!c || c == decl_scope || !decl_scope->encloses(c))
      continue;
    for (const AstNode *a = c->node; a && a != decl_scope->node; a = a->parent)
      if (is_loop(*a) && carried_by(s, *a))
        c = ctx.table.scope_of(*a->parent);
    if (c == decl_scope)
      continue;
    out.push_back(make_issue(ctx, IssueKind::Scope, s->decl_span, s,
                             "scalar '" + s->name + "' can be declared in a narrower scope"));
  }
  return out;
}

std::vector<Issue> check_pure(const FunctionContext &ctx, const PurityClass &purity,
                              bool annotated) {
  if (purity.purity != Purity::Pure || annotated || ctx.fn.opaque)
    return {};
  const Symbol *s = ctx.table.declared_by(ctx.fn);
  return {make_issue(ctx, IssueKind::Pure, ctx.fn.span, s,
                     "function '" + ctx.name() + "' has no side effects but is not marked pure")};
}

namespace {

std::string clause_variable(const std::string &arg) {
  std::size_t k = 0;
  while (k < arg.size() && (std::isalnum(static_cast<unsigned char>(arg[k])) || arg[k] == '_'))
    ++k;
  return arg.substr(0, k);
}

// Loop indices predetermined private by a loop directive on `pragma`.
void loop_indices(const AstNode &pragma, const SymbolTable &table,
                  std::set<const Symbol *> &out) {
  long depth = 1;
  if (const OmpClause *c = pragma.omp->find("collapse"); c && !c->args.empty()) {
    try {
      depth = std::max(1L, std::stol(c->args[0]));
    } catch (const std::exception &) {
    }
  }
  const AstNode *loop = pragma.attached();
  for (long k = 0; k < depth && loop && loop->kind == NodeKind::ForStmt; ++k) {
    const AstNode *init = loop->for_init();
    if (init->kind == NodeKind::AssignExpr && init->child(0)->kind == NodeKind::Identifier)
      if (const Symbol *s = table.resolve(*init->child(0)))
        out.insert(s);
    const AstNode *body = loop->for_body();
    while (body && body->kind == NodeKind::CompoundStmt && body->size() == 1)
      body = body->child(0);
    loop = body;
  }
}

} // namespace

std::vector<Issue> check_scoping(const FunctionContext &ctx, const AstNode &region, int ordinal) {
  std::vector<Issue> out;
  const AstNode *attached = region.attached();
  if (!region.omp || !attached)
    return out;
  std::set<std::string> listed;
  std::set<const Symbol *> exempt;
  auto collect = [&](const AstNode &pragma) {
    for (const std::string &v : pragma.omp->scoped_variables())
      listed.insert(clause_variable(v));
    if (pragma.omp->is_loop_directive())
      loop_indices(pragma, ctx.table, exempt);
  };
  collect(region);
  walk(*attached, [&](const AstNode &n) {
    if (n.kind == NodeKind::OmpPragma && n.omp && !n.omp->is_parallel_region())
      collect(n);
    return true;
  });

  std::set<const Symbol *> seen;
  walk(*attached, [&](const AstNode &n) {
    if (n.kind != NodeKind::Identifier)
      return true;
    const Symbol *s = ctx.table.resolve(n);
    if (!is_variable(s) || exempt.count(s) || listed.count(s->name))
      return true;
    if (attached->span.contains(s->decl_span))
      return true;
    if (seen.insert(s).second)
      out.push_back(make_issue(ctx, IssueKind::Scoping, n.span, s,
                               "variable '" + s->name +
                                   "' has no explicit data scoping in the parallel region",
                               ordinal));
    return true;
  });
  return out;
}

std::vector<Issue> check_default_none(const FunctionContext &ctx, const AstNode &region,
                                      int ordinal) {
  if (!region.omp || region.omp->has_default_none())
    return {};
  return {make_issue(ctx, IssueKind::Default, region.span, nullptr,
                     "parallel region without default(none)", ordinal)};
}

std::vector<const AstNode *> parallel_regions(const AstNode &fn) {
  std::vector<const AstNode *> out;
  walk(fn, [&](const AstNode &n) {
    if (n.kind == NodeKind::OmpPragma && n.omp && n.omp->is_parallel_region())
      out.push_back(&n);
    return true;
  });
  return out;
}

bool touches_openmp(const LoopNest &nest) {
  if (enclosing_pragma(*nest.loop))
    return true;
  bool found = false;
  walk(*nest.loop, [&](const AstNode &n) {
    found |= n.kind == NodeKind::OmpPragma;
    return !found;
  });
  return found;
}

namespace {

bool simd_body(const FunctionContext &ctx, const LoopNest &nest, const PatternClass &pattern,
               const CallPurity &purity) {
  bool ok = true;
  walk(*nest.body(), [&](const AstNode &n) {
    switch (n.kind) {
    case NodeKind::WhileStmt:
    case NodeKind::DoStmt:
    case NodeKind::ForStmt:
    case NodeKind::SwitchStmt:
    case NodeKind::BreakStmt:
    case NodeKind::ContinueStmt:
    case NodeKind::ReturnStmt:
    case NodeKind::OmpPragma:
      ok = false;
      break;
    case NodeKind::IfStmt: {
      bool reduction_if = false;
      for (const Reduction &r : pattern.reductions)
        if (r.op == "min" || r.op == "max")
          reduction_if |= reduction_operator(n, *r.variable, ctx.table) == r.op;
      ok &= reduction_if;
      break;
    }
    default:
      break;
    }
    return ok;
  });
  if (!ok)
    return false;
  for (const CallSite *c : ctx.du.calls_in(*nest.body()))
    if (c->indirect || purity(*c) != Purity::Pure)
      return false;
  for (const Access *a : ctx.du.accesses_in(*nest.body())) {
    if (!a->symbol || !a->symbol->is_aggregate())
      continue;
    const Subscript &sub = a->subscript;
    if (sub.form == SubscriptForm::Whole && !a->is_write)
      continue;
    if (sub.form != SubscriptForm::Affine || sub.dims.empty())
      return false;
    for (std::size_t k = 0; k < sub.dims.size(); ++k) {
      if (!sub.dims[k])
        return false;
      long c = sub.dims[k]->coeff(nest.index_var);
      if (k + 1 < sub.dims.size() ? c != 0 : std::labs(c) > 1)
        return false;
    }
  }
  return true;
}

Opportunity make_opportunity(const FunctionContext &ctx, OpportunityKind kind,
                             const LoopNest &nest, const PatternClass &pattern) {
  Opportunity o;
  o.kind = kind;
  o.loop = &nest;
  o.pattern = pattern;
  o.span = nest.loop->span;
  o.file = ctx.tu.file(o.span.file).path.generic_string();
  o.line = ctx.tu.location(o.span).line;
  o.function = ctx.name();
  return o;
}

} // namespace

std::vector<Opportunity> find_opportunities(const FunctionContext &ctx, const LoopForest &forest,
                                            const LoopPatterns &patterns,
                                            const CallPurity &purity) {
  std::vector<Opportunity> out;
  for (const LoopNest *nest : all_loops(forest)) {
    auto it = patterns.find(nest);
    if (it == patterns.end() || !it->second.parallel() || touches_openmp(*nest))
      continue;
    if (nest->depth == 0)
      out.push_back(make_opportunity(ctx, OpportunityKind::Multi, *nest, it->second));
    if (nest->is_innermost() && !nest->contains_while &&
        simd_body(ctx, *nest, it->second, purity))
      out.push_back(make_opportunity(ctx, OpportunityKind::Simd, *nest, it->second));
  }
  return out;
}

void sort_issues(std::vector<Issue> &issues) {
  std::stable_sort(issues.begin(), issues.end(), [](const Issue &a, const Issue &b) {
    return std::tie(a.file, a.line, a.kind, a.column, a.symbol_name) <
           std::tie(b.file, b.line, b.kind, b.column, b.symbol_name);
  });
}

void sort_opportunities(std::vector<Opportunity> &opps) {
  std::stable_sort(opps.begin(), opps.end(), [](const Opportunity &a, const Opportunity &b) {
    return std::tie(a.file, a.line, a.kind) < std::tie(b.file, b.line, b.kind);
  });
}

const std::vector<CheckCatalogEntry> &check_catalog() {
  static const std::vector<CheckCatalogEntry> catalog = {
      {IssueKind::Global, "a function reads or writes a global or file-static variable"},
      {IssueKind::Scope, "a scalar local is declared in a wider scope than its uses need"},
      {IssueKind::Pure, "a function without side effects lacks a pure/const annotation"},
      {IssueKind::Scoping, "a variable used in a parallel region has no data-sharing clause"},
      {IssueKind::Default, "a parallel region does not specify default(none)"},
  };
  return catalog;
}

} // namespace pwlite
