#include "pwlite/patterns/loop_nest.hpp"

#include <algorithm>

namespace pwlite {

std::optional<long> LoopNest::trip_count() const {
  if (!canonical || !lower || !upper || !lower->is_constant() || !upper->is_constant() ||
      step == 0)
    return std::nullopt;
  long lb = lower->constant, ub = upper->constant;
  long span = 0;
  if (cond_op == "<")
    span = ub - lb;
  else if (cond_op == "<=")
    span = ub - lb + 1;
  else if (cond_op == ">")
    span = lb - ub;
  else if (cond_op == ">=")
    span = lb - ub + 1;
  else if (cond_op == "!=")
    span = (ub - lb) * (step > 0 ? 1 : -1);
  else
    return std::nullopt;
  long s = std::labs(step);
  if (span <= 0)
    return 0;
  return (span + s - 1) / s;
}

std::vector<const Symbol *> LoopNest::inner_indices() const {
  std::vector<const Symbol *> out;
  for (const LoopNest *n : flatten())
    if (n != this && n->canonical && n->index_var)
      out.push_back(n->index_var);
  return out;
}

std::vector<const LoopNest *> LoopNest::flatten() const {
  std::vector<const LoopNest *> out{this};
  for (const auto &c : children) {
    auto sub = c->flatten();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<const LoopNest *> all_loops(const LoopForest &forest) {
  std::vector<const LoopNest *> out;
  for (const auto &n : forest) {
    auto sub = n->flatten();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

namespace {

const AstNode *strip_casts(const AstNode *e) {
  while (e->kind == NodeKind::CastExpr && e->size() == 1)
    e = e->child(0);
  return e;
}

std::string flip(const std::string &op) {
  if (op == "<")
    return ">";
  if (op == ">")
    return "<";
  if (op == "<=")
    return ">=";
  if (op == ">=")
    return "<=";
  return op;
}

class Builder {
public:
  Builder(const AstNode &fn, const SymbolTable &t, const DefUseInfo &du)
      : fn_(fn), t_(t), du_(du) {}

  void visit(const AstNode &c, LoopNest *parent, LoopForest &roots) {
    if (c.kind == NodeKind::ForStmt) {
      auto nest = make(c, parent);
      LoopNest *raw = nest.get();
      for (int i = 0; i < 3; ++i)
        visit(*c.child(i), parent, roots);
      visit(*c.for_body(), raw, raw->children);
      (parent ? parent->children : roots).push_back(std::move(nest));
      return;
    }
    if (c.kind == NodeKind::WhileStmt || c.kind == NodeKind::DoStmt)
      for (LoopNest *p = parent; p; p = p->parent)
        p->contains_while = true;
    if (c.kind == NodeKind::CallExpr)
      note_call(c, parent);
    for (const auto &child : c.children)
      visit(*child, parent, roots);
  }

private:
  const AstNode &fn_;
  const SymbolTable &t_;
  const DefUseInfo &du_;

  void note_call(const AstNode &call, LoopNest *parent) {
    const AstNode *callee = call.child(0);
    std::string name = callee->kind == NodeKind::Identifier ? callee->text : "<indirect>";
    for (LoopNest *p = parent; p; p = p->parent) {
      auto &v = p->contains_call;
      auto it = std::lower_bound(v.begin(), v.end(), name);
      if (it == v.end() || *it != name)
        v.insert(it, name);
    }
  }

  std::unique_ptr<LoopNest> make(const AstNode &loop, LoopNest *parent) {
    auto nest = std::make_unique<LoopNest>();
    nest->loop = &loop;
    nest->function = &fn_;
    nest->parent = parent;
    nest->depth = parent ? parent->depth + 1 : 0;
    analyze_header(*nest);
    return nest;
  }

  void reject(LoopNest &n, std::string why) {
    n.canonical = false;
    if (n.noncanonical_reason.empty())
      n.noncanonical_reason = std::move(why);
  }

  void analyze_header(LoopNest &n) {
    const AstNode &loop = *n.loop;
    n.canonical = true;
    // Init: `int i = lb` or `i = lb`.
    const AstNode *init = loop.for_init();
    const AstNode *lb = nullptr;
    if (init->kind == NodeKind::Declaration && init->size() == 1 &&
        init->child(0)->kind == NodeKind::VarDecl && init->child(0)->initializer()) {
      n.index_var = t_.declared_by(*init->child(0));
      lb = init->child(0)->initializer();
    } else if (init->kind == NodeKind::AssignExpr && init->op == "=" &&
               init->child(0)->kind == NodeKind::Identifier) {
      n.index_var = t_.resolve(*init->child(0));
      lb = init->child(1);
    }
    if (!n.index_var || n.index_var->shape == ShapeKind::Pointer ||
        n.index_var->shape == ShapeKind::Array) {
      n.index_var = nullptr;
      reject(n, "no integer index initialized in the loop header");
      return;
    }
    const Symbol *iv = n.index_var;
    n.lower = to_affine(*lb, t_);

    // Increment.
    const AstNode *inc = loop.for_inc();
    auto is_index = [&](const AstNode *e) {
      e = strip_casts(e);
      return e->kind == NodeKind::Identifier && t_.resolve(*e) == iv;
    };
    auto const_of = [&](const AstNode *e) -> std::optional<long> {
      auto a = to_affine(*e, t_);
      if (a && a->is_constant())
        return a->constant;
      return std::nullopt;
    };
    if (inc->kind == NodeKind::UnaryExpr && (inc->op == "++" || inc->op == "--") &&
        is_index(inc->child(0))) {
      n.step = inc->op == "++" ? 1 : -1;
    } else if (inc->kind == NodeKind::AssignExpr && is_index(inc->child(0))) {
      const AstNode *rhs = inc->child(1);
      if (inc->op == "+=" || inc->op == "-=") {
        if (auto c = const_of(rhs))
          n.step = inc->op == "+=" ? *c : -*c;
      } else if (inc->op == "=" && rhs->kind == NodeKind::BinaryExpr &&
                 (rhs->op == "+" || rhs->op == "-")) {
        std::optional<long> c;
        if (is_index(rhs->child(0)))
          c = const_of(rhs->child(1));
        else if (rhs->op == "+" && is_index(rhs->child(1)))
          c = const_of(rhs->child(0));
        if (c)
          n.step = rhs->op == "+" ? *c : -*c;
      }
    }
    if (n.step == 0) {
      reject(n, "increment is not a constant step of '" + iv->name + "'");
      return;
    }

    // Condition: `i op bound` or `bound op i`.
    const AstNode *cond = strip_casts(loop.for_cond());
    const AstNode *bound = nullptr;
    if (cond->kind == NodeKind::BinaryExpr &&
        (cond->op == "<" || cond->op == "<=" || cond->op == ">" || cond->op == ">=" ||
         cond->op == "!=")) {
      if (is_index(cond->child(0))) {
        n.cond_op = cond->op;
        bound = cond->child(1);
      } else if (is_index(cond->child(1))) {
        n.cond_op = flip(cond->op);
        bound = cond->child(0);
      }
    }
    if (!bound) {
      reject(n, "condition does not compare '" + iv->name + "' with a bound");
      return;
    }
    bool up = n.cond_op == "<" || n.cond_op == "<=";
    bool down = n.cond_op == ">" || n.cond_op == ">=";
    if ((up && n.step < 0) || (down && n.step > 0) ||
        (n.cond_op == "!=" && std::labs(n.step) != 1)) {
      reject(n, "step direction does not match the condition");
      return;
    }
    n.upper = to_affine(*bound, t_);

    // The index and the bound must not change inside the body.
    std::vector<const Symbol *> bound_syms;
    walk(*bound, [&](const AstNode &e) {
      if (e.kind == NodeKind::Identifier)
        if (const Symbol *s = t_.resolve(e))
          bound_syms.push_back(s);
      if (e.kind == NodeKind::CallExpr)
        reject(n, "loop bound contains a call");
      return true;
    });
    for (const Access *a : du_.accesses_in(*loop.for_body())) {
      if (!a->is_write)
        continue;
      if (a->symbol == iv)
        reject(n, "index '" + iv->name + "' is modified in the loop body");
      if (std::find(bound_syms.begin(), bound_syms.end(), a->symbol) != bound_syms.end())
        reject(n, "loop bound '" + a->symbol->name + "' is modified in the loop body");
    }
  }
};

} // namespace

LoopForest enumerate_loops(const AstNode &fn, const SymbolTable &table, const DefUseInfo &du) {
  LoopForest roots;
  const AstNode *body = fn.function_body();
  if (!body || fn.opaque)
    return roots;
  Builder b(fn, table, du);
  b.visit(*body, nullptr, roots);
  return roots;
}

} // namespace pwlite
