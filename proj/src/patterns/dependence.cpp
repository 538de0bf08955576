#include "pwlite/patterns/dependence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pwlite {

std::string_view to_string(DepKind kind) {
  switch (kind) {
  case DepKind::Flow: return "flow";
  case DepKind::Anti: return "anti";
  case DepKind::Output: return "output";
  case DepKind::Unknown: return "unknown";
  }
  return "?";
}

bool DependenceSet::blocked() const { return first_blocking() != nullptr; }

const Dependence *DependenceSet::first_blocking() const {
  for (const Dependence &d : deps)
    if (d.kind == DepKind::Unknown)
      return &d;
  return nullptr;
}

std::vector<const Dependence *> DependenceSet::carried() const {
  std::vector<const Dependence *> out;
  for (const Dependence &d : deps)
    if (d.carried)
      out.push_back(&d);
  return out;
}

CallPurity attribute_purity(const SymbolTable &table) {
  return [&table](const CallSite &c) {
    if (c.indirect)
      return Purity::Unknown;
    const Symbol *f = table.function(c.callee);
    return f && f->attr_pure ? Purity::Pure : Purity::Unknown;
  };
}

namespace {

const AstNode *strip(const AstNode *e) {
  while (e && e->kind == NodeKind::CastExpr && e->size() == 1)
    e = e->child(0);
  return e;
}

bool same_expr(const AstNode &a, const AstNode &b, const SymbolTable &t) {
  const AstNode *x = strip(&a), *y = strip(&b);
  if (x->kind != y->kind || x->op != y->op || x->size() != y->size())
    return false;
  if (x->kind == NodeKind::Identifier)
    return t.resolve(*x) == t.resolve(*y);
  if (x->text != y->text)
    return false;
  for (std::size_t i = 0; i < x->size(); ++i)
    if (!same_expr(*x->child(i), *y->child(i), t))
      return false;
  return true;
}

bool mentions(const AstNode &e, const Symbol &s, const SymbolTable &t) {
  bool found = false;
  walk(e, [&](const AstNode &n) {
    if (n.kind == NodeKind::Identifier && t.resolve(n) == &s)
      found = true;
    return !found;
  });
  return found;
}

bool is_var(const AstNode &e, const Symbol &s, const SymbolTable &t) {
  const AstNode *x = strip(&e);
  return x->kind == NodeKind::Identifier && t.resolve(*x) == &s;
}

std::string family(const std::string &op) {
  if (op == "+" || op == "-")
    return "+";
  return op;
}

// Leaves of a left- or right-nested chain of one operator family.
void chain_leaves(const AstNode &e, const std::string &fam, bool negated,
                  std::vector<std::pair<const AstNode *, bool>> &out) {
  const AstNode *x = strip(&e);
  if (x->kind == NodeKind::BinaryExpr && family(x->op) == fam) {
    chain_leaves(*x->child(0), fam, negated, out);
    chain_leaves(*x->child(1), fam, x->op == "-" ? !negated : negated, out);
    return;
  }
  out.emplace_back(x, negated);
}

// `target = rhs` where rhs is a chain containing `target` exactly once,
// un-negated; returns the chain operator.
std::string chain_reduction(const AstNode &rhs, const std::function<bool(const AstNode &)> &is_target,
                            const std::function<bool(const AstNode &)> &mentions_target) {
  const AstNode *x = strip(&rhs);
  if (x->kind != NodeKind::BinaryExpr)
    return {};
  std::string fam = family(x->op);
  if (fam != "+" && fam != "*" && fam != "&" && fam != "|" && fam != "^")
    return {};
  std::vector<std::pair<const AstNode *, bool>> leaves;
  chain_leaves(*x, fam, false, leaves);
  int hits = 0;
  for (const auto &[leaf, neg] : leaves) {
    if (is_target(*leaf)) {
      if (neg)
        return {};
      ++hits;
    } else if (mentions_target(*leaf)) {
      return {};
    }
  }
  return hits == 1 ? fam : std::string{};
}

// min/max from a comparison `x cmp y` choosing `chosen` when true.
std::string minmax(const AstNode &cond, const AstNode &chosen, const AstNode &other,
                   const Symbol &s, const SymbolTable &t) {
  const AstNode *c = strip(&cond);
  if (c->kind != NodeKind::BinaryExpr)
    return {};
  bool less = c->op == "<" || c->op == "<=";
  bool greater = c->op == ">" || c->op == ">=";
  if (!less && !greater)
    return {};
  const AstNode &x = *c->child(0), &y = *c->child(1);
  const AstNode *e = nullptr;
  if (is_var(x, s, t))
    e = &y;
  else if (is_var(y, s, t))
    e = &x;
  if (!e || mentions(*e, s, t))
    return {};
  // Which of the operands is taken when the comparison holds.
  bool chosen_is_x;
  if (is_var(chosen, s, t) && same_expr(other, *e, t))
    chosen_is_x = is_var(x, s, t);
  else if (same_expr(chosen, *e, t) && is_var(other, s, t))
    chosen_is_x = !is_var(x, s, t);
  else
    return {};
  // `x < y` picks the smaller when choosing x.
  return (less == chosen_is_x) ? "min" : "max";
}

} // namespace

std::string reduction_operator(const AstNode &unit, const Symbol &s, const SymbolTable &t) {
  auto target = [&](const AstNode &e) { return is_var(e, s, t); };
  auto ment = [&](const AstNode &e) { return mentions(e, s, t); };
  if (unit.kind == NodeKind::IfStmt) {
    if (unit.size() != 2)
      return {};
    const AstNode *then = unit.child(1);
    if (then->kind == NodeKind::CompoundStmt && then->size() == 1)
      then = then->child(0);
    if (then->kind != NodeKind::ExprStmt)
      return {};
    const AstNode *as = then->child(0);
    if (as->kind != NodeKind::AssignExpr || as->op != "=" || !target(*as->child(0)) ||
        ment(*as->child(1)))
      return {};
    return minmax(*unit.child(0), *as->child(1), *as->child(0), s, t);
  }
  if (unit.kind != NodeKind::ExprStmt)
    return {};
  const AstNode *e = unit.child(0);
  if (e->kind == NodeKind::UnaryExpr && (e->op == "++" || e->op == "--") && target(*e->child(0)))
    return "+";
  if (e->kind != NodeKind::AssignExpr || !target(*e->child(0)))
    return {};
  const AstNode &rhs = *e->child(1);
  static const std::set<std::string> compound = {"+=", "-=", "*=", "&=", "|=", "^="};
  if (compound.count(e->op))
    return ment(rhs) ? std::string{} : family(e->op.substr(0, 1));
  if (e->op != "=")
    return {};
  const AstNode *r = strip(&rhs);
  if (r->kind == NodeKind::ConditionalExpr)
    return minmax(*r->child(0), *r->child(1), *r->child(2), s, t);
  if (r->kind == NodeKind::CallExpr && r->size() == 3 &&
      r->child(0)->kind == NodeKind::Identifier) {
    const std::string &f = r->child(0)->text;
    bool mx = f == "fmax" || f == "fmaxf" || f == "max";
    bool mn = f == "fmin" || f == "fminf" || f == "min";
    if (mx || mn) {
      const AstNode &a = *r->child(1), &b = *r->child(2);
      if ((target(a) && !ment(b)) || (target(b) && !ment(a)))
        return mx ? "max" : "min";
    }
    return {};
  }
  return chain_reduction(rhs, target, ment);
}

namespace {

struct PairResult {
  bool independent = false;
  bool x_first = false; // x in an earlier iteration than y
  bool y_first = false;
  bool same_iteration = false;
  std::optional<long> distance;
};

long gcd(long a, long b) { return std::gcd(std::labs(a), std::labs(b)); }

class Tester {
public:
  Tester(const LoopNest &nest, const DefUseInfo &du, const SymbolTable &t,
         const CallPurity &purity, const DependenceOptions &opt)
      : n_(nest), du_(du), t_(t), purity_(purity), opt_(opt) {}

  DependenceSet run() {
    if (!n_.canonical) {
      block(nullptr, n_.noncanonical_reason, n_.loop->span);
      return std::move(out_);
    }
    const AstNode &body = *n_.body();
    loop_scope_ = t_.scope_of(*n_.loop);
    inner_ = n_.inner_indices();
    check_calls(body);
    check_exits(body, 0);

    auto accesses = du_.accesses_in(body);
    std::map<const Symbol *, std::vector<const Access *>> by_symbol;
    std::set<const Symbol *> written;
    bool aggregate_writes = false;
    for (const Access *a : accesses) {
      if (a->is_write) {
        written.insert(a->symbol);
        if (!a->subscript.dims.empty())
          aggregate_writes = true;
      }
      by_symbol[a->symbol].push_back(a);
    }
    varying_ = written;
    if (auto it = by_symbol.find(nullptr); it != by_symbol.end()) {
      for (const Access *a : it->second)
        if (a->is_write || aggregate_writes) {
          block(nullptr, "access through an unnamed pointer expression", a->node->span);
          break;
        }
      by_symbol.erase(it);
    }
    for (auto &[sym, list] : by_symbol) {
      if (sym == n_.index_var || sym->is_function() || sym->enum_constant || inside(sym))
        continue;
      bool dims = std::any_of(list.begin(), list.end(),
                              [](const Access *a) { return !a->subscript.dims.empty(); });
      if (!dims && !sym->is_aggregate())
        scalar(sym, list);
      else
        aggregate(sym, list);
    }
    return std::move(out_);
  }

private:
  const LoopNest &n_;
  const DefUseInfo &du_;
  const SymbolTable &t_;
  const CallPurity &purity_;
  const DependenceOptions &opt_;
  const Scope *loop_scope_ = nullptr;
  std::vector<const Symbol *> inner_;
  std::set<const Symbol *> varying_;
  DependenceSet out_;

  bool inside(const Symbol *s) const {
    return s->storage != Storage::Parameter && loop_scope_ && s->scope &&
           loop_scope_->encloses(s->scope);
  }

  void block(const Symbol *s, std::string reason, SourceSpan span) {
    Dependence d;
    d.kind = DepKind::Unknown;
    d.symbol = s;
    d.reason = std::move(reason);
    d.span = span;
    out_.deps.push_back(std::move(d));
  }

  void add(DepKind kind, const Symbol *s, const Access *src, const Access *sink, bool carried,
           std::optional<long> dist = std::nullopt) {
    Dependence d;
    d.kind = kind;
    d.symbol = s;
    d.source = src;
    d.sink = sink;
    d.carried = carried;
    d.distance = dist;
    d.span = (sink ? sink : src)->node->span;
    out_.deps.push_back(std::move(d));
  }

  void check_calls(const AstNode &body) {
    for (const CallSite *c : du_.calls_in(body)) {
      if (c->indirect) {
        block(nullptr, "call through a function pointer", c->node->span);
        continue;
      }
      Purity p = purity_(*c);
      if (p == Purity::Impure)
        block(nullptr, "call to impure function '" + c->callee + "'", c->node->span);
      else if (p == Purity::Unknown)
        block(nullptr, "call to '" + c->callee + "' with unknown side effects", c->node->span);
    }
  }

  void check_exits(const AstNode &n, int nested) {
    for (const auto &c : n.children) {
      switch (c->kind) {
      case NodeKind::BreakStmt:
        if (nested == 0)
          block(nullptr, "break leaves the loop early", c->span);
        break;
      case NodeKind::ReturnStmt:
        block(nullptr, "return inside the loop body", c->span);
        break;
      case NodeKind::ForStmt:
      case NodeKind::WhileStmt:
      case NodeKind::DoStmt:
      case NodeKind::SwitchStmt:
        check_exits(*c, nested + 1);
        break;
      default:
        check_exits(*c, nested);
        break;
      }
    }
  }

  // --- scalars -------------------------------------------------------------

  const AstNode *reduction_site(const Access &a) const {
    const AstNode *u = a.unit;
    const AstNode *p = u->parent;
    if (p && p->kind == NodeKind::IfStmt && p->child(0) == u)
      return p;
    if (u->kind == NodeKind::ExprStmt) {
      const AstNode *q = p;
      if (q && q->kind == NodeKind::CompoundStmt && q->size() == 1)
        q = q->parent;
      if (q && q->kind == NodeKind::IfStmt && q->size() == 2 &&
          (q->child(1) == u || q->child(1) == p) && !reduction_operator(*q, *a.symbol, t_).empty())
        return q;
    }
    return u;
  }

  void scalar(const Symbol *s, const std::vector<const Access *> &list) {
    bool writes = false;
    for (const Access *a : list) {
      if (a->address_taken) {
        block(s, "address of '" + s->name + "' is taken in the loop", a->node->span);
        return;
      }
      writes |= a->is_write;
    }
    ScalarInfo info;
    if (!writes) {
      out_.scalars[s] = info;
      return;
    }
    for (const Access *a : list)
      if (a->is_write && (a->conditional || a->unit != nullptr))
        info.conditional_write |= a->conditional || under_branch(*a->unit);

    std::string op;
    bool reduction = true;
    for (const Access *a : list) {
      std::string o = reduction_operator(*reduction_site(*a), *s, t_);
      if (o.empty() || (!op.empty() && o != op)) {
        reduction = false;
        break;
      }
      op = o;
    }
    const Access *first_write = *std::find_if(list.begin(), list.end(),
                                              [](const Access *a) { return a->is_write; });
    if (reduction) {
      info.role = ScalarRole::Reduction;
      info.op = op;
      for (DepKind k : {DepKind::Flow, DepKind::Anti, DepKind::Output}) {
        add(k, s, first_write, first_write, true);
        out_.deps.back().reduction = true;
        out_.deps.back().op = op;
      }
      out_.scalars[s] = info;
      return;
    }
    bool defined = false;
    if (!exposed(*n_.body(), s, defined)) {
      info.role = ScalarRole::Private;
      out_.scalars[s] = info;
      return;
    }
    info.role = ScalarRole::Carried;
    out_.scalars[s] = info;
    const Access *first_read = *std::find_if(list.begin(), list.end(),
                                             [](const Access *a) { return !a->is_write; });
    add(DepKind::Flow, s, first_write, first_read, true);
    add(DepKind::Anti, s, first_read, first_write, true);
    add(DepKind::Output, s, first_write, first_write, true);
  }

  bool under_branch(const AstNode &unit) const {
    for (const AstNode *p = unit.parent; p && p != n_.loop; p = p->parent)
      if (p->kind == NodeKind::IfStmt || p->kind == NodeKind::SwitchStmt ||
          p->kind == NodeKind::WhileStmt || p->kind == NodeKind::ForStmt ||
          p->kind == NodeKind::DoStmt)
        return true;
    return false;
  }

  bool scan_unit(const AstNode &key, const Symbol *s, bool &defined) const {
    const StmtEffects *e = du_.effects(key);
    if (!e)
      return false;
    for (const Access &a : e->ordered) {
      if (a.symbol != s)
        continue;
      if (!a.is_write && !defined)
        return true;
      if (a.is_write && !a.conditional &&
          (a.node->kind == NodeKind::Identifier || a.node->kind == NodeKind::VarDecl))
        defined = true;
    }
    return false;
  }

  // Whether `s` may be read in `n` before being written on every path.
  bool exposed(const AstNode &n, const Symbol *s, bool &defined) const {
    switch (n.kind) {
    case NodeKind::ExprStmt:
    case NodeKind::ReturnStmt:
      return scan_unit(n, s, defined);
    case NodeKind::Declaration:
      for (const auto &c : n.children)
        if (scan_unit(*c, s, defined))
          return true;
      return false;
    case NodeKind::CompoundStmt:
      for (const auto &c : n.children)
        if (exposed(*c, s, defined))
          return true;
      return false;
    case NodeKind::IfStmt: {
      if (scan_unit(*n.child(0), s, defined))
        return true;
      bool d1 = defined, d2 = defined;
      if (exposed(*n.child(1), s, d1))
        return true;
      if (n.size() > 2 && exposed(*n.child(2), s, d2))
        return true;
      defined = d1 && d2;
      return false;
    }
    case NodeKind::ForStmt: {
      const AstNode &init = *n.child(0);
      if (init.kind == NodeKind::Declaration ? exposed(init, s, defined)
                                             : scan_unit(init, s, defined))
        return true;
      if (scan_unit(*n.child(1), s, defined))
        return true;
      bool d = defined;
      if (exposed(*n.for_body(), s, d))
        return true;
      return scan_unit(*n.child(2), s, d);
    }
    case NodeKind::WhileStmt: {
      if (scan_unit(*n.child(0), s, defined))
        return true;
      bool d = defined;
      return exposed(*n.child(1), s, d);
    }
    case NodeKind::DoStmt:
      if (exposed(*n.child(0), s, defined))
        return true;
      return scan_unit(*n.child(1), s, defined);
    case NodeKind::SwitchStmt: {
      if (scan_unit(*n.child(0), s, defined))
        return true;
      bool d = defined;
      return exposed(*n.child(1), s, d);
    }
    case NodeKind::CaseStmt: {
      bool d = defined;
      if (scan_unit(*n.child(0), s, d))
        return true;
      return exposed(*n.child(1), s, d);
    }
    default: {
      bool d = defined;
      for (const auto &c : n.children)
        if (c->is_stmt() && exposed(*c, s, d))
          return true;
      if (n.kind == NodeKind::OmpPragma)
        defined = d;
      return false;
    }
    }
  }

  // --- arrays and pointers -------------------------------------------------

  std::string sparse_operator(const Access &w, const std::vector<const Access *> &list,
                              std::vector<const Access *> &part_of) const {
    const AstNode *u = w.unit;
    if (u->kind != NodeKind::ExprStmt)
      return {};
    const AstNode *e = u->child(0);
    const AstNode *lhs = nullptr;
    std::string op;
    if (e->kind == NodeKind::UnaryExpr && (e->op == "++" || e->op == "--")) {
      lhs = e->child(0);
      op = "+";
    } else if (e->kind == NodeKind::AssignExpr) {
      lhs = e->child(0);
      static const std::set<std::string> compound = {"+=", "-=", "*=", "&=", "|=", "^="};
      if (compound.count(e->op)) {
        op = family(e->op.substr(0, 1));
        if (mentions(*e->child(1), *w.symbol, t_))
          return {};
      } else if (e->op == "=") {
        auto target = [&](const AstNode &x) { return same_expr(x, *lhs, t_); };
        auto ment = [&](const AstNode &x) { return mentions(x, *w.symbol, t_); };
        op = chain_reduction(*e->child(1), target, ment);
      }
    }
    if (op.empty() || lhs != w.node)
      return {};
    for (const Access *a : list)
      if (a->unit == u && !a->is_write && same_expr(*a->node, *lhs, t_))
        part_of.push_back(a);
    return op;
  }

  void aggregate(const Symbol *s, const std::vector<const Access *> &list) {
    std::vector<const Access *> writes;
    for (const Access *a : list)
      if (a->is_write)
        writes.push_back(a);
    if (writes.empty())
      return;
    for (const Access *a : list) {
      if (a->subscript.form == SubscriptForm::Unknown) {
        block(s, "subscript of '" + s->name + "' is not analyzable", a->node->span);
        return;
      }
      if (a->is_write && a->subscript.dims.empty()) {
        block(s, "pointer '" + s->name + "' is modified in the loop", a->node->span);
        return;
      }
      if (a->address_taken && a->subscript.dims.empty()) {
        block(s, "address of '" + s->name + "' escapes in the loop", a->node->span);
        return;
      }
    }
    if (s->shape == ShapeKind::Pointer && s->storage != Storage::Parameter) {
      block(s, "write through pointer '" + s->name + "' that may alias other data",
            writes.front()->node->span);
      return;
    }
    for (const Access *a : list) {
      for (const auto &dim : a->subscript.dims) {
        if (!dim)
          continue;
        for (const auto &[sym, k] : dim->coeffs) {
          if (sym == n_.index_var ||
              std::find(inner_.begin(), inner_.end(), sym) != inner_.end())
            continue;
          if (varying_.count(sym) || inside(sym)) {
            block(s, "subscript of '" + s->name + "' depends on '" + sym->name +
                         "', which changes in the loop",
                  a->node->span);
            return;
          }
        }
      }
    }

    // Indirect writes.
    std::vector<const Access *> sparse_reads;
    bool any_indirect = false;
    for (const Access *w : writes) {
      if (w->subscript.form != SubscriptForm::Indirect)
        continue;
      any_indirect = true;
      IndirectWrites &iw = out_.indirect[s];
      std::string op = sparse_operator(*w, list, sparse_reads);
      if (op.empty() || (!iw.op.empty() && op != iw.op))
        iw.all_reduction = false;
      else
        iw.op = op;
    }
    if (any_indirect) {
      IndirectWrites &iw = out_.indirect[s];
      for (const Access *a : list)
        if (!a->is_write && std::find(sparse_reads.begin(), sparse_reads.end(), a) ==
                                sparse_reads.end())
          iw.read_elsewhere = true;
      if (!iw.all_reduction)
        iw.op.clear();
    }

    for (std::size_t wi = 0; wi < writes.size(); ++wi) {
      const Access *w = writes[wi];
      for (const Access *y : list) {
        // Each unordered write pair once.
        if (y->is_write && y != w &&
            std::find(writes.begin(), writes.begin() + wi, y) != writes.begin() + wi)
          continue;
        pair(s, *w, *y);
      }
    }
  }

  void pair(const Symbol *s, const Access &w, const Access &y) {
    bool indirect = w.subscript.form == SubscriptForm::Indirect ||
                    y.subscript.form == SubscriptForm::Indirect;
    PairResult r;
    if (indirect || w.subscript.dims.empty() || y.subscript.dims.empty()) {
      r.x_first = r.y_first = r.same_iteration = true;
    } else {
      r = test(w, y);
    }
    if (r.independent)
      return;
    auto push = [&](DepKind k, const Access *src, const Access *sink, bool carried) {
      add(k, s, src, sink, carried, carried ? r.distance : std::nullopt);
      out_.deps.back().indirect = indirect;
    };
    if (&w == &y) {
      if (r.x_first || r.y_first)
        push(DepKind::Output, &w, &w, true);
      return;
    }
    if (y.is_write) {
      if (r.x_first || r.y_first)
        push(DepKind::Output, &w, &y, true);
      else if (r.same_iteration)
        push(DepKind::Output, w.order < y.order ? &w : &y, w.order < y.order ? &y : &w, false);
      return;
    }
    if (r.x_first)
      push(DepKind::Flow, &w, &y, true);
    if (r.y_first)
      push(DepKind::Anti, &y, &w, true);
    if (r.same_iteration) {
      if (w.order < y.order)
        push(DepKind::Flow, &w, &y, false);
      else
        push(DepKind::Anti, &y, &w, false);
    }
  }

  struct Dim {
    long a1, c1, a2, c2;
  };

  PairResult test(const Access &x, const Access &y) const {
    PairResult r;
    const auto &dx = x.subscript.dims;
    const auto &dy = y.subscript.dims;
    if (dx.size() != dy.size()) {
      r.x_first = r.y_first = r.same_iteration = true;
      return r;
    }
    const Symbol *iv = n_.index_var;
    std::vector<Dim> dims;
    for (std::size_t k = 0; k < dx.size(); ++k) {
      if (!dx[k] || !dy[k])
        continue;
      AffineExpr fx = dx[k]->without(iv), fy = dy[k]->without(iv);
      bool inner_terms = false;
      for (const Symbol *in : inner_)
        inner_terms |= fx.coeff(in) != 0 || fy.coeff(in) != 0;
      if (inner_terms)
        continue; // unconstrained
      long cx = fx.constant, cy = fy.constant;
      fx.constant = fy.constant = 0;
      if (!(fx == fy))
        continue; // different symbolic parts: unconstrained
      dims.push_back({dx[k]->coeff(iv), cx, dy[k]->coeff(iv), cy});
    }
    // ZIV.
    for (const Dim &d : dims)
      if (d.a1 == 0 && d.a2 == 0 && d.c1 != d.c2) {
        r.independent = true;
        return r;
      }
    auto trips = n_.trip_count();
    bool enumerable = trips && n_.lower && n_.lower->is_constant() && *trips <= opt_.exact_trip_limit;
    bool all_strong = std::all_of(dims.begin(), dims.end(),
                                  [](const Dim &d) { return d.a1 == d.a2; });
    if (enumerable && !all_strong) {
      for (long k1 = 0; k1 < *trips; ++k1) {
        long i = n_.index_at(k1);
        for (long k2 = 0; k2 < *trips; ++k2) {
          long j = n_.index_at(k2);
          bool eq = std::all_of(dims.begin(), dims.end(), [&](const Dim &d) {
            return d.a1 * i + d.c1 == d.a2 * j + d.c2;
          });
          if (!eq)
            continue;
          if (k1 < k2)
            r.x_first = true;
          else if (k1 > k2)
            r.y_first = true;
          else
            r.same_iteration = true;
        }
      }
      r.independent = !r.x_first && !r.y_first && !r.same_iteration;
      return r;
    }
    // Strong SIV: a*i + c1 = a*j + c2  =>  j - i = (c1 - c2) / a.
    std::optional<long> dist;
    bool weak = false;
    for (const Dim &d : dims) {
      if (d.a1 == d.a2) {
        if (d.a1 == 0)
          continue; // equal ZIV constants: no constraint
        long diff = d.c1 - d.c2;
        if (diff % d.a1 != 0) {
          r.independent = true;
          return r;
        }
        long dd = diff / d.a1;
        if (dist && *dist != dd) {
          r.independent = true;
          return r;
        }
        dist = dd;
      } else {
        weak = true;
        long g = gcd(d.a1, d.a2);
        if (g != 0 && (d.c2 - d.c1) % g != 0) {
          r.independent = true;
          return r;
        }
      }
    }
    if (dist) {
      long step = n_.step;
      if (*dist % step != 0) {
        r.independent = true;
        return r;
      }
      long iters = *dist / step;
      if (trips && std::labs(iters) >= *trips) {
        r.independent = true;
        return r;
      }
      if (weak) {
        // Weak dimensions may still rule this distance out; stay conservative.
        r.x_first = iters > 0;
        r.y_first = iters < 0;
        r.same_iteration = iters == 0;
        r.distance = *dist;
        return r;
      }
      r.distance = *dist;
      r.x_first = iters > 0;
      r.y_first = iters < 0;
      r.same_iteration = iters == 0;
      return r;
    }
    r.x_first = r.y_first = r.same_iteration = true;
    return r;
  }
};

} // namespace

DependenceSet test_dependences(const LoopNest &nest, const DefUseInfo &du,
                               const SymbolTable &table, const CallPurity &purity,
                               const DependenceOptions &options) {
  return Tester(nest, du, table, purity, options).run();
}

} // namespace pwlite
