#include "pwlite/semantics/def_use.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

namespace pwlite {

long AffineExpr::coeff(const Symbol *s) const {
  auto it = coeffs.find(s);
  return it == coeffs.end() ? 0 : it->second;
}

AffineExpr AffineExpr::without(const Symbol *s) const {
  AffineExpr out = *this;
  out.coeffs.erase(s);
  return out;
}

AffineExpr &AffineExpr::operator+=(const AffineExpr &o) {
  constant += o.constant;
  for (const auto &[s, k] : o.coeffs) {
    long v = (coeffs[s] += k);
    if (v == 0)
      coeffs.erase(s);
  }
  return *this;
}

AffineExpr AffineExpr::scaled(long k) const {
  AffineExpr out;
  if (k == 0)
    return out;
  out.constant = constant * k;
  for (const auto &[s, c] : coeffs)
    out.coeffs[s] = c * k;
  return out;
}

std::string AffineExpr::str() const {
  std::vector<std::pair<const Symbol *, long>> terms(coeffs.begin(), coeffs.end());
  std::sort(terms.begin(), terms.end(),
            [](const auto &a, const auto &b) { return a.first->name < b.first->name; });
  std::string out;
  for (const auto &[s, k] : terms) {
    if (!out.empty())
      out += k < 0 ? " - " : " + ";
    else if (k < 0)
      out += "-";
    long a = std::labs(k);
    if (a != 1)
      out += std::to_string(a) + "*";
    out += s->name;
  }
  if (out.empty())
    return std::to_string(constant);
  if (constant > 0)
    out += " + " + std::to_string(constant);
  else if (constant < 0)
    out += " - " + std::to_string(-constant);
  return out;
}

std::string_view to_string(SubscriptForm form) {
  switch (form) {
  case SubscriptForm::Whole: return "whole";
  case SubscriptForm::Affine: return "affine";
  case SubscriptForm::Indirect: return "indirect";
  case SubscriptForm::Unknown: return "unknown";
  }
  return "?";
}

namespace {

std::optional<long> integer_literal(const std::string &text) {
  if (text.empty() || !std::isdigit(static_cast<unsigned char>(text[0])))
    return std::nullopt;
  char *end = nullptr;
  long v = std::strtol(text.c_str(), &end, 0);
  for (const char *p = end; *p; ++p)
    if (*p != 'u' && *p != 'U' && *p != 'l' && *p != 'L')
      return std::nullopt;
  return v;
}

bool is_descendant(const AstNode *node, const AstNode *ancestor) {
  for (const AstNode *n = node; n; n = n->parent)
    if (n == ancestor)
      return true;
  return false;
}

} // namespace

std::optional<AffineExpr> to_affine(const AstNode &e, const SymbolTable &table) {
  switch (e.kind) {
  case NodeKind::Literal: {
    auto v = integer_literal(e.text);
    if (!v)
      return std::nullopt;
    AffineExpr a;
    a.constant = *v;
    return a;
  }
  case NodeKind::Identifier: {
    const Symbol *s = table.resolve(e);
    if (!s || s->is_function() || s->shape == ShapeKind::Array ||
        s->shape == ShapeKind::Pointer || s->shape == ShapeKind::Struct)
      return std::nullopt;
    AffineExpr a;
    a.coeffs[s] = 1;
    return a;
  }
  case NodeKind::CastExpr:
    return e.size() == 1 ? to_affine(*e.child(0), table) : std::nullopt;
  case NodeKind::UnaryExpr: {
    if (!e.prefix || (e.op != "-" && e.op != "+"))
      return std::nullopt;
    auto a = to_affine(*e.child(0), table);
    if (a && e.op == "-")
      *a = a->scaled(-1);
    return a;
  }
  case NodeKind::BinaryExpr: {
    if (e.op != "+" && e.op != "-" && e.op != "*")
      return std::nullopt;
    auto l = to_affine(*e.child(0), table);
    auto r = to_affine(*e.child(1), table);
    if (!l || !r)
      return std::nullopt;
    if (e.op == "+") {
      *l += *r;
      return l;
    }
    if (e.op == "-") {
      *l += r->scaled(-1);
      return l;
    }
    if (l->is_constant())
      return r->scaled(l->constant);
    if (r->is_constant())
      return l->scaled(r->constant);
    return std::nullopt;
  }
  default:
    return std::nullopt;
  }
}

const StmtEffects *DefUseInfo::effects(const AstNode &unit) const {
  auto it = unit_index.find(&unit);
  return it == unit_index.end() ? nullptr : &units[it->second];
}

std::vector<const Access *> DefUseInfo::accesses_in(const AstNode &region) const {
  std::vector<const Access *> out;
  for (const StmtEffects &u : units) {
    if (!is_descendant(u.unit, &region))
      continue;
    for (const Access &a : u.ordered)
      out.push_back(&a);
  }
  return out;
}

std::vector<const CallSite *> DefUseInfo::calls_in(const AstNode &region) const {
  std::vector<const CallSite *> out;
  for (const StmtEffects &u : units) {
    if (!is_descendant(u.unit, &region))
      continue;
    for (const CallSite &c : u.calls)
      out.push_back(&c);
  }
  return out;
}

namespace {

enum class Mode { Read, Write, ReadWrite, AddressOf };

class DefUseBuilder {
public:
  DefUseBuilder(const SymbolTable &table, DefUseInfo &info) : t_(table), info_(info) {}

  void statement(const AstNode &n) {
    switch (n.kind) {
    case NodeKind::ExprStmt:
      unit(n, [&] { expr(*n.child(0), Mode::Read); });
      break;
    case NodeKind::ReturnStmt:
      if (n.size())
        unit(n, [&] { expr(*n.child(0), Mode::Read); });
      break;
    case NodeKind::Declaration:
      for (const auto &c : n.children) {
        if (c->kind != NodeKind::VarDecl || !c->decl)
          continue;
        unit(*c, [&] {
          for (std::size_t i = 0; i < c->decl->dim_count; ++i)
            expr(*c->child(i), Mode::Read);
          if (const AstNode *init = c->initializer()) {
            expr(*init, Mode::Read);
            if (const Symbol *s = t_.declared_by(*c)) {
              Access a;
              a.symbol = s;
              a.node = c.get();
              a.is_write = true;
              record(a);
            }
          }
        });
      }
      break;
    case NodeKind::ForStmt:
      for (int i = 0; i < 3; ++i) {
        const AstNode &part = *n.child(i);
        if (part.kind == NodeKind::Declaration)
          statement(part);
        else if (part.kind != NodeKind::Empty)
          unit(part, [&] { expr(part, Mode::Read); });
      }
      statement(*n.for_body());
      break;
    case NodeKind::IfStmt:
    case NodeKind::WhileStmt:
    case NodeKind::SwitchStmt:
    case NodeKind::CaseStmt:
      unit(*n.child(0), [&] { expr(*n.child(0), Mode::Read); });
      for (std::size_t i = 1; i < n.size(); ++i)
        statement(*n.child(i));
      break;
    case NodeKind::DoStmt:
      statement(*n.child(0));
      unit(*n.child(1), [&] { expr(*n.child(1), Mode::Read); });
      break;
    default:
      for (const auto &c : n.children)
        if (c->is_stmt())
          statement(*c);
      break;
    }
  }

private:
  const SymbolTable &t_;
  DefUseInfo &info_;
  StmtEffects *cur_ = nullptr;
  int order_ = 0;
  int conditional_ = 0;

  template <typename F> void unit(const AstNode &key, F &&body) {
    info_.unit_index[&key] = info_.units.size();
    info_.units.push_back(StmtEffects{});
    info_.units.back().unit = &key;
    cur_ = &info_.units.back();
    body();
    cur_ = nullptr;
  }

  void record(Access a) {
    a.unit = cur_->unit;
    a.order = order_++;
    a.conditional = conditional_ > 0;
    if (a.is_write)
      cur_->writes.push_back(a);
    else
      cur_->reads.push_back(a);
    cur_->ordered.push_back(std::move(a));
  }

  void access(const AstNode &node, const Symbol *sym, Subscript sub, Mode mode, bool via_ptr) {
    Access a;
    a.symbol = sym;
    a.subscript = std::move(sub);
    a.node = &node;
    a.through_pointer = via_ptr;
    if (mode == Mode::AddressOf) {
      a.address_taken = true;
      record(a);
      return;
    }
    if (mode == Mode::Read || mode == Mode::ReadWrite)
      record(a);
    if (mode == Mode::Write || mode == Mode::ReadWrite) {
      a.is_write = true;
      record(a);
    }
  }

  // An lvalue-shaped expression: identifier, subscript, member or deref.
  void lvalue(const AstNode &e, Mode mode) {
    std::deque<const AstNode *> dims;
    std::deque<bool> zero_dims; // synthesized `[0]` for `*p` and `p->f`
    const AstNode *base = &e;
    bool via_ptr = false;
    std::vector<const AstNode *> deref_offsets;
    while (true) {
      if (base->kind == NodeKind::ArraySubscript) {
        dims.push_front(base->child(1));
        zero_dims.push_front(false);
        base = base->child(0);
      } else if (base->kind == NodeKind::MemberExpr) {
        if (base->op == "->") {
          dims.push_front(nullptr);
          zero_dims.push_front(true);
          via_ptr = true;
        }
        base = base->child(0);
      } else if (base->kind == NodeKind::UnaryExpr && base->op == "*" && base->prefix) {
        const AstNode *inner = base->child(0);
        via_ptr = true;
        // `*(p + e)` is `p[e]`.
        if (inner->kind == NodeKind::BinaryExpr && inner->op == "+" &&
            inner->child(0)->kind == NodeKind::Identifier && is_pointer(*inner->child(0))) {
          dims.push_front(inner->child(1));
          zero_dims.push_front(false);
          base = inner->child(0);
        } else {
          dims.push_front(nullptr);
          zero_dims.push_front(true);
          base = inner;
        }
      } else if (base->kind == NodeKind::CastExpr && base->size() == 1 && !dims.empty()) {
        base = base->child(0);
      } else {
        break;
      }
    }
    for (const AstNode *d : dims)
      if (d)
        expr(*d, Mode::Read);

    const Symbol *sym = nullptr;
    if (base->kind == NodeKind::Identifier) {
      sym = t_.resolve(*base);
      if (sym && sym->is_function())
        return;
    } else {
      // Not a named base: evaluate it and record an anonymous access.
      expr(*base, Mode::Read);
    }
    if (sym && sym->shape == ShapeKind::Pointer && !dims.empty())
      via_ptr = true;

    Subscript sub;
    if (!dims.empty()) {
      sub.form = SubscriptForm::Affine;
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (zero_dims[i]) {
          sub.dims.push_back(AffineExpr{});
          sub.dim_exprs.push_back(nullptr);
          continue;
        }
        const AstNode *d = dims[i];
        sub.dim_exprs.push_back(d);
        auto a = to_affine(*d, t_);
        sub.dims.push_back(a);
        if (a)
          continue;
        const AstNode *ix = d;
        while (ix->kind == NodeKind::CastExpr && ix->size() == 1)
          ix = ix->child(0);
        if (ix->kind == NodeKind::ArraySubscript && ix->child(0)->kind == NodeKind::Identifier &&
            sub.form != SubscriptForm::Unknown) {
          sub.form = SubscriptForm::Indirect;
          if (!sub.index_array)
            sub.index_array = t_.resolve(*ix->child(0));
        } else {
          sub.form = SubscriptForm::Unknown;
        }
      }
    } else if (!sym) {
      sub.form = SubscriptForm::Unknown;
    }
    access(e, sym, std::move(sub), mode, via_ptr);
  }

  bool is_pointer(const AstNode &ident) const {
    const Symbol *s = t_.resolve(ident);
    return s && (s->shape == ShapeKind::Pointer || s->shape == ShapeKind::Array);
  }

  void expr(const AstNode &e, Mode mode) {
    switch (e.kind) {
    case NodeKind::Identifier:
    case NodeKind::ArraySubscript:
    case NodeKind::MemberExpr:
      lvalue(e, mode);
      return;
    case NodeKind::UnaryExpr:
      if (e.op == "*" && e.prefix) {
        lvalue(e, mode);
      } else if (e.op == "++" || e.op == "--") {
        lvalue(*e.child(0), Mode::ReadWrite);
      } else if (e.op == "&") {
        const AstNode &target = *e.child(0);
        if (target.kind == NodeKind::Identifier || target.kind == NodeKind::ArraySubscript ||
            target.kind == NodeKind::MemberExpr)
          lvalue(target, Mode::AddressOf);
        else
          expr(target, Mode::Read);
      } else {
        expr(*e.child(0), Mode::Read);
      }
      return;
    case NodeKind::AssignExpr:
      expr(*e.child(1), Mode::Read);
      expr(*e.child(0), e.op == "=" ? Mode::Write : Mode::ReadWrite);
      return;
    case NodeKind::BinaryExpr:
      expr(*e.child(0), Mode::Read);
      if (e.op == "&&" || e.op == "||") {
        ++conditional_;
        expr(*e.child(1), Mode::Read);
        --conditional_;
      } else {
        expr(*e.child(1), Mode::Read);
      }
      return;
    case NodeKind::ConditionalExpr:
      expr(*e.child(0), Mode::Read);
      ++conditional_;
      expr(*e.child(1), Mode::Read);
      expr(*e.child(2), Mode::Read);
      --conditional_;
      return;
    case NodeKind::CallExpr: {
      const AstNode &callee = *e.child(0);
      CallSite c;
      c.node = &e;
      c.unit = cur_->unit;
      if (callee.kind == NodeKind::Identifier) {
        const Symbol *s = t_.resolve(callee);
        c.callee = callee.text;
        c.symbol = s;
        if (s && !s->is_function() && !s->unresolved) {
          // Call through a function-pointer variable.
          c.indirect = true;
          expr(callee, Mode::Read);
        }
      } else {
        c.indirect = true;
        expr(callee, Mode::Read);
      }
      for (std::size_t i = 1; i < e.size(); ++i)
        expr(*e.child(i), Mode::Read);
      cur_->calls.push_back(std::move(c));
      return;
    }
    case NodeKind::SizeofExpr:
      return; // operand is not evaluated
    default:
      for (const auto &c : e.children)
        expr(*c, Mode::Read);
      return;
    }
  }
};

} // namespace

DefUseInfo compute_def_use(const AstNode &function, const SymbolTable &table) {
  DefUseInfo info;
  info.function = &function;
  const AstNode *body = function.function_body();
  if (!body || function.opaque)
    return info;
  DefUseBuilder builder(table, info);
  builder.statement(*body);
  return info;
}

} // namespace pwlite
