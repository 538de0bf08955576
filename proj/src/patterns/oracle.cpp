#include "pwlite/patterns/oracle.hpp"

#include <set>
#include <tuple>

namespace pwlite {

namespace {

struct Event {
  long iter;
  bool write;
  const AstNode *node;
};

struct BreakSignal {};
struct ContinueSignal {};

class Interp {
public:
  Interp(const LoopNest &n, const SymbolTable &t, const OracleInput &in, const OracleLimits &lim)
      : n_(n), t_(t), in_(in), lim_(lim) {}

  DependenceSet run() {
    const AstNode &loop = *n_.loop;
    if (!n_.index_var)
      throw UninterpretableLoop("loop has no index variable");
    exec_header(*loop.for_init());
    long iter = 0;
    for (;;) {
      iter_ = -1;
      if (loop.for_cond()->kind != NodeKind::Empty && !eval(*loop.for_cond()))
        break;
      if (iter >= lim_.max_trips)
        throw UninterpretableLoop("trip count exceeds the oracle limit");
      iter_ = iter;
      upward_.clear();
      written_.clear();
      try {
        exec(*loop.for_body());
      } catch (const ContinueSignal &) {
      } catch (const BreakSignal &) {
        throw UninterpretableLoop("break in the analyzed loop");
      }
      iter_ = -1;
      if (loop.for_inc()->kind != NodeKind::Empty)
        eval(*loop.for_inc());
      ++iter;
    }
    return report();
  }

private:
  const LoopNest &n_;
  const SymbolTable &t_;
  const OracleInput &in_;
  const OracleLimits &lim_;
  long iter_ = -1;
  long steps_ = 0;
  std::map<const Symbol *, long> scalars_;
  std::map<const Symbol *, std::vector<long>> arrays_;
  std::set<const Symbol *> locals_; // declared inside the loop
  std::map<std::pair<const Symbol *, long>, std::vector<Event>> trace_;
  std::set<const Symbol *> upward_, written_, exposed_;

  [[noreturn]] static void fail(const AstNode &n, const std::string &what) {
    throw UninterpretableLoop(what + " (" + std::string(to_string(n.kind)) + ")");
  }

  void tick() {
    if (++steps_ > lim_.max_steps)
      throw UninterpretableLoop("step limit exceeded");
  }

  const Symbol *sym(const AstNode &id) {
    const Symbol *s = t_.resolve(id);
    if (!s)
      fail(id, "unresolved identifier '" + id.text + "'");
    return s;
  }

  bool traced_scalar(const Symbol *s) const {
    return iter_ >= 0 && s != n_.index_var && !locals_.count(s);
  }

  void record(const Symbol *s, long addr, bool write, const AstNode &node) {
    if (iter_ < 0)
      return;
    trace_[{s, addr}].push_back({iter_, write, &node});
  }

  long read_scalar(const Symbol *s, const AstNode &node) {
    if (traced_scalar(s)) {
      if (!written_.count(s))
        upward_.insert(s), exposed_.insert(s);
      record(s, -1, false, node);
    }
    auto it = scalars_.find(s);
    if (it != scalars_.end())
      return it->second;
    auto ii = in_.scalars.find(s->name);
    long v = ii == in_.scalars.end() ? 0 : ii->second;
    scalars_[s] = v;
    return v;
  }

  void write_scalar(const Symbol *s, long v, const AstNode &node) {
    if (traced_scalar(s)) {
      written_.insert(s);
      record(s, -1, true, node);
    }
    scalars_[s] = v;
  }

  std::vector<long> &array(const Symbol *s, const AstNode &node) {
    auto it = arrays_.find(s);
    if (it != arrays_.end())
      return it->second;
    auto ii = in_.arrays.find(s->name);
    if (ii == in_.arrays.end())
      fail(node, "no input for array '" + s->name + "'");
    if (ii->second.size() > lim_.max_array)
      fail(node, "array '" + s->name + "' is too large");
    return arrays_[s] = ii->second;
  }

  // Resolves an lvalue to (symbol, element index or -1 for scalars).
  std::pair<const Symbol *, long> place(const AstNode &e) {
    if (e.kind == NodeKind::Identifier) {
      const Symbol *s = sym(e);
      if (s->is_aggregate())
        fail(e, "whole-array access");
      return {s, -1};
    }
    if (e.kind == NodeKind::ArraySubscript) {
      const AstNode *base = e.child(0);
      if (base->kind != NodeKind::Identifier)
        fail(e, "multi-dimensional or computed array base");
      const Symbol *s = sym(*base);
      long idx = eval(*e.child(1));
      std::vector<long> &a = array(s, e);
      if (idx < 0 || idx >= static_cast<long>(a.size()))
        fail(e, "index " + std::to_string(idx) + " out of bounds for '" + s->name + "'");
      return {s, idx};
    }
    fail(e, "unsupported lvalue");
  }

  long load(const std::pair<const Symbol *, long> &p, const AstNode &node) {
    if (p.second < 0)
      return read_scalar(p.first, node);
    record(p.first, p.second, false, node);
    return arrays_.at(p.first)[p.second];
  }

  void store(const std::pair<const Symbol *, long> &p, long v, const AstNode &node) {
    if (p.second < 0)
      return write_scalar(p.first, v, node);
    record(p.first, p.second, true, node);
    arrays_.at(p.first)[p.second] = v;
  }

  static long arith(const std::string &op, long a, long b, const AstNode &n) {
    if (op == "+") return a + b;
    if (op == "-") return a - b;
    if (op == "*") return a * b;
    if (op == "/" || op == "%") {
      if (b == 0)
        fail(n, "division by zero");
      return op == "/" ? a / b : a % b;
    }
    if (op == "&") return a & b;
    if (op == "|") return a | b;
    if (op == "^") return a ^ b;
    if (op == "<<") return a << (b & 63);
    if (op == ">>") return a >> (b & 63);
    if (op == "<") return a < b;
    if (op == ">") return a > b;
    if (op == "<=") return a <= b;
    if (op == ">=") return a >= b;
    if (op == "==") return a == b;
    if (op == "!=") return a != b;
    fail(n, "operator '" + op + "'");
  }

  long eval(const AstNode &e) {
    tick();
    switch (e.kind) {
    case NodeKind::Literal: {
      try {
        return std::stol(e.text, nullptr, 0);
      } catch (const std::exception &) {
        fail(e, "non-integer literal '" + e.text + "'");
      }
    }
    case NodeKind::Identifier:
    case NodeKind::ArraySubscript: {
      auto p = place(e);
      return load(p, e);
    }
    case NodeKind::CastExpr:
      return eval(*e.child(e.size() - 1));
    case NodeKind::ConditionalExpr:
      return eval(*e.child(0)) ? eval(*e.child(1)) : eval(*e.child(2));
    case NodeKind::UnaryExpr: {
      const std::string &op = e.op;
      if (op == "++" || op == "--") {
        auto p = place(*e.child(0));
        long old = load(p, *e.child(0));
        long now = op == "++" ? old + 1 : old - 1;
        store(p, now, *e.child(0));
        return e.prefix ? now : old;
      }
      long v = eval(*e.child(0));
      if (op == "-") return -v;
      if (op == "+") return v;
      if (op == "!") return !v;
      if (op == "~") return ~v;
      fail(e, "unary '" + op + "'");
    }
    case NodeKind::BinaryExpr: {
      if (e.op == "&&")
        return eval(*e.child(0)) ? eval(*e.child(1)) != 0 : 0;
      if (e.op == "||")
        return eval(*e.child(0)) ? 1 : eval(*e.child(1)) != 0;
      if (e.op == ",") {
        eval(*e.child(0));
        return eval(*e.child(1));
      }
      long a = eval(*e.child(0));
      long b = eval(*e.child(1));
      return arith(e.op, a, b, e);
    }
    case NodeKind::AssignExpr: {
      long rhs = eval(*e.child(1));
      auto p = place(*e.child(0));
      long v = rhs;
      if (e.op != "=")
        v = arith(e.op.substr(0, e.op.size() - 1), load(p, *e.child(0)), rhs, e);
      store(p, v, *e.child(0));
      return v;
    }
    default:
      fail(e, "unsupported expression");
    }
  }

  void declare(const AstNode &decl) {
    for (const auto &c : decl.children) {
      if (c->kind != NodeKind::VarDecl)
        fail(*c, "unsupported declaration");
      const Symbol *s = t_.declared_by(*c);
      if (!s || s->is_aggregate())
        fail(*c, "unsupported local declaration");
      if (iter_ >= 0)
        locals_.insert(s);
      const AstNode *init = c->initializer();
      long v = init ? eval(*init) : 0;
      if (iter_ < 0 || !locals_.count(s))
        write_scalar(s, v, *c);
      else
        scalars_[s] = v;
    }
  }

  void exec_header(const AstNode &init) {
    if (init.kind == NodeKind::Declaration)
      declare(init);
    else if (init.kind != NodeKind::Empty)
      eval(init);
  }

  void exec(const AstNode &s) {
    tick();
    switch (s.kind) {
    case NodeKind::CompoundStmt:
      for (const auto &c : s.children)
        exec(*c);
      return;
    case NodeKind::ExprStmt:
      if (s.size() > 0)
        eval(*s.child(0));
      return;
    case NodeKind::NullStmt:
      return;
    case NodeKind::Declaration:
      declare(s);
      return;
    case NodeKind::IfStmt:
      if (eval(*s.child(0)))
        exec(*s.child(1));
      else if (s.size() > 2)
        exec(*s.child(2));
      return;
    case NodeKind::BreakStmt:
      throw BreakSignal{};
    case NodeKind::ContinueStmt:
      throw ContinueSignal{};
    case NodeKind::WhileStmt:
      while (eval(*s.child(0))) {
        try {
          exec(*s.child(1));
        } catch (const ContinueSignal &) {
        } catch (const BreakSignal &) {
          break;
        }
      }
      return;
    case NodeKind::ForStmt:
      exec_header(*s.for_init());
      while (s.for_cond()->kind == NodeKind::Empty || eval(*s.for_cond())) {
        try {
          exec(*s.for_body());
        } catch (const ContinueSignal &) {
        } catch (const BreakSignal &) {
          break;
        }
        if (s.for_inc()->kind != NodeKind::Empty)
          eval(*s.for_inc());
      }
      return;
    default:
      fail(s, "unsupported statement");
    }
  }

  DependenceSet report() const {
    DependenceSet out;
    std::set<std::tuple<const Symbol *, DepKind, long>> seen;
    for (const auto &[key, events] : trace_) {
      const Symbol *s = key.first;
      if (key.second < 0 && !exposed_.count(s))
        continue;
      for (std::size_t x = 0; x < events.size(); ++x) {
        for (std::size_t y = x + 1; y < events.size(); ++y) {
          const Event &a = events[x], &b = events[y];
          if (a.iter == b.iter || (!a.write && !b.write))
            continue;
          DepKind k = a.write && b.write ? DepKind::Output
                      : a.write          ? DepKind::Flow
                                         : DepKind::Anti;
          long dist = (b.iter - a.iter) * n_.step;
          if (!seen.insert({s, k, dist}).second)
            continue;
          Dependence d;
          d.kind = k;
          d.symbol = s;
          d.carried = true;
          d.distance = dist;
          d.span = b.node->span;
          out.deps.push_back(std::move(d));
        }
      }
    }
    return out;
  }
};

} // namespace

DependenceSet brute_force_dependence_oracle(const LoopNest &nest, const SymbolTable &table,
                                            const OracleInput &input, const OracleLimits &limits) {
  return Interp(nest, table, input, limits).run();
}

} // namespace pwlite
