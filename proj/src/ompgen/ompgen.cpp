#include "pwlite/ompgen/ompgen.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pwlite {

std::string_view to_string(Paradigm p) {
  switch (p) {
  case Paradigm::Multi: return "multi";
  case Paradigm::Taskwait: return "taskwait";
  case Paradigm::Taskloop: return "taskloop";
  }
  return "?";
}

std::optional<Paradigm> paradigm_from(std::string_view name) {
  for (Paradigm p : {Paradigm::Multi, Paradigm::Taskwait, Paradigm::Taskloop})
    if (to_string(p) == name)
      return p;
  return std::nullopt;
}

namespace {

bool is_loop(const AstNode &n) {
  return n.kind == NodeKind::ForStmt || n.kind == NodeKind::WhileStmt ||
         n.kind == NodeKind::DoStmt;
}

bool inside(const AstNode *n, const AstNode &region) {
  for (; n; n = n->parent)
    if (n == &region)
      return true;
  return false;
}

// A scalar written in the loop whose value may still be read once the loop
// is done, either after it or in an enclosing loop's next iteration.
bool live_out(const Symbol *s, const LoopNest &nest, const DefUseInfo &du) {
  const AstNode *outer = nest.loop;
  for (const AstNode *p = nest.loop->parent; p; p = p->parent)
    if (is_loop(*p))
      outer = p;
  if (outer != nest.loop)
    for (const Access *a : du.accesses_in(*outer))
      if (a->symbol == s && !a->is_write && !inside(a->node, *nest.loop))
        return true;
  const Access *next = nullptr;
  for (const StmtEffects &u : du.units)
    for (const Access &a : u.ordered)
      if (a.symbol == s && a.node->span.begin >= outer->span.end &&
          (!next || a.order < next->order))
        next = &a;
  return next && (!next->is_write || next->conditional);
}

std::string list(const std::vector<std::string> &v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out += (k ? ", " : "") + v[k];
  return out;
}

std::string clause(const char *name, const std::vector<std::string> &v) {
  return v.empty() ? std::string() : " " + std::string(name) + "(" + list(v) + ")";
}

std::string reduction_clauses(const ScopingPlan &plan) {
  std::map<std::string, std::vector<std::string>> by_op;
  for (const auto &[op, var] : plan.reduction)
    by_op[op].push_back(var);
  std::string out;
  for (const auto &[op, vars] : by_op)
    out += " reduction(" + op + ": " + list(vars) + ")";
  return out;
}

std::string parallel_line(const ScopingPlan &plan, const std::string &ind, bool private_index) {
  std::vector<std::string> shared = plan.shared;
  for (const auto &r : plan.reduction)
    shared.push_back(r.second);
  std::sort(shared.begin(), shared.end());
  std::vector<std::string> priv;
  if (private_index && plan.index_declared_outside)
    priv.push_back(plan.loop_index);
  return ind + "#pragma omp parallel default(none)" + clause("shared", shared) +
         clause("private", priv) + "\n";
}

bool starts_line(const SourceFile &src, std::size_t offset) {
  std::size_t ls = src.line_start(src.line_col(offset).line);
  for (std::size_t k = ls; k < offset; ++k)
    if (src.text[k] != ' ' && src.text[k] != '\t')
      return false;
  return true;
}

std::size_t line_start_of(const SourceFile &src, std::size_t offset) {
  return src.line_start(src.line_col(offset).line);
}

std::string indentation(const SourceFile &src, std::size_t offset) {
  return std::string(src.indentation_at(offset));
}

// Wraps the loop with `before` lines and `after` text.
SourceEdit wrap_loop(const LoopNest &nest, const SourceFile &src, std::string before,
                     std::string after) {
  SourceEdit e;
  e.kind = EditKind::WrapBlock;
  const SourceSpan &sp = nest.loop->span;
  if (starts_line(src, sp.begin)) {
    e.anchor = line_start_of(src, sp.begin);
  } else {
    e.anchor = sp.begin;
    before = "\n" + before + indentation(src, sp.begin);
  }
  e.text = std::move(before);
  e.end = sp.end;
  e.text_after = std::move(after);
  return e;
}

void require_forall(const ScopingPlan &plan, const char *what) {
  if (!plan.reduction.empty())
    throw CodegenError(CodegenError::Kind::UnsupportedPatternForTemplate,
                       std::string("the ") + what +
                           " template does not support reductions (reduction on '" +
                           plan.reduction.front().second + "')");
}

} // namespace

ScopingPlan compute_data_scoping(const LoopNest &nest, const DefUseInfo &du,
                                 const SymbolTable &table, const PatternClass &pattern) {
  if (!pattern.parallel()) {
    std::string msg = "loop is " + pattern.str() + ", not forall or scalar_reduction";
    if (!pattern.reason.empty())
      msg += ": " + pattern.reason;
    throw CodegenError(CodegenError::Kind::UnsupportedPatternForTemplate, msg);
  }
  ScopingPlan plan;
  const Scope *loop_scope = table.scope_of(*nest.loop);
  std::map<std::string, const Symbol *> used;
  walk(*nest.loop, [&](const AstNode &n) {
    if (n.kind == NodeKind::Identifier)
      if (const Symbol *s = table.resolve(n); s && !s->is_function() && !s->enum_constant)
        used.emplace(s->name, s);
    return true;
  });
  std::set<const Symbol *> written;
  for (const Access *a : du.accesses_in(*nest.loop))
    if (a->is_write && a->symbol)
      written.insert(a->symbol);

  for (const auto &[name, s] : used) {
    if (s == nest.index_var) {
      plan.loop_index = name;
      plan.index_declared_outside = !(loop_scope && s->scope == loop_scope);
      continue;
    }
    if (s->storage != Storage::Parameter && s->scope && loop_scope &&
        loop_scope->encloses(s->scope))
      continue; // block-local
    auto red = std::find_if(pattern.reductions.begin(), pattern.reductions.end(),
                            [&](const Reduction &r) { return r.variable == s; });
    if (red != pattern.reductions.end() && pattern.kind == PatternKind::ScalarReduction) {
      plan.reduction.emplace_back(red->op, name);
    } else if (written.count(s) && !s->is_aggregate()) {
      if (live_out(s, nest, du))
        throw CodegenError(CodegenError::Kind::UnscopableVariable,
                           "scalar '" + name + "' is written in the loop and used after it");
      plan.private_.push_back(name);
    } else {
      plan.shared.push_back(name);
    }
  }
  if (plan.index_declared_outside && live_out(nest.index_var, nest, du))
    throw CodegenError(CodegenError::Kind::UnscopableVariable,
                       "loop index '" + plan.loop_index + "' is used after the loop");
  return plan;
}

std::vector<SourceEdit> generate_parallel_for(const LoopNest &nest, const ScopingPlan &plan,
                                              const SourceFile &source,
                                              const CodegenOptions &options) {
  std::string ind = indentation(source, nest.loop->span.begin);
  std::string sched = options.schedule.empty() ? "" : " schedule(" + options.schedule + ")";
  std::string before = parallel_line(plan, ind, false) + ind + "{\n" + ind + "#pragma omp for" +
                       sched + clause("private", plan.private_) +
                       clause("firstprivate", plan.firstprivate) + reduction_clauses(plan) +
                       "\n";
  return {wrap_loop(nest, source, before, "\n" + ind + "} // end parallel")};
}

std::vector<SourceEdit> generate_task_taskwait(const LoopNest &nest, const ScopingPlan &plan,
                                               const SourceFile &source) {
  require_forall(plan, "taskwait");
  std::string ind = indentation(source, nest.loop->span.begin);
  std::string task = ind + "#pragma omp task" + clause("private", plan.private_) +
                     clause("firstprivate", plan.firstprivate);
  std::vector<SourceEdit> edits;
  edits.push_back(wrap_loop(nest, source,
                            parallel_line(plan, ind, true) + ind + "#pragma omp single\n" + ind +
                                "{\n",
                            "\n" + ind + "#pragma omp taskwait\n" + ind + "} // end parallel"));

  const AstNode &body = *nest.body();
  if (body.kind == NodeKind::CompoundStmt) {
    SourceEdit open;
    open.kind = EditKind::InsertAfter;
    open.anchor = body.span.begin + 1;
    open.text = "\n" + task + "\n" + ind + "{";
    edits.push_back(open);
    SourceEdit close;
    close.kind = EditKind::InsertBefore;
    std::size_t brace = body.span.end - 1;
    if (starts_line(source, brace)) {
      close.anchor = line_start_of(source, brace);
      close.text = ind + "} // end task\n";
    } else {
      close.anchor = brace;
      close.text = "\n" + ind + "} // end task\n" + ind;
    }
    edits.push_back(close);
  } else {
    SourceEdit wrap;
    wrap.kind = EditKind::WrapBlock;
    std::string head = ind + "{\n" + task + "\n" + ind + "{\n";
    if (starts_line(source, body.span.begin)) {
      wrap.anchor = line_start_of(source, body.span.begin);
      wrap.text = head;
    } else {
      wrap.anchor = body.span.begin;
      wrap.text = "\n" + head + indentation(source, body.span.begin) + "    ";
    }
    wrap.end = body.span.end;
    wrap.text_after = "\n" + ind + "} // end task\n" + ind + "}";
    edits.push_back(wrap);
  }
  return edits;
}

std::vector<SourceEdit> generate_taskloop(const LoopNest &nest, const ScopingPlan &plan,
                                          const SourceFile &source,
                                          const CodegenOptions &options) {
  require_forall(plan, "taskloop");
  std::string ind = indentation(source, nest.loop->span.begin);
  std::string grain = options.taskloop_grainsize
                          ? " grainsize(" + std::to_string(*options.taskloop_grainsize) + ")"
                          : "";
  std::string before = parallel_line(plan, ind, false) + ind + "#pragma omp single\n" + ind +
                       "{\n" + ind + "#pragma omp taskloop" + clause("private", plan.private_) +
                       clause("firstprivate", plan.firstprivate) + grain + "\n";
  return {wrap_loop(nest, source, before, "\n" + ind + "} // end parallel")};
}

SourceFile apply_edits(const SourceFile &source, std::vector<SourceEdit> edits) {
  struct Point {
    std::size_t pos;
    bool after; // closes preceding content
    std::size_t other; // the opposite end of the edit's range
    std::size_t seq;
    const std::string *text;
  };
  const std::size_t size = source.text.size();
  std::vector<Point> points;
  for (std::size_t k = 0; k < edits.size(); ++k) {
    const SourceEdit &e = edits[k];
    std::size_t end = e.kind == EditKind::WrapBlock ? e.end : e.anchor;
    if (e.anchor > size || end > size || end < e.anchor)
      throw CodegenError(CodegenError::Kind::OverlappingEdits, "edit outside the file");
    switch (e.kind) {
    case EditKind::InsertBefore: points.push_back({e.anchor, false, e.anchor, k, &e.text}); break;
    case EditKind::InsertAfter: points.push_back({e.anchor, true, e.anchor, k, &e.text}); break;
    case EditKind::WrapBlock:
      points.push_back({e.anchor, false, e.end, k, &e.text});
      points.push_back({e.end, true, e.anchor, k, &e.text_after});
      break;
    }
  }
  for (std::size_t a = 0; a < edits.size(); ++a) {
    for (std::size_t b = 0; b < edits.size(); ++b) {
      const SourceEdit &x = edits[a], &y = edits[b];
      if (a == b || x.kind != EditKind::WrapBlock || y.kind != EditKind::WrapBlock)
        continue;
      if (x.anchor < y.anchor && y.anchor < x.end && x.end < y.end)
        throw CodegenError(CodegenError::Kind::OverlappingEdits, "edits cross each other");
    }
  }
  std::stable_sort(points.begin(), points.end(), [](const Point &a, const Point &b) {
    if (a.pos != b.pos)
      return a.pos < b.pos;
    if (a.after != b.after)
      return a.after; // closing text first
    if (a.other != b.other)
      return a.other > b.other; // inner range closes first, outer range opens first
    return a.seq < b.seq;
  });
  std::string out;
  std::size_t cur = 0;
  for (const Point &p : points) {
    out.append(source.text, cur, p.pos - cur);
    out += *p.text;
    cur = p.pos;
  }
  out.append(source.text, cur, std::string::npos);
  return SourceFile(source.path, std::move(out));
}

} // namespace pwlite
