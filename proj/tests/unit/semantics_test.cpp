#include "analysis_helpers.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace pwlite;
using pwlite::test::analyze_file;
using pwlite::test::analyze_text;
using pwlite::test::source_dir;

namespace {

std::vector<const Access *> accesses_of(const StmtEffects &e, std::string_view name, bool write) {
  std::vector<const Access *> out;
  for (const Access &a : write ? e.writes : e.reads)
    if (a.symbol && a.symbol->name == name)
      out.push_back(&a);
  return out;
}

const StmtEffects &first_expr_stmt(const test::Analyzed &a, std::string_view fn) {
  const AstNode *s = a.first(a.function(fn), NodeKind::ExprStmt);
  return *a.def_use(fn).effects(*s);
}


PurityClass purity_named(const test::Analyzed &a, std::string_view name,
                         const PurityOptions &o = {}) {
  auto facts = collect_function_facts(a.table, a.du, 0);
  auto res = classify_purity(facts, o);
  for (std::size_t i = 0; i < facts.size(); ++i)
    if (facts[i].name == name)
      return res[i];
  throw std::runtime_error("missing function");
}

} // namespace

TEST(Symbols, GlobalResolvesInsideFunction) {
  auto a = analyze_text("int g; void f(void){g=1;}");
  const AstNode *id = a->identifier(a->function("f"), "g");
  ASSERT_NE(id, nullptr);
  const Symbol *s = a->table.resolve(*id);
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->storage, Storage::Global);
  EXPECT_EQ(s->scope->kind, ScopeKind::File);
}

TEST(Symbols, MandelbrotParameters) {
  auto a = analyze_file(source_dir() / "corpus/mandelbrot/mandelbrot.c");
  const AstNode &fn = a->function("mandelbrot");
  for (const char *name : {"max_iter", "height", "width", "output", "real_min", "real_max",
                           "imag_min", "imag_max"}) {
    const Symbol *s = a->table.lookup(name, a->table.scope_of(*fn.function_body()));
    ASSERT_NE(s, nullptr) << name;
    EXPECT_EQ(s->storage, Storage::Parameter) << name;
    EXPECT_EQ(s->scope->kind, ScopeKind::Function) << name;
  }
  const Symbol *out = a->table.lookup("output", a->table.scope_of(*fn.function_body()));
  EXPECT_EQ(out->shape, ShapeKind::Pointer);
  EXPECT_EQ(out->pointer_depth, 2);
}

TEST(Symbols, ShadowingCreatesDistinctSymbols) {
  auto a = analyze_text("int x; void f(){int x; x = 1;}");
  int count = 0;
  for (const auto &s : a->table.symbols())
    count += s->name == "x";
  EXPECT_EQ(count, 2);
  const Symbol *use = a->table.resolve(*a->identifier(a->function("f"), "x"));
  EXPECT_EQ(use->storage, Storage::Local);
}

TEST(Symbols, DuplicateInSameScope) {
  auto a = analyze_text("void f(){int x; int x; x = 1;}");
  ASSERT_EQ(a->table.diagnostics().size(), 1u);
  EXPECT_EQ(a->table.diagnostics()[0].kind, DiagKind::DuplicateDeclaration);
}

TEST(Symbols, UnresolvedIsExternalGlobal) {
  auto a = analyze_text("void f(){ undeclared_thing = 2; }");
  const Symbol *s = a->table.resolve(*a->identifier(a->function("f"), "undeclared_thing"));
  ASSERT_NE(s, nullptr);
  EXPECT_TRUE(s->unresolved);
  EXPECT_EQ(s->storage, Storage::Global);
  EXPECT_EQ(s->shape, ShapeKind::Unknown);
}

TEST(Symbols, ScopesNest) {
  auto a = analyze_file(source_dir() / "corpus/mandelbrot/mandelbrot.c");
  for (const auto &s : a->table.scopes()) {
    if (!s->parent || s->parent->kind == ScopeKind::File)
      continue;
    EXPECT_TRUE(s->parent->span.contains(s->span));
  }
  const Symbol *iter = nullptr;
  for (const auto &s : a->table.symbols())
    if (s->name == "iter")
      iter = s.get();
  ASSERT_NE(iter, nullptr);
  EXPECT_EQ(iter->storage, Storage::Local);
  EXPECT_EQ(iter->scope->kind, ScopeKind::LoopBody);
}

TEST(DefUse, OutputStore) {
  auto a = analyze_file(source_dir() / "corpus/mandelbrot/mandelbrot.c");
  const AstNode &fn = a->function("mandelbrot");
  const AstNode *store = nullptr;
  walk(fn, [&](const AstNode &n) {
    if (n.kind == NodeKind::ExprStmt && n.child(0)->kind == NodeKind::AssignExpr &&
        n.child(0)->child(0)->kind == NodeKind::ArraySubscript)
      store = &n;
    return true;
  });
  ASSERT_NE(store, nullptr);
  const StmtEffects &e = *a->def_use("mandelbrot").effects(*store);
  auto w = accesses_of(e, "output", true);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0]->subscript.form, SubscriptForm::Affine);
  ASSERT_EQ(w[0]->subscript.dims.size(), 2u);
  EXPECT_EQ(w[0]->subscript.dims[0]->str(), "row");
  EXPECT_EQ(w[0]->subscript.dims[1]->str(), "col");
  for (const char *r : {"row", "col", "iter"})
    EXPECT_EQ(accesses_of(e, r, false).size(), 1u) << r;
}

TEST(DefUse, IncrementReadsAndWrites) {
  auto a = analyze_text("void f(){ int iter = 0; iter++; }");
  const StmtEffects &e = first_expr_stmt(*a, "f");
  EXPECT_EQ(accesses_of(e, "iter", false).size(), 1u);
  EXPECT_EQ(accesses_of(e, "iter", true).size(), 1u);
}

TEST(DefUse, IndirectCompoundStore) {
  auto a = analyze_text("void f(double *a, int *b, double x, int i){ a[b[i]] += x; }");
  const StmtEffects &e = first_expr_stmt(*a, "f");
  auto w = accesses_of(e, "a", true);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0]->subscript.form, SubscriptForm::Indirect);
  EXPECT_EQ(w[0]->subscript.index_array->name, "b");
  auto ra = accesses_of(e, "a", false);
  ASSERT_EQ(ra.size(), 1u);
  EXPECT_EQ(ra[0]->subscript.form, SubscriptForm::Indirect);
  auto rb = accesses_of(e, "b", false);
  ASSERT_EQ(rb.size(), 1u);
  EXPECT_EQ(rb[0]->subscript.form, SubscriptForm::Affine);
  EXPECT_EQ(accesses_of(e, "x", false).size(), 1u);
}

TEST(DefUse, CompoundAssignIsReadAndWrite) {
  auto a = analyze_text("void f(double *y, int n){ double s = 0; s += y[n]; }");
  const StmtEffects &e = first_expr_stmt(*a, "f");
  EXPECT_EQ(accesses_of(e, "s", false).size(), 1u);
  EXPECT_EQ(accesses_of(e, "s", true).size(), 1u);
  // The read of s precedes its write.
  int read = -1, write = -1;
  for (const Access &x : e.ordered)
    if (x.symbol && x.symbol->name == "s")
      (x.is_write ? write : read) = x.order;
  EXPECT_LT(read, write);
}

TEST(DefUse, DerefAndArrow) {
  auto a = analyze_text("struct P { int v; };\nvoid f(int *p, struct P *q, int i){ *(p + i) = 1; q->v = 2; }");
  const auto &du = a->def_use("f");
  std::vector<const Access *> writes;
  for (const StmtEffects &u : du.units)
    for (const Access &x : u.writes)
      writes.push_back(&x);
  ASSERT_EQ(writes.size(), 2u);
  EXPECT_EQ(writes[0]->symbol->name, "p");
  EXPECT_TRUE(writes[0]->through_pointer);
  EXPECT_EQ(writes[0]->subscript.dims[0]->str(), "i");
  EXPECT_EQ(writes[1]->symbol->name, "q");
  EXPECT_TRUE(writes[1]->through_pointer);
}

TEST(DefUse, AffineForms) {
  auto a = analyze_text("void f(double *a, int i, int n){ a[2*i - 1 + n] = a[(i + 3) * 2]; }");
  const StmtEffects &e = first_expr_stmt(*a, "f");
  auto w = accesses_of(e, "a", true);
  EXPECT_EQ(w[0]->subscript.dims[0]->str(), "2*i + n - 1");
  auto r = accesses_of(e, "a", false);
  EXPECT_EQ(r[0]->subscript.dims[0]->str(), "2*i + 6");
}

TEST(DefUse, NonAffineIsUnknown) {
  auto a = analyze_text("void f(double *a, int i){ a[i * i] = 0; }");
  const StmtEffects &e = first_expr_stmt(*a, "f");
  EXPECT_EQ(accesses_of(e, "a", true)[0]->subscript.form, SubscriptForm::Unknown);
}

TEST(Purity, SquareIsPure) {
  auto a = analyze_text("int sq(int x){return x*x;}");
  EXPECT_EQ(purity_named(*a, "sq").purity, Purity::Pure);
  EXPECT_TRUE(purity_named(*a, "sq").reasons.empty());
}

TEST(Purity, PrintfIsIo) {
  auto a = analyze_text("#include <stdio.h>\nvoid hello(void){ printf(\"hi\\n\"); }");
  auto p = purity_named(*a, "hello");
  EXPECT_EQ(p.purity, Purity::Impure);
  EXPECT_TRUE(p.has(ImpurityReason::PerformsIo));
}

TEST(Purity, MutualRecursionSettlesPure) {
  auto a = analyze_text("int odd(int n);\nint even(int n){ int r = 1; if (n) r = odd(n - 1); return r; }\n"
                        "int odd(int n){ int r = 0; if (n) r = even(n - 1); return r; }\n");
  EXPECT_EQ(purity_named(*a, "even").purity, Purity::Pure);
  EXPECT_EQ(purity_named(*a, "odd").purity, Purity::Pure);
}

TEST(Purity, ReasonsAndPropagation) {
  auto a = analyze_text("int g;\n"
                        "void wg(void){ g = 1; }\n"
                        "void wp(int *p){ p[0] = 1; }\n"
                        "void caller(void){ wg(); }\n"
                        "double root(double x){ return sqrt(x); }\n"
                        "int ext(int x){ return mystery(x); }\n"
                        "int reader(void){ return g; }\n"
                        "int viaext(int x){ return ext(x); }\n"
                        "int local_ptr(void){ int b[2]; int *q = b; q[0] = 1; return b[0]; }\n",
                        "t.c");
  EXPECT_TRUE(purity_named(*a, "wg").has(ImpurityReason::WritesGlobal));
  EXPECT_TRUE(purity_named(*a, "wp").has(ImpurityReason::WritesThroughPointerParam));
  EXPECT_TRUE(purity_named(*a, "caller").has(ImpurityReason::CallsImpure));
  EXPECT_EQ(purity_named(*a, "caller").purity, Purity::Impure);
  EXPECT_EQ(purity_named(*a, "ext").purity, Purity::Unknown);
  EXPECT_EQ(purity_named(*a, "viaext").purity, Purity::Unknown);
  EXPECT_EQ(purity_named(*a, "reader").purity, Purity::Pure);
  EXPECT_EQ(purity_named(*a, "local_ptr").purity, Purity::Unknown);
}

TEST(Purity, ConstStubIsPure) {
  auto a = analyze_text("#include <math.h>\ndouble root(double x){ return sqrt(x) + fabs(x); }");
  EXPECT_EQ(purity_named(*a, "root").purity, Purity::Pure);
}

TEST(Purity, OpaqueIsImpure) {
  auto a = analyze_text("int v(int n, ...){ return n; }");
  auto p = purity_named(*a, "v");
  EXPECT_EQ(p.purity, Purity::Impure);
  EXPECT_TRUE(p.has(ImpurityReason::OpaqueBody));
}

TEST(Purity, IoListOverride) {
  auto a = analyze_text("void beep(void);\nvoid f(void){ beep(); }");
  EXPECT_EQ(purity_named(*a, "f").purity, Purity::Unknown);
  PurityOptions o;
  o.io_functions = {"beep"};
  auto p = purity_named(*a, "f", o);
  EXPECT_EQ(p.purity, Purity::Impure);
  EXPECT_TRUE(p.has(ImpurityReason::PerformsIo));
}

TEST(Purity, OrderIndependent) {
  auto a = analyze_text("int g;\nint a1(int x){ return a2(x) + 1; }\nint a2(int x){ return x ? a3(x - 1) : 0; }\n"
                        "int a3(int x){ return a1(x); }\nint b1(int x){ return b2(x); }\n"
                        "int b2(int x){ g = x; return b1(x); }\nint c1(int x){ return a1(x) + b1(x); }\n");
  auto facts = collect_function_facts(a->table, a->du, 0);
  auto base = classify_purity(facts);
  std::map<std::string, Purity> expected;
  for (std::size_t i = 0; i < facts.size(); ++i)
    expected[facts[i].name] = base[i].purity;
  EXPECT_EQ(expected["a1"], Purity::Pure);
  EXPECT_EQ(expected["b1"], Purity::Impure);
  EXPECT_EQ(expected["c1"], Purity::Impure);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto shuffled = facts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto res = classify_purity(shuffled);
    for (std::size_t i = 0; i < shuffled.size(); ++i)
      EXPECT_EQ(res[i].purity, expected[shuffled[i].name]);
  }
}

TEST(Purity, AddingGlobalWriteIsMonotone) {
  const std::vector<std::string> bodies = {"return x;", "g = x; return x;", "return helper(x);",
                                           "printf(\"%d\", x); return x;"};
  for (const std::string &b : bodies) {
    std::string base = "#include <stdio.h>\nint g;\nint helper(int v){ return v; }\nint f(int x){ " + b + " }\n";
    std::string more = "#include <stdio.h>\nint g;\nint helper(int v){ return v; }\nint f(int x){ g = 0; " + b + " }\n";
    auto p0 = purity_named(*analyze_text(base), "f").purity;
    auto p1 = purity_named(*analyze_text(more), "f").purity;
    EXPECT_GE(static_cast<int>(p1), static_cast<int>(p0));
    EXPECT_EQ(p1, Purity::Impure);
  }
}
