#include "analysis_helpers.hpp"
#include "fixtures.hpp"
#include "loop_corpus.hpp"

#include "pwlite/patterns/oracle.hpp"
#include "pwlite/patterns/pattern.hpp"

#include <gtest/gtest.h>

#include <cstdio>

using namespace pwlite;
using pwlite::test::analyze_file;
using pwlite::test::analyze_text;
using pwlite::test::source_dir;

namespace {

struct Loops {
  std::unique_ptr<test::Analyzed> a;
  LoopForest forest;
  std::vector<const LoopNest *> all;

  DependenceSet deps(std::size_t k = 0) const {
    return test_dependences(*all.at(k), a->def_use(fn), a->table, attribute_purity(a->table));
  }
  PatternClass pattern(std::size_t k = 0) const { return classify_pattern(*all.at(k), deps(k)); }
  std::string fn;
};

Loops loops_of(std::unique_ptr<test::Analyzed> a, const std::string &fn) {
  Loops l;
  l.a = std::move(a);
  l.fn = fn;
  l.forest = enumerate_loops(l.a->function(fn), l.a->table, l.a->def_use(fn));
  l.all = all_loops(l.forest);
  return l;
}

Loops loops_in(const std::string &body, const std::string &params = "int n, double *a, double *b") {
  return loops_of(analyze_text("void f(" + params + ") {\n" + body + "\n}\n"), "f");
}

bool has_carried(const DependenceSet &d, std::string_view sym, DepKind kind) {
  for (const Dependence &x : d.deps)
    if (x.carried && x.kind == kind && x.symbol && x.symbol->name == sym)
      return true;
  return false;
}

DependenceSet oracle_on(const std::string &body, const OracleInput &in) {
  auto l = loops_in(body, "long *a, long *b");
  return brute_force_dependence_oracle(*l.all.at(0), l.a->table, in);
}

} // namespace

TEST(EnumerateLoops, MandelbrotNest) {
  auto l = loops_of(analyze_file(source_dir() / "corpus/mandelbrot/mandelbrot.c"), "mandelbrot");
  ASSERT_EQ(l.forest.size(), 1u);
  const LoopNest &row = *l.forest[0];
  EXPECT_EQ(row.index_var->name, "row");
  EXPECT_EQ(row.depth, 0);
  EXPECT_TRUE(row.canonical);
  ASSERT_EQ(row.children.size(), 1u);
  const LoopNest &col = *row.children[0];
  EXPECT_EQ(col.index_var->name, "col");
  EXPECT_EQ(col.depth, 1);
  EXPECT_TRUE(col.contains_while);
  EXPECT_TRUE(row.contains_while);
}

TEST(EnumerateLoops, NoLoops) {
  auto l = loops_in("int x = n; (void)x;");
  EXPECT_TRUE(l.forest.empty());
}

TEST(EnumerateLoops, TripleNest) {
  auto l = loops_in("for (int i = 0; i < n; i++)\n for (int j = 0; j < n; j++)\n"
                    "  for (int k = 0; k < n; k++) a[i] += b[j] * k;");
  ASSERT_EQ(l.forest.size(), 1u);
  ASSERT_EQ(l.all.size(), 3u);
  EXPECT_EQ(l.all[0]->depth, 0);
  EXPECT_EQ(l.all[1]->depth, 1);
  EXPECT_EQ(l.all[2]->depth, 2);
  EXPECT_EQ(l.all[2]->parent, l.all[1]);
}

TEST(EnumerateLoops, NonCanonicalCaptured) {
  auto l = loops_in("for (int i = 0; i < n; i++) { i = i + 2; a[i] = 0; }");
  ASSERT_EQ(l.all.size(), 1u);
  EXPECT_FALSE(l.all[0]->canonical);
  DependenceSet d = l.deps();
  ASSERT_EQ(d.deps.size(), 1u);
  EXPECT_EQ(d.deps[0].kind, DepKind::Unknown);
  EXPECT_EQ(l.pattern().kind, PatternKind::Unknown);
}

TEST(Dependences, EqualOffsetsNotCarried) {
  auto l = loops_in("for (int i = 0; i < n; i++) a[i] = a[i] + 1;");
  EXPECT_TRUE(l.deps().carried().empty());
}

TEST(Dependences, ShiftedReadCarriesFlow) {
  auto l = loops_in("for (int i = 1; i < n; i++) a[i] = a[i - 1] + 1;");
  DependenceSet d = l.deps();
  ASSERT_TRUE(has_carried(d, "a", DepKind::Flow));
  EXPECT_FALSE(has_carried(d, "a", DepKind::Anti));
  for (const Dependence &x : d.deps)
    if (x.carried && x.kind == DepKind::Flow)
      EXPECT_EQ(x.distance, 1);
  PatternClass p = l.pattern();
  EXPECT_EQ(p.kind, PatternKind::Sequential);
  EXPECT_NE(p.reason.find("flow"), std::string::npos);
}

TEST(Dependences, ScalarReductionTagged) {
  auto l = loops_in("double s = 0;\nfor (int i = 0; i < n; i++) s = s + a[i];\nb[0] = s;");
  DependenceSet d = l.deps();
  auto carried = d.carried();
  ASSERT_FALSE(carried.empty());
  for (const Dependence *x : carried) {
    EXPECT_TRUE(x->reduction);
    EXPECT_EQ(x->symbol->name, "s");
  }
  EXPECT_EQ(d.scalars.begin()->second.role, ScalarRole::Reduction);
}

TEST(Dependences, PrivateScalarNotCarried) {
  auto l = loops_in("double t;\nfor (int i = 0; i < n; i++) { t = a[i] * 2; b[i] = t; }");
  DependenceSet d = l.deps();
  EXPECT_TRUE(d.carried().empty());
}

TEST(Dependences, CarriedScalar) {
  auto l = loops_in("double t = 0;\nfor (int i = 0; i < n; i++) { b[i] = t; t = a[i]; }");
  EXPECT_TRUE(has_carried(l.deps(), "t", DepKind::Flow));
  EXPECT_EQ(l.pattern().kind, PatternKind::Sequential);
}

TEST(Dependences, UnknownCallBlocks) {
  auto l = loops_in("for (int i = 0; i < n; i++) a[i] = g(i);");
  EXPECT_TRUE(l.deps().blocked());
  EXPECT_EQ(l.pattern().kind, PatternKind::Unknown);
}

TEST(Dependences, PureCallDoesNotBlock) {
  auto l = loops_of(analyze_text("#include <math.h>\nvoid f(int n, double *a) {\n"
                                 "for (int i = 0; i < n; i++) a[i] = sqrt(a[i]);\n}\n"),
                    "f");
  EXPECT_FALSE(l.deps().blocked());
  EXPECT_EQ(l.pattern().kind, PatternKind::Forall);
}

TEST(Dependences, StrideTwoIndependent) {
  auto l = loops_in("for (int i = 0; i < n; i++) a[2 * i] = a[2 * i + 1];");
  EXPECT_TRUE(l.deps().carried().empty());
}

TEST(ClassifyPattern, MandelbrotRowIsForall) {
  auto l = loops_of(analyze_file(source_dir() / "corpus/mandelbrot/mandelbrot.c"), "mandelbrot");
  EXPECT_EQ(l.pattern(0).kind, PatternKind::Forall);
  EXPECT_EQ(l.pattern(1).kind, PatternKind::Forall);
}

TEST(ClassifyPattern, SumIsScalarReduction) {
  auto l = loops_in("double s = 0;\nfor (int i = 0; i < n; i++) s += a[i];\nb[0] = s;");
  PatternClass p = l.pattern();
  EXPECT_EQ(p.kind, PatternKind::ScalarReduction);
  ASSERT_EQ(p.reductions.size(), 1u);
  EXPECT_EQ(p.reductions[0].op, "+");
  EXPECT_EQ(p.reductions[0].variable->name, "s");
  EXPECT_EQ(p.str(), "scalar_reduction(+, s)");
}

TEST(ClassifyPattern, MinMaxForms) {
  auto l1 = loops_in("double m = a[0];\nfor (int i = 0; i < n; i++) if (a[i] < m) m = a[i];\nb[0] = m;");
  EXPECT_EQ(l1.pattern().str(), "scalar_reduction(min, m)");
  auto l2 = loops_in("double m = a[0];\nfor (int i = 0; i < n; i++) m = a[i] > m ? a[i] : m;\nb[0] = m;");
  EXPECT_EQ(l2.pattern().str(), "scalar_reduction(max, m)");
}

TEST(ClassifyPattern, HistogramIsSparseReduction) {
  auto l = loops_in("for (int i = 0; i < n; i++) hist[bin[i]]++;", "int n, int *hist, int *bin");
  PatternClass p = l.pattern();
  EXPECT_EQ(p.kind, PatternKind::SparseReduction);
  EXPECT_EQ(p.str(), "sparse_reduction(+, hist)");
}

TEST(ClassifyPattern, ScatterIsSparseForall) {
  auto l = loops_in("for (int i = 0; i < n; i++) a[idx[i]] = b[i];",
                    "int n, double *a, double *b, int *idx");
  EXPECT_EQ(l.pattern().kind, PatternKind::SparseForall);
}

TEST(ClassifyPattern, EmptyDependenceSetIsForall) {
  auto l = loops_in("for (int i = 0; i < n; i++) a[i] = b[i];");
  EXPECT_EQ(classify_pattern(*l.all[0], DependenceSet{}).kind, PatternKind::Forall);
}

TEST(ClassifyPattern, InvariantUnderReformatting) {
  const char *bodies[] = {
      "double s = 0;\nfor (int i = 0; i < n; i++) s += a[i];\nb[0] = s;",
      "for (int i = 1; i < n; i++) a[i] = a[i - 1] + 1;",
      "for (int i = 0; i < n; i++) a[i] = b[i];",
  };
  for (const char *body : bodies) {
    std::string text = body, spaced;
    for (char ch : text) {
      spaced += ch;
      if (ch == ';' || ch == '{' || ch == ')')
        spaced += "  /* note */\n   ";
    }
    EXPECT_EQ(loops_in(text).pattern().str(), loops_in(spaced).pattern().str()) << body;
  }
}

TEST(Oracle, IdentityStoreHasNoDependence) {
  OracleInput in;
  in.arrays["a"] = std::vector<long>(8, 0);
  in.arrays["b"] = std::vector<long>(8, 0);
  EXPECT_TRUE(oracle_on("for (int i = 0; i < 4; i++) a[i] = i;", in).deps.empty());
}

TEST(Oracle, ShiftedReadFlowDistanceOne) {
  OracleInput in;
  in.arrays["a"] = std::vector<long>(8, 1);
  in.arrays["b"] = std::vector<long>(8, 0);
  DependenceSet d = oracle_on("for (int i = 1; i < 5; i++) a[i] = a[i - 1];", in);
  ASSERT_EQ(d.deps.size(), 1u);
  EXPECT_EQ(d.deps[0].kind, DepKind::Flow);
  EXPECT_EQ(d.deps[0].distance, 1);
}

TEST(Oracle, IndirectStoreOutputDependence) {
  OracleInput in;
  in.arrays["a"] = std::vector<long>(4, 0);
  in.arrays["b"] = {0, 0, 1};
  DependenceSet d = oracle_on("for (int i = 0; i < 3; i++) a[b[i]] = i;", in);
  ASSERT_EQ(d.deps.size(), 1u);
  EXPECT_EQ(d.deps[0].kind, DepKind::Output);
  EXPECT_EQ(d.deps[0].symbol->name, "a");
}

TEST(Oracle, PrivateScalarIgnored) {
  OracleInput in;
  in.arrays["a"] = std::vector<long>(8, 2);
  in.arrays["b"] = std::vector<long>(8, 0);
  DependenceSet d = oracle_on("long t;\nfor (int i = 0; i < 4; i++) { t = a[i]; b[i] = t; }", in);
  EXPECT_TRUE(d.deps.empty());
}

TEST(Oracle, RejectsCalls) {
  OracleInput in;
  in.arrays["a"] = std::vector<long>(8, 0);
  in.arrays["b"] = std::vector<long>(8, 0);
  EXPECT_THROW(oracle_on("for (int i = 0; i < 4; i++) a[i] = g(i);", in), UninterpretableLoop);
}

TEST(Oracle, RejectsLongLoops) {
  OracleInput in;
  in.arrays["a"] = std::vector<long>(64, 0);
  in.arrays["b"] = std::vector<long>(64, 0);
  EXPECT_THROW(oracle_on("for (int i = 0; i < 40; i++) a[i] = i;", in), UninterpretableLoop);
}

TEST(Soundness, StaticCoversOracleOnRandomCorpus) {
  auto corpus = test::generate_loop_corpus(300, 20261016u);
  test::SoundnessResult r = test::compare_with_oracle(corpus);
  EXPECT_GE(r.loops, 200u);
  EXPECT_EQ(r.false_negative_loops, 0u) << (r.misses.empty() ? "" : r.misses.front());
  EXPECT_LE(r.affine_fp_rate(), 0.30);
  std::printf("loops=%zu uninterpretable=%zu fp=%zu affine=%zu affine_fp=%zu\n", r.loops,
              r.uninterpretable, r.false_positive_loops, r.affine_loops,
              r.affine_false_positive_loops);
}
