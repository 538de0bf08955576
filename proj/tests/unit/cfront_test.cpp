#include "fixtures.hpp"

#include "pwlite/cfront/omp_directive.hpp"
#include "pwlite/cfront/parser.hpp"
#include "pwlite/cfront/preprocessor.hpp"
#include "pwlite/cfront/sloc.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace pwlite;
using pwlite::test::read_file;
using pwlite::test::source_dir;
using pwlite::test::sysroot_dir;

namespace {

PreprocessOptions opts() {
  PreprocessOptions o;
  o.sysroot = sysroot_dir();
  return o;
}

std::size_t count_lines(const std::string &s) { return std::count(s.begin(), s.end(), '\n') + 1; }

const AstNode *find_first(const AstNode &root, NodeKind kind) {
  const AstNode *out = nullptr;
  walk(root, [&](const AstNode &n) {
    if (!out && n.kind == kind)
      out = &n;
    return !out;
  });
  return out;
}

void expect_spans_nested(const TranslationUnit &tu) {
  walk(*tu.root, [&](const AstNode &n) {
    EXPECT_LE(n.span.begin, n.span.end);
    EXPECT_LE(n.span.end, tu.file(n.span.file).text.size());
    for (const auto &c : n.children) {
      if (c->span.file == n.span.file && n.kind != NodeKind::TranslationUnit)
        EXPECT_TRUE(n.span.contains(c->span))
            << to_string(n.kind) << " " << tu.describe(n.span) << " does not contain "
            << to_string(c->kind) << " " << tu.describe(c->span);
    }
    return true;
  });
}

} // namespace

TEST(Preprocess, CommentBlankedLinesPreserved) {
  auto pp = preprocess(SourceFile("a.c", "/* hi */\nint x;"), opts());
  EXPECT_EQ(pp.output.text, "        \nint x;");
  EXPECT_EQ(count_lines(pp.output.text), 2u);
}

TEST(Preprocess, ObjectMacroExpanded) {
  auto pp = preprocess(SourceFile("a.c", "#define N 4\nint a[N];"), opts());
  EXPECT_EQ(count_lines(pp.output.text), 2u);
  EXPECT_EQ(std::string(pp.output.line_text(2)), "int a[4];");
}

TEST(Preprocess, MandelbrotBodyUnchanged) {
  auto src = SourceFile::load(source_dir() / "corpus/mandelbrot/mandelbrot.c");
  auto pp = preprocess(src, opts());
  ASSERT_EQ(pp.output.line_count(), src.line_count());
  for (std::uint32_t l = 3; l <= src.line_count(); ++l)
    EXPECT_EQ(pp.output.line_text(l), src.line_text(l)) << "line " << l;
}

TEST(Preprocess, ConditionalsFollowDefines) {
  std::string text = "#ifdef FAST\nint a;\n#else\nint b;\n#endif\n#ifndef FAST\nint c;\n#endif\n";
  auto o = opts();
  o.defines = {"FAST"};
  auto pp = preprocess(SourceFile("a.c", text), o);
  EXPECT_EQ(std::string(pp.output.line_text(2)), "int a;");
  EXPECT_EQ(std::string(pp.output.line_text(4)), "");
  EXPECT_EQ(std::string(pp.output.line_text(7)), "");
  auto pp2 = preprocess(SourceFile("a.c", text), opts());
  EXPECT_EQ(std::string(pp2.output.line_text(2)), "");
  EXPECT_EQ(std::string(pp2.output.line_text(4)), "int b;");
  EXPECT_EQ(std::string(pp2.output.line_text(7)), "int c;");
}

TEST(Preprocess, FatalErrors) {
  EXPECT_THROW(preprocess(SourceFile("a.c", "#ifdef X\nint a;\n"), opts()), FatalFileError);
  EXPECT_THROW(preprocess(SourceFile("a.c", "#define A A + 1\nint a = A;\n"), opts()),
               FatalFileError);
  EXPECT_THROW(preprocess(SourceFile("a.c", "#include \"missing.h\"\n"), opts()), FatalFileError);
  try {
    preprocess(SourceFile("a.c", "int x;\n#if 1\n"), opts());
    FAIL();
  } catch (const FatalFileError &e) {
    EXPECT_EQ(e.diagnostic().kind, DiagKind::UnterminatedConditional);
  }
}

TEST(Preprocess, StringizeMarksPartial) {
  auto pp = preprocess(SourceFile("a.c", "#define S(x) #x\nconst char *s = S(a);\n"), opts());
  EXPECT_TRUE(pp.partial);
  EXPECT_TRUE(std::any_of(pp.diagnostics.begin(), pp.diagnostics.end(),
                          [](const Diagnostic &d) { return d.kind == DiagKind::UnsupportedMacro; }));
}

TEST(Preprocess, FunctionMacroAndLineCount) {
  std::string text = "#define SQ(x) ((x) * (x))\nint f(int a) {\n  return SQ(a + 1);\n}\n";
  auto pp = preprocess(SourceFile("a.c", text), opts());
  EXPECT_EQ(count_lines(pp.output.text), count_lines(text));
  EXPECT_EQ(std::string(pp.output.line_text(3)), "  return ((a + 1) * (a + 1));");
}

TEST(Parse, SimpleFunction) {
  auto tu = parse_source(SourceFile("a.c", "int f(void){return 0;}"), opts());
  auto fns = tu.functions();
  ASSERT_EQ(fns.size(), 1u);
  EXPECT_EQ(fns[0]->text, "f");
  const AstNode *body = fns[0]->function_body();
  ASSERT_EQ(body->kind, NodeKind::CompoundStmt);
  ASSERT_EQ(body->size(), 1u);
  EXPECT_EQ(body->child(0)->kind, NodeKind::ReturnStmt);
}

TEST(Parse, MultiGoldenStructure) {
  auto src = SourceFile::load(source_dir() / "tests/golden/mandelbrot.multi.c");
  auto tu = parse_source(src, opts());
  EXPECT_FALSE(tu.failed());
  auto fns = tu.functions();
  ASSERT_EQ(fns.size(), 1u);
  EXPECT_EQ(fns[0]->text, "mandelbrot");
  const AstNode *par = find_first(*fns[0], NodeKind::OmpPragma);
  ASSERT_NE(par, nullptr);
  EXPECT_EQ(par->omp->kind, OmpKind::Parallel);
  ASSERT_EQ(par->attached()->kind, NodeKind::CompoundStmt);
  const AstNode *inner = par->attached()->child(0);
  ASSERT_EQ(inner->kind, NodeKind::OmpPragma);
  EXPECT_EQ(inner->omp->kind, OmpKind::For);
  ASSERT_NE(inner->omp->find("schedule"), nullptr);
  EXPECT_EQ(inner->omp->find("schedule")->args, std::vector<std::string>{"auto"});
  const AstNode *loop = inner->attached();
  ASSERT_EQ(loop->kind, NodeKind::ForStmt);
  EXPECT_EQ(loop->for_init()->child(0)->decl->name, "row");
  expect_spans_nested(tu);
}

TEST(Parse, TaskloopGoldenStructure) {
  auto src = SourceFile::load(source_dir() / "tests/golden/mandelbrot.taskloop.c");
  auto tu = parse_source(src, opts());
  EXPECT_FALSE(tu.failed());
  const AstNode *par = find_first(*tu.root, NodeKind::OmpPragma);
  ASSERT_NE(par, nullptr);
  EXPECT_EQ(par->omp->kind, OmpKind::Parallel);
  const AstNode *single = par->attached();
  ASSERT_EQ(single->kind, NodeKind::OmpPragma);
  EXPECT_EQ(single->omp->kind, OmpKind::Single);
  const AstNode *tl = single->attached()->child(0);
  ASSERT_EQ(tl->kind, NodeKind::OmpPragma);
  EXPECT_EQ(tl->omp->kind, OmpKind::Taskloop);
  EXPECT_EQ(tl->attached()->kind, NodeKind::ForStmt);
  expect_spans_nested(tu);
}

TEST(Parse, TaskwaitHasNoStatement) {
  auto src = SourceFile::load(source_dir() / "tests/golden/mandelbrot.taskwait.c");
  auto tu = parse_source(src, opts());
  EXPECT_FALSE(tu.failed());
  int taskwaits = 0;
  walk(*tu.root, [&](const AstNode &n) {
    if (n.kind == NodeKind::OmpPragma && n.omp->kind == OmpKind::Taskwait) {
      ++taskwaits;
      EXPECT_EQ(n.size(), 0u);
    }
    return true;
  });
  EXPECT_EQ(taskwaits, 1);
  expect_spans_nested(tu);
}

TEST(Parse, ForHasFourChildren) {
  auto tu = parse_source(SourceFile("a.c", "void f(int n){int i; for(;;) break; for(i=0;i<n;) i++;}"),
                         opts());
  int loops = 0;
  walk(*tu.root, [&](const AstNode &n) {
    if (n.kind == NodeKind::ForStmt) {
      ++loops;
      EXPECT_EQ(n.size(), 4u);
    }
    return true;
  });
  EXPECT_EQ(loops, 2);
}

TEST(Parse, UnsupportedBodyBecomesOpaque) {
  std::string text = "int g(int x) { if (x) goto out; return 1; out: return 0; }\n"
                     "int h(int n, ...) { return n; }\n"
                     "int k(void) { return 2; }\n";
  auto tu = parse_source(SourceFile("a.c", text), opts());
  auto fns = tu.functions();
  ASSERT_EQ(fns.size(), 3u);
  EXPECT_TRUE(fns[0]->opaque);
  EXPECT_TRUE(fns[1]->opaque);
  EXPECT_FALSE(fns[2]->opaque);
  EXPECT_FALSE(tu.failed());
}

TEST(Parse, SyntaxErrorRecordsLocation) {
  auto tu = parse_source(SourceFile("a.c", "int x = ;\nint y;\n"), opts());
  ASSERT_FALSE(tu.diagnostics.empty());
  EXPECT_EQ(tu.diagnostics[0].kind, DiagKind::SyntaxError);
  EXPECT_EQ(tu.diagnostics[0].line, 1u);
  EXPECT_TRUE(tu.failed());
  // Recovery continues with the next declaration.
  ASSERT_EQ(tu.root->size(), 1u);
  EXPECT_EQ(tu.root->child(0)->child(0)->decl->name, "y");
}

TEST(Parse, SpanContainmentOverCorpus) {
  for (const char *rel : {"corpus/mandelbrot/mandelbrot.c", "corpus/mandelbrot/driver.c",
                          "corpus/seq_dep.c"}) {
    auto tu = parse_source(SourceFile::load(source_dir() / rel), opts());
    EXPECT_FALSE(tu.failed()) << rel;
    expect_spans_nested(tu);
  }
}

TEST(Sloc, Examples) {
  EXPECT_EQ(count_sloc(""), 0u);
  EXPECT_EQ(count_sloc("int x; // note\n\n/* block */\ny();"), 2u);
  EXPECT_EQ(count_sloc("/* open\nint x;\n"), 0u);
  EXPECT_EQ(count_sloc("char *s = \"/* not a comment\";\nint y;\n"), 2u);
  EXPECT_EQ(count_sloc("  /* a */ int z; /* b\n c */\n"), 1u);
}

TEST(Sloc, MandelbrotGolden) {
  // Hand count: 27 lines, 4 blank, 1 comment-only.
  EXPECT_EQ(count_sloc(SourceFile::load(source_dir() / "corpus/mandelbrot/mandelbrot.c")), 22u);
}

TEST(Sloc, Additive) {
  std::mt19937 rng(7);
  const std::vector<std::string> pieces = {"int a;\n", "\n", "// c\n", "/* x\n y */\n",
                                           "f(); /* t */\n", "   \n", "s = \"//\";\n"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string a, b;
    for (int i = 0; i < 5; ++i)
      a += pieces[rng() % pieces.size()];
    for (int i = 0; i < 5; ++i)
      b += pieces[rng() % pieces.size()];
    EXPECT_EQ(count_sloc(a + b), count_sloc(a) + count_sloc(b));
  }
}

TEST(Preprocess, LinePreservationWithoutIncludes) {
  std::mt19937 rng(11);
  const std::vector<std::string> pieces = {
      "int a;\n", "#define K 3\n", "/* multi\nline */\n", "// c\n", "#ifdef K\nint b = K;\n#endif\n",
      "#if 0\nx y z\n#endif\n", "\n", "double d[K];\n"};
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    for (int i = 0; i < 6; ++i)
      text += pieces[rng() % pieces.size()];
    auto pp = preprocess(SourceFile("a.c", text), opts());
    EXPECT_EQ(count_lines(pp.output.text), count_lines(text)) << text;
  }
}

TEST(OmpDirective, ParseClauses) {
  auto d = parse_omp_directive("omp parallel for default(none) shared(a, n) reduction(+: s) nowait");
  ASSERT_TRUE(d);
  EXPECT_EQ(d->kind, OmpKind::ParallelFor);
  EXPECT_TRUE(d->has_default_none());
  EXPECT_EQ(d->find("reduction")->modifier, "+");
  EXPECT_EQ(d->find("reduction")->args, std::vector<std::string>{"s"});
  EXPECT_FALSE(d->find("nowait")->has_parens);
  EXPECT_EQ(render(*d), "#pragma omp parallel for default(none) shared(a, n) reduction(+: s) nowait");
}

TEST(OmpDirective, RoundTrip) {
  std::mt19937 rng(3);
  const std::vector<std::string> heads = {"parallel", "for", "parallel for", "single", "task",
                                          "taskloop", "critical(lock)", "taskwait"};
  const std::vector<std::string> clauses = {
      "default(none)", "shared(a, b)", "private(t)", "firstprivate(x, y)", "schedule(auto)",
      "schedule(dynamic, 4)", "reduction(max: m)", "grainsize(8)", "nowait", "collapse(2)",
      "if(n > 100)", "num_threads(4)"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string text = "omp " + heads[rng() % heads.size()];
    int k = rng() % 4;
    for (int i = 0; i < k; ++i)
      text += (rng() % 2 ? ", " : " ") + clauses[rng() % clauses.size()];
    auto d = parse_omp_directive(text);
    ASSERT_TRUE(d) << text;
    std::string rendered = render(*d);
    auto again = parse_omp_directive(rendered.substr(std::string("#pragma ").size()));
    ASSERT_TRUE(again) << rendered;
    EXPECT_EQ(*again, *d) << text;
    EXPECT_EQ(render(*again), rendered);
  }
}

TEST(OmpDirective, SharedClauseRoundTripsExactly) {
  std::string line = "#pragma omp parallel default(none) shared(height, imag_min, max_iter, "
                     "output, real_min, scale_imag, scale_real, width)";
  auto d = parse_omp_directive(line.substr(8));
  ASSERT_TRUE(d);
  EXPECT_EQ(render(*d), line);
  EXPECT_EQ(d->find("shared")->args.size(), 8u);
}
