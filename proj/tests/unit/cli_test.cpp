#include "fixtures.hpp"
#include "program_helpers.hpp"

#include "pwlite/cli/cli.hpp"
#include "pwlite/report/report.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace pwlite;
using namespace pwlite::test;
namespace fs = std::filesystem;

namespace {

std::string sysroot() { return sysroot_dir().string(); }

} // namespace

TEST(Cli, AnalyzeJsonDeterministic) {
  std::vector<std::string> args = {"analyze", (source_dir() / "corpus/mini").string(),
                                   "--format", "json", "--no-timing", "--sysroot", sysroot()};
  CliResult a = run(args), b = run(args);
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.front(), '{');
}

TEST(Cli, AnalyzeTableDeterministicWithJobs) {
  auto dir = (source_dir() / "corpus/npb").string();
  CliResult a = run({"analyze", dir, "--no-timing", "-j", "1", "--sysroot", sysroot()});
  CliResult b = run({"analyze", dir, "--no-timing", "-j", "4", "--sysroot", sysroot()});
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ParseFailureStillReports) {
  TempDir dir;
  dir.write("good/ok.c", "int f(int x) { return x + 1; }\n");
  dir.write("bad/broken.c", "int f( { return; }\n");
  CliResult r = run({"analyze", dir.path().string(), "--no-timing", "--sysroot", sysroot()});
  EXPECT_EQ(r.code, kExitParseFailure);
  EXPECT_NE(r.out.find("Totals"), std::string::npos);
  EXPECT_NE(r.out.find("good"), std::string::npos);
  EXPECT_NE(r.err.find("broken.c"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{}, {"analyze"}, {"analyze", ".", "--format", "xml"},
        {"analyze", "/nonexistent/path"}, {"parallelize", "x.c"},
        {"parallelize", "x.c", "--loop", "x.c", "--paradigm", "multi"}, {"frobnicate"}}) {
    CliResult r = run(args);
    EXPECT_EQ(r.code, kExitUsage) << (args.empty() ? "" : args[0]);
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, ParallelizeWritesDefaultOutput) {
  TempDir dir;
  auto src = dir.write("mandelbrot.c", read_file(source_dir() / "corpus/mandelbrot/mandelbrot.c"));
  CliResult r =
      run({"parallelize", src.string(), "--loop", "mandelbrot.c:9", "--paradigm", "multi"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(dir.path() / "mandelbrot.par.c"),
            read_file(source_dir() / "tests/golden/mandelbrot.multi.c"));
  EXPECT_EQ(read_file(src), read_file(source_dir() / "corpus/mandelbrot/mandelbrot.c"));
}

TEST(Cli, ParallelizeInPlaceAndOutput) {
  TempDir dir;
  auto src = dir.write("m.c", read_file(source_dir() / "corpus/mandelbrot/mandelbrot.c"));
  auto out = dir.path() / "custom.c";
  CliResult r = run({"parallelize", src.string(), "--loop", "m.c:9", "--paradigm", "taskloop",
                     "-o", out.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(out), read_file(source_dir() / "tests/golden/mandelbrot.taskloop.c"));
  r = run({"parallelize", src.string(), "--loop", "m.c:9", "--paradigm", "taskwait",
           "--in-place"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(src), read_file(source_dir() / "tests/golden/mandelbrot.taskwait.c"));
}

TEST(Cli, ParallelizeSequentialLoop) {
  TempDir dir;
  auto src = dir.write("seq_dep.c", read_file(source_dir() / "corpus/seq_dep.c"));
  CliResult r =
      run({"parallelize", src.string(), "--loop", "seq_dep.c:3", "--paradigm", "multi"});
  EXPECT_EQ(r.code, kExitUnsupported);
  EXPECT_NE(r.err.find("carried flow dependence on 'a'"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir.path() / "seq_dep.par.c"));
}

TEST(Cli, ParallelizeMissingLoop) {
  CliResult r = run({"parallelize", (source_dir() / "corpus/mandelbrot/mandelbrot.c").string(),
                     "--loop", "mandelbrot.c:2", "--paradigm", "multi"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(Cli, ChecksList) {
  CliResult r = run({"checks", "list"});
  EXPECT_EQ(r.code, kExitOk);
  for (const char *k : {"Global", "Scope", "Pure", "Scoping", "Default"})
    EXPECT_NE(r.out.find(std::string(k) + " "), std::string::npos) << k;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Cli, CheckSubsets) {
  auto dir = (source_dir() / "corpus/mini").string();
  CliResult r = run({"analyze", dir, "--format", "json", "--no-timing", "--checks", "global",
                     "--opportunities", "simd", "--sysroot", sysroot()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  Report rep = parse_report_json(r.out);
  EXPECT_EQ(rep.totals.global, 2u);
  EXPECT_EQ(rep.totals.scope + rep.totals.pure + rep.totals.scoping + rep.totals.default_, 0u);
  EXPECT_EQ(rep.totals.multi, 0u);
  EXPECT_EQ(rep.totals.simd, 3u);
  EXPECT_EQ(run({"analyze", dir, "--checks", "races"}).code, kExitUsage);
}

TEST(Cli, GroupDepthAndOutputFile) {
  TempDir out;
  auto file = out.path() / "report.json";
  CliResult r = run({"analyze", (source_dir() / "corpus/npb").string(), "--group-depth", "1",
                     "--format", "json", "-o", file.string(), "--sysroot", sysroot()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  Report rep = parse_report_json(read_file(file));
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_EQ(rep.rows[0].benchmark, "OMP");
  EXPECT_EQ(rep.rows[1].benchmark, "SER");
}

TEST(Cli, SysrootPrecedence) {
  TempDir dir;
  dir.write("root/probe.h", "#define BUMP() counter++\n");
  auto src = dir.write("p.c", "#include <probe.h>\nint counter;\nvoid f(void) { BUMP(); }\n");
  auto globals = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = {"analyze", src.string(), "--format", "json", "--no-timing"};
    args.insert(args.end(), extra.begin(), extra.end());
    CliResult r = run(args);
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return parse_report_json(r.out).totals.global;
  };
  std::string root = (dir.path() / "root").string();
  EXPECT_EQ(globals({"--sysroot", root}), 1u);
  EXPECT_EQ(globals({}), 0u);
  setenv("PWLITE_SYSROOT", root.c_str(), 1);
  EXPECT_EQ(globals({}), 1u);
  EXPECT_EQ(globals({"--sysroot", sysroot()}), 0u);
  unsetenv("PWLITE_SYSROOT");
}
