// Acceptance runner: one PASS/FAIL/N/A line per criterion, exit 1 on any FAIL.
#include "fixtures.hpp"
#include "loop_corpus.hpp"
#include "program_helpers.hpp"

#include "pwlite/report/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

using namespace pwlite;
using namespace pwlite::test;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  enum State { Pass, Fail, NotApplicable } state = Pass;
  std::string detail;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string &what) {
  if (!ok)
    throw Failure(what);
}

std::string quote(const fs::path &p) { return "'" + p.string() + "'"; }

std::string cli() { return quote(cli_path()); }

CliResult pwlite(const std::string &args) {
  return shell(cli() + " " + args + " --sysroot " + quote(sysroot_dir()) + " 2>/dev/null");
}

CliResult pwlite_gen(const std::string &args) { return shell(cli() + " " + args + " 2>&1"); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string l; std::getline(ss, l);)
    out.push_back(l);
  return out;
}

std::vector<std::string> words(const std::string &line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string w; ss >> w;)
    out.push_back(w);
  return out;
}

// C tokens with comments kept as single whitespace-normalized tokens.
std::vector<std::string> tokens(const std::string &text) {
  static const std::regex tok(R"(//[^\n]*|/\*[\s\S]*?\*/|[A-Za-z_]\w*|\d[\w.]*|\S)");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), tok); it != std::sregex_iterator();
       ++it) {
    std::string t = it->str();
    if (t.rfind("//", 0) == 0 || t.rfind("/*", 0) == 0) {
      auto w = words(t);
      t.clear();
      for (const std::string &x : w)
        t += (t.empty() ? "" : " ") + x;
    }
    out.push_back(t);
  }
  return out;
}

std::string trimmed(const std::string &s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> directive_and_closing_lines(const std::string &text) {
  std::vector<std::string> out;
  for (const std::string &l : lines_of(text)) {
    std::string t = trimmed(l);
    if (t.rfind("#pragma omp", 0) == 0 || t.rfind("} // end", 0) == 0)
      out.push_back(t);
  }
  return out;
}

struct Variant {
  const char *paradigm;
  const char *golden;
  std::vector<std::string> structure;
};

const std::string kShared = "#pragma omp parallel default(none) shared(height, imag_min, "
                            "max_iter, output, real_min, scale_imag, scale_real, width)";

const std::vector<Variant> &variants() {
  static const std::vector<Variant> v = {
      {"multi", "mandelbrot.multi.c",
       {kShared, "#pragma omp for schedule(auto)", "} // end parallel"}},
      {"taskwait", "mandelbrot.taskwait.c",
       {kShared, "#pragma omp single", "#pragma omp task", "} // end task",
        "#pragma omp taskwait", "} // end parallel"}},
      {"taskloop", "mandelbrot.taskloop.c",
       {kShared, "#pragma omp single", "#pragma omp taskloop", "} // end parallel"}},
  };
  return v;
}

fs::path mandelbrot_source() { return source_dir() / "corpus/mandelbrot/mandelbrot.c"; }

// Generates the three variants into `dir` as mandelbrot.<paradigm>.c.
void generate_variants(const fs::path &dir) {
  for (const Variant &v : variants()) {
    fs::path out = dir / (std::string("mandelbrot.") + v.paradigm + ".c");
    CliResult r = pwlite_gen("parallelize " + quote(mandelbrot_source()) +
                             " --loop mandelbrot.c:9 --paradigm " + v.paradigm + " -o " +
                             quote(out));
    require(r.code == 0, std::string("parallelize --paradigm ") + v.paradigm + " exited " +
                             std::to_string(r.code) + ": " + r.out);
  }
}

Outcome golden_codegen() {
  auto t0 = std::chrono::steady_clock::now();
  TempDir dir;
  generate_variants(dir.path());
  for (const Variant &v : variants()) {
    std::string got = read_file(dir.path() / (std::string("mandelbrot.") + v.paradigm + ".c"));
    std::string want = read_file(source_dir() / "tests/golden" / v.golden);
    require(tokens(got) == tokens(want), std::string(v.paradigm) + ": token mismatch with golden");
    require(directive_and_closing_lines(got) == v.structure,
            std::string(v.paradigm) + ": directive lines differ from the expected structure");
  }
  double s = seconds_since(t0);
  require(s < 1.0, "took " + fixed(s) + " s");
  return {Outcome::Pass, "3 paradigms token-identical, " + fixed(s, 3) + " s"};
}

bool compile(const std::vector<fs::path> &sources, const fs::path &exe, std::string &log) {
  std::string cmd = "gcc -O2 -fopenmp -o " + quote(exe);
  for (const fs::path &s : sources)
    cmd += " " + quote(s);
  CliResult r = shell(cmd + " 2>&1");
  log = r.out;
  return r.code == 0;
}

std::string run_kernel(const fs::path &exe, int threads, int n, bool dump) {
  CliResult r = shell("OMP_NUM_THREADS=" + std::to_string(threads) + " " + quote(exe) + " " +
                      std::to_string(n) + " 256" + (dump ? " dump" : ""));
  require(r.code == 0, exe.filename().string() + " exited " + std::to_string(r.code));
  return r.out;
}

struct Builds {
  TempDir dir;
  fs::path seq;
  std::map<std::string, fs::path> par;
};

std::unique_ptr<Builds> build_variants() {
  auto b = std::make_unique<Builds>();
  generate_variants(b->dir.path());
  fs::path driver = source_dir() / "corpus/mandelbrot/driver.c";
  std::string log;
  b->seq = b->dir.path() / "seq";
  require(compile({driver, mandelbrot_source()}, b->seq, log), "sequential build failed: " + log);
  for (const Variant &v : variants()) {
    fs::path exe = b->dir.path() / (std::string("par_") + v.paradigm);
    fs::path src = b->dir.path() / (std::string("mandelbrot.") + v.paradigm + ".c");
    require(compile({driver, src}, exe, log), std::string(v.paradigm) + " build failed: " + log);
    b->par[v.paradigm] = exe;
  }
  return b;
}

Outcome behavioral_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  auto b = build_variants();
  const int n = 512;
  std::string expected = run_kernel(b->seq, 1, n, true);
  require(expected.size() == std::size_t(n) * n * sizeof(double), "unexpected output size");
  int runs = 0;
  for (const Variant &v : variants())
    for (int t : {1, 2, 4}) {
      require(run_kernel(b->par[v.paradigm], t, n, true) == expected,
              std::string(v.paradigm) + " output differs at " + std::to_string(t) + " threads");
      ++runs;
    }
  double s = seconds_since(t0);
  require(s < 120, "took " + fixed(s) + " s");
  return {Outcome::Pass, std::to_string(runs) + " runs bit-identical at N=512, " + fixed(s) + " s"};
}

unsigned physical_cores() {
  std::ifstream in("/proc/cpuinfo");
  std::set<std::pair<std::string, std::string>> cores;
  std::string line, phys = "0";
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos)
      continue;
    std::string key = trimmed(line.substr(0, colon)), value = trimmed(line.substr(colon + 1));
    if (key == "physical id")
      phys = value;
    else if (key == "core id")
      cores.insert({phys, value});
  }
  return cores.empty() ? std::thread::hardware_concurrency() : unsigned(cores.size());
}

Outcome speedup() {
  unsigned cores = physical_cores();
  if (cores < 4)
    return {Outcome::NotApplicable,
            "host has " + std::to_string(cores) + " physical core(s), 4 required"};
  auto t0 = std::chrono::steady_clock::now();
  auto b = build_variants();
  auto best = [&](const fs::path &exe, int threads) {
    double t = 1e300;
    for (int k = 0; k < 3; ++k) {
      auto s0 = std::chrono::steady_clock::now();
      run_kernel(exe, threads, 2000, false);
      t = std::min(t, seconds_since(s0));
    }
    return t;
  };
  double seq = best(b->seq, 1);
  std::string detail;
  bool ok = true;
  for (const char *p : {"multi", "taskwait"}) {
    double sp = seq / best(b->par[p], 4);
    detail += std::string(detail.empty() ? "" : ", ") + p + " " + fixed(sp) + "x";
    ok = ok && sp >= 2.0;
  }
  double s = seconds_since(t0);
  require(ok, "speedup below 2.0 at 4 threads: " + detail);
  require(s < 300, "took " + fixed(s) + " s");
  return {Outcome::Pass, detail + " at N=2000, 4 threads"};
}

Outcome dependence_soundness() {
  auto t0 = std::chrono::steady_clock::now();
  auto corpus = generate_loop_corpus(400, 20261016u);
  SoundnessResult r = compare_with_oracle(corpus);
  std::string detail = std::to_string(r.loops) + " loops, " +
                       std::to_string(r.false_negative_loops) + " false negatives, affine FP " +
                       fixed(100 * r.affine_fp_rate(), 1) + "% of " +
                       std::to_string(r.affine_loops);
  require(r.loops >= 200, "only " + std::to_string(r.loops) + " loops");
  require(r.false_negative_loops == 0,
          detail + (r.misses.empty() ? "" : "; first miss: " + r.misses.front()));
  require(r.affine_fp_rate() <= 0.30, detail);
  double s = seconds_since(t0);
  require(s < 60, "took " + fixed(s) + " s");
  return {Outcome::Pass, detail};
}

Report analyze_json(const fs::path &path, int *code = nullptr) {
  CliResult r = pwlite("analyze " + quote(path) + " --format json --no-timing");
  if (code)
    *code = r.code;
  else
    require(r.code == 0, "analyze " + path.string() + " exited " + std::to_string(r.code));
  return parse_report_json(r.out);
}

Outcome checks_fixtures() {
  auto t0 = std::chrono::steady_clock::now();
  std::map<std::string, std::pair<int, int>> per_kind;
  int serial = 0;
  for (const fs::path &f : check_fixtures()) {
    Counts got = counts_of(analyze_json(f).totals);
    Counts want = expected_counts(f);
    require(got == want, f.filename().string() + " counts differ");
    auto &pn = per_kind[f.parent_path().filename().string()];
    (f.stem().string().rfind("pos_", 0) == 0 ? pn.first : pn.second)++;
    if (read_file(f).find("#pragma omp") == std::string::npos) {
      require(got.at("scoping") == 0 && got.at("default") == 0,
              f.filename().string() + ": Scoping/Default without OpenMP");
      ++serial;
    }
  }
  for (const char *k : {"global", "scope", "pure", "scoping", "default", "multi", "simd"})
    require(per_kind[k].first >= 3 && per_kind[k].second >= 3,
            std::string("fewer than 3 positive/negative fixtures for ") + k);
  double s = seconds_since(t0);
  require(s < 10, "took " + fixed(s) + " s");
  int total = 0;
  for (auto &[k, pn] : per_kind)
    total += pn.first + pn.second;
  return {Outcome::Pass, std::to_string(total) + " fixtures exact, " + std::to_string(serial) +
                             " without OpenMP have Scoping=Default=0"};
}

// Parallelizes every Multi opportunity of serial corpus code with each
// paradigm and re-analyzes the output.
Outcome self_clean() {
  auto t0 = std::chrono::steady_clock::now();
  TempDir dir;
  fs::copy(source_dir() / "corpus/mandelbrot", dir.path() / "mandelbrot");
  fs::copy(source_dir() / "corpus/mini", dir.path() / "mini", fs::copy_options::recursive);
  fs::copy(source_dir() / "corpus/npb/SER", dir.path() / "SER", fs::copy_options::recursive);
  ProgramAnalysis a = analyze({dir.path()});
  std::set<std::pair<std::string, std::uint32_t>> targets;
  for (const Opportunity &o : a.opportunities())
    if (o.kind == OpportunityKind::Multi)
      targets.insert({o.file, o.line});
  int generated = 0, refused = 0;
  for (const auto &[file, line] : targets) {
    fs::path src(file);
    for (const Variant &v : variants()) {
      fs::path out = src.parent_path() / (src.stem().string() + ".l" + std::to_string(line) + "." +
                                          v.paradigm + ".gen.c");
      CliResult r = pwlite_gen("parallelize " + quote(src) + " --loop " +
                               src.filename().string() + ":" + std::to_string(line) +
                               " --paradigm " + v.paradigm + " -o " + quote(out));
      if (r.code == 3) {
        ++refused;
        continue;
      }
      require(r.code == 0, "parallelize " + src.filename().string() + ":" +
                               std::to_string(line) + " exited " + std::to_string(r.code));
      Report rep = analyze_json(out);
      require(rep.totals.scoping == 0 && rep.totals.default_ == 0,
              out.filename().string() + ": " + std::to_string(rep.totals.scoping) +
                  " Scoping, " + std::to_string(rep.totals.default_) + " Default");
      CliResult cc = shell("gcc -fopenmp -fsyntax-only " + quote(out) + " 2>&1");
      require(cc.code == 0, out.filename().string() + " does not compile: " + cc.out);
      ++generated;
    }
  }
  require(generated >= 3, "too few generated files");
  double s = seconds_since(t0);
  require(s < 10, "took " + fixed(s) + " s");
  return {Outcome::Pass, std::to_string(generated) + " generated files clean and compiling (" +
                             std::to_string(refused) + " reduction/unscopable refusals)"};
}

ReportRow parse_table_row(const std::string &line) {
  auto w = words(line);
  require(w.size() == 11, "table row with " + std::to_string(w.size()) + " fields: " + line);
  ReportRow r;
  r.benchmark = w[0];
  std::size_t *fields[] = {&r.files, &r.sloc};
  for (int k = 0; k < 2; ++k)
    *fields[k] = std::stoul(w[1 + k]);
  r.time_ms = std::stod(w[3]);
  std::size_t *counts[] = {&r.global, &r.scope,   &r.pure, &r.scoping,
                           &r.default_, &r.multi, &r.simd};
  for (int k = 0; k < 7; ++k)
    *counts[k] = std::stoul(w[4 + k]);
  return r;
}

Outcome report_integrity() {
  auto t0 = std::chrono::steady_clock::now();
  fs::path mini = source_dir() / "corpus/mini";
  CliResult t1 = pwlite("analyze " + quote(mini) + " --no-timing");
  CliResult t2 = pwlite("analyze " + quote(mini) + " --no-timing");
  require(t1.code == 0, "analyze exited " + std::to_string(t1.code));
  require(t1.out == t2.out, "--no-timing table not byte-stable");
  auto ls = lines_of(t1.out);
  require(ls.size() >= 5, "table too short");
  require(words(ls[0]) == std::vector<std::string>{"Software", "issues", "Opportunities"},
          "group header line");
  require(words(ls[1]) ==
              std::vector<std::string>{"Benchmark", "Files", "SLOC", "Time(ms)", "Global", "Scope",
                                       "Pure", "Scoping", "Default", "Multi", "SIMD"},
          "column header");
  std::vector<ReportRow> rows;
  for (std::size_t k = 3; k + 2 < ls.size(); ++k)
    rows.push_back(parse_table_row(ls[k]));
  ReportRow totals = parse_table_row(ls.back());
  require(totals.benchmark == "Totals", "totals row is not last");
  std::vector<std::string> labels;
  ReportRow sum;
  for (const ReportRow &r : rows) {
    labels.push_back(r.benchmark);
    ReportRow c = r;
    c.benchmark.clear();
    sum += c;
  }
  sum.benchmark = "Totals";
  require(labels == std::vector<std::string>{"alpha", "beta", "empty"}, "rows");
  require(sum == totals, "totals differ from column sums");
  ReportRow empty = rows[2];
  require(empty.files + empty.sloc + empty.global + empty.scope + empty.pure + empty.scoping +
                  empty.default_ + empty.multi + empty.simd ==
              0,
          "empty directory row is not zero");

  CliResult j1 = pwlite("analyze " + quote(mini) + " --no-timing --format json");
  CliResult j2 = pwlite("analyze " + quote(mini) + " --no-timing --format json");
  require(j1.out == j2.out, "--no-timing JSON not byte-stable");
  Report parsed = parse_report_json(j1.out);
  require(render_json(parsed) == j1.out, "JSON does not round-trip");
  require(parsed.rows == rows && parsed.totals == totals, "JSON and table disagree");

  CliResult timed = pwlite("analyze " + quote(mini) + " --format json");
  Report tr = parse_report_json(timed.out);
  strip_timing(tr);
  require(tr.rows == rows, "timed run counts differ");
  double s = seconds_since(t0);
  require(s < 5, "took " + fixed(s) + " s");
  return {Outcome::Pass, "11 columns, 3 rows incl. empty, totals = sums, JSON round-trips, "
                         "byte-stable"};
}

Outcome npb_no_crash() {
  auto t0 = std::chrono::steady_clock::now();
  fs::path npb = source_dir() / "corpus/npb";
  std::size_t sources = 0;
  std::set<std::string> dirs;
  for (const auto &e : fs::recursive_directory_iterator(npb)) {
    if (e.is_directory()) {
      fs::path rel = fs::relative(e.path(), npb);
      if (std::distance(rel.begin(), rel.end()) == 2)
        dirs.insert(rel.generic_string());
      continue;
    }
    if (e.path().extension() != ".c")
      continue;
    ++sources;
    int code = 0;
    analyze_json(e.path(), &code);
    require(code == 0, e.path().filename().string() + " exited " + std::to_string(code));
  }
  int code = 0;
  Report rep = analyze_json(npb, &code);
  require(code == 0, "analyze corpus exited " + std::to_string(code));
  require(rep.totals.files == sources, "report counts " + std::to_string(rep.totals.files) +
                                           " of " + std::to_string(sources) + " C files");
  std::set<std::string> labels;
  for (const ReportRow &r : rep.rows)
    labels.insert(r.benchmark);
  require(labels == dirs, "report rows do not cover every directory");
  double s = seconds_since(t0);
  require(s < 30, "took " + fixed(s) + " s");
  return {Outcome::Pass, std::to_string(sources) + " files, " + std::to_string(rep.rows.size()) +
                             " rows, " + std::to_string(rep.totals.sloc) + " SLOC"};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden codegen fidelity", golden_codegen},
      {"behavioral equivalence", behavioral_equivalence},
      {"speedup proxy", speedup},
      {"dependence soundness", dependence_soundness},
      {"checks fixtures", checks_fixtures},
      {"self-clean", self_clean},
      {"report integrity", report_integrity},
      {"NPB-style corpus", npb_no_crash},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception &e) {
      o = {Outcome::Fail, e.what()};
    }
    const char *state = o.state == Outcome::Pass ? "PASS" : o.state == Outcome::Fail ? "FAIL" : "N/A";
    std::printf("criterion %zu %-4s %s: %s\n", k + 1, state, criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.state == Outcome::Fail;
  }
  return failed ? 1 : 0;
}
