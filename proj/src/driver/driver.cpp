#include "pwlite/driver/driver.hpp"

#include "pwlite/cfront/sloc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <unordered_set>

namespace pwlite {

namespace fs = std::filesystem;

std::vector<Issue> ProgramAnalysis::issues() const {
  std::vector<Issue> out;
  for (const FileAnalysis &f : files)
    out.insert(out.end(), f.issues.begin(), f.issues.end());
  return out;
}

std::vector<Opportunity> ProgramAnalysis::opportunities() const {
  std::vector<Opportunity> out;
  for (const FileAnalysis &f : files)
    out.insert(out.end(), f.opportunities.begin(), f.opportunities.end());
  return out;
}

namespace {

bool is_source_ext(const fs::path &p) { return p.extension() == ".c"; }
bool is_header_ext(const fs::path &p) { return p.extension() == ".h"; }

std::string root_label(const fs::path &p) {
  fs::path name = p.filename();
  if (name.empty() || name == "." || name == "..")
    name = fs::weakly_canonical(p).filename();
  return name.generic_string();
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn> void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
  if (jobs == 0)
    jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++)
        fn(i);
    });
  for (std::thread &th : pool)
    th.join();
}

std::shared_ptr<UnitState> build_unit(const SourceFile &source, const PreprocessOptions &options) {
  auto unit = std::make_shared<UnitState>();
  unit->tu = parse_source(source, options);
  unit->table = build_symbol_table(unit->tu);
  for (const AstNode *fn : unit->tu.functions())
    if (!fn->opaque)
      unit->du.emplace(fn, compute_def_use(*fn, unit->table));
  unit->facts = collect_function_facts(unit->table, unit->du, 0);
  return unit;
}

bool user_function(const UnitState &unit, const AstNode &fn) {
  return !fn.opaque && unit.du.count(&fn) && !unit.tu.system_file.at(fn.span.file);
}

} // namespace

SourceSet discover_sources(const std::vector<fs::path> &paths) {
  SourceSet out;
  const bool prefixed = paths.size() > 1;
  for (const fs::path &p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::string root = prefixed ? root_label(p) + "/" : std::string();
      if (prefixed)
        out.directories.push_back(root_label(p));
      for (auto it = fs::recursive_directory_iterator(p, ec); !ec && it != fs::end(it);
           it.increment(ec)) {
        std::string label = root + fs::relative(it->path(), p).generic_string();
        if (it->is_directory(ec))
          out.directories.push_back(label);
        else if (it->is_regular_file(ec) &&
                 (is_source_ext(it->path()) || is_header_ext(it->path())))
          out.files.push_back({it->path(), label});
      }
    } else if (fs::is_regular_file(p, ec)) {
      out.files.push_back({p, p.filename().generic_string()});
    } else {
      throw IoError("no such file or directory: " + p.string());
    }
  }
  auto by_label = [](const SourceSet::Entry &a, const SourceSet::Entry &b) {
    return a.label < b.label;
  };
  std::sort(out.files.begin(), out.files.end(), by_label);
  out.files.erase(std::unique(out.files.begin(), out.files.end(),
                              [](const auto &a, const auto &b) { return a.label == b.label; }),
                  out.files.end());
  std::sort(out.directories.begin(), out.directories.end());
  out.directories.erase(std::unique(out.directories.begin(), out.directories.end()),
                        out.directories.end());
  return out;
}

std::shared_ptr<UnitState> load_unit(const fs::path &path, const PreprocessOptions &options) {
  return build_unit(SourceFile::load(path), options);
}

void analyze_loops(UnitState &unit, const CallPurity &purity, const DependenceOptions &options) {
  for (const AstNode *fn : unit.tu.functions()) {
    if (!user_function(unit, *fn))
      continue;
    const DefUseInfo &du = unit.du.at(fn);
    LoopForest forest = enumerate_loops(*fn, unit.table, du);
    for (const LoopNest *nest : all_loops(forest)) {
      DependenceSet deps = test_dependences(*nest, du, unit.table, purity, options);
      unit.patterns[nest] = classify_pattern(*nest, deps);
      unit.deps[nest] = std::move(deps);
    }
    unit.forests[fn] = std::move(forest);
  }
}

CallPurity unit_purity(const UnitState &unit, const PurityOptions &options) {
  auto facts = std::make_shared<std::vector<FunctionFacts>>(unit.facts);
  auto classes = std::make_shared<std::vector<PurityClass>>(classify_purity(*facts, options));
  auto binder = std::make_shared<CalleeBinder>(*facts);
  return [facts, classes, binder](const CallSite &c) {
    if (c.indirect)
      return Purity::Unknown;
    int k = binder->bind(c.callee, 0);
    return k < 0 ? Purity::Unknown : (*classes)[k].purity;
  };
}

ProgramAnalysis analyze_sources(const SourceSet &sources, const AnalyzeOptions &options) {
  ProgramAnalysis out;
  out.directories = sources.directories;
  out.files.resize(sources.files.size());

  // Per-file front end, in parallel.
  parallel_for(sources.files.size(), options.jobs, [&](std::size_t i) {
    FileAnalysis &f = out.files[i];
    f.path = sources.files[i].path;
    f.label = sources.files[i].label;
    f.is_source = is_source_ext(f.path);
    auto t0 = std::chrono::steady_clock::now();
    try {
      SourceFile src = SourceFile::load(f.path);
      f.sloc = count_sloc(src.text);
      if (f.is_source) {
        f.unit = build_unit(src, options.preprocess);
        f.diagnostics = f.unit->tu.diagnostics;
        f.diagnostics.insert(f.diagnostics.end(), f.unit->table.diagnostics().begin(),
                             f.unit->table.diagnostics().end());
        f.parsed = !f.unit->tu.failed();
      }
    } catch (const FatalFileError &e) {
      f.diagnostics.push_back(e.diagnostic());
    } catch (const IoError &e) {
      f.diagnostics.push_back({DiagKind::IoFailure, Severity::Fatal, f.path.generic_string(), 0,
                               0, e.what()});
    }
    f.time_ms = ms_since(t0);
  });

  // Whole-program purity.
  std::vector<FunctionFacts> facts;
  std::map<std::pair<std::size_t, const AstNode *>, std::size_t> def_index;
  for (std::size_t i = 0; i < out.files.size(); ++i) {
    FileAnalysis &f = out.files[i];
    if (f.is_source && !f.parsed)
      out.any_failure = true;
    if (!f.parsed)
      continue;
    for (FunctionFacts ff : f.unit->facts) {
      ff.unit = static_cast<int>(i);
      if (ff.definition)
        def_index[{i, ff.definition}] = facts.size();
      facts.push_back(std::move(ff));
    }
  }
  const std::vector<PurityClass> purity = classify_purity(facts, options.purity);
  const CalleeBinder binder(facts);

  // Loops and checks, in parallel.
  parallel_for(out.files.size(), options.jobs, [&](std::size_t i) {
    FileAnalysis &f = out.files[i];
    if (!f.parsed)
      return;
    auto t0 = std::chrono::steady_clock::now();
    UnitState &unit = *f.unit;
    const int unit_index = static_cast<int>(i);
    CallPurity call_purity = [&](const CallSite &c) {
      if (c.indirect)
        return Purity::Unknown;
      int k = binder.bind(c.callee, unit_index);
      return k < 0 ? Purity::Unknown : purity[k].purity;
    };
    analyze_loops(unit, call_purity, options.dependence);
    auto enabled = [&](IssueKind k) { return options.checks.count(k) > 0; };
    for (const AstNode *fn : unit.tu.functions()) {
      if (!user_function(unit, *fn))
        continue;
      FunctionContext ctx{unit.tu, unit.table, *fn, unit.du.at(fn)};
      auto append = [&f](std::vector<Issue> v) {
        f.issues.insert(f.issues.end(), v.begin(), v.end());
      };
      if (enabled(IssueKind::Global))
        append(check_global(ctx));
      if (enabled(IssueKind::Scope))
        append(check_scope(ctx));
      if (enabled(IssueKind::Pure)) {
        auto it = def_index.find({i, fn});
        if (it != def_index.end())
          append(check_pure(ctx, purity[it->second], facts[it->second].annotated_pure));
      }
      int ordinal = 0;
      for (const AstNode *region : parallel_regions(*fn)) {
        if (enabled(IssueKind::Scoping))
          append(check_scoping(ctx, *region, ordinal));
        if (enabled(IssueKind::Default))
          append(check_default_none(ctx, *region, ordinal));
        ++ordinal;
      }
      for (Opportunity &o : find_opportunities(ctx, unit.forests[fn], unit.patterns, call_purity))
        if (options.opportunities.count(o.kind))
          f.opportunities.push_back(std::move(o));
    }
    sort_issues(f.issues);
    sort_opportunities(f.opportunities);
    f.time_ms += ms_since(t0);
  });

  // The same header function seen from several units reports once.
  std::unordered_set<std::uint64_t> seen;
  std::set<std::tuple<std::string, std::uint32_t, OpportunityKind>> seen_opps;
  for (FileAnalysis &f : out.files) {
    std::erase_if(f.issues, [&](const Issue &is) { return !seen.insert(is.fingerprint).second; });
    std::erase_if(f.opportunities, [&](const Opportunity &o) {
      return !seen_opps.insert({o.file, o.line, o.kind}).second;
    });
  }
  return out;
}

ProgramAnalysis analyze_paths(const std::vector<fs::path> &paths, const AnalyzeOptions &options) {
  return analyze_sources(discover_sources(paths), options);
}

} // namespace pwlite
