#include "pwlite/cli/cli.hpp"

#include "pwlite/driver/parallelize.hpp"
#include "pwlite/report/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef PWLITE_DEFAULT_SYSROOT
#define PWLITE_DEFAULT_SYSROOT ""
#endif

namespace pwlite {

namespace fs = std::filesystem;

namespace {

struct FrontendFlags {
  std::string sysroot;
  std::vector<std::string> includes;
  std::vector<std::string> defines;

  void add_to(CLI::App &cmd) {
    cmd.add_option("--sysroot", sysroot, "Directory of stub system headers");
    cmd.add_option("-I,--include", includes, "Add a project include directory");
    cmd.add_option("-D,--define", defines, "Define a macro (NAME or NAME=VALUE)");
  }

  PreprocessOptions options() const {
    PreprocessOptions o;
    std::string root = sysroot;
    if (root.empty())
      if (const char *env = std::getenv("PWLITE_SYSROOT"))
        root = env;
    if (root.empty())
      root = PWLITE_DEFAULT_SYSROOT;
    o.sysroot = root;
    for (const std::string &i : includes)
      o.include_paths.emplace_back(i);
    o.defines = defines;
    return o;
  }
};

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool write_file(const fs::path &p, const std::string &text, std::ostream &err) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write " << p.string() << "\n";
    return false;
  }
  return true;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Static analysis of C code for parallelism issues and OpenMP code generation",
               "pwlite"};
  app.require_subcommand(1);

  // analyze
  CLI::App *analyze = app.add_subcommand("analyze", "Run checks and print the report");
  std::vector<std::string> paths;
  std::string format = "table", output, checks = "global,scope,pure,scoping,default",
              opportunities = "multi,simd", io_functions;
  int group_depth = 2;
  bool no_timing = false, details = false;
  unsigned jobs = 0;
  FrontendFlags analyze_fe;
  analyze->add_option("paths", paths, "Files or directories to analyze")->required();
  analyze->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"table", "json"}));
  analyze->add_option("--group-depth", group_depth, "Directory levels per report row")
      ->check(CLI::NonNegativeNumber);
  analyze->add_flag("--no-timing", no_timing, "Report all times as zero");
  analyze->add_option("-o,--output", output, "Write the report to a file");
  analyze->add_option("--checks", checks, "Comma-separated issue kinds to run");
  analyze->add_option("--opportunities", opportunities,
                      "Comma-separated opportunity kinds to report");
  analyze->add_option("--io-functions", io_functions,
                      "File listing functions that perform I/O, one per line");
  analyze->add_option("-j,--jobs", jobs, "Worker threads (0: one per core)");
  analyze->add_flag("--details", details, "List every finding before the report");
  analyze_fe.add_to(*analyze);

  // parallelize
  CLI::App *par = app.add_subcommand("parallelize", "Insert OpenMP directives around a loop");
  std::string file, loop, paradigm, schedule = "auto", par_output;
  long grainsize = 0;
  bool in_place = false;
  FrontendFlags par_fe;
  par->add_option("file", file, "C source file")->required();
  par->add_option("--loop", loop, "Target loop as FILE:LINE")->required();
  par->add_option("--paradigm", paradigm, "multi, taskwait or taskloop")
      ->required()
      ->check(CLI::IsMember({"multi", "taskwait", "taskloop"}));
  par->add_option("--schedule", schedule, "Schedule clause of the multi paradigm");
  CLI::Option *grain = par->add_option("--taskloop-grainsize", grainsize,
                                       "Add grainsize(N) to the taskloop directive")
                           ->check(CLI::PositiveNumber);
  CLI::Option *inplace = par->add_flag("--in-place", in_place, "Overwrite the input file");
  par->add_option("-o,--output", par_output, "Output file (default: <name>.par.c)")
      ->excludes(inplace);
  par_fe.add_to(*par);

  // checks list
  CLI::App *checks_cmd = app.add_subcommand("checks", "Describe the issue catalog");
  CLI::App *checks_list = checks_cmd->add_subcommand("list", "Print every issue kind");
  checks_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    CLI::App *sub = analyze->parsed() ? analyze : par->parsed() ? par : &app;
    err << sub->help();
    return kExitUsage;
  }

  if (checks_list->parsed()) {
    for (const CheckCatalogEntry &c : check_catalog())
      out << to_string(c.kind) << std::string(10 - to_string(c.kind).size(), ' ')
          << c.definition << "\n";
    return kExitOk;
  }

  if (analyze->parsed()) {
    AnalyzeOptions opts;
    opts.preprocess = analyze_fe.options();
    opts.jobs = jobs;
    opts.checks.clear();
    opts.opportunities.clear();
    try {
      for (const std::string &c : split_list(checks)) {
        auto k = issue_kind_from(c);
        if (!k)
          throw UsageError("unknown check '" + c + "'");
        opts.checks.insert(*k);
      }
      for (const std::string &c : split_list(opportunities)) {
        auto k = opportunity_kind_from(c);
        if (!k)
          throw UsageError("unknown opportunity kind '" + c + "'");
        opts.opportunities.insert(*k);
      }
      if (!io_functions.empty())
        opts.purity.io_functions = load_io_functions(io_functions);
    } catch (const UsageError &e) {
      err << "error: " << e.what() << "\n" << analyze->help();
      return kExitUsage;
    } catch (const IoError &e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    std::vector<fs::path> roots(paths.begin(), paths.end());
    ProgramAnalysis result;
    try {
      result = analyze_paths(roots, opts);
    } catch (const IoError &e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    for (const FileAnalysis &f : result.files)
      for (const Diagnostic &d : f.diagnostics)
        if (d.severity >= Severity::Error)
          err << d.render() << "\n";
    if (details) {
      for (const Issue &is : result.issues())
        out << is.file << ":" << is.line << ":" << is.column << ": " << to_string(is.kind) << ": "
            << is.message << "\n";
      for (const Opportunity &o : result.opportunities())
        out << o.file << ":" << o.line << ": " << to_string(o.kind) << ": " << o.pattern.str()
            << " loop in '" << o.function << "'\n";
    }
    Report report = aggregate(result, group_depth);
    if (no_timing)
      strip_timing(report);
    std::string text = format == "json" ? render_json(report) : render_table(report);
    if (output.empty())
      out << text;
    else if (!write_file(output, text, err))
      return kExitUsage;
    return result.any_failure ? kExitParseFailure : kExitOk;
  }

  // parallelize
  ParallelizeRequest req;
  req.file = file;
  req.paradigm = *paradigm_from(paradigm);
  req.codegen.schedule = schedule;
  if (grain->count())
    req.codegen.taskloop_grainsize = grainsize;
  req.preprocess = par_fe.options();
  auto colon = loop.rfind(':');
  try {
    if (colon == std::string::npos)
      throw UsageError("--loop expects FILE:LINE");
    fs::path loop_file = loop.substr(0, colon);
    std::size_t used = 0;
    std::string num = loop.substr(colon + 1);
    long line = std::stol(num, &used);
    if (used != num.size() || line <= 0)
      throw UsageError("invalid line in --loop '" + loop + "'");
    if (loop_file.filename() != fs::path(file).filename())
      throw UsageError("--loop names " + loop_file.string() + " but the input is " + file);
    req.line = static_cast<std::uint32_t>(line);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n" << par->help();
    return kExitUsage;
  } catch (const std::logic_error &) {
    err << "error: invalid line in --loop '" << loop << "'\n" << par->help();
    return kExitUsage;
  }

  try {
    ParallelizeResult r = parallelize_loop(req);
    fs::path dest = in_place            ? fs::path(file)
                    : !par_output.empty() ? fs::path(par_output)
                                          : fs::path(file).replace_extension(".par.c");
    if (!write_file(dest, r.output.text, err))
      return kExitParseFailure;
    out << "wrote " << dest.generic_string() << " (" << r.pattern.str() << ", " << paradigm
        << ")\n";
    return kExitOk;
  } catch (const LoopNotFound &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CodegenError &e) {
    err << "error: cannot parallelize " << loop << ": " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const FatalFileError &e) {
    err << e.what() << "\n";
    return kExitParseFailure;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitParseFailure;
  }
}

} // namespace pwlite
