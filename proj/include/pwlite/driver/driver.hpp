#pragma once

#include "pwlite/checks/checks.hpp"
#include "pwlite/cfront/parser.hpp"

#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace pwlite {

struct AnalyzeOptions {
  PreprocessOptions preprocess;
  std::set<IssueKind> checks = {IssueKind::Global, IssueKind::Scope, IssueKind::Pure,
                                IssueKind::Scoping, IssueKind::Default};
  std::set<OpportunityKind> opportunities = {OpportunityKind::Multi, OpportunityKind::Simd};
  PurityOptions purity;
  DependenceOptions dependence;
  unsigned jobs = 0; // 0: one per hardware thread
};

/// Analysis state of one parsed .c file; owns everything the findings
/// point into.
struct UnitState {
  TranslationUnit tu;
  SymbolTable table;
  std::unordered_map<const AstNode *, DefUseInfo> du;
  std::vector<FunctionFacts> facts;
  std::map<const AstNode *, LoopForest> forests;
  std::map<const LoopNest *, DependenceSet> deps;
  LoopPatterns patterns;
};

struct FileAnalysis {
  std::filesystem::path path;  // as found on disk
  std::string label;           // path used for grouping and display
  bool is_source = false;      // .c file
  bool parsed = false;         // successfully parsed (sources only)
  std::size_t sloc = 0;
  double time_ms = 0;
  std::vector<Diagnostic> diagnostics;
  std::vector<Issue> issues;
  std::vector<Opportunity> opportunities;
  std::shared_ptr<UnitState> unit;
};

struct ProgramAnalysis {
  std::vector<FileAnalysis> files;    // sorted by label
  std::vector<std::string> directories; // labels of every directory walked
  bool any_failure = false;

  std::vector<Issue> issues() const;
  std::vector<Opportunity> opportunities() const;
};

/// Files and directories reachable from `paths`. Labels are relative to
/// the directory argument, prefixed with its name when several paths are
/// given; a file argument is labelled by its file name.
struct SourceSet {
  struct Entry {
    std::filesystem::path path;
    std::string label;
  };
  std::vector<Entry> files; // .c and .h, sorted by label
  std::vector<std::string> directories;
};

/// Throws IoError for a path that does not exist.
SourceSet discover_sources(const std::vector<std::filesystem::path> &paths);

ProgramAnalysis analyze_sources(const SourceSet &sources, const AnalyzeOptions &options);
ProgramAnalysis analyze_paths(const std::vector<std::filesystem::path> &paths,
                              const AnalyzeOptions &options);

/// Parses one file and computes symbols, def-use and function facts.
std::shared_ptr<UnitState> load_unit(const std::filesystem::path &path,
                                     const PreprocessOptions &options);

/// Loop nests, dependences and patterns for every function of `unit`,
/// using `purity` for callees.
void analyze_loops(UnitState &unit, const CallPurity &purity,
                   const DependenceOptions &options = {});

/// Purity of callees as seen from a single unit, for callers that do not
/// run the whole-program pass.
CallPurity unit_purity(const UnitState &unit, const PurityOptions &options = {});

} // namespace pwlite
