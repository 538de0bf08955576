#pragma once

#include "pwlite/patterns/pattern.hpp"
#include "pwlite/semantics/purity.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pwlite {

enum class IssueKind { Global, Scope, Pure, Scoping, Default };
enum class OpportunityKind { Multi, Simd };

std::string_view to_string(IssueKind kind);
std::string_view to_string(OpportunityKind kind);
std::optional<IssueKind> issue_kind_from(std::string_view name);
std::optional<OpportunityKind> opportunity_kind_from(std::string_view name);

struct Issue {
  IssueKind kind = IssueKind::Global;
  SourceSpan span;
  std::string file;
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  const Symbol *symbol = nullptr;
  std::string symbol_name;
  std::string function;
  std::string message;
  std::uint64_t fingerprint = 0;
};

struct Opportunity {
  OpportunityKind kind = OpportunityKind::Multi;
  const LoopNest *loop = nullptr;
  PatternClass pattern;
  SourceSpan span;
  std::string file;
  std::uint32_t line = 0;
  std::string function;
};

/// One function definition together with the analyses the checks read.
struct FunctionContext {
  const TranslationUnit &tu;
  const SymbolTable &table;
  const AstNode &fn;
  const DefUseInfo &du;

  std::string name() const { return fn.decl ? fn.decl->name : std::string(); }
};

/// Stable hash of (kind, file, symbol, function, discriminator); never
/// depends on line numbers.
std::uint64_t issue_fingerprint(IssueKind kind, std::string_view file, std::string_view symbol,
                                std::string_view function, int discriminator = 0);

std::vector<Issue> check_global(const FunctionContext &ctx);
std::vector<Issue> check_scope(const FunctionContext &ctx);
std::vector<Issue> check_pure(const FunctionContext &ctx, const PurityClass &purity,
                              bool annotated);
/// `region` is an OmpPragma node holding a parallel or parallel for.
std::vector<Issue> check_scoping(const FunctionContext &ctx, const AstNode &region,
                                 int ordinal = 0);
std::vector<Issue> check_default_none(const FunctionContext &ctx, const AstNode &region,
                                      int ordinal = 0);

/// Parallel regions of a function, in source order.
std::vector<const AstNode *> parallel_regions(const AstNode &fn);

using LoopPatterns = std::map<const LoopNest *, PatternClass>;

std::vector<Opportunity> find_opportunities(const FunctionContext &ctx, const LoopForest &forest,
                                            const LoopPatterns &patterns,
                                            const CallPurity &purity);

/// True when the loop sits inside an OpenMP construct or contains one.
bool touches_openmp(const LoopNest &nest);

void sort_issues(std::vector<Issue> &issues);
void sort_opportunities(std::vector<Opportunity> &opps);

struct CheckCatalogEntry {
  IssueKind kind;
  std::string_view definition;
};
const std::vector<CheckCatalogEntry> &check_catalog();

} // namespace pwlite
