#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pwlite {

enum class OmpKind {
  Parallel,
  For,
  ParallelFor,
  Single,
  Task,
  Taskwait,
  Taskloop,
  Other, // recognized syntactically, not modelled (critical, atomic, simd, ...)
};

std::string_view to_string(OmpKind kind);

/// One clause, e.g. `shared(a, b)`, `reduction(+: s)`, `nowait`.
struct OmpClause {
  std::string name;
  std::string modifier; // text before a top-level ':' (reduction operator, ...)
  std::vector<std::string> args;
  bool has_parens = false;

  friend bool operator==(const OmpClause &, const OmpClause &) = default;
};

struct OmpDirective {
  OmpKind kind = OmpKind::Other;
  /// Directive words as written: "parallel for", "taskloop", "critical".
  std::string name;
  /// Parenthesized argument of the directive itself (`critical(name)`).
  std::optional<std::string> directive_arg;
  std::vector<OmpClause> clauses;

  /// False for stand-alone directives such as taskwait and barrier.
  bool takes_statement() const;
  bool is_parallel_region() const {
    return kind == OmpKind::Parallel || kind == OmpKind::ParallelFor;
  }
  bool is_loop_directive() const;
  const OmpClause *find(std::string_view clause) const;
  bool has_default_none() const;
  /// Variables named by shared/private/firstprivate/lastprivate/reduction
  /// (and copyin) clauses.
  std::vector<std::string> scoped_variables() const;

  friend bool operator==(const OmpDirective &, const OmpDirective &) = default;
};

/// Parses the text following `#pragma`, which must begin with `omp`.
std::optional<OmpDirective> parse_omp_directive(std::string_view text);

/// `#pragma omp <name> <clauses...>` in canonical spacing.
std::string render(const OmpDirective &directive);
std::string render(const OmpClause &clause);

} // namespace pwlite
