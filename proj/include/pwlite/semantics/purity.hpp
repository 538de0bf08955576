#pragma once

#include "pwlite/semantics/def_use.hpp"

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pwlite {

enum class Purity { Pure, Unknown, Impure }; // ordered: Pure < Unknown < Impure

enum class ImpurityReason {
  WritesGlobal,
  WritesThroughPointerParam,
  PerformsIo,
  CallsImpure,
  OpaqueBody,
  RecursiveUnresolved,
  CallsUnknown,
  WritesThroughUnknownPointer,
};

std::string_view to_string(Purity p);
std::string_view to_string(ImpurityReason r);

struct PurityClass {
  Purity purity = Purity::Pure;
  std::vector<ImpurityReason> reasons; // sorted, unique

  bool has(ImpurityReason r) const;
};

/// One function known to the whole program: a definition with its
/// def-use facts, or a declaration only (prototype or stub header).
struct FunctionFacts {
  std::string name;
  const AstNode *definition = nullptr;
  const DefUseInfo *def_use = nullptr;
  bool is_static = false;
  int unit = 0; // translation unit index, used to bind static callees
  bool annotated_pure = false;
};

const std::vector<std::string> &default_io_functions();

struct PurityOptions {
  std::vector<std::string> io_functions = default_io_functions();
};

/// Reads an io-function list: one name per line, blank lines and `#`
/// comments ignored. Throws IoError.
std::vector<std::string> load_io_functions(const std::filesystem::path &path);

/// Resolves a callee name as seen from one translation unit.
class CalleeBinder {
public:
  explicit CalleeBinder(const std::vector<FunctionFacts> &functions);
  /// Index into the function list, or -1 when the name is unknown.
  int bind(const std::string &name, int unit) const;

private:
  const std::vector<FunctionFacts> &functions_;
  std::unordered_map<std::string, std::vector<int>> by_name_;
};

/// Whole-program purity. Result is indexed like `functions`.
std::vector<PurityClass> classify_purity(const std::vector<FunctionFacts> &functions,
                                         const PurityOptions &options = {});

/// Facts for every function declared or defined in one translation unit.
std::vector<FunctionFacts>
collect_function_facts(const SymbolTable &table,
                       const std::unordered_map<const AstNode *, DefUseInfo> &def_use, int unit);

} // namespace pwlite
