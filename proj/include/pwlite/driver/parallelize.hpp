#pragma once

#include "pwlite/driver/driver.hpp"
#include "pwlite/ompgen/ompgen.hpp"

namespace pwlite {

struct ParallelizeRequest {
  std::filesystem::path file;
  std::uint32_t line = 0; // line of the target `for`
  Paradigm paradigm = Paradigm::Multi;
  CodegenOptions codegen;
  PreprocessOptions preprocess;
  PurityOptions purity;
};

struct ParallelizeResult {
  SourceFile output;
  PatternClass pattern;
  ScopingPlan plan;
};

class LoopNotFound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Rewrites one loop of `file`. Throws LoopNotFound, CodegenError,
/// FatalFileError or IoError; a file with syntax errors raises
/// FatalFileError carrying the first error.
ParallelizeResult parallelize_loop(const ParallelizeRequest &request);

} // namespace pwlite
