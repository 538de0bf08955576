#pragma once

#include "pwlite/patterns/dependence.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwlite {

struct UninterpretableLoop : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Concrete values for the variables a loop reads. Scalars missing here
/// start at zero.
struct OracleInput {
  std::map<std::string, std::vector<long>> arrays;
  std::map<std::string, long> scalars;
};

struct OracleLimits {
  std::size_t max_array = 64;
  long max_trips = 16;
  long max_steps = 100000;
};

/// Runs `nest` sequentially on `input` and reports every carried
/// dependence observed in the access trace. Array dependences are exact;
/// a scalar declared outside the loop is reported only when some
/// iteration reads it before writing it.
DependenceSet brute_force_dependence_oracle(const LoopNest &nest, const SymbolTable &table,
                                            const OracleInput &input,
                                            const OracleLimits &limits = {});

} // namespace pwlite
