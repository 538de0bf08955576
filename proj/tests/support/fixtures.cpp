#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pwlite::test {

std::filesystem::path source_dir() { return PWLITE_SOURCE_DIR; }
std::filesystem::path sysroot_dir() { return PWLITE_SYSROOT_DIR; }
std::filesystem::path cli_path() { return PWLITE_CLI_PATH; }

std::string read_file(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace pwlite::test
