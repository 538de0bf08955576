#pragma once

#include <filesystem>
#include <string>

namespace pwlite::test {

std::filesystem::path source_dir();
std::filesystem::path sysroot_dir();
std::filesystem::path cli_path();
std::string read_file(const std::filesystem::path &p);

} // namespace pwlite::test
