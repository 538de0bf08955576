#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace pwlite {

struct ProgramAnalysis;

struct ReportRow {
  std::string benchmark;
  std::size_t files = 0;
  std::size_t sloc = 0;
  double time_ms = 0;
  std::size_t global = 0, scope = 0, pure = 0, scoping = 0, default_ = 0;
  std::size_t multi = 0, simd = 0;

  ReportRow &operator+=(const ReportRow &o);
  friend bool operator==(const ReportRow &, const ReportRow &) = default;
};

struct Report {
  std::vector<ReportRow> rows; // sorted by benchmark label
  ReportRow totals;
};

/// Per-file contribution to a report.
struct ReportFile {
  std::string label; // relative path, '/'-separated
  bool is_source = false;
  bool parsed = false;
  ReportRow counts; // benchmark ignored; files is derived from is_source/parsed
};

/// Group label of a file: the first `depth` directory components of its
/// label, or "." for files at the top.
std::string group_label(const std::string &file_label, int depth);

/// Groups files into rows. Every directory at exactly `depth` levels, and
/// every shallower directory holding files directly or having no
/// subdirectories, gets a row even when it contains no C files.
Report aggregate(const std::vector<ReportFile> &files, const std::vector<std::string> &directories,
                 int depth);
Report aggregate(const ProgramAnalysis &analysis, int depth);

/// Zeroes every time field.
void strip_timing(Report &report);

extern const std::array<const char *, 11> kReportColumns;

std::string render_table(const Report &report);
std::string render_json(const Report &report);
/// Inverse of render_json. Throws std::runtime_error on malformed input.
Report parse_report_json(const std::string &text);

} // namespace pwlite
