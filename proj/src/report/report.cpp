#include "pwlite/report/report.hpp"

#include "pwlite/driver/driver.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace pwlite {

const std::array<const char *, 11> kReportColumns = {
    "Benchmark", "Files", "SLOC",    "Time(ms)", "Global", "Scope",
    "Pure",      "Scoping", "Default", "Multi",  "SIMD"};

ReportRow &ReportRow::operator+=(const ReportRow &o) {
  files += o.files;
  sloc += o.sloc;
  time_ms += o.time_ms;
  global += o.global;
  scope += o.scope;
  pure += o.pure;
  scoping += o.scoping;
  default_ += o.default_;
  multi += o.multi;
  simd += o.simd;
  return *this;
}

namespace {

std::vector<std::string> split(const std::string &label) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : label) {
    if (c == '/') {
      if (!cur.empty())
        out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty())
    out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string> &parts, std::size_t n) {
  std::string out;
  for (std::size_t k = 0; k < n && k < parts.size(); ++k)
    out += (k ? "/" : "") + parts[k];
  return out.empty() ? "." : out;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

} // namespace

std::string group_label(const std::string &file_label, int depth) {
  std::vector<std::string> parts = split(file_label);
  if (!parts.empty())
    parts.pop_back();
  return join(parts, static_cast<std::size_t>(std::max(depth, 0)));
}

Report aggregate(const std::vector<ReportFile> &files, const std::vector<std::string> &directories,
                 int depth) {
  std::map<std::string, ReportRow> groups;
  std::set<std::string> dirs_with_files, dirs_with_subdirs;
  for (const ReportFile &f : files) {
    std::vector<std::string> parts = split(f.label);
    parts.pop_back();
    dirs_with_files.insert(join(parts, parts.size()));
    ReportRow r = f.counts;
    r.files = f.is_source && f.parsed ? 1 : 0;
    groups[group_label(f.label, depth)] += r;
  }
  for (const std::string &d : directories) {
    std::vector<std::string> parts = split(d);
    if (!parts.empty()) {
      parts.pop_back();
      if (!parts.empty())
        dirs_with_subdirs.insert(join(parts, parts.size()));
    }
  }
  for (const std::string &d : directories) {
    std::vector<std::string> parts = split(d);
    int k = static_cast<int>(parts.size());
    std::string label = join(parts, parts.size());
    if (k == 0 || k > depth)
      continue;
    if (k == depth || dirs_with_files.count(label) || !dirs_with_subdirs.count(label))
      groups[label];
  }
  Report rep;
  for (auto &[label, row] : groups) {
    row.benchmark = label;
    row.time_ms = round2(row.time_ms);
    rep.rows.push_back(row);
    rep.totals += row;
  }
  rep.totals.benchmark = "Totals";
  rep.totals.time_ms = round2(rep.totals.time_ms);
  return rep;
}

Report aggregate(const ProgramAnalysis &analysis, int depth) {
  std::vector<ReportFile> files;
  for (const FileAnalysis &fa : analysis.files) {
    ReportFile f;
    f.label = fa.label;
    f.is_source = fa.is_source;
    f.parsed = fa.parsed;
    f.counts.sloc = fa.sloc;
    f.counts.time_ms = fa.time_ms;
    for (const Issue &is : fa.issues) {
      switch (is.kind) {
      case IssueKind::Global: ++f.counts.global; break;
      case IssueKind::Scope: ++f.counts.scope; break;
      case IssueKind::Pure: ++f.counts.pure; break;
      case IssueKind::Scoping: ++f.counts.scoping; break;
      case IssueKind::Default: ++f.counts.default_; break;
      }
    }
    for (const Opportunity &o : fa.opportunities)
      ++(o.kind == OpportunityKind::Multi ? f.counts.multi : f.counts.simd);
    files.push_back(std::move(f));
  }
  return aggregate(files, analysis.directories, depth);
}

void strip_timing(Report &report) {
  for (ReportRow &r : report.rows)
    r.time_ms = 0;
  report.totals.time_ms = 0;
}

namespace {

std::array<std::string, 11> cells(const ReportRow &r) {
  std::ostringstream t;
  t << std::fixed << std::setprecision(2) << r.time_ms;
  return {r.benchmark,
          std::to_string(r.files),
          std::to_string(r.sloc),
          t.str(),
          std::to_string(r.global),
          std::to_string(r.scope),
          std::to_string(r.pure),
          std::to_string(r.scoping),
          std::to_string(r.default_),
          std::to_string(r.multi),
          std::to_string(r.simd)};
}

} // namespace

std::string render_table(const Report &report) {
  std::vector<std::array<std::string, 11>> body;
  for (const ReportRow &r : report.rows)
    body.push_back(cells(r));
  auto totals = cells(report.totals);

  std::array<std::size_t, 11> width{};
  for (std::size_t c = 0; c < 11; ++c) {
    width[c] = std::string(kReportColumns[c]).size();
    for (const auto &row : body)
      width[c] = std::max(width[c], row[c].size());
    width[c] = std::max(width[c], totals[c].size());
  }
  const std::string sep = "  ";
  // Column groups: Global..Default and Multi..SIMD.
  struct Group {
    std::size_t first, last;
    const char *title;
  };
  const Group groups[] = {{4, 8, "Software issues"}, {9, 10, "Opportunities"}};
  for (const Group &g : groups) {
    std::size_t span = 0;
    for (std::size_t c = g.first; c <= g.last; ++c)
      span += width[c] + (c == g.first ? 0 : sep.size());
    std::size_t need = std::string(g.title).size();
    if (span < need)
      width[g.last] += need - span;
  }

  auto line = [&](const std::array<std::string, 11> &row) {
    std::string out;
    for (std::size_t c = 0; c < 11; ++c) {
      if (c)
        out += sep;
      std::size_t pad = width[c] - row[c].size();
      out += c == 0 ? row[c] + std::string(pad, ' ') : std::string(pad, ' ') + row[c];
    }
    return out + "\n";
  };

  std::string head;
  std::size_t col = 0;
  for (std::size_t c = 0; c < 11; ++c) {
    for (const Group &g : groups) {
      if (c != g.first)
        continue;
      std::size_t span = 0;
      for (std::size_t k = g.first; k <= g.last; ++k)
        span += width[k] + (k == g.first ? 0 : sep.size());
      std::string title = g.title;
      std::size_t left = (span - title.size()) / 2;
      head.resize(col, ' ');
      head += std::string(left, ' ') + title + std::string(span - title.size() - left, ' ');
    }
    col += width[c] + sep.size();
  }
  while (!head.empty() && head.back() == ' ')
    head.pop_back();

  std::array<std::string, 11> names;
  for (std::size_t c = 0; c < 11; ++c)
    names[c] = kReportColumns[c];
  std::string header = line(names);
  std::string rule(header.size() - 1, '-');

  std::string out = head + "\n" + header + rule + "\n";
  for (const auto &row : body)
    out += line(row);
  out += rule + "\n" + line(totals);
  return out;
}

namespace {

nlohmann::ordered_json row_json(const ReportRow &r) {
  nlohmann::ordered_json j;
  j["benchmark"] = r.benchmark;
  j["files"] = r.files;
  j["sloc"] = r.sloc;
  j["time_ms"] = round2(r.time_ms);
  j["global"] = r.global;
  j["scope"] = r.scope;
  j["pure"] = r.pure;
  j["scoping"] = r.scoping;
  j["default"] = r.default_;
  j["multi"] = r.multi;
  j["simd"] = r.simd;
  return j;
}

ReportRow row_from(const nlohmann::json &j) {
  ReportRow r;
  r.benchmark = j.at("benchmark").get<std::string>();
  r.files = j.at("files").get<std::size_t>();
  r.sloc = j.at("sloc").get<std::size_t>();
  r.time_ms = j.at("time_ms").get<double>();
  r.global = j.at("global").get<std::size_t>();
  r.scope = j.at("scope").get<std::size_t>();
  r.pure = j.at("pure").get<std::size_t>();
  r.scoping = j.at("scoping").get<std::size_t>();
  r.default_ = j.at("default").get<std::size_t>();
  r.multi = j.at("multi").get<std::size_t>();
  r.simd = j.at("simd").get<std::size_t>();
  return r;
}

} // namespace

std::string render_json(const Report &report) {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow &r : report.rows)
    j["rows"].push_back(row_json(r));
  j["totals"] = row_json(report.totals);
  return j.dump(2) + "\n";
}

Report parse_report_json(const std::string &text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    Report rep;
    for (const auto &r : j.at("rows"))
      rep.rows.push_back(row_from(r));
    rep.totals = row_from(j.at("totals"));
    return rep;
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
}

} // namespace pwlite
