#include "pwlite/cfront/omp_directive.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace pwlite {

std::string_view to_string(OmpKind kind) {
  switch (kind) {
  case OmpKind::Parallel:
    return "parallel";
  case OmpKind::For:
    return "for";
  case OmpKind::ParallelFor:
    return "parallel_for";
  case OmpKind::Single:
    return "single";
  case OmpKind::Task:
    return "task";
  case OmpKind::Taskwait:
    return "taskwait";
  case OmpKind::Taskloop:
    return "taskloop";
  case OmpKind::Other:
    return "other";
  }
  return "other";
}

namespace {

constexpr std::array<std::string_view, 26> kDirectiveWords = {
    "parallel", "for",      "simd",     "sections",  "section",   "single",
    "task",     "taskwait", "taskloop", "critical",  "master",    "barrier",
    "atomic",   "flush",    "ordered",  "threadprivate", "taskgroup", "taskyield",
    "declare",  "target",   "teams",    "distribute", "cancel",   "data",
    "update",   "masked"};

constexpr std::array<std::string_view, 7> kStandalone = {
    "taskwait", "barrier", "flush", "threadprivate", "taskyield", "cancel",
    "target update"};

bool is_directive_word(std::string_view w) {
  return std::find(kDirectiveWords.begin(), kDirectiveWords.end(), w) != kDirectiveWords.end();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

class Cursor {
public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (i_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[i_])) || s_[i_] == ','))
      ++i_;
  }
  void skip_spaces() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }
  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  std::string_view word() {
    std::size_t b = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
      ++i_;
    return s_.substr(b, i_ - b);
  }
  // Balanced parenthesized body, without the outer parens.
  std::optional<std::string_view> parens() {
    if (peek() != '(')
      return std::nullopt;
    std::size_t b = ++i_;
    int depth = 1;
    while (i_ < s_.size() && depth > 0) {
      if (s_[i_] == '(')
        ++depth;
      else if (s_[i_] == ')')
        --depth;
      ++i_;
    }
    if (depth != 0)
      return std::nullopt;
    return s_.substr(b, i_ - b - 1);
  }
  std::size_t pos() const { return i_; }
  void reset(std::size_t p) { i_ = p; }

private:
  std::string_view s_;
  std::size_t i_ = 0;
};

OmpClause parse_clause_body(std::string name, std::string_view body) {
  OmpClause c;
  c.name = std::move(name);
  c.has_parens = true;
  int depth = 0;
  std::size_t colon = std::string_view::npos;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char ch = body[i];
    if (ch == '(' || ch == '[')
      ++depth;
    else if (ch == ')' || ch == ']')
      --depth;
    else if (ch == ':' && depth == 0 && colon == std::string_view::npos)
      colon = i;
  }
  std::string_view list = body;
  if (colon != std::string_view::npos) {
    c.modifier = std::string(trim(body.substr(0, colon)));
    list = body.substr(colon + 1);
  }
  depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= list.size(); ++i) {
    if (i < list.size()) {
      char ch = list[i];
      if (ch == '(' || ch == '[')
        ++depth;
      else if (ch == ')' || ch == ']')
        --depth;
      if (ch != ',' || depth != 0)
        continue;
    }
    std::string_view item = trim(list.substr(start, i - start));
    if (!item.empty())
      c.args.emplace_back(item);
    start = i + 1;
  }
  return c;
}

OmpKind classify(const std::string &name) {
  if (name == "parallel")
    return OmpKind::Parallel;
  if (name == "for")
    return OmpKind::For;
  if (name == "parallel for")
    return OmpKind::ParallelFor;
  if (name == "single")
    return OmpKind::Single;
  if (name == "task")
    return OmpKind::Task;
  if (name == "taskwait")
    return OmpKind::Taskwait;
  if (name == "taskloop")
    return OmpKind::Taskloop;
  return OmpKind::Other;
}

} // namespace

bool OmpDirective::takes_statement() const {
  if (name.rfind("declare", 0) == 0)
    return false;
  return std::find(kStandalone.begin(), kStandalone.end(), name) == kStandalone.end();
}

bool OmpDirective::is_loop_directive() const {
  return kind == OmpKind::For || kind == OmpKind::ParallelFor || kind == OmpKind::Taskloop ||
         name == "simd" || name == "for simd" || name == "parallel for simd" ||
         name == "taskloop simd" || name == "distribute" || name == "distribute parallel for";
}

const OmpClause *OmpDirective::find(std::string_view clause) const {
  for (const OmpClause &c : clauses)
    if (c.name == clause)
      return &c;
  return nullptr;
}

bool OmpDirective::has_default_none() const {
  for (const OmpClause &c : clauses)
    if (c.name == "default" && c.args.size() == 1 && c.args[0] == "none")
      return true;
  return false;
}

std::vector<std::string> OmpDirective::scoped_variables() const {
  static constexpr std::array<std::string_view, 7> kScoping = {
      "shared", "private", "firstprivate", "lastprivate", "reduction", "copyin", "linear"};
  std::vector<std::string> out;
  for (const OmpClause &c : clauses) {
    if (std::find(kScoping.begin(), kScoping.end(), c.name) == kScoping.end())
      continue;
    for (const std::string &a : c.args)
      out.push_back(a);
  }
  return out;
}

std::optional<OmpDirective> parse_omp_directive(std::string_view text) {
  Cursor cur(trim(text));
  cur.skip_spaces();
  if (cur.word() != "omp")
    return std::nullopt;
  OmpDirective d;
  std::vector<std::string> words;
  while (true) {
    cur.skip_spaces();
    std::size_t save = cur.pos();
    std::string_view w = cur.word();
    if (w.empty())
      break;
    if (!is_directive_word(w)) {
      cur.reset(save);
      break;
    }
    words.emplace_back(w);
    // Some directive words take an argument: critical(name), flush(list).
    cur.skip_spaces();
    if (cur.peek() == '(' && (w == "critical" || w == "flush" || w == "threadprivate" ||
                              w == "cancel" || w == "declare")) {
      auto body = cur.parens();
      if (!body)
        return std::nullopt;
      d.directive_arg = std::string(trim(*body));
      break;
    }
  }
  if (words.empty())
    return std::nullopt;
  for (std::size_t i = 0; i < words.size(); ++i)
    d.name += (i ? " " : "") + words[i];
  d.kind = classify(d.name);

  while (true) {
    cur.skip_ws();
    if (cur.done())
      break;
    std::string_view w = cur.word();
    if (w.empty())
      return std::nullopt;
    cur.skip_spaces();
    if (cur.peek() == '(') {
      auto body = cur.parens();
      if (!body)
        return std::nullopt;
      d.clauses.push_back(parse_clause_body(std::string(w), *body));
    } else {
      OmpClause c;
      c.name = std::string(w);
      d.clauses.push_back(std::move(c));
    }
  }
  return d;
}

std::string render(const OmpClause &c) {
  std::string out = c.name;
  if (!c.has_parens)
    return out;
  out += '(';
  if (!c.modifier.empty())
    out += c.modifier + ": ";
  for (std::size_t i = 0; i < c.args.size(); ++i)
    out += (i ? ", " : "") + c.args[i];
  out += ')';
  return out;
}

std::string render(const OmpDirective &d) {
  std::string out = "#pragma omp " + d.name;
  if (d.directive_arg)
    out += "(" + *d.directive_arg + ")";
  for (const OmpClause &c : d.clauses)
    out += " " + render(c);
  return out;
}

} // namespace pwlite
