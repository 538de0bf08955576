#include "pwlite/cfront/preprocessor.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace pwlite {

Diagnostic PreprocessedUnit::make_diag(DiagKind kind, Severity sev,
                                       const SourceSpan &at,
                                       std::string message) const {
  Diagnostic d{kind, sev, "", 0, 0, std::move(message)};
  if (at.file < files.size()) {
    const SourceFile &f = files[at.file];
    d.file = f.path.string();
    LineCol lc = f.line_col(at.begin);
    d.line = lc.line;
    d.column = lc.column;
  }
  return d;
}

namespace {

constexpr int kMaxIncludeDepth = 64;
constexpr int kMaxExpansionDepth = 200;

struct Macro {
  std::string name;
  bool function_like = false;
  bool variadic = false;
  std::vector<std::string> params;
  std::vector<Token> body;
};

struct Conditional {
  bool parent_active;
  bool active;
  bool taken; // some branch of this group was already selected
  bool seen_else;
  SourceSpan where;
};

struct Replacement {
  std::size_t begin;
  std::size_t end;
  std::string text;
};

class Preprocessor {
public:
  Preprocessor(PreprocessedUnit &unit, const PreprocessOptions &opts)
      : unit_(unit), opts_(opts) {}

  void run(const SourceFile &main) {
    unit_.files.push_back(main);
    unit_.system_file.push_back(false);
    for (const std::string &def : opts_.defines)
      define_from_option(def);
    process_file(0, 0);
    Token eof;
    eof.kind = TokenKind::Eof;
    std::uint32_t end = static_cast<std::uint32_t>(main.text.size());
    eof.span = {0, end, end};
    unit_.tokens.push_back(eof);
    // Mirror the main file's final newline (or lack of one).
    if (!main.text.empty() && main.text.back() != '\n' && !text_.empty() && text_.back() == '\n')
      text_.pop_back();
    unit_.output = SourceFile(main.path, std::move(text_));
  }

private:
  PreprocessedUnit &unit_;
  const PreprocessOptions &opts_;
  std::unordered_map<std::string, Macro> macros_;
  std::unordered_set<std::string> once_files_;
  std::string text_;

  [[noreturn]] void fatal(DiagKind kind, const SourceSpan &at, std::string msg) {
    throw FatalFileError(unit_.make_diag(kind, Severity::Fatal, at, std::move(msg)));
  }

  void report(DiagKind kind, Severity sev, const SourceSpan &at, std::string msg) {
    unit_.diagnostics.push_back(unit_.make_diag(kind, sev, at, std::move(msg)));
  }

  void emit_line(FileId file, std::uint32_t line, std::string_view content) {
    text_.append(content);
    text_.push_back('\n');
    unit_.line_origin.push_back({file, line});
  }

  void define_from_option(const std::string &def) {
    auto eq = def.find('=');
    std::string name = def.substr(0, eq);
    std::string value = eq == std::string::npos ? "1" : def.substr(eq + 1);
    Macro m;
    m.name = name;
    m.body = lex_range(value, 0, value.size(), 0);
    // Option-defined macros have no source location of their own.
    for (Token &t : m.body)
      t.span = {0, 0, 0};
    macros_[name] = std::move(m);
  }

  void process_file(FileId id, int depth) {
    // Copy: unit_.files may reallocate while nested includes are processed.
    const std::string raw = unit_.files[id].text;
    const bool system = unit_.system_file[id];
    StrippedText stripped = strip_comments(raw);
    const std::string &t = stripped.text;
    std::vector<Conditional> conds;
    std::size_t marker = 0;

    std::size_t pos = 0;
    std::uint32_t line_no = 1;
    while (pos < t.size()) {
      // Logical line [pos, le): splice backslash-newlines.
      std::size_t le = pos;
      std::uint32_t physical = 1;
      while (le < t.size() && t[le] != '\n') {
        if (t[le] == '\\') {
          std::size_t k = le + 1;
          if (k < t.size() && t[k] == '\r')
            ++k;
          if (k < t.size() && t[k] == '\n') {
            le = k + 1;
            ++physical;
            continue;
          }
        }
        ++le;
      }
      std::size_t next = le < t.size() ? le + 1 : le;
      const bool active = conds.empty() || conds.back().active;

      std::size_t first = pos;
      while (first < le && (t[first] == ' ' || t[first] == '\t' || t[first] == '\r'))
        ++first;

      if (first < le && t[first] == '#') {
        handle_directive(id, depth, t, pos, le, line_no, physical, conds, system);
      } else if (!active) {
        if (!system)
          for (std::uint32_t k = 0; k < physical; ++k)
            emit_line(id, line_no + k, "");
      } else {
        // Pure markers within this line range become tokens.
        while (marker < stripped.pure_markers.size() && stripped.pure_markers[marker] < pos)
          ++marker;
        while (marker < stripped.pure_markers.size() && stripped.pure_markers[marker] < le) {
          Token m;
          m.kind = TokenKind::PureMarker;
          m.text = "/*@pure@*/";
          auto b = static_cast<std::uint32_t>(stripped.pure_markers[marker]);
          m.span = {id, b, b + 10};
          unit_.tokens.push_back(m);
          ++marker;
        }
        std::vector<Token> toks = lex_range(t, pos, le, id);
        std::vector<Replacement> repl;
        std::vector<Token> expanded = expand_line(toks, repl);
        unit_.tokens.insert(unit_.tokens.end(), expanded.begin(), expanded.end());
        if (!system) {
          if (repl.empty()) {
            std::string_view body(t.data() + pos, le - pos);
            // Keep physical lines of a spliced line separate in the output.
            std::size_t start = 0;
            std::uint32_t k = 0;
            for (std::size_t i = 0; i <= body.size(); ++i) {
              if (i == body.size() || body[i] == '\n') {
                emit_line(id, line_no + k++, body.substr(start, i - start));
                start = i + 1;
              }
            }
          } else {
            std::string rendered;
            std::size_t cur = pos;
            for (const Replacement &r : repl) {
              rendered.append(t, cur, r.begin - cur);
              rendered += r.text;
              cur = r.end;
            }
            rendered.append(t, cur, le - cur);
            std::replace(rendered.begin(), rendered.end(), '\n', ' ');
            emit_line(id, line_no, rendered);
            for (std::uint32_t k = 1; k < physical; ++k)
              emit_line(id, line_no + k, "");
          }
        }
      }
      line_no += physical;
      pos = next;
    }
    if (!conds.empty())
      fatal(DiagKind::UnterminatedConditional, conds.back().where,
            "conditional directive is not terminated by #endif");
  }

  void handle_directive(FileId id, int depth, const std::string &t, std::size_t lb,
                        std::size_t le, std::uint32_t line_no, std::uint32_t physical,
                        std::vector<Conditional> &conds, bool system) {
    std::vector<Token> toks = lex_range(t, lb, le, id);
    SourceSpan where{id, static_cast<std::uint32_t>(lb), static_cast<std::uint32_t>(le)};
    std::string name = toks.size() > 1 ? toks[1].text : "";
    const bool active = conds.empty() || conds.back().active;
    bool keep_text = false;
    bool emitted = false;
    std::vector<Token> rest(toks.size() > 2 ? toks.begin() + 2 : toks.end(), toks.end());

    if (name == "if" || name == "ifdef" || name == "ifndef") {
      bool value = false;
      if (active) {
        if (name == "if")
          value = evaluate_condition(rest, where);
        else if (rest.empty() || rest[0].kind != TokenKind::Identifier)
          report(DiagKind::DirectiveError, Severity::Error, where, "#" + name + " expects a macro name");
        else
          value = macros_.count(rest[0].text) == (name == "ifdef" ? 1u : 0u);
      }
      conds.push_back({active, active && value, active && value, false, where});
    } else if (name == "elif") {
      if (conds.empty() || conds.back().seen_else) {
        report(DiagKind::DirectiveError, Severity::Error, where, "#elif without #if");
      } else {
        Conditional &c = conds.back();
        if (c.parent_active && !c.taken) {
          c.active = evaluate_condition(rest, where);
          c.taken = c.active;
        } else {
          c.active = false;
        }
      }
    } else if (name == "else") {
      if (conds.empty() || conds.back().seen_else) {
        report(DiagKind::DirectiveError, Severity::Error, where, "#else without #if");
      } else {
        Conditional &c = conds.back();
        c.active = c.parent_active && !c.taken;
        c.taken = true;
        c.seen_else = true;
      }
    } else if (name == "endif") {
      if (conds.empty())
        report(DiagKind::DirectiveError, Severity::Error, where, "#endif without #if");
      else
        conds.pop_back();
    } else if (!active) {
      // Skipped region.
    } else if (name == "define") {
      define_directive(toks, where);
    } else if (name == "undef") {
      if (!rest.empty())
        macros_.erase(rest[0].text);
    } else if (name == "include") {
      emitted = include_directive(id, depth, t, where, system);
    } else if (name == "pragma") {
      if (!rest.empty() && rest[0].text == "once") {
        once_files_.insert(std::filesystem::weakly_canonical(unit_.files[id].path).string());
      } else if (!rest.empty() && rest[0].text == "omp") {
        Token p;
        p.kind = TokenKind::Pragma;
        p.text = spell(rest);
        p.span = where;
        p.leading_space = true;
        unit_.tokens.push_back(std::move(p));
        keep_text = true;
      } else {
        keep_text = true;
      }
    } else if (name == "error") {
      report(DiagKind::DirectiveError, Severity::Error, where, "#error " + spell(rest));
      unit_.partial = true;
    } else if (name == "line" || name == "warning" || name == "ident" || name.empty()) {
      // Ignored.
    } else {
      report(DiagKind::DirectiveError, Severity::Warning, where, "unknown directive #" + name);
    }

    if (system || emitted)
      return;
    if (keep_text) {
      std::string body = t.substr(lb, le - lb);
      std::replace(body.begin(), body.end(), '\n', ' ');
      emit_line(id, line_no, body);
      for (std::uint32_t k = 1; k < physical; ++k)
        emit_line(id, line_no + k, "");
    } else {
      for (std::uint32_t k = 0; k < physical; ++k)
        emit_line(id, line_no + k, "");
    }
  }

  void define_directive(const std::vector<Token> &toks, const SourceSpan &where) {
    if (toks.size() < 3 || toks[2].kind != TokenKind::Identifier) {
      report(DiagKind::DirectiveError, Severity::Error, where, "#define expects a macro name");
      return;
    }
    Macro m;
    m.name = toks[2].text;
    std::size_t i = 3;
    if (i < toks.size() && toks[i].is_punct("(") && !toks[i].leading_space) {
      m.function_like = true;
      ++i;
      while (i < toks.size() && !toks[i].is_punct(")")) {
        if (toks[i].kind == TokenKind::Identifier)
          m.params.push_back(toks[i].text);
        else if (toks[i].is_punct("..."))
          m.variadic = true;
        ++i;
      }
      if (i == toks.size()) {
        report(DiagKind::DirectiveError, Severity::Error, where,
               "missing ')' in parameter list of macro '" + m.name + "'");
        return;
      }
      ++i;
    }
    m.body.assign(toks.begin() + static_cast<std::ptrdiff_t>(i), toks.end());
    if (!m.body.empty())
      m.body.front().leading_space = false;
    bool stringize = std::any_of(m.body.begin(), m.body.end(), [](const Token &t) {
      return t.is_punct("#") || t.is_punct("##");
    });
    if (stringize) {
      report(DiagKind::UnsupportedMacro, Severity::Warning, where,
             "macro '" + m.name + "' uses stringize or token paste; left unexpanded");
      unit_.partial = true;
      macros_.erase(m.name);
      return;
    }
    macros_[m.name] = std::move(m);
  }

  std::optional<std::filesystem::path> find_include(const std::string &name, bool angled,
                                                    FileId from) const {
    namespace fs = std::filesystem;
    std::vector<fs::path> dirs;
    if (!angled) {
      dirs.push_back(unit_.files[from].path.parent_path());
      dirs.insert(dirs.end(), opts_.include_paths.begin(), opts_.include_paths.end());
    } else if (!opts_.sysroot.empty()) {
      dirs.push_back(opts_.sysroot);
    }
    for (const fs::path &d : dirs) {
      fs::path candidate = d / name;
      std::error_code ec;
      if (fs::is_regular_file(candidate, ec))
        return candidate;
    }
    return std::nullopt;
  }

  // Returns true when it emitted output lines for the directive itself.
  bool include_directive(FileId id, int depth, const std::string &t,
                         const SourceSpan &where, bool system) {
    // Re-scan the raw directive text: <a/b.h> does not lex as one token.
    std::string_view line(t.data() + where.begin, where.end - where.begin);
    std::size_t k = line.find("include") + 7;
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k])))
      ++k;
    if (k >= line.size() || (line[k] != '"' && line[k] != '<')) {
      report(DiagKind::DirectiveError, Severity::Error, where, "malformed #include");
      return false;
    }
    bool angled = line[k] == '<';
    char close = angled ? '>' : '"';
    std::size_t e = line.find(close, k + 1);
    if (e == std::string_view::npos) {
      report(DiagKind::DirectiveError, Severity::Error, where, "malformed #include");
      return false;
    }
    std::string name(line.substr(k + 1, e - k - 1));
    auto found = find_include(name, angled, id);
    if (!found) {
      if (angled)
        return false; // no stub: declarations stay unresolved
      fatal(DiagKind::UnresolvedInclude, where, "cannot find include file \"" + name + "\"");
    }
    if (depth + 1 > kMaxIncludeDepth)
      fatal(DiagKind::IncludeDepth, where, "#include nested too deeply");
    std::string key = std::filesystem::weakly_canonical(*found).string();
    if (once_files_.count(key))
      return false;
    SourceFile header = SourceFile::load(*found);
    FileId hid = static_cast<FileId>(unit_.files.size());
    unit_.files.push_back(std::move(header));
    unit_.system_file.push_back(angled || system);
    std::size_t before = unit_.line_origin.size();
    process_file(hid, depth + 1);
    return unit_.line_origin.size() != before;
  }

  // Macro expansion over one logical line. Records the text ranges that were
  // replaced so the output text can be rebuilt.
  std::vector<Token> expand_line(const std::vector<Token> &in, std::vector<Replacement> &repl) {
    std::vector<Token> out;
    std::set<std::string> active;
    std::size_t i = 0;
    while (i < in.size()) {
      std::size_t consumed = 0;
      std::vector<Token> exp;
      if (try_expand(in, i, active, 0, exp, consumed)) {
        Replacement r{in[i].span.begin, in[i + consumed - 1].span.end, spell(exp)};
        repl.push_back(std::move(r));
        out.insert(out.end(), exp.begin(), exp.end());
        i += consumed;
      } else {
        out.push_back(in[i]);
        ++i;
      }
    }
    return out;
  }

  std::vector<Token> expand_tokens(const std::vector<Token> &in, std::set<std::string> &active,
                                   int depth) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < in.size()) {
      std::size_t consumed = 0;
      std::vector<Token> exp;
      if (try_expand(in, i, active, depth, exp, consumed)) {
        out.insert(out.end(), exp.begin(), exp.end());
        i += consumed;
      } else {
        out.push_back(in[i]);
        ++i;
      }
    }
    return out;
  }

  // Expands the macro invocation starting at in[i], if any.
  bool try_expand(const std::vector<Token> &in, std::size_t i, std::set<std::string> &active,
                  int depth, std::vector<Token> &out, std::size_t &consumed) {
    const Token &t = in[i];
    if (t.kind != TokenKind::Identifier)
      return false;
    auto it = macros_.find(t.text);
    if (it == macros_.end())
      return false;
    const Macro &m = it->second;
    if (active.count(m.name) || depth > kMaxExpansionDepth)
      fatal(DiagKind::MacroRecursion, t.span, "macro '" + m.name + "' expands to itself");

    std::vector<Token> body;
    std::size_t end = i + 1;
    if (m.function_like) {
      if (end >= in.size() || !in[end].is_punct("("))
        return false;
      std::vector<std::vector<Token>> args(1);
      int nest = 0;
      std::size_t j = end + 1;
      for (; j < in.size(); ++j) {
        const Token &a = in[j];
        if (a.is_punct("(") || a.is_punct("[") || a.is_punct("{"))
          ++nest;
        if (a.is_punct(")") && nest == 0)
          break;
        if (a.is_punct(")") || a.is_punct("]") || a.is_punct("}"))
          --nest;
        if (a.is_punct(",") && nest == 0 &&
            !(m.variadic && args.size() > m.params.size())) {
          args.emplace_back();
          continue;
        }
        args.back().push_back(a);
      }
      if (j >= in.size()) {
        report(DiagKind::UnsupportedMacro, Severity::Warning, t.span,
               "invocation of '" + m.name + "' spans lines; left unexpanded");
        unit_.partial = true;
        return false;
      }
      if (m.params.empty() && !m.variadic && args.size() == 1 && args[0].empty())
        args.clear();
      std::size_t expected = m.params.size();
      if (args.size() < expected || (!m.variadic && args.size() != expected)) {
        report(DiagKind::UnsupportedMacro, Severity::Warning, t.span,
               "wrong number of arguments to macro '" + m.name + "'");
        unit_.partial = true;
        return false;
      }
      for (auto &a : args)
        a = expand_tokens(a, active, depth + 1);
      for (const Token &b : m.body) {
        std::optional<std::size_t> param;
        for (std::size_t p = 0; p < m.params.size(); ++p)
          if (b.kind == TokenKind::Identifier && b.text == m.params[p])
            param = p;
        if (!param && m.variadic && b.is_ident("__VA_ARGS__"))
          param = m.params.size();
        if (param) {
          if (*param == m.params.size()) {
            for (std::size_t v = m.params.size(); v < args.size(); ++v) {
              if (v > m.params.size()) {
                Token comma;
                comma.kind = TokenKind::Punct;
                comma.text = ",";
                body.push_back(comma);
              }
              body.insert(body.end(), args[v].begin(), args[v].end());
            }
          } else {
            std::vector<Token> arg = args[*param];
            if (!arg.empty())
              arg.front().leading_space = b.leading_space;
            body.insert(body.end(), arg.begin(), arg.end());
          }
        } else {
          body.push_back(b);
        }
      }
      end = j + 1;
    } else {
      body = m.body;
    }

    active.insert(m.name);
    std::vector<Token> result = expand_tokens(body, active, depth + 1);
    active.erase(m.name);
    SourceSpan site{t.span.file, t.span.begin, in[end - 1].span.end};
    for (Token &r : result) {
      r.span = site;
      r.from_macro = true;
    }
    if (!result.empty())
      result.front().leading_space = t.leading_space;
    out = std::move(result);
    consumed = end - i;
    return true;
  }

  bool evaluate_condition(const std::vector<Token> &in, const SourceSpan &where);
};

// Integer constant expression evaluator for #if.
class CondEval {
public:
  explicit CondEval(const std::vector<Token> &toks) : toks_(toks) {}

  std::optional<long long> run() {
    long long v = ternary();
    if (!ok_ || pos_ != toks_.size())
      return std::nullopt;
    return v;
  }

private:
  const std::vector<Token> &toks_;
  std::size_t pos_ = 0;
  bool ok_ = true;

  bool accept(std::string_view p) {
    if (pos_ < toks_.size() && toks_[pos_].is_punct(p)) {
      ++pos_;
      return true;
    }
    return false;
  }

  long long ternary() {
    long long c = binary(0);
    if (accept("?")) {
      long long a = ternary();
      if (!accept(":"))
        ok_ = false;
      long long b = ternary();
      return c ? a : b;
    }
    return c;
  }

  static int precedence(std::string_view op) {
    static const std::pair<std::string_view, int> table[] = {
        {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6},
        {"!=", 6}, {"<", 7},  {">", 7},  {"<=", 7}, {">=", 7}, {"<<", 8},
        {">>", 8}, {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}};
    for (auto &[o, p] : table)
      if (o == op)
        return p;
    return -1;
  }

  long long binary(int min_prec) {
    long long lhs = unary();
    while (pos_ < toks_.size() && toks_[pos_].kind == TokenKind::Punct) {
      std::string op = toks_[pos_].text;
      int p = precedence(op);
      if (p < 0 || p < min_prec)
        break;
      ++pos_;
      long long rhs = binary(p + 1);
      lhs = apply(op, lhs, rhs);
    }
    return lhs;
  }

  long long apply(const std::string &op, long long a, long long b) {
    if (op == "||") return a || b;
    if (op == "&&") return a && b;
    if (op == "|") return a | b;
    if (op == "^") return a ^ b;
    if (op == "&") return a & b;
    if (op == "==") return a == b;
    if (op == "!=") return a != b;
    if (op == "<") return a < b;
    if (op == ">") return a > b;
    if (op == "<=") return a <= b;
    if (op == ">=") return a >= b;
    if (op == "<<") return a << b;
    if (op == ">>") return a >> b;
    if (op == "+") return a + b;
    if (op == "-") return a - b;
    if (op == "*") return a * b;
    if ((op == "/" || op == "%") && b == 0) {
      ok_ = false;
      return 0;
    }
    if (op == "/") return a / b;
    return a % b;
  }

  long long unary() {
    if (accept("!")) return !unary();
    if (accept("-")) return -unary();
    if (accept("+")) return unary();
    if (accept("~")) return ~unary();
    if (accept("(")) {
      long long v = ternary();
      if (!accept(")"))
        ok_ = false;
      return v;
    }
    if (pos_ >= toks_.size()) {
      ok_ = false;
      return 0;
    }
    const Token &t = toks_[pos_++];
    if (t.kind == TokenKind::Number) {
      std::string digits = t.text;
      while (!digits.empty() && std::strchr("uUlL", digits.back()))
        digits.pop_back();
      try {
        return std::stoll(digits, nullptr, 0);
      } catch (...) {
        ok_ = false;
        return 0;
      }
    }
    if (t.kind == TokenKind::CharLiteral && t.text.size() >= 3)
      return static_cast<unsigned char>(t.text[1]);
    if (t.kind == TokenKind::Identifier)
      return 0;
    ok_ = false;
    return 0;
  }
};

bool Preprocessor::evaluate_condition(const std::vector<Token> &in, const SourceSpan &where) {
  std::vector<Token> resolved;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i].is_ident("defined")) {
      std::string name;
      if (i + 1 < in.size() && in[i + 1].is_punct("(") && i + 3 < in.size()) {
        name = in[i + 2].text;
        i += 3;
      } else if (i + 1 < in.size()) {
        name = in[i + 1].text;
        i += 1;
      }
      Token v;
      v.kind = TokenKind::Number;
      v.text = macros_.count(name) ? "1" : "0";
      resolved.push_back(v);
    } else {
      resolved.push_back(in[i]);
    }
  }
  std::set<std::string> active;
  std::vector<Token> expanded = expand_tokens(resolved, active, 0);
  auto v = CondEval(expanded).run();
  if (!v) {
    report(DiagKind::DirectiveError, Severity::Error, where, "invalid #if expression");
    return false;
  }
  return *v != 0;
}

} // namespace

PreprocessedUnit preprocess(const SourceFile &source, const PreprocessOptions &options) {
  PreprocessedUnit unit;
  Preprocessor pp(unit, options);
  pp.run(source);
  return unit;
}

} // namespace pwlite
