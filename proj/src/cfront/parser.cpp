#include "pwlite/cfront/parser.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

namespace pwlite {

namespace {

using NodePtr = std::unique_ptr<AstNode>;

struct ParseFailure {
  Diagnostic diag;
};
struct UnsupportedFailure {
  Diagnostic diag;
};

const std::unordered_set<std::string> kStorage = {
    "typedef", "extern", "static", "auto", "register", "inline", "__inline",
    "__inline__", "_Thread_local", "__thread", "_Noreturn"};
const std::unordered_set<std::string> kQualifiers = {
    "const", "volatile", "restrict", "__restrict", "__restrict__", "_Atomic",
    "__const", "__volatile__", "__volatile"};
const std::unordered_set<std::string> kTypeWords = {
    "void", "char", "short", "int", "long", "float", "double", "signed",
    "unsigned", "_Bool", "_Complex", "__int128", "__signed__", "__builtin_va_list"};
const std::unordered_set<std::string> kKeywords = {
    "auto", "break", "case", "char", "const", "continue", "default", "do",
    "double", "else", "enum", "extern", "float", "for", "goto", "if", "inline",
    "int", "long", "register", "restrict", "return", "short", "signed", "sizeof",
    "static", "struct", "switch", "typedef", "union", "unsigned", "void",
    "volatile", "while", "_Bool", "_Complex"};

struct TypedefInfo {
  bool is_struct = false;
  int pointer_depth = 0;
  int array_rank = 0;
};

struct DeclSpec {
  std::string base;
  bool has_type = false;
  bool unknown_type = false;
  bool is_struct = false;
  TypedefInfo via_typedef;
  bool is_static = false;
  bool is_extern = false;
  bool is_typedef = false;
  bool attr_pure = false;
  bool attr_const = false;
  bool consumed = false;
  std::vector<NodePtr> enum_constants;
};

struct Declarator {
  std::string name;
  SourceSpan name_span;
  int pointer_depth = 0;
  std::vector<NodePtr> dims;
  bool is_function = false;
  bool function_pointer = false;
  std::vector<NodePtr> params;
  bool variadic = false;
  bool knr = false;
  bool attr_pure = false;
  bool attr_const = false;
};

int binary_precedence(const Token &t) {
  if (t.kind != TokenKind::Punct)
    return -1;
  static const std::unordered_map<std::string, int> table = {
      {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6},
      {"!=", 6}, {"<", 7},  {">", 7},  {"<=", 7}, {">=", 7}, {"<<", 8},
      {">>", 8}, {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}};
  auto it = table.find(t.text);
  return it == table.end() ? -1 : it->second;
}

bool is_assign_op(const Token &t) {
  static const std::unordered_set<std::string> ops = {
      "=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "^=", "|="};
  return t.kind == TokenKind::Punct && ops.count(t.text);
}

class Parser {
public:
  Parser(TranslationUnit &tu, const std::vector<Token> &toks) : tu_(tu), toks_(toks) {}

  NodePtr parse_unit() {
    SourceSpan whole{0, 0, static_cast<std::uint32_t>(tu_.files[0].text.size())};
    auto root = std::make_unique<AstNode>(NodeKind::TranslationUnit, whole);
    while (peek().kind != TokenKind::Eof) {
      std::size_t start = pos_;
      try {
        if (NodePtr n = parse_external())
          root->add(std::move(n));
      } catch (const ParseFailure &f) {
        tu_.diagnostics.push_back(f.diag);
        pos_ = start;
        skip_toplevel();
      } catch (const UnsupportedFailure &f) {
        tu_.diagnostics.push_back(f.diag);
        pos_ = start;
        skip_toplevel();
      }
      if (pos_ == start)
        ++pos_;
    }
    return root;
  }

private:
  TranslationUnit &tu_;
  const std::vector<Token> &toks_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, TypedefInfo> typedefs_;
  bool pending_pure_ = false;

  // --- token helpers -----------------------------------------------------

  const Token &peek(std::size_t k = 0) const {
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  const Token &next() {
    const Token &t = peek();
    if (pos_ < toks_.size() - 1)
      ++pos_;
    return t;
  }
  bool at_punct(std::string_view p, std::size_t k = 0) const { return peek(k).is_punct(p); }
  bool at_ident(std::string_view p, std::size_t k = 0) const { return peek(k).is_ident(p); }
  bool accept(std::string_view p) {
    if (at_punct(p)) {
      next();
      return true;
    }
    return false;
  }

  Diagnostic diag_at(const Token &t, DiagKind kind, Severity sev, std::string msg) const {
    Diagnostic d{kind, sev, "", 0, 0, std::move(msg)};
    const SourceFile &f = tu_.files.at(t.span.file);
    d.file = f.path.string();
    LineCol lc = f.line_col(t.span.begin);
    d.line = lc.line;
    d.column = lc.column;
    return d;
  }

  [[noreturn]] void fail(std::string_view expected) const {
    const Token &t = peek();
    std::string found = t.kind == TokenKind::Eof ? "end of file" : "'" + t.text + "'";
    throw ParseFailure{diag_at(t, DiagKind::SyntaxError, Severity::Error,
                               "expected " + std::string(expected) + ", found " + found)};
  }

  [[noreturn]] void unsupported(const Token &t, std::string what) const {
    throw UnsupportedFailure{
        diag_at(t, DiagKind::UnsupportedConstruct, Severity::Warning, std::move(what))};
  }

  void expect(std::string_view p) {
    if (!accept(p))
      fail("'" + std::string(p) + "'");
  }

  std::string expect_ident() {
    if (peek().kind != TokenKind::Identifier || kKeywords.count(peek().text))
      fail("identifier");
    return next().text;
  }

  NodePtr make(NodeKind k, std::size_t start) const {
    return std::make_unique<AstNode>(k, span_from(start));
  }

  // Span covering tokens [start, pos_).
  SourceSpan span_from(std::size_t start) const {
    const Token &first = toks_[std::min(start, toks_.size() - 1)];
    SourceSpan s = first.span;
    if (pos_ > start) {
      const Token &last = toks_[pos_ - 1];
      if (last.span.file == s.file && last.span.end >= s.begin)
        s.end = std::max(s.end, last.span.end);
    } else {
      s.end = s.begin;
    }
    return s;
  }

  void finish(AstNode &n, std::size_t start) const {
    SourceSpan s = span_from(start);
    n.span = s;
  }

  NodePtr empty_at(std::size_t at) const {
    SourceSpan s = toks_[std::min(at, toks_.size() - 1)].span;
    s.end = s.begin;
    return std::make_unique<AstNode>(NodeKind::Empty, s);
  }

  // Skips a top-level construct after an error.
  void skip_toplevel() {
    int depth = 0;
    while (peek().kind != TokenKind::Eof) {
      const Token &t = next();
      if (t.is_punct("{"))
        ++depth;
      else if (t.is_punct("}")) {
        if (--depth <= 0) {
          accept(";");
          return;
        }
      } else if (t.is_punct(";") && depth <= 0) {
        return;
      }
    }
  }

  // Index of the token after the brace group starting at `open`.
  std::size_t matching_brace(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      if (toks_[i].is_punct("{"))
        ++depth;
      else if (toks_[i].is_punct("}") && --depth == 0)
        return i + 1;
      if (toks_[i].kind == TokenKind::Eof)
        return i;
    }
    return toks_.size() - 1;
  }

  // --- declarations --------------------------------------------------------

  bool is_typedef_name(const Token &t) const {
    return t.kind == TokenKind::Identifier && typedefs_.count(t.text);
  }

  bool starts_type_name(const Token &t) const {
    if (t.kind != TokenKind::Identifier)
      return false;
    return kTypeWords.count(t.text) || kQualifiers.count(t.text) || t.text == "struct" ||
           t.text == "union" || t.text == "enum" || is_typedef_name(t) ||
           t.text == "__attribute__";
  }

  // `T x`, `T *x;` with T unknown: treat T as a type name from a missing header.
  bool looks_like_unknown_type() const {
    const Token &a = peek();
    if (a.kind != TokenKind::Identifier || kKeywords.count(a.text))
      return false;
    const Token &b = peek(1);
    if (b.kind == TokenKind::Identifier && !kKeywords.count(b.text))
      return true;
    if (b.is_punct("*")) {
      std::size_t k = 1;
      while (peek(k).is_punct("*"))
        ++k;
      const Token &c = peek(k);
      const Token &d = peek(k + 1);
      return c.kind == TokenKind::Identifier && !kKeywords.count(c.text) &&
             (d.is_punct(";") || d.is_punct("=") || d.is_punct(",") || d.is_punct("[") ||
              d.is_punct(")"));
    }
    return false;
  }

  bool starts_declaration() const {
    const Token &t = peek();
    if (t.kind != TokenKind::Identifier)
      return false;
    if (kStorage.count(t.text) || kQualifiers.count(t.text) || kTypeWords.count(t.text) ||
        t.text == "struct" || t.text == "union" || t.text == "enum" ||
        t.text == "__attribute__" || t.text == "__extension__")
      return true;
    if (is_typedef_name(t) && !peek(1).is_punct("=") && !peek(1).is_punct("(") &&
        !peek(1).is_punct("[") && !peek(1).is_punct(".") && !peek(1).is_punct("->") &&
        !is_assign_op(peek(1)))
      return true;
    return looks_like_unknown_type();
  }

  void parse_attribute(bool &pure, bool &cnst) {
    next(); // __attribute__
    if (!at_punct("("))
      return;
    int depth = 0;
    do {
      const Token &t = next();
      if (t.is_punct("("))
        ++depth;
      else if (t.is_punct(")"))
        --depth;
      else if (depth == 2 && (t.is_ident("pure") || t.is_ident("__pure__")))
        pure = true;
      else if (depth == 2 && (t.is_ident("const") || t.is_ident("__const__")))
        cnst = true;
      if (t.kind == TokenKind::Eof)
        fail("')'");
    } while (depth > 0);
  }

  void skip_parens() {
    if (!at_punct("("))
      return;
    int depth = 0;
    do {
      const Token &t = next();
      if (t.is_punct("("))
        ++depth;
      else if (t.is_punct(")"))
        --depth;
      if (t.kind == TokenKind::Eof)
        fail("')'");
    } while (depth > 0);
  }

  DeclSpec parse_decl_specs(bool allow_unknown) {
    DeclSpec spec;
    while (true) {
      const Token &t = peek();
      if (t.kind != TokenKind::Identifier)
        break;
      const std::string &w = t.text;
      if (kStorage.count(w)) {
        spec.is_static |= w == "static";
        spec.is_extern |= w == "extern";
        spec.is_typedef |= w == "typedef";
        next();
      } else if (kQualifiers.count(w) || w == "__extension__") {
        next();
      } else if (w == "__attribute__" || w == "__attribute") {
        parse_attribute(spec.attr_pure, spec.attr_const);
      } else if (w == "__declspec" || w == "__asm__" || w == "asm") {
        next();
        skip_parens();
      } else if (kTypeWords.count(w)) {
        spec.base += (spec.base.empty() ? "" : " ") + w;
        spec.has_type = true;
        next();
      } else if (w == "struct" || w == "union") {
        parse_struct(spec);
      } else if (w == "enum") {
        parse_enum(spec);
      } else if (!spec.has_type && is_typedef_name(t)) {
        spec.base = w;
        spec.via_typedef = typedefs_.at(w);
        spec.has_type = true;
        next();
      } else if (!spec.has_type && allow_unknown && looks_like_unknown_type()) {
        spec.base = w;
        spec.has_type = true;
        spec.unknown_type = true;
        next();
      } else {
        break;
      }
      spec.consumed = true;
    }
    return spec;
  }

  void parse_struct(DeclSpec &spec) {
    std::string kw = next().text;
    std::string tag = "<anonymous>";
    while (at_ident("__attribute__"))
      parse_attribute(spec.attr_pure, spec.attr_const);
    if (peek().kind == TokenKind::Identifier && !at_punct("{"))
      tag = next().text;
    if (at_punct("{"))
      pos_ = matching_brace(pos_);
    spec.base = kw + " " + tag;
    spec.is_struct = true;
    spec.has_type = true;
  }

  void parse_enum(DeclSpec &spec) {
    next();
    std::string tag = "<anonymous>";
    if (peek().kind == TokenKind::Identifier)
      tag = next().text;
    spec.base = "enum " + tag;
    spec.has_type = true;
    if (!accept("{"))
      return;
    while (!at_punct("}")) {
      std::size_t start = pos_;
      auto n = make(NodeKind::VarDecl, start);
      DeclInfo info;
      info.name = expect_ident();
      info.base_type = "int";
      info.is_enum_constant = true;
      if (accept("=")) {
        n->add(parse_conditional());
        info.has_init = true;
      }
      n->decl = std::move(info);
      finish(*n, start);
      spec.enum_constants.push_back(std::move(n));
      if (!accept(","))
        break;
    }
    expect("}");
  }

  void parse_post_attributes(Declarator &d) {
    while (true) {
      if (at_ident("__attribute__") || at_ident("__attribute")) {
        parse_attribute(d.attr_pure, d.attr_const);
      } else if (at_ident("asm") || at_ident("__asm__") || at_ident("__asm")) {
        next();
        skip_parens();
      } else {
        break;
      }
    }
  }

  Declarator parse_declarator(bool abstract_ok) {
    Declarator d;
    while (true) {
      if (accept("*")) {
        ++d.pointer_depth;
      } else if (peek().kind == TokenKind::Identifier && kQualifiers.count(peek().text)) {
        next();
      } else if (at_ident("__attribute__")) {
        parse_attribute(d.attr_pure, d.attr_const);
      } else {
        break;
      }
    }
    if (peek().kind == TokenKind::Identifier && !kKeywords.count(peek().text) &&
        !(abstract_ok && is_typedef_name(peek()) && peek(1).is_punct(")"))) {
      d.name_span = peek().span;
      d.name = next().text;
    } else if (at_punct("(") && (at_punct("*", 1) || at_punct("(", 1) || at_punct("^", 1))) {
      next();
      Declarator inner = parse_declarator(abstract_ok);
      expect(")");
      d.name = inner.name;
      d.name_span = inner.name_span;
      d.function_pointer = inner.pointer_depth > 0;
      for (auto &dim : inner.dims)
        d.dims.push_back(std::move(dim));
    } else if (!abstract_ok) {
      fail("declarator");
    }
    while (true) {
      if (at_punct("[")) {
        std::size_t open = pos_;
        next();
        while (peek().kind == TokenKind::Identifier &&
               (kQualifiers.count(peek().text) || peek().text == "static"))
          next();
        if (at_punct("]")) {
          d.dims.push_back(empty_at(open));
        } else {
          d.dims.push_back(parse_assignment());
        }
        expect("]");
      } else if (at_punct("(")) {
        next();
        if (d.is_function || d.function_pointer) {
          // Parameter list of a function pointer or a returned function type.
          std::vector<NodePtr> ignored;
          bool v = false, knr = false;
          parse_params(ignored, v, knr);
        } else {
          d.is_function = true;
          parse_params(d.params, d.variadic, d.knr);
        }
      } else {
        break;
      }
    }
    return d;
  }

  // Called after '('; consumes the closing ')'.
  void parse_params(std::vector<NodePtr> &params, bool &variadic, bool &knr) {
    if (accept(")"))
      return;
    if (at_ident("void") && at_punct(")", 1)) {
      next();
      next();
      return;
    }
    while (true) {
      if (accept("...")) {
        variadic = true;
      } else if (peek().kind == TokenKind::Identifier && !starts_type_name(peek()) &&
                 !kStorage.count(peek().text) && (at_punct(",", 1) || at_punct(")", 1))) {
        // K&R identifier list.
        knr = true;
        std::size_t start = pos_;
        auto p = make(NodeKind::ParamDecl, start);
        DeclInfo info;
        info.name = next().text;
        info.base_type = "int";
        p->decl = std::move(info);
        finish(*p, start);
        params.push_back(std::move(p));
      } else {
        std::size_t start = pos_;
        DeclSpec spec = parse_decl_specs(true);
        if (!spec.consumed)
          fail("parameter declaration");
        Declarator d = parse_declarator(true);
        auto p = make(NodeKind::ParamDecl, start);
        DeclInfo info = make_info(spec, d);
        if (d.is_function) {
          info.shape = ShapeKind::Pointer;
          info.is_function_pointer = true;
        }
        p->decl = std::move(info);
        for (auto &dim : d.dims)
          p->add(std::move(dim));
        p->decl->dim_count = p->size();
        finish(*p, start);
        params.push_back(std::move(p));
      }
      if (accept(")"))
        return;
      expect(",");
    }
  }

  DeclInfo make_info(const DeclSpec &spec, const Declarator &d) const {
    DeclInfo info;
    info.name = d.name;
    info.base_type = spec.base.empty() ? "int" : spec.base;
    info.is_static = spec.is_static;
    info.is_extern = spec.is_extern;
    info.is_typedef = spec.is_typedef;
    info.attr_pure = spec.attr_pure || d.attr_pure;
    info.attr_const = spec.attr_const || d.attr_const;
    info.pointer_depth = d.pointer_depth + spec.via_typedef.pointer_depth;
    info.array_rank = static_cast<int>(d.dims.size()) + spec.via_typedef.array_rank;
    info.variadic = d.variadic;
    if (d.function_pointer) {
      info.shape = ShapeKind::Pointer;
      info.is_function_pointer = true;
    } else if (d.is_function) {
      info.shape = ShapeKind::Function;
    } else if (info.array_rank > 0) {
      info.shape = ShapeKind::Array;
    } else if (info.pointer_depth > 0) {
      info.shape = ShapeKind::Pointer;
    } else if (spec.is_struct || spec.via_typedef.is_struct) {
      info.shape = ShapeKind::Struct;
    } else if (spec.unknown_type) {
      info.shape = ShapeKind::Unknown;
    } else {
      info.shape = ShapeKind::Scalar;
    }
    return info;
  }

  void register_typedef(const DeclSpec &spec, const Declarator &d) {
    TypedefInfo ti;
    ti.is_struct = spec.is_struct || spec.via_typedef.is_struct;
    ti.pointer_depth = d.pointer_depth + spec.via_typedef.pointer_depth;
    ti.array_rank = static_cast<int>(d.dims.size()) + spec.via_typedef.array_rank;
    if (d.function_pointer)
      ti.pointer_depth = std::max(ti.pointer_depth, 1);
    typedefs_[d.name] = ti;
  }

  NodePtr parse_initializer() {
    if (!at_punct("{"))
      return parse_assignment();
    std::size_t start = pos_;
    next();
    auto list = make(NodeKind::InitList, start);
    while (!at_punct("}")) {
      // Designators are parsed and dropped.
      while (at_punct(".") || at_punct("[")) {
        if (accept(".")) {
          expect_ident();
        } else {
          next();
          parse_conditional();
          expect("]");
        }
        if (!at_punct(".") && !at_punct("["))
          expect("=");
      }
      list->add(parse_initializer());
      if (!accept(","))
        break;
    }
    expect("}");
    finish(*list, start);
    return list;
  }

  // Declarators after the specifiers, through the terminating ';'.
  NodePtr parse_declaration_rest(DeclSpec &spec, std::size_t start) {
    auto decl = make(NodeKind::Declaration, start);
    for (auto &e : spec.enum_constants)
      decl->add(std::move(e));
    spec.enum_constants.clear();
    if (!at_punct(";")) {
      while (true) {
        std::size_t dstart = pos_;
        Declarator d = parse_declarator(false);
        parse_post_attributes(d);
        auto var = make(NodeKind::VarDecl, dstart);
        DeclInfo info = make_info(spec, d);
        if (spec.is_typedef)
          register_typedef(spec, d);
        for (auto &dim : d.dims)
          var->add(std::move(dim));
        info.dim_count = var->size();
        if (accept("=")) {
          var->add(parse_initializer());
          info.has_init = true;
        }
        var->decl = std::move(info);
        finish(*var, dstart);
        decl->add(std::move(var));
        if (!accept(","))
          break;
      }
    }
    expect(";");
    finish(*decl, start);
    return decl;
  }

  NodePtr parse_external() {
    const Token &t = peek();
    if (t.kind == TokenKind::PureMarker) {
      pending_pure_ = true;
      next();
      return nullptr;
    }
    if (t.kind == TokenKind::Pragma)
      return parse_pragma(false);
    if (accept(";"))
      return nullptr;
    std::size_t start = pos_;
    DeclSpec spec = parse_decl_specs(true);
    if (!spec.consumed) {
      // Implicit int: `main() { ... }`.
      if (!(peek().kind == TokenKind::Identifier && at_punct("(", 1)))
        fail("declaration");
      spec.base = "int";
    }
    if (at_punct(";")) {
      pending_pure_ = false;
      return parse_declaration_rest(spec, start);
    }
    std::size_t dstart = pos_;
    Declarator d = parse_declarator(false);
    parse_post_attributes(d);
    if (d.is_function && !spec.is_typedef &&
        (at_punct("{") || (d.knr && starts_declaration()))) {
      return parse_function(spec, d, start);
    }
    pending_pure_ = false;
    // Plain declaration: re-parse the declarator list from its start.
    pos_ = dstart;
    return parse_declaration_rest(spec, start);
  }

  NodePtr parse_function(DeclSpec &spec, Declarator &d, std::size_t start) {
    auto fn = std::make_unique<AstNode>(NodeKind::FunctionDef, span_from(start));
    DeclInfo info = make_info(spec, d);
    info.shape = ShapeKind::Function;
    info.pure_marker = pending_pure_;
    pending_pure_ = false;
    info.param_count = d.params.size();
    fn->text = d.name;
    for (auto &p : d.params)
      fn->add(std::move(p));

    bool opaque = d.variadic || d.knr;
    std::string why = d.variadic ? "variadic function definition" : "K&R-style definition";
    if (d.knr) {
      while (!at_punct("{") && peek().kind != TokenKind::Eof)
        next();
    }
    std::size_t body_start = pos_;
    if (!opaque) {
      try {
        fn->add(parse_compound());
      } catch (const ParseFailure &f) {
        tu_.diagnostics.push_back(f.diag);
        opaque = true;
        why.clear();
      } catch (const UnsupportedFailure &f) {
        tu_.diagnostics.push_back(f.diag);
        opaque = true;
        why.clear();
      }
    }
    if (opaque) {
      if (!why.empty())
        tu_.diagnostics.push_back(diag_at(toks_[body_start], DiagKind::UnsupportedConstruct,
                                          Severity::Warning,
                                          why + " '" + d.name + "' treated as opaque"));
      // Drop a partially parsed body.
      if (fn->size() > info.param_count)
        fn->children.pop_back();
      pos_ = body_start;
      std::size_t end = matching_brace(body_start);
      pos_ = end;
      auto body = std::make_unique<AstNode>(NodeKind::Opaque, span_from(body_start));
      fn->add(std::move(body));
      fn->opaque = true;
    }
    fn->decl = std::move(info);
    finish(*fn, start);
    return fn;
  }

  // --- statements ----------------------------------------------------------

  NodePtr parse_pragma(bool in_function) {
    std::size_t start = pos_;
    const Token &t = next();
    auto node = make(NodeKind::OmpPragma, start);
    auto dir = parse_omp_directive(t.text);
    if (!dir) {
      OmpDirective raw;
      raw.kind = OmpKind::Other;
      raw.name = t.text.size() > 4 ? t.text.substr(4) : t.text;
      dir = raw;
    }
    if (in_function && dir->takes_statement()) {
      if (at_punct("}") || peek().kind == TokenKind::Eof)
        fail("statement after '#pragma omp " + dir->name + "'");
      node->add(parse_statement());
    }
    node->omp = std::move(*dir);
    finish(*node, start);
    return node;
  }

  NodePtr parse_compound() {
    std::size_t start = pos_;
    expect("{");
    auto block = make(NodeKind::CompoundStmt, start);
    while (!at_punct("}")) {
      if (peek().kind == TokenKind::Eof)
        fail("'}'");
      if (peek().kind == TokenKind::PureMarker) {
        next();
        continue;
      }
      block->add(parse_statement());
    }
    next();
    finish(*block, start);
    return block;
  }

  NodePtr parse_statement() {
    const Token &t = peek();
    std::size_t start = pos_;
    if (t.kind == TokenKind::Pragma)
      return parse_pragma(true);
    if (t.kind == TokenKind::PureMarker) {
      next();
      return parse_statement();
    }
    if (t.is_punct("{"))
      return parse_compound();
    if (t.is_punct(";")) {
      next();
      return make(NodeKind::NullStmt, start);
    }
    if (t.kind == TokenKind::Identifier) {
      const std::string &w = t.text;
      if (w == "if")
        return parse_if();
      if (w == "for")
        return parse_for();
      if (w == "while") {
        next();
        expect("(");
        auto n = std::make_unique<AstNode>(NodeKind::WhileStmt, t.span);
        n->add(parse_expression());
        expect(")");
        n->add(parse_statement());
        finish(*n, start);
        return n;
      }
      if (w == "do") {
        next();
        auto n = std::make_unique<AstNode>(NodeKind::DoStmt, t.span);
        n->add(parse_statement());
        if (!at_ident("while"))
          fail("'while'");
        next();
        expect("(");
        n->add(parse_expression());
        expect(")");
        expect(";");
        finish(*n, start);
        return n;
      }
      if (w == "switch") {
        next();
        expect("(");
        auto n = std::make_unique<AstNode>(NodeKind::SwitchStmt, t.span);
        n->add(parse_expression());
        expect(")");
        n->add(parse_statement());
        finish(*n, start);
        return n;
      }
      if (w == "case" || w == "default") {
        next();
        auto n = std::make_unique<AstNode>(
            w == "case" ? NodeKind::CaseStmt : NodeKind::DefaultStmt, t.span);
        if (w == "case")
          n->add(parse_conditional());
        expect(":");
        if (at_punct("}"))
          n->add(make(NodeKind::NullStmt, pos_));
        else
          n->add(parse_statement());
        finish(*n, start);
        return n;
      }
      if (w == "break" || w == "continue") {
        next();
        expect(";");
        return make(w == "break" ? NodeKind::BreakStmt : NodeKind::ContinueStmt, start);
      }
      if (w == "return") {
        next();
        auto n = make(NodeKind::ReturnStmt, start);
        if (!at_punct(";"))
          n->add(parse_expression());
        expect(";");
        finish(*n, start);
        return n;
      }
      if (w == "goto")
        unsupported(t, "goto statement");
      if (w == "asm" || w == "__asm__" || w == "__asm")
        unsupported(t, "inline assembly");
      if (!kKeywords.count(w) && !is_typedef_name(t) && at_punct(":", 1))
        unsupported(t, "labeled statement");
      if (starts_declaration()) {
        DeclSpec spec = parse_decl_specs(true);
        return parse_declaration_rest(spec, start);
      }
    }
    auto n = make(NodeKind::ExprStmt, start);
    n->add(parse_expression());
    expect(";");
    finish(*n, start);
    return n;
  }

  NodePtr parse_if() {
    std::size_t start = pos_;
    next();
    expect("(");
    auto n = make(NodeKind::IfStmt, start);
    n->add(parse_expression());
    expect(")");
    n->add(parse_statement());
    if (at_ident("else")) {
      next();
      n->add(parse_statement());
    }
    finish(*n, start);
    return n;
  }

  NodePtr parse_for() {
    std::size_t start = pos_;
    next();
    expect("(");
    auto n = make(NodeKind::ForStmt, start);
    if (at_punct(";")) {
      n->add(empty_at(pos_));
      next();
    } else if (starts_declaration()) {
      std::size_t ds = pos_;
      DeclSpec spec = parse_decl_specs(true);
      n->add(parse_declaration_rest(spec, ds));
    } else {
      n->add(parse_expression());
      expect(";");
    }
    if (at_punct(";"))
      n->add(empty_at(pos_));
    else
      n->add(parse_expression());
    expect(";");
    if (at_punct(")"))
      n->add(empty_at(pos_));
    else
      n->add(parse_expression());
    expect(")");
    n->add(parse_statement());
    finish(*n, start);
    return n;
  }

  // --- expressions ---------------------------------------------------------

  NodePtr parse_expression() {
    std::size_t start = pos_;
    NodePtr lhs = parse_assignment();
    while (at_punct(",")) {
      next();
      auto n = make(NodeKind::BinaryExpr, start);
      n->op = ",";
      n->add(std::move(lhs));
      n->add(parse_assignment());
      finish(*n, start);
      lhs = std::move(n);
    }
    return lhs;
  }

  NodePtr parse_assignment() {
    std::size_t start = pos_;
    NodePtr lhs = parse_conditional();
    if (is_assign_op(peek())) {
      auto n = make(NodeKind::AssignExpr, start);
      n->op = next().text;
      n->add(std::move(lhs));
      n->add(parse_assignment());
      finish(*n, start);
      return n;
    }
    return lhs;
  }

  NodePtr parse_conditional() {
    std::size_t start = pos_;
    NodePtr c = parse_binary(1);
    if (!at_punct("?"))
      return c;
    next();
    auto n = make(NodeKind::ConditionalExpr, start);
    n->add(std::move(c));
    n->add(parse_expression());
    expect(":");
    n->add(parse_conditional());
    finish(*n, start);
    return n;
  }

  NodePtr parse_binary(int min_prec) {
    std::size_t start = pos_;
    NodePtr lhs = parse_cast();
    while (true) {
      int p = binary_precedence(peek());
      if (p < min_prec)
        break;
      auto n = make(NodeKind::BinaryExpr, start);
      n->op = next().text;
      n->add(std::move(lhs));
      n->add(parse_binary(p + 1));
      finish(*n, start);
      lhs = std::move(n);
    }
    return lhs;
  }

  std::string parse_type_name() {
    std::size_t start = pos_;
    DeclSpec spec = parse_decl_specs(false);
    if (!spec.consumed)
      fail("type name");
    parse_declarator(true);
    std::string text;
    for (std::size_t i = start; i < pos_; ++i)
      text += (i > start && toks_[i].leading_space ? " " : "") + toks_[i].text;
    return text;
  }

  NodePtr parse_unary() {
    std::size_t start = pos_;
    const Token &t = peek();
    if (t.is_punct("++") || t.is_punct("--")) {
      auto n = make(NodeKind::UnaryExpr, start);
      n->op = next().text;
      n->prefix = true;
      n->add(parse_unary());
      finish(*n, start);
      return n;
    }
    if (t.is_punct("&") || t.is_punct("*") || t.is_punct("+") || t.is_punct("-") ||
        t.is_punct("~") || t.is_punct("!")) {
      auto n = make(NodeKind::UnaryExpr, start);
      n->op = next().text;
      n->prefix = true;
      n->add(parse_cast());
      finish(*n, start);
      return n;
    }
    if (t.is_ident("sizeof") || t.is_ident("_Alignof") || t.is_ident("__alignof__")) {
      next();
      auto n = make(NodeKind::SizeofExpr, start);
      if (at_punct("(") && starts_type_name(peek(1))) {
        next();
        n->text = parse_type_name();
        expect(")");
      } else {
        n->add(parse_unary());
      }
      finish(*n, start);
      return n;
    }
    if (t.is_ident("__extension__")) {
      next();
      return parse_cast();
    }
    return parse_postfix();
  }

  NodePtr parse_cast() {
    std::size_t start = pos_;
    if (at_punct("(") && starts_type_name(peek(1))) {
      next();
      auto n = make(NodeKind::CastExpr, start);
      n->text = parse_type_name();
      expect(")");
      if (at_punct("{"))
        n->add(parse_initializer());
      else
        n->add(parse_cast());
      finish(*n, start);
      return n;
    }
    return parse_unary();
  }

  NodePtr parse_postfix() {
    std::size_t start = pos_;
    NodePtr e = parse_primary();
    while (true) {
      if (at_punct("[")) {
        next();
        auto n = make(NodeKind::ArraySubscript, start);
        n->add(std::move(e));
        n->add(parse_expression());
        expect("]");
        finish(*n, start);
        e = std::move(n);
      } else if (at_punct("(")) {
        const AstNode *callee = e.get();
        if (callee->kind == NodeKind::Identifier &&
            (callee->text == "setjmp" || callee->text == "longjmp" ||
             callee->text == "_setjmp" || callee->text == "sigsetjmp" ||
             callee->text == "siglongjmp"))
          unsupported(peek(), "call to " + callee->text);
        next();
        auto n = make(NodeKind::CallExpr, start);
        n->add(std::move(e));
        if (!at_punct(")")) {
          while (true) {
            n->add(parse_assignment());
            if (!accept(","))
              break;
          }
        }
        expect(")");
        finish(*n, start);
        e = std::move(n);
      } else if (at_punct(".") || at_punct("->")) {
        auto n = make(NodeKind::MemberExpr, start);
        n->op = next().text;
        n->text = expect_ident();
        n->add(std::move(e));
        finish(*n, start);
        e = std::move(n);
      } else if (at_punct("++") || at_punct("--")) {
        auto n = make(NodeKind::UnaryExpr, start);
        n->op = next().text;
        n->prefix = false;
        n->add(std::move(e));
        finish(*n, start);
        e = std::move(n);
      } else {
        break;
      }
    }
    return e;
  }

  NodePtr parse_primary() {
    std::size_t start = pos_;
    const Token &t = peek();
    switch (t.kind) {
    case TokenKind::Identifier: {
      if (kKeywords.count(t.text) || kTypeWords.count(t.text))
        fail("expression");
      auto n = make(NodeKind::Identifier, start);
      n->text = next().text;
      finish(*n, start);
      return n;
    }
    case TokenKind::Number:
    case TokenKind::CharLiteral: {
      auto n = make(NodeKind::Literal, start);
      n->text = next().text;
      finish(*n, start);
      return n;
    }
    case TokenKind::StringLiteral: {
      auto n = make(NodeKind::Literal, start);
      while (peek().kind == TokenKind::StringLiteral)
        n->text += next().text;
      finish(*n, start);
      return n;
    }
    case TokenKind::Punct:
      if (t.is_punct("(")) {
        if (at_punct("{", 1))
          unsupported(t, "statement expression");
        next();
        NodePtr inner = parse_expression();
        expect(")");
        // Parentheses are not represented; widen the span to include them.
        inner->span = span_from(start);
        return inner;
      }
      break;
    default:
      break;
    }
    fail("expression");
  }
};

} // namespace

TranslationUnit parse_translation_unit(PreprocessedUnit pp) {
  TranslationUnit tu;
  tu.files = std::move(pp.files);
  tu.system_file = std::move(pp.system_file);
  tu.diagnostics = std::move(pp.diagnostics);
  tu.partial = pp.partial;
  Parser parser(tu, pp.tokens);
  tu.root = parser.parse_unit();
  link_parents(*tu.root);
  return tu;
}

TranslationUnit parse_source(const SourceFile &source, const PreprocessOptions &options) {
  return parse_translation_unit(preprocess(source, options));
}

} // namespace pwlite
