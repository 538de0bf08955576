#include "analysis_helpers.hpp"

#include "fixtures.hpp"

#include <stdexcept>

namespace pwlite::test {

const AstNode &Analyzed::function(std::string_view name) const {
  for (const AstNode *f : tu.functions())
    if (f->text == name)
      return *f;
  throw std::runtime_error("no function " + std::string(name));
}

const DefUseInfo &Analyzed::def_use(std::string_view name) const {
  return du.at(&function(name));
}

const AstNode *Analyzed::identifier(const AstNode &scope, std::string_view name) const {
  const AstNode *out = nullptr;
  walk(scope, [&](const AstNode &n) {
    if (!out && n.kind == NodeKind::Identifier && n.text == name)
      out = &n;
    return !out;
  });
  return out;
}

const AstNode *Analyzed::first(const AstNode &scope, NodeKind kind) const {
  const AstNode *out = nullptr;
  walk(scope, [&](const AstNode &n) {
    if (!out && n.kind == kind)
      out = &n;
    return !out;
  });
  return out;
}

namespace {

std::unique_ptr<Analyzed> finish(TranslationUnit tu) {
  auto a = std::make_unique<Analyzed>();
  a->tu = std::move(tu);
  a->table = build_symbol_table(a->tu);
  for (const AstNode *f : a->tu.functions())
    a->du.emplace(f, compute_def_use(*f, a->table));
  return a;
}

} // namespace

std::unique_ptr<Analyzed> analyze_text(const std::string &text, const std::string &path) {
  PreprocessOptions o;
  o.sysroot = sysroot_dir();
  return finish(parse_source(SourceFile(path, text), o));
}

std::unique_ptr<Analyzed> analyze_file(const std::filesystem::path &path) {
  PreprocessOptions o;
  o.sysroot = sysroot_dir();
  return finish(parse_source(SourceFile::load(path), o));
}

} // namespace pwlite::test
