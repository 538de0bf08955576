#include "pwlite/semantics/purity.hpp"

#include <algorithm>
#include <fstream>

namespace pwlite {

std::string_view to_string(Purity p) {
  switch (p) {
  case Purity::Pure: return "pure";
  case Purity::Unknown: return "unknown";
  case Purity::Impure: return "impure";
  }
  return "?";
}

std::string_view to_string(ImpurityReason r) {
  switch (r) {
  case ImpurityReason::WritesGlobal: return "writes_global";
  case ImpurityReason::WritesThroughPointerParam: return "writes_through_pointer_param";
  case ImpurityReason::PerformsIo: return "performs_io";
  case ImpurityReason::CallsImpure: return "calls_impure";
  case ImpurityReason::OpaqueBody: return "opaque_body";
  case ImpurityReason::RecursiveUnresolved: return "recursive_unresolved";
  case ImpurityReason::CallsUnknown: return "calls_unknown";
  case ImpurityReason::WritesThroughUnknownPointer: return "writes_through_unknown_pointer";
  }
  return "?";
}

bool PurityClass::has(ImpurityReason r) const {
  return std::find(reasons.begin(), reasons.end(), r) != reasons.end();
}

const std::vector<std::string> &default_io_functions() {
  static const std::vector<std::string> names = {"printf", "fprintf", "scanf", "fopen",
                                                 "fwrite", "fread",   "exit"};
  return names;
}

std::vector<std::string> load_io_functions(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot read io-function list " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos)
      continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

namespace {

struct Local {
  Purity purity = Purity::Pure;
  std::vector<ImpurityReason> reasons;
  std::vector<int> callees;  // indices into functions
  bool calls_missing = false; // callee never declared anywhere
  bool calls_indirect = false;
  bool io = false;
};

void add(Local &l, ImpurityReason r, Purity p) {
  l.reasons.push_back(r);
  l.purity = std::max(l.purity, p);
}

} // namespace

CalleeBinder::CalleeBinder(const std::vector<FunctionFacts> &functions)
    : functions_(functions) {
  for (int i = 0; i < static_cast<int>(functions.size()); ++i)
    by_name_[functions[i].name].push_back(i);
}

// A static definition binds within its unit, otherwise the external
// definition, otherwise any declaration.
int CalleeBinder::bind(const std::string &name, int unit) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end())
    return -1;
  int best = -1, score = -1;
  for (int i : it->second) {
    const FunctionFacts &f = functions_[i];
    int s = 0;
    if (f.definition && f.is_static && f.unit == unit)
      s = 3;
    else if (f.definition && !f.is_static)
      s = 2;
    else if (!f.definition)
      s = 1;
    else
      continue; // static definition in another unit
    if (s > score)
      best = i, score = s;
  }
  return best;
}

std::vector<PurityClass> classify_purity(const std::vector<FunctionFacts> &functions,
                                         const PurityOptions &options) {
  const std::unordered_set<std::string> io(options.io_functions.begin(),
                                           options.io_functions.end());
  CalleeBinder binder(functions);
  auto bind = [&](const std::string &name, int unit) { return binder.bind(name, unit); };

  std::vector<Local> local(functions.size());
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const FunctionFacts &f = functions[i];
    Local &l = local[i];
    if (io.count(f.name)) {
      add(l, ImpurityReason::PerformsIo, Purity::Impure);
      continue;
    }
    if (!f.definition) {
      if (!f.annotated_pure)
        add(l, ImpurityReason::CallsUnknown, Purity::Unknown);
      continue;
    }
    if (f.definition->opaque || !f.def_use) {
      add(l, ImpurityReason::OpaqueBody, Purity::Impure);
      continue;
    }
    for (const StmtEffects &u : f.def_use->units) {
      for (const Access &a : u.writes) {
        const Symbol *s = a.symbol;
        if (!s) {
          add(l, ImpurityReason::WritesThroughUnknownPointer, Purity::Unknown);
        } else if (s->storage == Storage::Global || s->storage == Storage::StaticFile ||
                   s->storage == Storage::StaticLocal) {
          add(l, ImpurityReason::WritesGlobal, Purity::Impure);
        } else if (a.through_pointer || (s->storage == Storage::Parameter &&
                                         s->shape == ShapeKind::Array &&
                                         !a.subscript.dims.empty())) {
          if (s->storage == Storage::Parameter)
            add(l, ImpurityReason::WritesThroughPointerParam, Purity::Impure);
          else
            add(l, ImpurityReason::WritesThroughUnknownPointer, Purity::Unknown);
        }
      }
      for (const CallSite &c : u.calls) {
        if (c.indirect) {
          l.calls_indirect = true;
          continue;
        }
        if (io.count(c.callee)) {
          l.io = true;
          continue;
        }
        int callee = bind(c.callee, f.unit);
        if (callee < 0)
          l.calls_missing = true;
        else
          l.callees.push_back(callee);
      }
    }
    if (l.io)
      add(l, ImpurityReason::PerformsIo, Purity::Impure);
    if (l.calls_indirect || l.calls_missing)
      add(l, ImpurityReason::CallsUnknown, Purity::Unknown);
  }

  // Fixed point: start from local facts and propagate along call edges.
  std::vector<Purity> state(functions.size());
  for (std::size_t i = 0; i < functions.size(); ++i)
    state[i] = local[i].purity;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < functions.size(); ++i) {
      Purity p = state[i];
      for (int c : local[i].callees)
        p = std::max(p, state[c]);
      if (p != state[i]) {
        state[i] = p;
        changed = true;
      }
    }
  }

  std::vector<PurityClass> out(functions.size());
  for (std::size_t i = 0; i < functions.size(); ++i) {
    PurityClass &pc = out[i];
    pc.purity = state[i];
    pc.reasons = local[i].reasons;
    for (int c : local[i].callees) {
      if (state[c] == Purity::Impure)
        pc.reasons.push_back(ImpurityReason::CallsImpure);
      else if (state[c] == Purity::Unknown)
        pc.reasons.push_back(ImpurityReason::CallsUnknown);
    }
    std::sort(pc.reasons.begin(), pc.reasons.end());
    pc.reasons.erase(std::unique(pc.reasons.begin(), pc.reasons.end()), pc.reasons.end());
  }
  return out;
}

std::vector<FunctionFacts>
collect_function_facts(const SymbolTable &table,
                       const std::unordered_map<const AstNode *, DefUseInfo> &def_use, int unit) {
  std::vector<FunctionFacts> out;
  for (const Symbol *s : table.file_scope().symbols) {
    if (!s->is_function() || !s->decl)
      continue;
    FunctionFacts f;
    f.name = s->name;
    f.unit = unit;
    f.annotated_pure = s->attr_pure;
    if (s->decl->kind == NodeKind::FunctionDef) {
      f.definition = s->decl;
      f.is_static = s->storage == Storage::StaticFile;
      auto it = def_use.find(s->decl);
      if (it != def_use.end())
        f.def_use = &it->second;
    }
    out.push_back(std::move(f));
  }
  return out;
}

} // namespace pwlite
