#include "pwlite/patterns/pattern.hpp"

#include <algorithm>
#include <set>

namespace pwlite {

std::string_view to_string(PatternKind kind) {
  switch (kind) {
  case PatternKind::Forall: return "forall";
  case PatternKind::ScalarReduction: return "scalar_reduction";
  case PatternKind::SparseForall: return "sparse_forall";
  case PatternKind::SparseReduction: return "sparse_reduction";
  case PatternKind::Sequential: return "sequential";
  case PatternKind::Unknown: return "unknown";
  }
  return "?";
}

std::string PatternClass::str() const {
  std::string out(to_string(kind));
  if (kind == PatternKind::ScalarReduction || kind == PatternKind::SparseReduction) {
    for (std::size_t k = 0; k < reductions.size(); ++k) {
      out += k == 0 ? "(" : ", ";
      out += reductions[k].op + ", " + reductions[k].variable->name;
    }
    if (!reductions.empty())
      out += ")";
  }
  return out;
}

namespace {

std::string describe(const Dependence &d) {
  std::string out = "carried " + std::string(to_string(d.kind)) + " dependence";
  if (d.symbol)
    out += " on '" + d.symbol->name + "'";
  if (d.distance)
    out += " (distance " + std::to_string(*d.distance) + ")";
  return out;
}

} // namespace

PatternClass classify_pattern(const LoopNest &nest, const DependenceSet &deps) {
  PatternClass pc;
  if (!nest.canonical) {
    pc.kind = PatternKind::Unknown;
    pc.reason = nest.noncanonical_reason.empty() ? "loop is not in canonical form"
                                                 : nest.noncanonical_reason;
    pc.reason_span = nest.loop->span;
    return pc;
  }
  if (const Dependence *b = deps.first_blocking()) {
    pc.kind = PatternKind::Unknown;
    pc.reason = b->reason;
    pc.reason_span = b->span;
    return pc;
  }

  std::set<const Symbol *> reduced, sparse;
  for (const Dependence *d : deps.carried()) {
    if (d->reduction) {
      reduced.insert(d->symbol);
      continue;
    }
    auto it = d->indirect ? deps.indirect.find(d->symbol) : deps.indirect.end();
    if (it == deps.indirect.end() || it->second.read_elsewhere) {
      pc.kind = PatternKind::Sequential;
      pc.reason = describe(*d);
      pc.reason_span = d->span;
      return pc;
    }
    sparse.insert(d->symbol);
  }

  for (const Symbol *s : reduced)
    pc.reductions.push_back({deps.scalars.at(s).op, s});
  std::sort(pc.reductions.begin(), pc.reductions.end(),
            [](const Reduction &a, const Reduction &b) { return a.variable->name < b.variable->name; });

  if (sparse.empty()) {
    pc.kind = reduced.empty() ? PatternKind::Forall : PatternKind::ScalarReduction;
    return pc;
  }

  std::string op;
  bool all_reduction = true, all_plain = true;
  for (const Symbol *s : sparse) {
    const IndirectWrites &iw = deps.indirect.at(s);
    if (iw.all_reduction && (op.empty() || op == iw.op)) {
      op = iw.op;
      all_plain = false;
    } else if (iw.all_reduction) {
      all_reduction = all_plain = false;
    } else {
      all_reduction = false;
    }
  }
  if (all_reduction && sparse.size() == 1) {
    pc.kind = PatternKind::SparseReduction;
    pc.reductions = {{op, *sparse.begin()}};
  } else if (all_plain && reduced.empty()) {
    pc.kind = PatternKind::SparseForall;
  } else {
    pc.kind = PatternKind::Sequential;
    pc.reason = "mixed indirect updates of '" + (*sparse.begin())->name + "'";
    pc.reason_span = nest.loop->span;
  }
  return pc;
}

} // namespace pwlite
