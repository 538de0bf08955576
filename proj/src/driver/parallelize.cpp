#include "pwlite/driver/parallelize.hpp"

namespace pwlite {

ParallelizeResult parallelize_loop(const ParallelizeRequest &request) {
  std::shared_ptr<UnitState> unit = load_unit(request.file, request.preprocess);
  for (const Diagnostic &d : unit->tu.diagnostics)
    if (d.severity == Severity::Fatal ||
        (d.severity == Severity::Error && d.kind == DiagKind::SyntaxError))
      throw FatalFileError(d);
  analyze_loops(*unit, unit_purity(*unit, request.purity));

  const LoopNest *target = nullptr;
  const DefUseInfo *du = nullptr;
  for (const auto &[fn, forest] : unit->forests) {
    for (const LoopNest *nest : all_loops(forest)) {
      const SourceSpan &sp = nest->loop->span;
      if (sp.file != 0 || unit->tu.location(sp).line != request.line)
        continue;
      if (!target || nest->depth < target->depth) {
        target = nest;
        du = &unit->du.at(fn);
      }
    }
  }
  if (!target)
    throw LoopNotFound("no for loop starts at line " + std::to_string(request.line) + " of " +
                       request.file.generic_string());
  if (touches_openmp(*target))
    throw CodegenError(CodegenError::Kind::UnsupportedPatternForTemplate,
                       "loop is already part of an OpenMP construct");

  ParallelizeResult result;
  result.pattern = unit->patterns.at(target);
  result.plan = compute_data_scoping(*target, *du, unit->table, result.pattern);
  const SourceFile &source = unit->tu.file(0);
  std::vector<SourceEdit> edits;
  switch (request.paradigm) {
  case Paradigm::Multi:
    edits = generate_parallel_for(*target, result.plan, source, request.codegen);
    break;
  case Paradigm::Taskwait:
    edits = generate_task_taskwait(*target, result.plan, source);
    break;
  case Paradigm::Taskloop:
    edits = generate_taskloop(*target, result.plan, source, request.codegen);
    break;
  }
  result.output = apply_edits(source, std::move(edits));
  return result;
}

} // namespace pwlite
