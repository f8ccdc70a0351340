/// @file analysis.cc
#include "taskcon/analysis.h"

#include <algorithm>
#include <set>

#include "taskcon/tailor.h"

namespace taskcon::analysis {

namespace {

std::string Quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

Diagnostic Make(Rule rule, Severity severity, const SourceSpan& span,
                std::string message) {
  return Diagnostic{rule, severity, span, std::move(message)};
}

std::string CycleText(const std::vector<std::string>& nodes) {
  std::string out;
  for (const auto& n : nodes) out += Quoted(n) + " -> ";
  return out + Quoted(nodes.front());
}

const InformationObject* FindInfo(std::span<const InformationObject> infos,
                                  std::string_view name) {
  for (const auto& i : infos) {
    if (i.name == name) return &i;
  }
  return nullptr;
}

/// guaranteed[v]: every path from a start to v passes a producer of
/// `info` strictly before v.
std::vector<bool> ProducedOnAllPaths(const Task& task, const PlanGraph& pg,
                                     const std::vector<int>& topo,
                                     std::string_view info) {
  const int n = pg.graph.size();
  std::vector<std::vector<int>> preds(n);
  for (int v = 0; v < n; ++v) {
    for (int w : pg.graph.successors(v)) preds[w].push_back(v);
  }
  std::vector<bool> produces(n, false);
  for (int v = 0; v < n; ++v) {
    const Subtask* s = task.FindSubtask(pg.nodes[v]);
    produces[v] = s && s->Produces(info);
  }
  std::vector<bool> guaranteed(n, false);
  for (int v : topo) {
    if (preds[v].empty()) continue;  // start node: nothing precedes it
    guaranteed[v] = std::all_of(preds[v].begin(), preds[v].end(),
                                [&](int p) { return guaranteed[p] || produces[p]; });
  }
  return guaranteed;
}

}  // namespace

std::vector<Diagnostic> check_plan(const Task& task) {
  std::vector<Diagnostic> out;
  const auto& edges = task.plan.edges;
  if (edges.empty()) return out;
  PlanGraph pg = BuildPlanGraph(task.plan);

  // R2
  auto unknown = [&](const PlanEdge& e, const std::string& name) {
    out.push_back(Make(Rule::kR2, Severity::kError, e.span,
                       "plan edge names unknown subtask " + Quoted(name)));
  };
  for (const auto& e : edges) {
    if (!task.FindSubtask(e.from)) unknown(e, e.from);
    if (e.to != e.from && !task.FindSubtask(e.to)) unknown(e, e.to);
  }

  // R1: the reported edge is the one closing the witness cycle.
  auto cycle = graph::FindCycle(pg.graph);
  if (cycle) {
    std::vector<std::string> names;
    for (int v : *cycle) names.push_back(pg.nodes[v]);
    const PlanEdge* closing = &edges.front();
    for (const auto& e : edges) {
      if (e.from == names.back() && e.to == names.front()) {
        closing = &e;
        break;
      }
    }
    out.push_back(Make(Rule::kR1, Severity::kError, closing->span,
                       "plan of task " + Quoted(task.name) +
                           " contains a cycle: " + CycleText(names)));
  }

  // R3
  auto starts = graph::Sources(pg.graph);
  if (starts.size() > 1) {
    std::string list;
    for (std::size_t i = 0; i < starts.size(); ++i) {
      if (i) list += ", ";
      list += Quoted(pg.nodes[starts[i]]);
    }
    out.push_back(Make(Rule::kR3, Severity::kError, task.plan.span,
                       "plan of task " + Quoted(task.name) + " has " +
                           std::to_string(starts.size()) + " start nodes: " + list));
  }

  // R4
  for (int v = 0; v < pg.graph.size(); ++v) {
    if (pg.graph.out_degree(v) < 2) continue;
    for (const auto& e : edges) {
      if (e.from == pg.nodes[v] && !e.guard) {
        out.push_back(Make(Rule::kR4, Severity::kError, e.span,
                           "decision " + Quoted(e.from) + " has an unguarded edge to " +
                               Quoted(e.to)));
      }
    }
  }

  // R12
  if (!cycle) {
    auto reached = graph::Reachable(pg.graph, starts);
    for (const auto& s : task.subtasks) {
      int idx = pg.IndexOf(s.name);
      if (idx < 0 || !reached[idx]) {
        out.push_back(Make(Rule::kR12, Severity::kWarning, s.span,
                           "subtask " + Quoted(s.name) +
                               " is unreachable from the plan start"));
      }
    }
  }
  return out;
}

std::vector<Diagnostic> check_info_flow(const Task& task,
                                        std::span<const InformationObject> infos) {
  std::vector<Diagnostic> out;
  PlanGraph pg = BuildPlanGraph(task.plan);
  auto topo = graph::TopologicalOrder(pg.graph);

  for (const auto& consumer : task.subtasks) {
    for (const auto& ref : consumer.consumes) {
      const InformationObject* info = FindInfo(infos, ref.name);
      if (info && info->external) continue;
      bool produced = std::any_of(task.subtasks.begin(), task.subtasks.end(),
                                  [&](const Subtask& s) { return s.Produces(ref.name); });
      if (!produced) {
        out.push_back(Make(Rule::kR5, Severity::kError, ref.span,
                           Quoted(ref.name) + " is consumed by " + Quoted(consumer.name) +
                               " but never produced and not external"));
        continue;
      }
      if (!topo) continue;  // R6 needs an acyclic plan

      bool guaranteed = false;
      if (!task.plan.edges.empty()) {
        int idx = pg.IndexOf(consumer.name);
        if (idx < 0) continue;  // unreachable, reported by R12
        guaranteed = ProducedOnAllPaths(task, pg, *topo, ref.name)[idx];
      }
      if (!guaranteed) {
        out.push_back(Make(Rule::kR6, Severity::kWarning, ref.span,
                           Quoted(ref.name) + " is not produced before " +
                               Quoted(consumer.name) + " on every path"));
      }
    }
  }
  return out;
}

std::vector<Diagnostic> check_matrix(const Model& model) {
  std::vector<Diagnostic> out;
  const ConstraintMatrix& mx = model.matrix;

  auto first_cell = [&mx](const std::string& interest) -> const Cell* {
    for (const auto& t : mx.tasks) {
      if (const Cell* c = mx.Find(interest, t)) return c;
    }
    return nullptr;
  };

  // R7
  for (const auto& interest : mx.interests) {
    std::vector<std::string> children;
    for (const auto& i : model.interests) {
      if (i.refines && *i.refines == interest) children.push_back(i.id);
    }
    const Cell* cell = first_cell(interest);
    if (children.empty() || !cell) continue;
    std::string list;
    for (std::size_t k = 0; k < children.size(); ++k) {
      if (k) list += ", ";
      list += children[k];
    }
    out.push_back(Make(Rule::kR7, Severity::kError, cell->span,
                       "matrix row " + interest + " is not a leaf interest (refined by " +
                           list + ")"));
  }

  for (const auto& interest : mx.interests) {
    for (const auto& task : mx.tasks) {
      const Cell* cell = mx.Find(interest, task);
      if (!cell) continue;
      std::string where = interest + " x " + Quoted(task);
      // R8
      if (const Constraint* c = cell->constraint()) {
        const Metric* m = model.FindMetric(c->metric);
        if (m && !Agrees(c->comparator, m->direction)) {
          out.push_back(Make(Rule::kR8, Severity::kError, cell->span,
                             "comparator " + std::string(ToString(c->comparator)) +
                                 " contradicts " + std::string(ToString(m->direction)) +
                                 " metric " + m->name));
        }
      }
      // R9
      if (cell->unresolved()) {
        out.push_back(Make(Rule::kR9, Severity::kError, cell->span,
                           "cell " + where + " has no constraint and is not waived"));
      }
    }
  }

  // R10
  for (const auto& interest : mx.interests) {
    bool all_low = !mx.tasks.empty();
    for (const auto& task : mx.tasks) {
      const Cell* cell = mx.Find(interest, task);
      if (!cell || cell->relevance != Relevance::kNotImportant) {
        all_low = false;
        break;
      }
    }
    if (all_low) {
      out.push_back(Make(Rule::kR10, Severity::kWarning, first_cell(interest)->span,
                         "interest " + interest +
                             " is rated not_important for every task; revise its scope"));
    }
  }

  // R11
  for (const auto& v : tailor::check_monotone(mx, model.metrics)) {
    const Cell* cell = mx.Find(v.interest, v.task_a);
    if (v.kind == tailor::MonotoneViolation::Kind::kMixedMetric) {
      const Cell* other = mx.Find(v.interest, v.task_b);
      out.push_back(Make(Rule::kR11, Severity::kError, other->span,
                         "row " + v.interest + " mixes metrics " + v.metric_a + " and " +
                             v.metric_b));
      continue;
    }
    const Cell* other = mx.Find(v.interest, v.task_b);
    out.push_back(Make(
        Rule::kR11, Severity::kError, cell->span,
        Quoted(v.task_a) + " (" + std::string(ToString(*cell->relevance)) +
            ") has threshold " + FormatNumber(v.threshold_a) + ", laxer than " +
            Quoted(v.task_b) + " (" + std::string(ToString(*other->relevance)) +
            ") with " + FormatNumber(v.threshold_b)));
  }
  return out;
}

std::vector<Diagnostic> validate(const Model& model) {
  std::vector<Diagnostic> out;
  for (const auto& task : model.tasks) {
    auto plan = check_plan(task);
    out.insert(out.end(), plan.begin(), plan.end());
    auto flow = check_info_flow(task, model.info_objects);
    out.insert(out.end(), flow.begin(), flow.end());
  }
  auto matrix = check_matrix(model);
  out.insert(out.end(), matrix.begin(), matrix.end());
  SortDiagnostics(out);
  return out;
}

}  // namespace taskcon::analysis
