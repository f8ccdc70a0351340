/// @file model.cc
#include "taskcon/model.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

#include "taskcon/error.h"

namespace taskcon {

namespace {

template <class Enum, std::size_t N>
std::optional<Enum> Lookup(std::string_view text, const Enum (&all)[N]) {
  for (Enum e : all) {
    if (ToString(e) == text) return e;
  }
  return std::nullopt;
}

std::string Join(const std::vector<std::string>& names, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

}  // namespace

std::string_view ToString(Priority p) {
  switch (p) {
    case Priority::kLow: return "low";
    case Priority::kNormal: return "normal";
    case Priority::kHigh: return "high";
    case Priority::kMvp: return "mvp";
  }
  return "";
}

std::string_view ToString(InterestClass c) {
  switch (c) {
    case InterestClass::kUserInterface: return "user_interface";
    case InterestClass::kApplicationInterface: return "application_interface";
    case InterestClass::kInformational: return "informational";
    case InterestClass::kBehavioral: return "behavioral";
    case InterestClass::kOperating: return "operating";
    case InterestClass::kHuman: return "human";
    case InterestClass::kLifecycle: return "lifecycle";
    case InterestClass::kEconomic: return "economic";
    case InterestClass::kDataGovernance: return "data_governance";
    case InterestClass::kLegalPolicy: return "legal_policy";
  }
  return "";
}

std::string_view ToString(Direction d) {
  return d == Direction::kLowerIsBetter ? "lower_is_better" : "higher_is_better";
}

std::string_view ToString(Relevance r) {
  switch (r) {
    case Relevance::kNotImportant: return "not_important";
    case Relevance::kRatherImportant: return "rather_important";
    case Relevance::kImportant: return "important";
    case Relevance::kVeryImportant: return "very_important";
  }
  return "";
}

std::string_view ToString(Comparator c) {
  switch (c) {
    case Comparator::kLt: return "<";
    case Comparator::kLe: return "<=";
    case Comparator::kGt: return ">";
    case Comparator::kGe: return ">=";
  }
  return "";
}

std::optional<Priority> ParsePriority(std::string_view text) {
  return Lookup(text, kAllPriorities);
}
std::optional<InterestClass> ParseInterestClass(std::string_view text) {
  return Lookup(text, kAllInterestClasses);
}
std::optional<Direction> ParseDirection(std::string_view text) {
  constexpr Direction kAll[] = {Direction::kLowerIsBetter,
                                Direction::kHigherIsBetter};
  return Lookup(text, kAll);
}
std::optional<Relevance> ParseRelevance(std::string_view text) {
  return Lookup(text, kAllRelevances);
}
std::optional<Comparator> ParseComparator(std::string_view text) {
  return Lookup(text, kAllComparators);
}

bool Agrees(Comparator c, Direction d) {
  bool upper_bound = c == Comparator::kLt || c == Comparator::kLe;
  return upper_bound == (d == Direction::kLowerIsBetter);
}

std::string FormatNumber(double value) {
  if (value == 0) return "0";  // also folds -0
  std::array<char, 512> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc()) return "0";
  return std::string(buf.data(), end);
}

std::string ToString(const Constraint& c) {
  std::string out = c.metric;
  out += ' ';
  out += ToString(c.comparator);
  out += ' ';
  out += FormatNumber(c.threshold);
  out += ' ';
  out += c.unit;
  return out;
}

bool Subtask::Consumes(std::string_view info) const {
  return std::any_of(consumes.begin(), consumes.end(),
                     [&](const NameRef& r) { return r.name == info; });
}

bool Subtask::Produces(std::string_view info) const {
  return std::any_of(produces.begin(), produces.end(),
                     [&](const NameRef& r) { return r.name == info; });
}

const Subtask* Task::FindSubtask(std::string_view subtask_name) const {
  for (const auto& s : subtasks) {
    if (s.name == subtask_name) return &s;
  }
  return nullptr;
}

const Cell* ConstraintMatrix::Find(std::string_view interest,
                                   std::string_view task) const {
  auto it = cells.find(CellKey{std::string(interest), std::string(task)});
  return it == cells.end() ? nullptr : &it->second;
}

Cell* ConstraintMatrix::Find(std::string_view interest, std::string_view task) {
  auto it = cells.find(CellKey{std::string(interest), std::string(task)});
  return it == cells.end() ? nullptr : &it->second;
}

const Task* Model::FindTask(std::string_view name) const {
  for (const auto& t : tasks) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const InformationObject* Model::FindInfo(std::string_view name) const {
  for (const auto& i : info_objects) {
    if (i.name == name) return &i;
  }
  return nullptr;
}

const StakeholderInterest* Model::FindInterest(std::string_view id) const {
  for (const auto& i : interests) {
    if (i.id == id) return &i;
  }
  return nullptr;
}

const Metric* Model::FindMetric(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

int PlanGraph::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == name) return static_cast<int>(i);
  }
  return -1;
}

PlanGraph BuildPlanGraph(const ExecutionPlan& plan) {
  PlanGraph pg;
  auto intern = [&pg](const std::string& name) {
    int idx = pg.IndexOf(name);
    if (idx >= 0) return idx;
    pg.nodes.push_back(name);
    return static_cast<int>(pg.nodes.size() - 1);
  };
  std::vector<std::pair<int, int>> edges;
  edges.reserve(plan.edges.size());
  for (const auto& e : plan.edges) {
    int from = intern(e.from);
    int to = intern(e.to);
    edges.emplace_back(from, to);
  }
  pg.graph = graph::Digraph(static_cast<int>(pg.nodes.size()));
  std::vector<int> out_degree(pg.nodes.size());
  for (auto [from, to] : edges) ++out_degree[from];
  for (std::size_t v = 0; v < out_degree.size(); ++v) {
    pg.graph.Reserve(static_cast<int>(v), out_degree[v]);
  }
  for (auto [from, to] : edges) pg.graph.AddEdge(from, to);
  return pg;
}

namespace {

std::vector<std::string> Names(const PlanGraph& pg, const std::vector<int>& ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int v : ids) out.push_back(pg.nodes[v]);
  return out;
}

[[noreturn]] void ThrowPlanCycle(const PlanGraph& pg, const std::vector<int>& cycle) {
  auto witness = Names(pg, cycle);
  auto shown = witness;
  shown.push_back(witness.front());
  throw CycleError("plan contains a cycle: " + Join(shown, " -> "),
                   std::move(witness));
}

}  // namespace

std::vector<std::string> topological_order(const ExecutionPlan& plan) {
  PlanGraph pg = BuildPlanGraph(plan);
  auto order = graph::TopologicalOrder(pg.graph);
  if (!order) ThrowPlanCycle(pg, *graph::FindCycle(pg.graph));
  return Names(pg, *order);
}

std::vector<std::vector<std::string>> paths_from_start(const ExecutionPlan& plan) {
  PlanGraph pg = BuildPlanGraph(plan);
  if (pg.nodes.empty()) return {};
  if (auto cycle = graph::FindCycle(pg.graph)) ThrowPlanCycle(pg, *cycle);
  auto starts = graph::Sources(pg.graph);
  if (starts.size() != 1) {
    auto names = Names(pg, starts);
    throw MultipleStartsError("plan has multiple start nodes: " + Join(names, ", "),
                              std::move(names));
  }
  std::vector<std::vector<std::string>> out;
  for (const auto& path : graph::MaximalPaths(pg.graph, starts.front())) {
    out.push_back(Names(pg, path));
  }
  return out;
}

std::vector<Task> select_tasks(const Model& model, Priority threshold) {
  std::vector<Task> out;
  for (const auto& t : model.tasks) {
    if (t.priority >= threshold) out.push_back(t);
  }
  return out;
}

std::optional<std::vector<std::string>> FindRefinementCycle(const Model& model) {
  // Each interest has at most one parent, so following parent links from
  // every node finds any cycle.
  for (const auto& start : model.interests) {
    std::vector<std::string> chain{start.id};
    const StakeholderInterest* cur = &start;
    while (cur->refines) {
      const StakeholderInterest* parent = model.FindInterest(*cur->refines);
      if (!parent) break;
      auto seen = std::find(chain.begin(), chain.end(), parent->id);
      if (seen != chain.end()) {
        return std::vector<std::string>(seen, chain.end());
      }
      chain.push_back(parent->id);
      cur = parent;
    }
  }
  return std::nullopt;
}

std::vector<StakeholderInterest> leaf_interests(const Model& model) {
  if (auto cycle = FindRefinementCycle(model)) {
    auto shown = *cycle;
    shown.push_back(cycle->front());
    throw RefinementCycleError("interest refinement cycle: " + Join(shown, " -> "),
                               *cycle);
  }
  std::set<std::string> parents;
  for (const auto& i : model.interests) {
    if (i.refines) parents.insert(*i.refines);
  }
  std::vector<StakeholderInterest> out;
  for (const auto& i : model.interests) {
    if (!parents.count(i.id)) out.push_back(i);
  }
  return out;
}

}  // namespace taskcon
