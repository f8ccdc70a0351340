/// @file model.h
/// Domain types of the task/interest meta-model and structural queries.
///
/// All types are plain values. Equality operators compare content only;
/// source spans are location metadata and never take part in equality.
#ifndef TASKCON_MODEL_H_
#define TASKCON_MODEL_H_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "taskcon/graph.h"

namespace taskcon {

/// 1-based, inclusive start, exclusive end column.
struct SourceSpan {
  std::string file;
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  bool valid() const { return start_line > 0; }
};

/// Ascending rank; `kMvp` is the top of the scale.
enum class Priority { kLow, kNormal, kHigh, kMvp };

/// Ten tags for the nine interest classes; the interface class is split
/// into its user-facing and application-facing flavors.
enum class InterestClass {
  kUserInterface,
  kApplicationInterface,
  kInformational,
  kBehavioral,
  kOperating,
  kHuman,
  kLifecycle,
  kEconomic,
  kDataGovernance,
  kLegalPolicy,
};

enum class Direction { kLowerIsBetter, kHigherIsBetter };

/// Totally ordered; the enumerator order is the relevance order.
enum class Relevance { kNotImportant, kRatherImportant, kImportant, kVeryImportant };

enum class Comparator { kLt, kLe, kGt, kGe };

inline constexpr Priority kAllPriorities[] = {Priority::kLow, Priority::kNormal,
                                              Priority::kHigh, Priority::kMvp};
inline constexpr Relevance kAllRelevances[] = {
    Relevance::kNotImportant, Relevance::kRatherImportant,
    Relevance::kImportant, Relevance::kVeryImportant};
inline constexpr InterestClass kAllInterestClasses[] = {
    InterestClass::kUserInterface, InterestClass::kApplicationInterface,
    InterestClass::kInformational,  InterestClass::kBehavioral,
    InterestClass::kOperating,      InterestClass::kHuman,
    InterestClass::kLifecycle,      InterestClass::kEconomic,
    InterestClass::kDataGovernance, InterestClass::kLegalPolicy};
inline constexpr Comparator kAllComparators[] = {
    Comparator::kLt, Comparator::kLe, Comparator::kGt, Comparator::kGe};

/// Integer level of a relevance rating, 0 for not_important.
inline int Level(Relevance r) { return static_cast<int>(r); }

std::string_view ToString(Priority p);
std::string_view ToString(InterestClass c);
std::string_view ToString(Direction d);
std::string_view ToString(Relevance r);
/// Operator spelling: "<", "<=", ">", ">=".
std::string_view ToString(Comparator c);

std::optional<Priority> ParsePriority(std::string_view text);
std::optional<InterestClass> ParseInterestClass(std::string_view text);
std::optional<Direction> ParseDirection(std::string_view text);
std::optional<Relevance> ParseRelevance(std::string_view text);
std::optional<Comparator> ParseComparator(std::string_view text);

/// True when the comparator is admissible for a metric of direction `d`.
bool Agrees(Comparator c, Direction d);

/// Shortest decimal text that reads back to `value`; never uses exponent
/// notation and never has trailing zeros.
std::string FormatNumber(double value);

struct Metric {
  std::string name;
  std::string unit;
  Direction direction = Direction::kLowerIsBetter;
  SourceSpan span;

  friend bool operator==(const Metric& a, const Metric& b) {
    return a.name == b.name && a.unit == b.unit && a.direction == b.direction;
  }
};

struct InformationObject {
  std::string name;
  std::string description;
  bool external = false;
  SourceSpan span;

  friend bool operator==(const InformationObject& a, const InformationObject& b) {
    return a.name == b.name && a.description == b.description &&
           a.external == b.external;
  }
};

/// A reference by name to another model entity, with the reference's
/// own location.
struct NameRef {
  std::string name;
  SourceSpan span;

  friend bool operator==(const NameRef& a, const NameRef& b) {
    return a.name == b.name;
  }
};

struct SystemResponsibility {
  std::string description;
  SourceSpan span;

  friend bool operator==(const SystemResponsibility& a,
                         const SystemResponsibility& b) {
    return a.description == b.description;
  }
};

struct Subtask {
  std::string name;
  std::string intention;
  std::vector<SystemResponsibility> responsibilities;
  std::vector<std::string> preconditions;
  std::vector<std::string> postconditions;
  std::vector<NameRef> consumes;
  std::vector<NameRef> produces;
  std::optional<std::string> refined_in;
  SourceSpan span;
  SourceSpan refined_in_span;

  bool Consumes(std::string_view info) const;
  bool Produces(std::string_view info) const;

  friend bool operator==(const Subtask& a, const Subtask& b) {
    return a.name == b.name && a.intention == b.intention &&
           a.responsibilities == b.responsibilities &&
           a.preconditions == b.preconditions &&
           a.postconditions == b.postconditions && a.consumes == b.consumes &&
           a.produces == b.produces && a.refined_in == b.refined_in;
  }
};

struct PlanEdge {
  std::string from;
  std::string to;
  std::optional<std::string> guard;
  SourceSpan span;

  friend bool operator==(const PlanEdge& a, const PlanEdge& b) {
    return a.from == b.from && a.to == b.to && a.guard == b.guard;
  }
};

struct ExecutionPlan {
  std::vector<PlanEdge> edges;
  SourceSpan span;

  friend bool operator==(const ExecutionPlan& a, const ExecutionPlan& b) {
    return a.edges == b.edges;
  }
};

struct Task {
  std::string name;
  std::string goal;
  Priority priority = Priority::kNormal;
  std::vector<Subtask> subtasks;
  ExecutionPlan plan;
  SourceSpan span;
  SourceSpan goal_span;

  const Subtask* FindSubtask(std::string_view subtask_name) const;

  friend bool operator==(const Task& a, const Task& b) {
    return a.name == b.name && a.goal == b.goal && a.priority == b.priority &&
           a.subtasks == b.subtasks && a.plan == b.plan;
  }
};

struct StakeholderInterest {
  std::string id;
  std::string statement;
  InterestClass interest_class = InterestClass::kBehavioral;
  std::optional<std::string> refines;
  SourceSpan span;

  friend bool operator==(const StakeholderInterest& a,
                         const StakeholderInterest& b) {
    return a.id == b.id && a.statement == b.statement &&
           a.interest_class == b.interest_class && a.refines == b.refines;
  }
};

struct Constraint {
  std::string metric;
  Comparator comparator = Comparator::kLt;
  double threshold = 0;
  std::string unit;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// "response_time < 2 ms"
std::string ToString(const Constraint& c);

struct Unresolved {
  friend bool operator==(const Unresolved&, const Unresolved&) = default;
};
struct Waived {
  std::string reason;
  friend bool operator==(const Waived&, const Waived&) = default;
};
struct Resolved {
  Constraint constraint;
  friend bool operator==(const Resolved&, const Resolved&) = default;
};
using Resolution = std::variant<Unresolved, Waived, Resolved>;

struct Cell {
  std::optional<Relevance> relevance;
  Resolution resolution;
  SourceSpan span;

  bool unresolved() const { return std::holds_alternative<Unresolved>(resolution); }
  const Constraint* constraint() const {
    const auto* r = std::get_if<Resolved>(&resolution);
    return r ? &r->constraint : nullptr;
  }

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.relevance == b.relevance && a.resolution == b.resolution;
  }
};

struct CellKey {
  std::string interest;
  std::string task;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

/// Rows are leaf interests, columns are selected tasks. A well-formed
/// matrix holds a cell for every row/column pair.
struct ConstraintMatrix {
  std::vector<std::string> tasks;
  std::vector<std::string> interests;
  std::map<CellKey, Cell> cells;
  SourceSpan span;

  bool empty() const { return cells.empty() && tasks.empty() && interests.empty(); }
  const Cell* Find(std::string_view interest, std::string_view task) const;
  Cell* Find(std::string_view interest, std::string_view task);

  friend bool operator==(const ConstraintMatrix& a, const ConstraintMatrix& b) {
    return a.tasks == b.tasks && a.interests == b.interests && a.cells == b.cells;
  }
};

struct Model {
  std::vector<Task> tasks;
  std::vector<InformationObject> info_objects;
  std::vector<StakeholderInterest> interests;
  std::vector<Metric> metrics;
  ConstraintMatrix matrix;
  std::string source_name;

  const Task* FindTask(std::string_view name) const;
  const InformationObject* FindInfo(std::string_view name) const;
  const StakeholderInterest* FindInterest(std::string_view id) const;
  const Metric* FindMetric(std::string_view name) const;

  /// Fields other than `source_name` and spans.
  friend bool operator==(const Model& a, const Model& b) {
    return a.tasks == b.tasks && a.info_objects == b.info_objects &&
           a.interests == b.interests && a.metrics == b.metrics &&
           a.matrix == b.matrix;
  }
};

/// Plan nodes in order of first appearance as an edge endpoint, with the
/// edge graph over their indices. Edge i of the plan is inserted i-th.
struct PlanGraph {
  std::vector<std::string> nodes;
  graph::Digraph graph;

  int IndexOf(std::string_view name) const;
};

PlanGraph BuildPlanGraph(const ExecutionPlan& plan);

/// Every plan node once, each edge's source before its target.
/// Throws CycleError with one witness cycle.
std::vector<std::string> topological_order(const ExecutionPlan& plan);

/// Every maximal path from the unique start node to a terminal node.
/// Throws CycleError or MultipleStartsError.
std::vector<std::vector<std::string>> paths_from_start(const ExecutionPlan& plan);

/// Tasks with priority at least `threshold`, in declaration order.
std::vector<Task> select_tasks(const Model& model, Priority threshold);

/// Interests that no other interest refines, in declaration order.
/// Throws RefinementCycleError when refinement links are cyclic.
std::vector<StakeholderInterest> leaf_interests(const Model& model);

/// One refinement cycle (interest ids), if any. Links to undeclared
/// parents are ignored.
std::optional<std::vector<std::string>> FindRefinementCycle(const Model& model);

}  // namespace taskcon

#endif  // TASKCON_MODEL_H_
