/// @file analysis.h
/// Semantic rules over a parsed model.
///
///   R1  error    plan cycle
///   R2  error    plan edge names an unknown subtask
///   R3  error    several start nodes in a non-empty plan
///   R4  error    decision node with an unguarded outgoing edge
///   R5  error    consumed information object is never produced and not external
///   R6  warning  producer does not precede the consumer on every path
///   R7  error    matrix row is not a leaf interest
///   R8  error    constraint comparator contradicts the metric direction
///   R9  error    cell neither waived nor resolved
///   R10 warning  interest rated not_important for every task
///   R11 error    relevance/threshold monotonicity violated within a row
///   R12 warning  subtask unreachable from the plan start
///
/// Rules run independently of each other; only a plan cycle (R1)
/// suppresses the path-based rules R6 and R12 for that task.
#ifndef TASKCON_ANALYSIS_H_
#define TASKCON_ANALYSIS_H_

#include <span>
#include <vector>

#include "taskcon/diagnostic.h"
#include "taskcon/model.h"

namespace taskcon::analysis {

/// All findings, sorted by file, position and rule. Empty iff the model
/// conforms to the method.
std::vector<Diagnostic> validate(const Model& model);

/// R1-R4 and R12 for one task.
std::vector<Diagnostic> check_plan(const Task& task);

/// R5 and, when the plan is acyclic, R6 for one task.
std::vector<Diagnostic> check_info_flow(const Task& task,
                                        std::span<const InformationObject> infos);

/// R7-R11.
std::vector<Diagnostic> check_matrix(const Model& model);

}  // namespace taskcon::analysis

#endif  // TASKCON_ANALYSIS_H_
