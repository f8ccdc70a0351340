/// @file render.h
/// Flow diagrams of tasks and document views of the matrix.
#ifndef TASKCON_RENDER_H_
#define TASKCON_RENDER_H_

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "taskcon/model.h"

namespace taskcon::render {

/// Graphviz node ids: lowercase, every other character except digits and
/// letters becomes `_`. Repeated slugs get `_2`, `_3`, ...
class Slugger {
 public:
  std::string Slug(std::string_view name);

 private:
  std::map<std::string, int> used_;
};

/// Fill color for the information object at declaration index `index`;
/// cycles through eight colors.
std::string_view InfoColor(std::size_t index);

/// Gray shade for a relevance rating; darker means more relevant.
std::string_view RelevanceShade(Relevance relevance);

/// DOT digraph for one task: a gray cluster per subtask (labelled with
/// the user intention) holding rounded nodes for its responsibilities,
/// plan edges between clusters with guard labels, and colored boxes for
/// the information objects the task touches, wired subtask -> info for
/// produces and info -> subtask for consumes. Pre- and postconditions go
/// into the cluster tooltip.
///
/// Throws InvalidModelError when the task breaks any of the plan rules
/// R1-R4.
std::string to_dot(const Task& task, std::span<const InformationObject> infos);

enum class MatrixView { kRelevance, kConstraints };

std::string_view ToString(MatrixView view);

/// GitHub-flavored table with one column per task. Empty cells show as
/// an em dash.
std::string matrix_to_markdown(const ConstraintMatrix& matrix, MatrixView view);

/// Standalone HTML page with inline CSS; cells are shaded by relevance
/// in both views.
std::string matrix_to_html(const ConstraintMatrix& matrix, MatrixView view,
                           std::string_view title);

}  // namespace taskcon::render

#endif  // TASKCON_RENDER_H_
