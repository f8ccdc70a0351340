/// @file tailor.h
/// Task-interest matrix construction, rating, resolution and the checks
/// and derivations that operate on whole rows.
///
/// Every operation takes the matrix by value and returns the updated copy;
/// cells not named by an operation are left untouched.
#ifndef TASKCON_TAILOR_H_
#define TASKCON_TAILOR_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taskcon/model.h"

namespace taskcon::tailor {

/// Full cross product of unrated, unresolved cells. Throws EmptyAxisError
/// or DuplicateError.
ConstraintMatrix build_matrix(const std::vector<std::string>& tasks,
                              const std::vector<std::string>& interests);

/// Throws UnknownCellError.
ConstraintMatrix rate(ConstraintMatrix matrix, std::string_view interest,
                      std::string_view task, Relevance relevance);

/// `resolution` must be Waived (non-empty reason) or Resolved. A Resolved
/// constraint must name a registered metric, carry its unit and use a
/// comparator that agrees with its direction. Throws UnknownCellError,
/// UnknownMetricError, UnitMismatchError, DirectionMismatchError or
/// InvalidArgumentError.
ConstraintMatrix resolve(ConstraintMatrix matrix, std::span<const Metric> metrics,
                         std::string_view interest, std::string_view task,
                         Resolution resolution);

/// Unresolved cells in row-major order.
std::vector<CellKey> check_complete(const ConstraintMatrix& matrix);

struct MonotoneViolation {
  enum class Kind {
    kOrder,        // a more relevant task has a laxer threshold
    kMixedMetric,  // the row's constraints use more than one metric
  };
  Kind kind = Kind::kOrder;
  std::string interest;
  /// kOrder: `task_a` is the more relevant task. kMixedMetric: the first
  /// resolved task of the row and the first task using another metric.
  std::string task_a;
  std::string task_b;
  double threshold_a = 0;
  double threshold_b = 0;
  std::string metric_a;
  std::string metric_b;
};

/// For every row and ordered task pair (a, b) with relevance(a) >
/// relevance(b), both resolved: lower_is_better needs threshold(a) <=
/// threshold(b), higher_is_better needs threshold(a) >= threshold(b).
/// Rows whose constraints name different metrics yield a single
/// kMixedMetric entry instead. Unrated cells, waived and unresolved cells
/// and constraints on unregistered metrics are skipped.
std::vector<MonotoneViolation> check_monotone(const ConstraintMatrix& matrix,
                                              std::span<const Metric> metrics);

struct DerivationPolicy {
  enum class Mode { kAdditive, kMultiplicative };
  Mode mode = Mode::kAdditive;
  double step = 0;  // per relevance level; must be > 0
  int rounding = 2;  // decimal places; must be >= 0
};

std::string_view ToString(DerivationPolicy::Mode mode);

struct Proposal {
  CellKey key;
  Cell cell;
};

/// Proposes a constraint for every unresolved cell sharing a row with an
/// anchor. With d = level(anchor) - level(cell):
///   additive:       anchor + d*step (lower_is_better), anchor - d*step
///   multiplicative: anchor * (1+step)^d (lower_is_better),
///                   anchor / (1+step)^d (higher_is_better)
/// so requirements relax as relevance drops; negative anchors flip the
/// multiplicative exponent to keep that direction. Results are rounded
/// half-up, then clamped so rounding never crosses the anchor.
///
/// Throws UnknownCellError, AnchorUnresolvedError, UnratedCellError,
/// UnknownMetricError, DuplicateError (two anchors in one row) or
/// InvalidArgumentError (bad policy).
std::vector<Proposal> derive_proposals(const ConstraintMatrix& matrix,
                                       std::span<const Metric> metrics,
                                       const std::vector<CellKey>& anchors,
                                       const DerivationPolicy& policy);

/// Writes the proposed cells into the matrix.
ConstraintMatrix Apply(ConstraintMatrix matrix, const std::vector<Proposal>& proposals);

/// Half-up rounding to `places` decimals.
double RoundHalfUp(double value, int places);

/// RFC 4180 CSV: header row of task names after an empty corner field,
/// one row per interest, cells as `relevance|constraint`, `relevance|waived`
/// or `relevance|unresolved`. CRLF line breaks.
std::string ToCsv(const ConstraintMatrix& matrix);

}  // namespace taskcon::tailor

#endif  // TASKCON_TAILOR_H_
