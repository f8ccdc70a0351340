/// @file tailor.cc
#include "taskcon/tailor.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "taskcon/error.h"

namespace taskcon::tailor {

namespace {

std::string Describe(std::string_view interest, std::string_view task) {
  return std::string(interest) + " x \"" + std::string(task) + "\"";
}

Cell& CellOrThrow(ConstraintMatrix& m, std::string_view interest, std::string_view task) {
  Cell* cell = m.Find(interest, task);
  if (!cell) throw UnknownCellError("no matrix cell " + Describe(interest, task));
  return *cell;
}

const Metric* FindMetric(std::span<const Metric> metrics, std::string_view name) {
  for (const auto& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

void CheckUnique(const std::vector<std::string>& names, const char* axis) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw DuplicateError(std::string("duplicate ") + axis + " \"" + n + "\"");
    }
  }
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string_view ToString(DerivationPolicy::Mode mode) {
  return mode == DerivationPolicy::Mode::kAdditive ? "additive" : "multiplicative";
}

ConstraintMatrix build_matrix(const std::vector<std::string>& tasks,
                              const std::vector<std::string>& interests) {
  if (tasks.empty()) throw EmptyAxisError("matrix needs at least one task");
  if (interests.empty()) throw EmptyAxisError("matrix needs at least one interest");
  CheckUnique(tasks, "task");
  CheckUnique(interests, "interest");
  ConstraintMatrix m;
  m.tasks = tasks;
  m.interests = interests;
  for (const auto& i : interests) {
    for (const auto& t : tasks) m.cells.emplace(CellKey{i, t}, Cell{});
  }
  return m;
}

ConstraintMatrix rate(ConstraintMatrix matrix, std::string_view interest,
                      std::string_view task, Relevance relevance) {
  CellOrThrow(matrix, interest, task).relevance = relevance;
  return matrix;
}

ConstraintMatrix resolve(ConstraintMatrix matrix, std::span<const Metric> metrics,
                         std::string_view interest, std::string_view task,
                         Resolution resolution) {
  Cell& cell = CellOrThrow(matrix, interest, task);
  if (std::holds_alternative<Unresolved>(resolution)) {
    throw InvalidArgumentError("resolve needs a waiver or a constraint");
  }
  if (const auto* w = std::get_if<Waived>(&resolution); w && w->reason.empty()) {
    throw InvalidArgumentError("a waiver needs a reason");
  }
  if (const auto* r = std::get_if<Resolved>(&resolution)) {
    const Constraint& c = r->constraint;
    const Metric* metric = FindMetric(metrics, c.metric);
    if (!metric) throw UnknownMetricError("unknown metric " + c.metric);
    if (metric->unit != c.unit) {
      throw UnitMismatchError("unit " + c.unit + " does not match unit " +
                              metric->unit + " of metric " + c.metric);
    }
    if (!Agrees(c.comparator, metric->direction)) {
      throw DirectionMismatchError("comparator " + std::string(ToString(c.comparator)) +
                                   " contradicts " +
                                   std::string(ToString(metric->direction)) +
                                   " metric " + c.metric);
    }
  }
  cell.resolution = std::move(resolution);
  return matrix;
}

std::vector<CellKey> check_complete(const ConstraintMatrix& matrix) {
  std::vector<CellKey> out;
  for (const auto& interest : matrix.interests) {
    for (const auto& task : matrix.tasks) {
      const Cell* cell = matrix.Find(interest, task);
      if (cell && cell->unresolved()) out.push_back(CellKey{interest, task});
    }
  }
  return out;
}

std::vector<MonotoneViolation> check_monotone(const ConstraintMatrix& matrix,
                                              std::span<const Metric> metrics) {
  std::vector<MonotoneViolation> out;
  for (const auto& interest : matrix.interests) {
    struct Entry {
      const std::string* task;
      Relevance relevance;
      const Constraint* constraint;
    };
    std::vector<Entry> row;
    const Constraint* first = nullptr;
    const std::string* first_task = nullptr;
    bool mixed = false;
    for (const auto& task : matrix.tasks) {
      const Cell* cell = matrix.Find(interest, task);
      const Constraint* c = cell ? cell->constraint() : nullptr;
      if (!c) continue;
      if (!first) {
        first = c;
        first_task = &task;
      } else if (c->metric != first->metric && !mixed) {
        mixed = true;
        MonotoneViolation v;
        v.kind = MonotoneViolation::Kind::kMixedMetric;
        v.interest = interest;
        v.task_a = *first_task;
        v.task_b = task;
        v.threshold_a = first->threshold;
        v.threshold_b = c->threshold;
        v.metric_a = first->metric;
        v.metric_b = c->metric;
        out.push_back(std::move(v));
      }
      if (cell->relevance) row.push_back(Entry{&task, *cell->relevance, c});
    }
    if (mixed || !first) continue;
    const Metric* metric = FindMetric(metrics, first->metric);
    if (!metric) continue;
    bool lower = metric->direction == Direction::kLowerIsBetter;
    for (const auto& a : row) {
      for (const auto& b : row) {
        if (a.relevance <= b.relevance) continue;
        double ta = a.constraint->threshold;
        double tb = b.constraint->threshold;
        bool ok = lower ? ta <= tb : ta >= tb;
        if (ok) continue;
        MonotoneViolation v;
        v.kind = MonotoneViolation::Kind::kOrder;
        v.interest = interest;
        v.task_a = *a.task;
        v.task_b = *b.task;
        v.threshold_a = ta;
        v.threshold_b = tb;
        v.metric_a = v.metric_b = first->metric;
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

double RoundHalfUp(double value, int places) {
  double scale = std::pow(10.0, places);
  double scaled = value * scale;
  // Absorb representation error such as 1.005 * 100 = 100.49999999999999.
  double nudge = 1e-9 * std::max(1.0, std::fabs(scaled));
  return std::floor(scaled + 0.5 + nudge) / scale;
}

std::vector<Proposal> derive_proposals(const ConstraintMatrix& matrix,
                                       std::span<const Metric> metrics,
                                       const std::vector<CellKey>& anchors,
                                       const DerivationPolicy& policy) {
  if (!(policy.step > 0) || !std::isfinite(policy.step)) {
    throw InvalidArgumentError("derivation step must be a positive number");
  }
  if (policy.rounding < 0) {
    throw InvalidArgumentError("rounding must be a non-negative number of places");
  }

  std::set<std::string> anchored_rows;
  std::vector<Proposal> out;
  for (const auto& anchor_key : anchors) {
    const Cell* anchor = matrix.Find(anchor_key.interest, anchor_key.task);
    std::string where = Describe(anchor_key.interest, anchor_key.task);
    if (!anchor) throw UnknownCellError("no matrix cell " + where);
    const Constraint* base = anchor->constraint();
    if (!base) throw AnchorUnresolvedError("anchor " + where + " is not resolved");
    if (!anchor->relevance) throw UnratedCellError("anchor " + where + " is not rated");
    if (!anchored_rows.insert(anchor_key.interest).second) {
      throw DuplicateError("more than one anchor in row " + anchor_key.interest);
    }
    const Metric* metric = FindMetric(metrics, base->metric);
    if (!metric) throw UnknownMetricError("unknown metric " + base->metric);
    bool lower = metric->direction == Direction::kLowerIsBetter;

    for (const auto& task : matrix.tasks) {
      if (task == anchor_key.task) continue;
      const Cell* cell = matrix.Find(anchor_key.interest, task);
      if (!cell || !cell->unresolved()) continue;
      if (!cell->relevance) {
        throw UnratedCellError("cell " + Describe(anchor_key.interest, task) +
                               " is not rated");
      }
      int d = Level(*anchor->relevance) - Level(*cell->relevance);
      double a = base->threshold;
      double t;
      if (policy.mode == DerivationPolicy::Mode::kAdditive) {
        t = lower ? a + d * policy.step : a - d * policy.step;
      } else {
        int exponent = (lower == (a >= 0)) ? d : -d;
        t = a * std::pow(1.0 + policy.step, exponent);
      }
      t = RoundHalfUp(t, policy.rounding);
      // A relaxed (d > 0) threshold never ends up stricter than the anchor
      // and a tightened one never laxer.
      bool relax_up = lower == (d > 0);
      if (d != 0) t = relax_up ? std::max(t, a) : std::min(t, a);
      if (d == 0) t = a;

      Proposal p;
      p.key = CellKey{anchor_key.interest, task};
      p.cell.relevance = cell->relevance;
      p.cell.resolution = Resolved{Constraint{base->metric, base->comparator, t, base->unit}};
      out.push_back(std::move(p));
    }
  }
  return out;
}

ConstraintMatrix Apply(ConstraintMatrix matrix, const std::vector<Proposal>& proposals) {
  for (const auto& p : proposals) {
    Cell& cell = CellOrThrow(matrix, p.key.interest, p.key.task);
    cell.relevance = p.cell.relevance;
    cell.resolution = p.cell.resolution;
  }
  return matrix;
}

std::string ToCsv(const ConstraintMatrix& matrix) {
  std::string out;
  for (const auto& task : matrix.tasks) {
    out += ',';
    out += CsvField(task);
  }
  out += "\r\n";
  for (const auto& interest : matrix.interests) {
    out += CsvField(interest);
    for (const auto& task : matrix.tasks) {
      out += ',';
      const Cell* cell = matrix.Find(interest, task);
      if (!cell) continue;
      std::string text = cell->relevance ? std::string(ToString(*cell->relevance)) : "";
      text += '|';
      if (const Constraint* c = cell->constraint()) {
        text += ToString(*c);
      } else if (std::holds_alternative<Waived>(cell->resolution)) {
        text += "waived";
      } else {
        text += "unresolved";
      }
      out += CsvField(text);
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace taskcon::tailor
