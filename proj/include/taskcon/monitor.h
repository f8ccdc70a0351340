/// @file monitor.h
/// Checks resolved constraints against measurement streams.
#ifndef TASKCON_MONITOR_H_
#define TASKCON_MONITOR_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taskcon/model.h"

namespace taskcon::monitor {

struct MeasurementRecord {
  std::string task;
  std::string metric;
  double value = 0;
  std::string timestamp;  // ISO-8601, carried through unparsed
};

/// Applies the comparator exactly as written: `< 2` rejects 2.
bool evaluate_point(const Constraint& constraint, double value);

struct CellReport {
  std::string interest;
  std::string task;
  Constraint constraint;
  std::size_t samples = 0;
  std::size_t passes = 0;
  /// Both absent when no sample reached the cell.
  std::optional<double> pass_rate;
  std::optional<bool> fulfilled;
};

struct FulfillmentReport {
  static constexpr int kSchema = 1;

  std::vector<CellReport> cells;  // resolved cells, row-major
  std::size_t records = 0;
  std::size_t orphans = 0;  // records that matched no resolved cell
  std::size_t malformed = 0;  // input lines rejected before evaluation
  double quantile = 1.0;

  /// No evaluated cell is unfulfilled. Cells without samples are ignored.
  bool AllFulfilled() const;
};

/// Commutative, associative fold over records; partial aggregators built
/// over disjoint slices of a stream merge into the sequential result.
class Aggregator {
 public:
  /// Throws NoResolvedCellsError when the matrix has no Resolved cell.
  explicit Aggregator(const ConstraintMatrix& matrix);

  void Add(const MeasurementRecord& record);
  /// Both aggregators must come from the same matrix.
  void Merge(const Aggregator& other);
  /// Throws InvalidArgumentError unless 0 < quantile <= 1.
  FulfillmentReport Finish(double quantile) const;

 private:
  struct Slot {
    CellKey key;
    Constraint constraint;
    std::size_t samples = 0;
    std::size_t passes = 0;
  };
  std::vector<Slot> slots_;
  // (task, metric) -> slot indices
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> routes_;
  std::size_t records_ = 0;
  std::size_t orphans_ = 0;
};

/// Routes each record to every resolved cell with matching task and metric.
FulfillmentReport fulfillment_report(const ConstraintMatrix& matrix,
                                     std::span<const MeasurementRecord> records,
                                     double quantile);

enum class InputFormat { kNdjson, kCsv };

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct IngestResult {
  std::vector<MeasurementRecord> records;
  std::vector<LineError> malformed;
  std::size_t lines = 0;  // non-blank data lines seen
};

/// One JSON object per line with keys `task`, `metric`, `value` and
/// optionally `ts`. Blank lines are skipped.
IngestResult ReadNdjson(std::string_view text);

/// RFC 4180 with header `task,metric,value,ts` (column order free, `ts`
/// optional).
IngestResult ReadCsv(std::string_view text);

/// By file extension (.csv / .ndjson / .jsonl / .json), else by whether
/// the first non-blank character is `{`.
InputFormat DetectFormat(std::string_view path, std::string_view text);

IngestResult ReadMeasurements(std::string_view text, InputFormat format);

/// JSON document with `"schema": 1`.
std::string ToJson(const FulfillmentReport& report);

/// Aligned plain-text table for terminals.
std::string ToText(const FulfillmentReport& report);

}  // namespace taskcon::monitor

#endif  // TASKCON_MONITOR_H_
