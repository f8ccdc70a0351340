/// @file monitor.cc
#include "taskcon/monitor.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "json.hpp"
#include "taskcon/error.h"

namespace taskcon::monitor {

bool evaluate_point(const Constraint& constraint, double value) {
  double t = constraint.threshold;
  switch (constraint.comparator) {
    case Comparator::kLt: return value < t;
    case Comparator::kLe: return value <= t;
    case Comparator::kGt: return value > t;
    case Comparator::kGe: return value >= t;
  }
  return false;
}

bool FulfillmentReport::AllFulfilled() const {
  return std::none_of(cells.begin(), cells.end(), [](const CellReport& c) {
    return c.fulfilled.has_value() && !*c.fulfilled;
  });
}

Aggregator::Aggregator(const ConstraintMatrix& matrix) {
  for (const auto& interest : matrix.interests) {
    for (const auto& task : matrix.tasks) {
      const Cell* cell = matrix.Find(interest, task);
      const Constraint* c = cell ? cell->constraint() : nullptr;
      if (!c) continue;
      routes_[{task, c->metric}].push_back(slots_.size());
      slots_.push_back(Slot{CellKey{interest, task}, *c});
    }
  }
  if (slots_.empty()) {
    throw NoResolvedCellsError("the matrix has no resolved cell to monitor");
  }
}

void Aggregator::Add(const MeasurementRecord& record) {
  ++records_;
  auto it = routes_.find({record.task, record.metric});
  if (it == routes_.end()) {
    ++orphans_;
    return;
  }
  for (std::size_t idx : it->second) {
    Slot& slot = slots_[idx];
    ++slot.samples;
    if (evaluate_point(slot.constraint, record.value)) ++slot.passes;
  }
}

void Aggregator::Merge(const Aggregator& other) {
  for (std::size_t i = 0; i < slots_.size() && i < other.slots_.size(); ++i) {
    slots_[i].samples += other.slots_[i].samples;
    slots_[i].passes += other.slots_[i].passes;
  }
  records_ += other.records_;
  orphans_ += other.orphans_;
}

FulfillmentReport Aggregator::Finish(double quantile) const {
  if (!(quantile > 0 && quantile <= 1)) {
    throw InvalidArgumentError("quantile must lie in (0, 1]");
  }
  FulfillmentReport report;
  report.quantile = quantile;
  report.records = records_;
  report.orphans = orphans_;
  for (const auto& slot : slots_) {
    CellReport c;
    c.interest = slot.key.interest;
    c.task = slot.key.task;
    c.constraint = slot.constraint;
    c.samples = slot.samples;
    c.passes = slot.passes;
    if (slot.samples > 0) {
      c.pass_rate = static_cast<double>(slot.passes) / static_cast<double>(slot.samples);
      c.fulfilled = *c.pass_rate >= quantile;
    }
    report.cells.push_back(std::move(c));
  }
  return report;
}

FulfillmentReport fulfillment_report(const ConstraintMatrix& matrix,
                                     std::span<const MeasurementRecord> records,
                                     double quantile) {
  Aggregator agg(matrix);
  for (const auto& r : records) agg.Add(r);
  return agg.Finish(quantile);
}

namespace {

std::optional<double> ParseValue(std::string_view text) {
  double v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool IsBlankLine(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

/// Splits RFC 4180 text into records of fields. Quoted fields may span
/// lines; `first_line` gets the 1-based line where each record starts.
std::vector<std::vector<std::string>> SplitCsv(std::string_view text,
                                               std::vector<std::size_t>& first_line,
                                               std::vector<std::size_t>& bad_lines) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_has_content = false;
  std::size_t line = 1;
  std::size_t row_line = 1;
  auto end_row = [&] {
    row.push_back(std::move(field));
    field.clear();
    if (row_has_content) {
      rows.push_back(std::move(row));
      first_line.push_back(row_line);
    }
    row.clear();
    row_has_content = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
      row_has_content = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      row_has_content = true;
    } else if (c == '\n') {
      end_row();
      ++line;
      row_line = line;
    } else if (c == '\r') {
      // dropped; CRLF and LF both end records
    } else {
      field += c;
      if (c != ' ' && c != '\t') row_has_content = true;
    }
  }
  if (quoted) bad_lines.push_back(row_line);
  else end_row();
  return rows;
}

}  // namespace

IngestResult ReadNdjson(std::string_view text) {
  IngestResult result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (IsBlankLine(line)) continue;
    ++result.lines;
    auto fail = [&](std::string msg) {
      result.malformed.push_back(LineError{line_no, std::move(msg)});
    };
    auto doc = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
      fail("not a JSON object");
      continue;
    }
    auto task = doc.find("task");
    auto metric = doc.find("metric");
    auto value = doc.find("value");
    auto ts = doc.find("ts");
    if (task == doc.end() || !task->is_string() || metric == doc.end() ||
        !metric->is_string()) {
      fail("missing string field task or metric");
      continue;
    }
    if (value == doc.end() || !value->is_number()) {
      fail("missing numeric field value");
      continue;
    }
    double v = value->get<double>();
    if (!std::isfinite(v)) {
      fail("value is not finite");
      continue;
    }
    if (ts != doc.end() && !ts->is_string()) {
      fail("field ts is not a string");
      continue;
    }
    MeasurementRecord r;
    r.task = task->get<std::string>();
    r.metric = metric->get<std::string>();
    r.value = v;
    if (ts != doc.end()) r.timestamp = ts->get<std::string>();
    result.records.push_back(std::move(r));
  }
  return result;
}

IngestResult ReadCsv(std::string_view text) {
  IngestResult result;
  std::vector<std::size_t> first_line;
  std::vector<std::size_t> bad_lines;
  auto rows = SplitCsv(text, first_line, bad_lines);
  for (std::size_t line : bad_lines) {
    ++result.lines;
    result.malformed.push_back(LineError{line, "unterminated quoted field"});
  }
  if (rows.empty()) return result;

  int col_task = -1, col_metric = -1, col_value = -1, col_ts = -1;
  const auto& header = rows.front();
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& h = header[i];
    int idx = static_cast<int>(i);
    if (h == "task") col_task = idx;
    else if (h == "metric") col_metric = idx;
    else if (h == "value") col_value = idx;
    else if (h == "ts") col_ts = idx;
  }
  if (col_task < 0 || col_metric < 0 || col_value < 0) {
    ++result.lines;
    result.malformed.push_back(
        LineError{first_line.front(), "header must name task, metric and value"});
    for (std::size_t r = 1; r < rows.size(); ++r) {
      ++result.lines;
      result.malformed.push_back(LineError{first_line[r], "no usable header"});
    }
    return result;
  }
  std::size_t width = header.size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    ++result.lines;
    const auto& row = rows[r];
    if (row.size() != width) {
      result.malformed.push_back(LineError{
          first_line[r], "expected " + std::to_string(width) + " fields, found " +
                             std::to_string(row.size())});
      continue;
    }
    auto v = ParseValue(row[col_value]);
    if (!v) {
      result.malformed.push_back(
          LineError{first_line[r], "value \"" + row[col_value] + "\" is not a finite number"});
      continue;
    }
    MeasurementRecord rec;
    rec.task = row[col_task];
    rec.metric = row[col_metric];
    rec.value = *v;
    if (col_ts >= 0) rec.timestamp = row[col_ts];
    result.records.push_back(std::move(rec));
  }
  return result;
}

InputFormat DetectFormat(std::string_view path, std::string_view text) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".csv")) return InputFormat::kCsv;
  if (ends_with(".ndjson") || ends_with(".jsonl") || ends_with(".json")) {
    return InputFormat::kNdjson;
  }
  auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string_view::npos && text[first] == '{' ? InputFormat::kNdjson
                                                                : InputFormat::kCsv;
}

IngestResult ReadMeasurements(std::string_view text, InputFormat format) {
  return format == InputFormat::kCsv ? ReadCsv(text) : ReadNdjson(text);
}

std::string ToJson(const FulfillmentReport& report) {
  nlohmann::ordered_json doc;
  doc["schema"] = FulfillmentReport::kSchema;
  doc["quantile"] = report.quantile;
  doc["records"] = report.records;
  doc["orphans"] = report.orphans;
  doc["malformed"] = report.malformed;
  doc["all_fulfilled"] = report.AllFulfilled();
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : report.cells) {
    nlohmann::ordered_json cell;
    cell["interest"] = c.interest;
    cell["task"] = c.task;
    cell["constraint"] = ToString(c.constraint);
    cell["samples"] = c.samples;
    cell["passes"] = c.passes;
    cell["pass_rate"] = c.pass_rate ? nlohmann::ordered_json(*c.pass_rate) : nullptr;
    cell["fulfilled"] = c.fulfilled ? nlohmann::ordered_json(*c.fulfilled) : nullptr;
    cells.push_back(std::move(cell));
  }
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

std::string ToText(const FulfillmentReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"interest", "task", "constraint", "samples", "passes", "pass_rate",
                  "status"});
  for (const auto& c : report.cells) {
    std::string rate = "-";
    if (c.pass_rate) rate = FormatNumber(std::round(*c.pass_rate * 10000) / 10000);
    std::string status = !c.fulfilled ? "no data" : *c.fulfilled ? "fulfilled" : "NOT fulfilled";
    rows.push_back({c.interest, c.task, ToString(c.constraint), std::to_string(c.samples),
                    std::to_string(c.passes), rate, status});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line.append(width[i] - r[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  out += "records: " + std::to_string(report.records) +
         "  orphans: " + std::to_string(report.orphans) +
         "  malformed: " + std::to_string(report.malformed) +
         "  quantile: " + FormatNumber(report.quantile) + "\n";
  return out;
}

}  // namespace taskcon::monitor
