/// @file printer.cc
/// Canonical `.tac` writer.
#include <cctype>
#include <cstdio>

#include "taskcon/dsl.h"

namespace taskcon::dsl {

std::string Quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned char>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

bool IsIdentifier(std::string_view text) {
  if (text.empty()) return false;
  auto start = static_cast<unsigned char>(text.front());
  if (!std::isalpha(start) && start != '_') return false;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && u != '_') return false;
  }
  return true;
}

bool IsUnitWord(std::string_view text) {
  if (text.empty()) return false;
  if (text.find("//") != std::string_view::npos) return false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '{' || c == '}' ||
        c == '"' || c == ':')
      return false;
  }
  return true;
}

std::string PrintCell(const CellKey& key, const Cell& cell) {
  std::string out = key.interest + " x " + Quote(key.task);
  if (cell.relevance) {
    out += ": ";
    out += ToString(*cell.relevance);
  }
  out += " => ";
  if (const auto* w = std::get_if<Waived>(&cell.resolution)) {
    out += "waived " + Quote(w->reason);
  } else if (const Constraint* c = cell.constraint()) {
    out += ToString(*c);
  } else {
    out += "unresolved";
  }
  return out;
}

namespace {

class Printer {
 public:
  std::string Run(const Model& m) {
    for (const auto& metric : m.metrics) Metric(metric);
    for (const auto& info : m.info_objects) Info(info);
    for (const auto& task : m.tasks) Task(task);
    for (const auto& interest : m.interests) Interest(interest);
    if (!m.matrix.cells.empty()) Matrix(m.matrix);
    return std::move(out_);
  }

 private:
  void Separate() {
    if (!out_.empty()) out_ += '\n';
  }
  void Line(int indent, const std::string& text) {
    out_.append(2 * indent, ' ');
    out_ += text;
    out_ += '\n';
  }

  void Metric(const taskcon::Metric& m) {
    Separate();
    Line(0, "metric " + m.name + " {");
    Line(1, "unit: " + Quote(m.unit));
    Line(1, "direction: " + std::string(ToString(m.direction)));
    Line(0, "}");
  }

  void Info(const InformationObject& i) {
    Separate();
    std::string head = "info " + Quote(i.name);
    if (i.external) head += " external";
    if (i.description.empty()) {
      Line(0, head);
      return;
    }
    Line(0, head + " {");
    Line(1, "description: " + Quote(i.description));
    Line(0, "}");
  }

  void Task(const taskcon::Task& t) {
    Separate();
    Line(0, "task " + Quote(t.name) + " {");
    Line(1, "goal: " + Quote(t.goal));
    Line(1, "priority: " + std::string(ToString(t.priority)));
    for (const auto& s : t.subtasks) {
      out_ += '\n';
      Line(1, "subtask " + Quote(s.name) + " {");
      Line(2, "intention: " + Quote(s.intention));
      for (const auto& r : s.responsibilities) {
        Line(2, "responsibility " + Quote(r.description));
      }
      for (const auto& p : s.preconditions) Line(2, "pre: " + Quote(p));
      for (const auto& p : s.postconditions) Line(2, "post: " + Quote(p));
      for (const auto& c : s.consumes) Line(2, "consumes " + Quote(c.name));
      for (const auto& p : s.produces) Line(2, "produces " + Quote(p.name));
      if (s.refined_in) Line(2, "refined_in " + Quote(*s.refined_in));
      Line(1, "}");
    }
    if (!t.plan.edges.empty()) {
      out_ += '\n';
      Line(1, "plan {");
      for (const auto& e : t.plan.edges) {
        std::string edge = Quote(e.from) + " -> " + Quote(e.to);
        if (e.guard) edge += " if " + Quote(*e.guard);
        Line(2, edge);
      }
      Line(1, "}");
    }
    Line(0, "}");
  }

  void Interest(const StakeholderInterest& i) {
    Separate();
    Line(0, "interest " + i.id + " " + Quote(i.statement) + " {");
    Line(1, "class: " + std::string(ToString(i.interest_class)));
    if (i.refines) Line(1, "refines: " + *i.refines);
    Line(0, "}");
  }

  void Matrix(const ConstraintMatrix& mx) {
    Separate();
    Line(0, "matrix {");
    for (const auto& interest : mx.interests) {
      for (const auto& task : mx.tasks) {
        CellKey key{interest, task};
        auto it = mx.cells.find(key);
        if (it != mx.cells.end()) Line(1, PrintCell(key, it->second));
      }
    }
    Line(0, "}");
  }

  std::string out_;
};

}  // namespace

std::string print(const Model& model) { return Printer().Run(model); }

}  // namespace taskcon::dsl
