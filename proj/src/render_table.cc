/// @file render_table.cc
/// Markdown and HTML views of the task-interest matrix.
#include "taskcon/render.h"

namespace taskcon::render {

namespace {

constexpr std::string_view kEmptyCell = "—";

std::string CellText(const Cell* cell, MatrixView view) {
  if (!cell) return std::string(kEmptyCell);
  if (view == MatrixView::kRelevance) {
    return cell->relevance ? std::string(ToString(*cell->relevance))
                           : std::string(kEmptyCell);
  }
  if (const Constraint* c = cell->constraint()) return ToString(*c);
  if (std::holds_alternative<Waived>(cell->resolution)) return "waived";
  return std::string(kEmptyCell);
}

std::string MarkdownEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

std::string HtmlEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view ToString(MatrixView view) {
  return view == MatrixView::kRelevance ? "relevance" : "constraints";
}

std::string matrix_to_markdown(const ConstraintMatrix& matrix, MatrixView view) {
  std::string header = "| Interest |";
  std::string rule = "| --- |";
  for (const auto& task : matrix.tasks) {
    header += " " + MarkdownEscape(task) + " |";
    rule += " --- |";
  }
  std::string out = header + "\n" + rule + "\n";
  for (const auto& interest : matrix.interests) {
    std::string line = "| " + MarkdownEscape(interest) + " |";
    for (const auto& task : matrix.tasks) {
      line += " " + MarkdownEscape(CellText(matrix.Find(interest, task), view)) + " |";
    }
    out += line + "\n";
  }
  return out;
}

std::string matrix_to_html(const ConstraintMatrix& matrix, MatrixView view,
                           std::string_view title) {
  std::string out;
  out += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>" + HtmlEscape(title) + "</title>\n";
  out += "<style>\n";
  out += "body { font-family: Helvetica, Arial, sans-serif; }\n";
  out += "table { border-collapse: collapse; }\n";
  out += "th, td { border: 1px solid #444444; padding: 4px 8px; text-align: center; }\n";
  out += "th.row { text-align: left; }\n";
  for (Relevance r : kAllRelevances) {
    bool dark = Level(r) >= Level(Relevance::kImportant);
    out += "td." + std::string(ToString(r)) + " { background: " +
           std::string(RelevanceShade(r)) + "; color: " + (dark ? "#ffffff" : "#000000") +
           "; }\n";
  }
  out += "</style>\n</head>\n<body>\n";
  out += "<h1>" + HtmlEscape(title) + "</h1>\n";
  out += "<table class=\"" + std::string(ToString(view)) + "\">\n<tr><th></th>";
  for (const auto& task : matrix.tasks) out += "<th>" + HtmlEscape(task) + "</th>";
  out += "</tr>\n";
  for (const auto& interest : matrix.interests) {
    out += "<tr><th class=\"row\">" + HtmlEscape(interest) + "</th>";
    for (const auto& task : matrix.tasks) {
      const Cell* cell = matrix.Find(interest, task);
      std::string cls = cell && cell->relevance
                            ? " class=\"" + std::string(ToString(*cell->relevance)) + "\""
                            : "";
      out += "<td" + cls + ">" + HtmlEscape(CellText(cell, view)) + "</td>";
    }
    out += "</tr>\n";
  }
  out += "</table>\n</body>\n</html>\n";
  return out;
}

}  // namespace taskcon::render
