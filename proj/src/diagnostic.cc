/// @file diagnostic.cc
#include "taskcon/diagnostic.h"

#include <algorithm>
#include <tuple>

namespace taskcon {

std::string_view ToString(Rule r) {
  switch (r) {
    case Rule::kSyntax: return "syntax";
    case Rule::kR1: return "R1";
    case Rule::kR2: return "R2";
    case Rule::kR3: return "R3";
    case Rule::kR4: return "R4";
    case Rule::kR5: return "R5";
    case Rule::kR6: return "R6";
    case Rule::kR7: return "R7";
    case Rule::kR8: return "R8";
    case Rule::kR9: return "R9";
    case Rule::kR10: return "R10";
    case Rule::kR11: return "R11";
    case Rule::kR12: return "R12";
    case Rule::kLink: return "link";
    case Rule::kIo: return "io";
  }
  return "";
}

std::string_view ToString(Severity s) {
  return s == Severity::kError ? "error" : "warning";
}

std::optional<Rule> ParseRule(std::string_view text) {
  for (int i = static_cast<int>(Rule::kSyntax); i <= static_cast<int>(Rule::kIo); ++i) {
    auto r = static_cast<Rule>(i);
    if (ToString(r) == text) return r;
  }
  return std::nullopt;
}

std::optional<Rule> ParseSemanticRule(std::string_view text) {
  auto r = ParseRule(text);
  if (!r || *r < Rule::kR1 || *r > Rule::kR12) return std::nullopt;
  return r;
}

std::string FormatDiagnostic(const Diagnostic& d) {
  std::string out = d.span.file;
  out += ':';
  out += std::to_string(d.span.start_line);
  out += ':';
  out += std::to_string(d.span.start_col);
  out += ": ";
  out += ToString(d.severity);
  out += '[';
  out += ToString(d.rule);
  out += "] ";
  out += d.message;
  return out;
}

void SortDiagnostics(std::vector<Diagnostic>& diagnostics) {
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.span.file, a.span.start_line,
                                     a.span.start_col, a.rule) <
                            std::tie(b.span.file, b.span.start_line,
                                     b.span.start_col, b.rule);
                   });
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kError;
  });
}

}  // namespace taskcon
