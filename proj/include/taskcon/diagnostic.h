/// @file diagnostic.h
/// Findings reported by the parser, the rule engine and the CLI.
#ifndef TASKCON_DIAGNOSTIC_H_
#define TASKCON_DIAGNOSTIC_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taskcon/model.h"

namespace taskcon {

/// Stable public identifiers. R1..R12 are the semantic rules; `kSyntax`
/// covers everything the parser rejects and `kLink` unresolvable
/// `refined_in` targets, `kIo` unreadable inputs.
enum class Rule {
  kSyntax = 0,
  kR1, kR2, kR3, kR4, kR5, kR6, kR7, kR8, kR9, kR10, kR11, kR12,
  kLink,
  kIo,
};

enum class Severity { kError, kWarning };

std::string_view ToString(Rule r);
std::string_view ToString(Severity s);
/// Accepts the spellings produced by ToString(Rule).
std::optional<Rule> ParseRule(std::string_view text);
/// Only "R1".."R12".
std::optional<Rule> ParseSemanticRule(std::string_view text);

struct Diagnostic {
  Rule rule = Rule::kSyntax;
  Severity severity = Severity::kError;
  SourceSpan span;
  std::string message;

  friend bool operator==(const Diagnostic& a, const Diagnostic& b) {
    return a.rule == b.rule && a.severity == b.severity &&
           a.span.file == b.span.file && a.span.start_line == b.span.start_line &&
           a.span.start_col == b.span.start_col &&
           a.span.end_line == b.span.end_line &&
           a.span.end_col == b.span.end_col && a.message == b.message;
  }
};

/// `file:line:col: severity[RULE] message`
std::string FormatDiagnostic(const Diagnostic& d);

/// Orders by (file, start line, start column, rule); stable for ties.
void SortDiagnostics(std::vector<Diagnostic>& diagnostics);

bool HasErrors(const std::vector<Diagnostic>& diagnostics);

}  // namespace taskcon

#endif  // TASKCON_DIAGNOSTIC_H_
