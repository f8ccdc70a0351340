/// @file dsl.h
/// Reader and canonical writer for the `.tac` model format.
///
/// Grammar (whitespace and `//` comments are insignificant):
///
///     model      := (metric | info | task | interest | matrix)* ;
///     metric     := "metric" IDENT "{" "unit:" STRING
///                   "direction:" ("lower_is_better"|"higher_is_better") "}" ;
///     info       := "info" STRING ("external")? ("{" "description:" STRING "}")? ;
///     task       := "task" STRING "{" "goal:" STRING ("priority:" PRIO)?
///                   subtask* plan? "}" ;
///     subtask    := "subtask" STRING "{" "intention:" STRING resp+ pre* post*
///                   io* refined? "}" ;
///     resp       := "responsibility" STRING ;
///     pre        := "pre:" STRING ;   post := "post:" STRING ;
///     io         := ("consumes"|"produces") STRING ;
///     refined    := "refined_in" STRING ;
///     plan       := "plan" "{" (STRING "->" STRING ("if" STRING)?)* "}" ;
///     interest   := "interest" IDENT STRING "{" "class:" CLASS ("refines:" IDENT)? "}" ;
///     matrix     := "matrix" "{" cell* "}" ;
///     cell       := IDENT "x" STRING (":" RELEVANCE)? "=>"
///                   (constraint | "waived" STRING | "unresolved") ;
///     constraint := IDENT CMP NUMBER UNITWORD ;
///
/// UNITWORD is a run of non-blank characters other than `{}":` on the same
/// line as the threshold. NUMBER is `-?[0-9]+(\.[0-9]+)?`.
#ifndef TASKCON_DSL_H_
#define TASKCON_DSL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taskcon/diagnostic.h"
#include "taskcon/model.h"

namespace taskcon::dsl {

/// `model` is present iff no diagnostic is an error.
struct ParseResult {
  std::optional<Model> model;
  std::vector<Diagnostic> diagnostics;
};

/// Never throws on malformed input; every problem becomes a diagnostic.
/// Recovers at the next top-level keyword, so one run reports several
/// errors. Checks name uniqueness, mandatory fields and name resolution;
/// semantic rules are left to analysis::validate.
ParseResult parse(std::string_view source, std::string_view file_name);

/// Canonical text: declarations grouped by kind (metrics, infos, tasks,
/// interests, matrix) in declaration order, two-space indentation.
std::string print(const Model& model);

/// One matrix line without indentation or newline, e.g.
/// `RESP x "Search for book": very_important => response_time < 2 ms`.
std::string PrintCell(const CellKey& key, const Cell& cell);

/// Double-quoted literal with `\"`, `\\` and control characters escaped.
std::string Quote(std::string_view text);

bool IsIdentifier(std::string_view text);
bool IsUnitWord(std::string_view text);

}  // namespace taskcon::dsl

#endif  // TASKCON_DSL_H_
