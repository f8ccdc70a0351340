/// @file parser.cc
/// Recursive-descent reader for `.tac` sources.
#include <algorithm>
#include <charconv>
#include <set>

#include "lexer.h"
#include "taskcon/dsl.h"

namespace taskcon::dsl {

namespace {

constexpr std::string_view kTopLevelKeywords[] = {"metric", "info", "task",
                                                  "interest", "matrix"};

bool IsTopLevelKeyword(const Token& t) {
  return t.kind == TokenKind::kIdent &&
         std::find(std::begin(kTopLevelKeywords), std::end(kTopLevelKeywords),
                   t.text) != std::end(kTopLevelKeywords);
}

SourceSpan Cover(const SourceSpan& a, const SourceSpan& b) {
  return SourceSpan{a.file, a.start_line, a.start_col, b.end_line, b.end_col};
}

std::string Quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

class Parser {
 public:
  Parser(std::string_view source, std::string file)
      : lex_(source, file), file_(std::move(file)) {}

  ParseResult Run();

 private:
  const Token& Peek() {
    if (!peeked_) peeked_ = lex_.Next();
    return *peeked_;
  }
  Token Take() {
    Peek();
    Token t = std::move(*peeked_);
    peeked_.reset();
    return t;
  }
  bool PeekKeyword(std::string_view kw) {
    const Token& t = Peek();
    return t.kind == TokenKind::kIdent && t.text == kw;
  }
  [[noreturn]] void Fail(const std::string& expected) {
    const Token& t = Peek();
    std::string found = t.kind == TokenKind::kEof ? "end of file"
                        : t.kind == TokenKind::kString ? "string " + Quoted(t.text)
                                                       : "'" + t.text + "'";
    throw SyntaxError("expected " + expected + ", found " + found, t.span);
  }
  Token Expect(TokenKind kind, std::string_view what = {}) {
    if (Peek().kind != kind) Fail(what.empty() ? std::string(Describe(kind)) : std::string(what));
    return Take();
  }
  Token ExpectKeyword(std::string_view kw) {
    if (!PeekKeyword(kw)) Fail("'" + std::string(kw) + "'");
    return Take();
  }
  /// `name:`; returns the span of the name.
  SourceSpan ExpectField(std::string_view name) {
    Token t = ExpectKeyword(name);
    Expect(TokenKind::kColon, "':' after '" + std::string(name) + "'");
    return t.span;
  }
  std::string ExpectString(std::string_view what, SourceSpan* span = nullptr) {
    Token t = Expect(TokenKind::kString, what);
    if (span) *span = t.span;
    return t.text;
  }

  void Report(const SourceSpan& span, std::string message) {
    diagnostics_.push_back(
        Diagnostic{Rule::kSyntax, Severity::kError, span, std::move(message)});
  }

  void Recover();
  void ParseMetric();
  void ParseInfo();
  void ParseTask();
  Subtask ParseSubtask();
  ExecutionPlan ParsePlan();
  void ParseInterest();
  void ParseMatrix();
  Constraint ParseConstraint();

  void CheckStructure(bool resolve_references);

  Lexer lex_;
  std::string file_;
  std::optional<Token> peeked_;
  Model model_;
  bool have_matrix_ = false;
  std::vector<Diagnostic> diagnostics_;
};

ParseResult Parser::Run() {
  model_.source_name = file_;
  bool syntax_failed = false;
  while (true) {
    try {
      const Token& t = Peek();
      if (t.kind == TokenKind::kEof) break;
      if (t.kind != TokenKind::kIdent) Fail("top-level declaration");
      if (t.text == "metric") {
        ParseMetric();
      } else if (t.text == "info") {
        ParseInfo();
      } else if (t.text == "task") {
        ParseTask();
      } else if (t.text == "interest") {
        ParseInterest();
      } else if (t.text == "matrix") {
        ParseMatrix();
      } else {
        Fail("top-level declaration (metric, info, task, interest, matrix)");
      }
    } catch (const SyntaxError& e) {
      syntax_failed = true;
      Report(e.span(), e.what());
      Recover();
    }
  }
  CheckStructure(!syntax_failed);
  SortDiagnostics(diagnostics_);

  ParseResult result;
  result.diagnostics = std::move(diagnostics_);
  if (!HasErrors(result.diagnostics)) result.model = std::move(model_);
  return result;
}

/// Skips to the next top-level keyword that sits outside any brace or
/// starts a line.
void Parser::Recover() {
  while (true) {
    try {
      const Token& t = Peek();
      if (t.kind == TokenKind::kEof) return;
      if (IsTopLevelKeyword(t) && (t.depth <= 0 || t.span.start_col == 1)) {
        lex_.ResetDepth();
        if (peeked_) peeked_->depth = 0;
        return;
      }
      Take();
    } catch (const SyntaxError&) {
      peeked_.reset();  // lexer already advanced past the bad input
    }
  }
}

void Parser::ParseMetric() {
  ExpectKeyword("metric");
  Token name = Expect(TokenKind::kIdent, "metric name");
  Metric m;
  m.name = name.text;
  m.span = name.span;
  Expect(TokenKind::kLBrace);
  ExpectField("unit");
  SourceSpan unit_span;
  m.unit = ExpectString("unit string", &unit_span);
  if (m.unit.empty()) {
    Report(unit_span, "empty unit");
  } else if (!IsUnitWord(m.unit)) {
    Report(unit_span, "unit " + Quoted(m.unit) + " must be a single word");
  }
  ExpectField("direction");
  Token dir = Expect(TokenKind::kIdent, "direction");
  auto d = ParseDirection(dir.text);
  if (!d) throw SyntaxError("expected lower_is_better or higher_is_better", dir.span);
  m.direction = *d;
  Expect(TokenKind::kRBrace);
  model_.metrics.push_back(std::move(m));
}

void Parser::ParseInfo() {
  ExpectKeyword("info");
  InformationObject info;
  info.name = ExpectString("information object name", &info.span);
  if (PeekKeyword("external")) {
    Take();
    info.external = true;
  }
  if (Peek().kind == TokenKind::kLBrace) {
    Take();
    ExpectField("description");
    info.description = ExpectString("description string");
    Expect(TokenKind::kRBrace);
  }
  model_.info_objects.push_back(std::move(info));
}

void Parser::ParseTask() {
  ExpectKeyword("task");
  Task task;
  task.name = ExpectString("task name", &task.span);
  Expect(TokenKind::kLBrace);
  ExpectField("goal");
  task.goal = ExpectString("goal string", &task.goal_span);
  if (PeekKeyword("priority")) {
    ExpectField("priority");
    Token p = Expect(TokenKind::kIdent, "priority");
    auto prio = ParsePriority(p.text);
    if (!prio) throw SyntaxError("expected priority mvp, high, normal or low", p.span);
    task.priority = *prio;
  }
  while (PeekKeyword("subtask")) task.subtasks.push_back(ParseSubtask());
  if (PeekKeyword("plan")) task.plan = ParsePlan();
  if (Peek().kind != TokenKind::kRBrace) {
    Fail(task.plan.edges.empty() && !task.plan.span.valid() ? "'subtask', 'plan' or '}'"
                                                            : "'}'");
  }
  Take();
  model_.tasks.push_back(std::move(task));
}

Subtask Parser::ParseSubtask() {
  ExpectKeyword("subtask");
  Subtask s;
  s.name = ExpectString("subtask name", &s.span);
  Expect(TokenKind::kLBrace);
  ExpectField("intention");
  SourceSpan intention_span;
  s.intention = ExpectString("intention string", &intention_span);
  if (s.intention.empty()) Report(intention_span, "empty intention");
  if (!PeekKeyword("responsibility")) Fail("'responsibility'");
  while (PeekKeyword("responsibility")) {
    Take();
    SystemResponsibility r;
    r.description = ExpectString("responsibility string", &r.span);
    if (r.description.empty()) Report(r.span, "empty responsibility");
    s.responsibilities.push_back(std::move(r));
  }
  while (PeekKeyword("pre")) {
    ExpectField("pre");
    s.preconditions.push_back(ExpectString("precondition string"));
  }
  while (PeekKeyword("post")) {
    ExpectField("post");
    s.postconditions.push_back(ExpectString("postcondition string"));
  }
  while (PeekKeyword("consumes") || PeekKeyword("produces")) {
    bool consumes = Take().text == "consumes";
    NameRef ref;
    ref.name = ExpectString("information object name", &ref.span);
    (consumes ? s.consumes : s.produces).push_back(std::move(ref));
  }
  if (PeekKeyword("refined_in")) {
    Take();
    s.refined_in = ExpectString("model path", &s.refined_in_span);
  }
  if (Peek().kind != TokenKind::kRBrace) {
    if (PeekKeyword("subtask")) {
      throw SyntaxError("subtasks cannot contain subtasks; use refined_in",
                        Peek().span);
    }
    Fail("'}' closing subtask " + Quoted(s.name));
  }
  Take();
  return s;
}

ExecutionPlan Parser::ParsePlan() {
  ExecutionPlan plan;
  plan.span = ExpectKeyword("plan").span;
  Expect(TokenKind::kLBrace);
  while (Peek().kind == TokenKind::kString) {
    PlanEdge e;
    SourceSpan from_span, to_span;
    e.from = ExpectString("subtask name", &from_span);
    Expect(TokenKind::kArrow);
    e.to = ExpectString("subtask name", &to_span);
    SourceSpan end = to_span;
    if (PeekKeyword("if")) {
      Take();
      e.guard = ExpectString("guard string", &end);
    }
    e.span = Cover(from_span, end);
    plan.edges.push_back(std::move(e));
  }
  Expect(TokenKind::kRBrace, "plan edge or '}'");
  return plan;
}

void Parser::ParseInterest() {
  ExpectKeyword("interest");
  Token id = Expect(TokenKind::kIdent, "interest id");
  StakeholderInterest interest;
  interest.id = id.text;
  interest.span = id.span;
  SourceSpan statement_span;
  interest.statement = ExpectString("interest statement", &statement_span);
  if (interest.statement.empty()) Report(statement_span, "empty interest statement");
  Expect(TokenKind::kLBrace);
  ExpectField("class");
  Token cls = Expect(TokenKind::kIdent, "interest class");
  auto c = ParseInterestClass(cls.text);
  if (!c) throw SyntaxError("unknown interest class '" + cls.text + "'", cls.span);
  interest.interest_class = *c;
  if (PeekKeyword("refines")) {
    ExpectField("refines");
    interest.refines = Expect(TokenKind::kIdent, "parent interest id").text;
  }
  Expect(TokenKind::kRBrace);
  model_.interests.push_back(std::move(interest));
}

Constraint Parser::ParseConstraint() {
  Constraint c;
  c.metric = Expect(TokenKind::kIdent, "metric name").text;
  const Token& op = Peek();
  switch (op.kind) {
    case TokenKind::kLt: c.comparator = Comparator::kLt; break;
    case TokenKind::kLe: c.comparator = Comparator::kLe; break;
    case TokenKind::kGt: c.comparator = Comparator::kGt; break;
    case TokenKind::kGe: c.comparator = Comparator::kGe; break;
    default: Fail("comparator (<, <=, >, >=)");
  }
  Take();
  Token num = Expect(TokenKind::kNumber, "threshold");
  const char* first = num.text.data();
  const char* last = first + num.text.size();
  auto [ptr, ec] = std::from_chars(first, last, c.threshold);
  if (ec != std::errc() || ptr != last) {
    throw SyntaxError("threshold out of range", num.span);
  }
  // The unit word is lexed on demand, so nothing may be peeked here.
  c.unit = lex_.NextUnitWord().text;
  return c;
}

void Parser::ParseMatrix() {
  Token kw = ExpectKeyword("matrix");
  if (have_matrix_) {
    Report(kw.span, "a model holds at most one matrix");
  }
  ConstraintMatrix parsed;
  parsed.span = kw.span;
  Expect(TokenKind::kLBrace);
  while (Peek().kind == TokenKind::kIdent) {
    Token id = Take();
    ExpectKeyword("x");
    SourceSpan task_span;
    std::string task = ExpectString("task name", &task_span);
    Cell cell;
    if (Peek().kind == TokenKind::kColon) {
      Take();
      Token rel = Expect(TokenKind::kIdent, "relevance");
      cell.relevance = ParseRelevance(rel.text);
      if (!cell.relevance) {
        throw SyntaxError("unknown relevance '" + rel.text + "'", rel.span);
      }
    }
    Expect(TokenKind::kFatArrow, "'=>'");
    SourceSpan end = lex_.Here();
    if (PeekKeyword("waived")) {
      Take();
      SourceSpan reason_span;
      std::string reason = ExpectString("waiver reason", &reason_span);
      if (reason.empty()) Report(reason_span, "empty waiver reason");
      cell.resolution = Waived{std::move(reason)};
      end = reason_span;
    } else if (PeekKeyword("unresolved")) {
      end = Take().span;
      cell.resolution = Unresolved{};
    } else {
      cell.resolution = Resolved{ParseConstraint()};
      end = lex_.Here();
    }
    cell.span = Cover(id.span, end);

    CellKey key{id.text, task};
    if (parsed.cells.count(key)) {
      Report(id.span, "duplicate cell " + id.text + " x " + Quoted(task));
      continue;
    }
    if (std::find(parsed.interests.begin(), parsed.interests.end(), id.text) ==
        parsed.interests.end()) {
      parsed.interests.push_back(id.text);
    }
    if (std::find(parsed.tasks.begin(), parsed.tasks.end(), task) == parsed.tasks.end()) {
      parsed.tasks.push_back(task);
    }
    parsed.cells.emplace(std::move(key), std::move(cell));
  }
  Expect(TokenKind::kRBrace, "matrix cell or '}'");
  if (!have_matrix_) {
    model_.matrix = std::move(parsed);
    have_matrix_ = true;
  }
}

/// Uniqueness and mandatory fields always; name resolution only when the
/// whole source parsed, since a skipped declaration would otherwise show
/// up as a spurious unknown reference.
void Parser::CheckStructure(bool resolve_references) {
  auto check_unique = [this](const std::string& key, const SourceSpan& span,
                             std::set<std::string>& seen, const std::string& what) {
    if (!seen.insert(key).second) Report(span, "duplicate " + what);
  };

  std::set<std::string> metrics, infos, tasks, interests;
  for (const auto& m : model_.metrics) {
    check_unique(m.name, m.span, metrics, "metric " + m.name);
  }
  for (const auto& i : model_.info_objects) {
    if (i.name.empty()) Report(i.span, "empty information object name");
    check_unique(i.name, i.span, infos, "information object " + Quoted(i.name));
  }
  for (const auto& t : model_.tasks) {
    if (t.name.empty()) Report(t.span, "empty task name");
    check_unique(t.name, t.span, tasks, "task " + Quoted(t.name));
    if (t.goal.empty()) Report(t.goal_span, "empty goal");
    std::set<std::string> subtasks;
    for (const auto& s : t.subtasks) {
      if (s.name.empty()) Report(s.span, "empty subtask name");
      check_unique(s.name, s.span, subtasks, "subtask " + Quoted(s.name));
      for (const auto& c : s.consumes) {
        if (s.Produces(c.name)) {
          Report(c.span, "subtask " + Quoted(s.name) + " both consumes and produces " +
                            Quoted(c.name));
        }
      }
    }
  }
  for (const auto& i : model_.interests) {
    check_unique(i.id, i.span, interests, "interest " + i.id);
  }

  if (!resolve_references) return;

  for (const auto& t : model_.tasks) {
    for (const auto& s : t.subtasks) {
      for (const auto* refs : {&s.consumes, &s.produces}) {
        for (const auto& r : *refs) {
          if (!model_.FindInfo(r.name)) {
            Report(r.span, "unknown information object " + Quoted(r.name));
          }
        }
      }
    }
  }
  for (const auto& i : model_.interests) {
    if (i.refines && !model_.FindInterest(*i.refines)) {
      Report(i.span, "interest " + i.id + " refines unknown interest " + *i.refines);
    }
  }
  if (auto cycle = FindRefinementCycle(model_)) {
    const StakeholderInterest* first = model_.FindInterest(cycle->front());
    std::string shown;
    for (const auto& id : *cycle) shown += id + " -> ";
    Report(first->span, "interest refinement cycle: " + shown + cycle->front());
  }

  const ConstraintMatrix& mx = model_.matrix;
  for (const auto& [key, cell] : mx.cells) {
    if (!model_.FindInterest(key.interest)) {
      Report(cell.span, "matrix row names unknown interest " + key.interest);
    }
    if (!model_.FindTask(key.task)) {
      Report(cell.span, "matrix column names unknown task " + Quoted(key.task));
    }
    if (const Constraint* c = cell.constraint()) {
      const Metric* m = model_.FindMetric(c->metric);
      if (!m) {
        Report(cell.span, "constraint uses unknown metric " + c->metric);
      } else if (m->unit != c->unit) {
        Report(cell.span, "unit " + c->unit + " does not match unit " + m->unit +
                             " of metric " + m->name);
      }
    }
  }
  for (const auto& interest : mx.interests) {
    for (const auto& task : mx.tasks) {
      if (!mx.Find(interest, task)) {
        Report(mx.span, "matrix is missing cell " + interest + " x " + Quoted(task));
      }
    }
  }
}

}  // namespace

ParseResult parse(std::string_view source, std::string_view file_name) {
  return Parser(source, std::string(file_name)).Run();
}

}  // namespace taskcon::dsl
