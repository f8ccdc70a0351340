/// @file cli.cc
#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "config.h"
#include "taskcon/analysis.h"
#include "taskcon/dsl.h"
#include "taskcon/error.h"
#include "taskcon/monitor.h"
#include "taskcon/render.h"
#include "taskcon/tailor.h"

namespace taskcon::cli {

namespace fs = std::filesystem;

namespace {

std::optional<std::string> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

bool WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

class Session {
 public:
  explicit Session(Environment& env) : env_(env) {}

  fs::path Resolve(const std::string& p) const {
    fs::path path(p);
    return path.is_absolute() ? path : env_.cwd / path;
  }

  void Print(const Diagnostic& d) {
    std::string line = FormatDiagnostic(d);
    if (env_.color) {
      std::string sev(ToString(d.severity));
      std::string colored = (d.severity == Severity::kError ? "\x1b[31m" : "\x1b[33m") +
                            sev + "\x1b[0m";
      auto at = line.find(": " + sev + "[");
      if (at != std::string::npos) line.replace(at + 2, sev.size(), colored);
    }
    env_.err << line << "\n";
  }

  /// Applies suppressions and --strict. Returns true when an error remains.
  bool Report(std::vector<Diagnostic> diags) {
    bool errors = false;
    for (auto& d : diags) {
      if (config_.suppressed.count(d.rule)) continue;
      if (config_.strict) d.severity = Severity::kError;
      errors = errors || d.severity == Severity::kError;
      Print(d);
    }
    return errors;
  }

  void Message(const std::string& text) { env_.err << "taskcon: " << text << "\n"; }

  /// Emits to --out when given, else stdout.
  int Emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
      env_.out << text;
      return kExitClean;
    }
    if (!WriteFile(Resolve(out_path), text)) {
      Message("cannot write " + out_path);
      return kExitFailure;
    }
    return kExitClean;
  }

  /// Loads and parses a model; the exit code is set on failure.
  std::optional<Model> Load(const std::string& path, int& exit_code) {
    auto text = ReadFile(Resolve(path));
    if (!text) {
      Print(Diagnostic{Rule::kIo, Severity::kError, SourceSpan{path, 1, 1, 1, 1},
                       "cannot read file"});
      exit_code = kExitFailure;
      return std::nullopt;
    }
    auto parsed = dsl::parse(*text, path);
    if (!parsed.model) {
      Report(parsed.diagnostics);
      exit_code = kExitFindings;
      return std::nullopt;
    }
    return std::move(parsed.model);
  }

  bool LoadConfig(const std::string& explicit_path) {
    fs::path path = explicit_path.empty() ? env_.cwd / "taskcon.toml" : Resolve(explicit_path);
    if (explicit_path.empty() && !fs::exists(path)) return true;
    auto text = ReadFile(path);
    if (!text) {
      Message("cannot read config " + path.string());
      return false;
    }
    try {
      config_ = ParseConfig(*text, path.filename().string());
    } catch (const ConfigError& e) {
      Message(e.what());
      return false;
    }
    return true;
  }

  RunConfig& config() { return config_; }
  Environment& env() { return env_; }

 private:
  Environment& env_;
  RunConfig config_;
};

int Check(Session& s, const std::vector<std::string>& paths) {
  int code = kExitClean;
  for (const auto& path : paths) {
    int load_code = kExitClean;
    auto model = s.Load(path, load_code);
    if (!model) {
      code = std::max(code, load_code);
      continue;
    }
    auto diags = analysis::validate(*model);
    fs::path base = s.Resolve(path).parent_path();
    for (const auto& task : model->tasks) {
      for (const auto& sub : task.subtasks) {
        if (sub.refined_in && !fs::exists(base / *sub.refined_in)) {
          diags.push_back(Diagnostic{Rule::kLink, Severity::kError, sub.refined_in_span,
                                     "refined_in target \"" + *sub.refined_in +
                                         "\" does not exist"});
        }
      }
    }
    SortDiagnostics(diags);
    if (s.Report(std::move(diags))) code = std::max<int>(code, kExitFindings);
  }
  return code;
}

struct RenderArgs {
  std::string path;
  std::string format;
  std::string view = "constraints";
  std::string task;
  std::string min_priority = "low";
  std::string out;
};

int Render(Session& s, const RenderArgs& a) {
  int code = kExitClean;
  auto model = s.Load(a.path, code);
  if (!model) return code;
  auto view = a.view == "relevance" ? render::MatrixView::kRelevance
                                    : render::MatrixView::kConstraints;
  std::string text;
  if (a.format == "dot") {
    std::vector<Task> tasks;
    if (!a.task.empty()) {
      const Task* t = model->FindTask(a.task);
      if (!t) {
        s.Message("no task named \"" + a.task + "\"");
        return kExitFailure;
      }
      tasks.push_back(*t);
    } else {
      tasks = select_tasks(*model, *ParsePriority(a.min_priority));
    }
    try {
      for (const auto& t : tasks) text += render::to_dot(t, model->info_objects);
    } catch (const InvalidModelError& e) {
      s.Message(e.what());
      return kExitFindings;
    }
  } else if (a.format == "md") {
    text = render::matrix_to_markdown(model->matrix, view);
  } else if (a.format == "html") {
    text = render::matrix_to_html(model->matrix, view, fs::path(a.path).stem().string());
  } else {
    text = tailor::ToCsv(model->matrix);
  }
  return s.Emit(text, a.out);
}

/// `RESP x "Search for book"`; the quotes are optional.
std::optional<CellKey> ParseAnchor(std::string_view text) {
  auto trim = [](std::string_view v) {
    auto b = v.find_first_not_of(" \t");
    if (b == std::string_view::npos) return std::string_view{};
    return v.substr(b, v.find_last_not_of(" \t") - b + 1);
  };
  text = trim(text);
  auto sep = text.find_first_of(" \t");
  if (sep == std::string_view::npos) return std::nullopt;
  std::string_view id = text.substr(0, sep);
  std::string_view rest = trim(text.substr(sep));
  if (rest.size() < 2 || rest[0] != 'x' || (rest[1] != ' ' && rest[1] != '\t')) {
    return std::nullopt;
  }
  std::string_view task = trim(rest.substr(1));
  if (task.size() >= 2 && task.front() == '"' && task.back() == '"') {
    task = task.substr(1, task.size() - 2);
  }
  if (!dsl::IsIdentifier(id) || task.empty()) return std::nullopt;
  return CellKey{std::string(id), std::string(task)};
}

struct DeriveArgs {
  std::string path;
  std::vector<std::string> anchors;
  std::string mode;
  std::optional<double> step;
  std::optional<int> rounding;
  std::string out;
};

int Derive(Session& s, const DeriveArgs& a) {
  int code = kExitClean;
  auto model = s.Load(a.path, code);
  if (!model) return code;

  tailor::DerivationPolicy policy;
  policy.mode = s.config().mode;
  if (!a.mode.empty()) {
    policy.mode = a.mode == "multiplicative" ? tailor::DerivationPolicy::Mode::kMultiplicative
                                             : tailor::DerivationPolicy::Mode::kAdditive;
  }
  auto step = a.step ? a.step : s.config().step;
  if (!step) {
    s.Message("derive needs --step (or step under [derive] in taskcon.toml)");
    return kExitFailure;
  }
  policy.step = *step;
  policy.rounding = a.rounding.value_or(s.config().rounding);

  std::vector<CellKey> anchors;
  for (const auto& text : a.anchors) {
    auto key = ParseAnchor(text);
    if (!key) {
      s.Message("malformed anchor '" + text + "', expected INTEREST x \"Task\"");
      return kExitFailure;
    }
    anchors.push_back(std::move(*key));
  }

  std::vector<tailor::Proposal> proposals;
  try {
    proposals = tailor::derive_proposals(model->matrix, model->metrics, anchors, policy);
  } catch (const InvalidArgumentError& e) {
    s.Message(e.what());
    return kExitFailure;
  } catch (const AnchorUnresolvedError& e) {
    s.Message(std::string("AnchorUnresolvedError: ") + e.what());
    return kExitFindings;
  } catch (const UnratedCellError& e) {
    s.Message(std::string("UnratedCellError: ") + e.what());
    return kExitFindings;
  } catch (const Error& e) {
    s.Message(e.what());
    return kExitFindings;
  }
  std::string text;
  for (const auto& p : proposals) text += "  " + dsl::PrintCell(p.key, p.cell) + "\n";
  return s.Emit(text, a.out);
}

struct MonitorArgs {
  std::string path;
  std::string measurements;
  std::optional<double> quantile;
  std::string format = "text";
  std::string input_format = "auto";
  std::string out;
};

int Monitor(Session& s, const MonitorArgs& a) {
  int code = kExitClean;
  auto model = s.Load(a.path, code);
  if (!model) return code;

  double quantile = a.quantile.value_or(s.config().quantile);
  try {
    CheckQuantile(quantile);
  } catch (const ConfigError& e) {
    s.Message(e.what());
    return kExitFailure;
  }

  auto text = ReadFile(s.Resolve(a.measurements));
  if (!text) {
    s.Message("cannot read measurements " + a.measurements);
    return kExitFailure;
  }
  monitor::InputFormat format =
      a.input_format == "csv"      ? monitor::InputFormat::kCsv
      : a.input_format == "ndjson" ? monitor::InputFormat::kNdjson
                                   : monitor::DetectFormat(a.measurements, *text);
  auto ingest = monitor::ReadMeasurements(*text, format);
  for (const auto& bad : ingest.malformed) {
    s.env().err << a.measurements << ":" << bad.line << ": malformed record: " << bad.message
                << "\n";
  }
  if (ingest.lines > 0 && ingest.malformed.size() == ingest.lines) {
    s.Message("no well-formed measurement records in " + a.measurements);
    return kExitFailure;
  }

  monitor::FulfillmentReport report;
  try {
    report = monitor::fulfillment_report(model->matrix, ingest.records, quantile);
  } catch (const NoResolvedCellsError& e) {
    s.Message(e.what());
    return kExitFindings;
  }
  report.malformed = ingest.malformed.size();
  std::string out = a.format == "json" ? monitor::ToJson(report) : monitor::ToText(report);
  int emit = s.Emit(out, a.out);
  if (emit != kExitClean) return emit;
  return report.AllFulfilled() ? kExitClean : kExitFindings;
}

int Init(Session& s, const std::string& path) {
  if (path.empty()) {
    s.env().out << SkeletonModel();
    return kExitClean;
  }
  fs::path target = s.Resolve(path);
  if (fs::exists(target)) {
    s.Message(path + " already exists");
    return kExitFailure;
  }
  if (!WriteFile(target, SkeletonModel())) {
    s.Message("cannot write " + path);
    return kExitFailure;
  }
  return kExitClean;
}

}  // namespace

std::string SkeletonModel() {
  return R"(// Interest checklist. Go through every class with the stakeholders:
//   user_interface         devices and interaction modalities
//   application_interface  protocols, transactions and data formats of other systems
//   informational          presentation of information, accessibility
//   behavioral             timing, resource use, reliability, availability
//   operating              deployment, monitoring and operation
//   human                  skills and motivation of users and operators
//   lifecycle              maintainability, portability, engineering standards
//   economic               business model, revenue, key performance indicators
//   data_governance        where and how data is processed and stored
//   legal_policy           privacy, licensing, export and fiscal rules

metric response_time {
  unit: "ms"
  direction: lower_is_better
}

info "Request" external

task "Example task" {
  goal: "Describe what the user wants to achieve"
  priority: mvp

  subtask "First step" {
    intention: "What the user does"
    responsibility "What the system provides"
    consumes "Request"
  }
}

interest RESP "The software must be responsive to user inputs." {
  class: behavioral
}

matrix {
  RESP x "Example task": important => response_time < 100 ms
}
)";
}

int Run(const std::vector<std::string>& args, Environment& env) {
  CLI::App app{"Task-oriented stakeholder interest modeling", "taskcon"};
  app.require_subcommand(1);
  std::string config_path;
  bool no_color = false;
  app.add_option("--config", config_path, "Configuration file (default ./taskcon.toml)");
  app.add_flag("--no-color", no_color, "Disable ANSI colors");

  std::vector<std::string> check_paths;
  bool strict = false;
  std::vector<std::string> suppress;
  auto* check = app.add_subcommand("check", "Validate models and print diagnostics");
  check->add_option("paths", check_paths, "Model files")->required();
  check->add_flag("--strict", strict, "Treat warnings as errors");
  check->add_option("--suppress", suppress, "Rule ids to hide (R1..R12)")->delimiter(',');

  RenderArgs ra;
  auto* render_cmd = app.add_subcommand("render", "Emit diagrams and matrix documents");
  render_cmd->add_option("path", ra.path, "Model file")->required();
  render_cmd->add_option("--format", ra.format, "dot, md, html or csv")
      ->required()
      ->check(CLI::IsMember({"dot", "md", "html", "csv"}));
  render_cmd->add_option("--view", ra.view, "relevance or constraints")
      ->check(CLI::IsMember({"relevance", "constraints"}));
  render_cmd->add_option("--task", ra.task, "Only this task (dot)");
  render_cmd->add_option("--min-priority", ra.min_priority, "Lowest priority to draw (dot)")
      ->check(CLI::IsMember({"mvp", "high", "normal", "low"}));
  render_cmd->add_option("--out", ra.out, "Output file (default stdout)");

  DeriveArgs da;
  double step = 0;
  int rounding = 0;
  auto* derive = app.add_subcommand("derive", "Propose constraints from anchor cells");
  derive->add_option("path", da.path, "Model file")->required();
  derive->add_option("--anchor", da.anchors, "INTEREST x \"Task\"")->required();
  derive->add_option("--mode", da.mode, "additive or multiplicative")
      ->check(CLI::IsMember({"additive", "multiplicative"}));
  auto* step_opt = derive->add_option("--step", step, "Change per relevance level");
  auto* rounding_opt = derive->add_option("--rounding", rounding, "Decimal places");
  derive->add_option("--out", da.out, "Output file (default stdout)");

  MonitorArgs ma;
  double quantile = 1.0;
  auto* monitor_cmd = app.add_subcommand("monitor", "Check measurements against constraints");
  monitor_cmd->add_option("path", ma.path, "Model file")->required();
  monitor_cmd->add_option("--measurements", ma.measurements, "NDJSON or CSV records")
      ->required();
  auto* quantile_opt =
      monitor_cmd->add_option("--quantile", quantile, "Required pass rate in (0, 1]");
  monitor_cmd->add_option("--format", ma.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  monitor_cmd->add_option("--input-format", ma.input_format, "auto, ndjson or csv")
      ->check(CLI::IsMember({"auto", "ndjson", "csv"}));
  monitor_cmd->add_option("--out", ma.out, "Output file (default stdout)");

  std::string init_path;
  auto* init = app.add_subcommand("init", "Write a skeleton model");
  init->add_option("path", init_path, "Target file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    env.out << app.help();
    return kExitClean;
  } catch (const CLI::CallForAllHelp& e) {
    env.out << app.help("", CLI::AppFormatMode::All);
    return kExitClean;
  } catch (const CLI::ParseError& e) {
    env.err << "taskcon: " << e.what() << "\n";
    env.err << "Run with --help for usage.\n";
    return kExitFailure;
  }

  if (no_color) env.color = false;
  Session session(env);
  if (!session.LoadConfig(config_path)) return kExitFailure;

  if (*check) {
    if (strict) session.config().strict = true;
    if (!suppress.empty()) {
      session.config().suppressed.clear();
      for (const auto& id : suppress) {
        auto rule = ParseSemanticRule(id);
        if (!rule) {
          session.Message("unknown rule id " + id);
          return kExitFailure;
        }
        session.config().suppressed.insert(*rule);
      }
    }
    return Check(session, check_paths);
  }
  if (*render_cmd) return Render(session, ra);
  if (*derive) {
    if (step_opt->count()) da.step = step;
    if (rounding_opt->count()) da.rounding = rounding;
    return Derive(session, da);
  }
  if (*monitor_cmd) {
    if (quantile_opt->count()) ma.quantile = quantile;
    return Monitor(session, ma);
  }
  if (*init) return Init(session, init_path);
  return kExitFailure;
}

}  // namespace taskcon::cli
