#include "support.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "taskcon/analysis.h"
#include "taskcon/diagnostic.h"
#include "taskcon/error.h"
#include "taskcon/dsl.h"

#ifndef TASKCON_FIXTURE_DIR
#error "TASKCON_FIXTURE_DIR must be defined"
#endif

namespace taskcon::testing {

std::filesystem::path FixtureDir() { return TASKCON_FIXTURE_DIR; }

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model ParseOrThrow(std::string_view text, std::string_view file_name) {
  auto result = dsl::parse(text, file_name);
  if (!result.model) {
    std::string msg = "parse failed:";
    for (const auto& d : result.diagnostics) msg += "\n" + FormatDiagnostic(d);
    throw std::runtime_error(msg);
  }
  return *result.model;
}

Model LoadFixture(std::string_view relative) {
  auto path = FixtureDir() / relative;
  return ParseOrThrow(ReadFile(path), path.filename().string());
}

int UniformInt(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

template <typename T>
const T& Pick(std::mt19937& rng, const std::vector<T>& pool) {
  return pool[UniformInt(rng, 0, static_cast<int>(pool.size()) - 1)];
}

const std::vector<std::string> kWords = {
    "search", "card",  "Größe", "a\"b",   "back\\slash", "tab\there",
    "line\nbreak", "x", "review", "→ arrow", "{brace}", "// slash",
    "priority:", "plan", "42", "naïve", "ok"};

const std::vector<std::string> kUnits = {"ms", "users/min", "%", "req/s",
                                         "days", "µs", "MB", "classes"};

double RandomThreshold(std::mt19937& rng) {
  switch (UniformInt(rng, 0, 3)) {
    case 0: return UniformInt(rng, 0, 1000);
    case 1: return UniformInt(rng, -500, 500) / 4.0;
    case 2: return UniformInt(rng, 0, 99999) / 1000.0;
    default: return std::uniform_real_distribution<double>(-1e4, 1e4)(rng);
  }
}

Resolution RandomResolution(std::mt19937& rng, const std::vector<Metric>& metrics) {
  int kind = UniformInt(rng, 0, metrics.empty() ? 1 : 2);
  if (kind == 0) return Unresolved{};
  if (kind == 1) return Waived{RandomText(rng)};
  const Metric& m = Pick(rng, metrics);
  Constraint c;
  c.metric = m.name;
  c.comparator = kAllComparators[UniformInt(rng, 0, 3)];
  c.threshold = RandomThreshold(rng);
  c.unit = m.unit;
  return Resolved{c};
}

}  // namespace

std::string RandomText(std::mt19937& rng, bool allow_empty) {
  int words = UniformInt(rng, allow_empty ? 0 : 1, 3);
  std::string out;
  for (int i = 0; i < words; ++i) {
    if (i) out += ' ';
    out += Pick(rng, kWords);
  }
  return out;
}

ConstraintMatrix RandomMatrix(std::mt19937& rng, int rows, int cols,
                              const std::vector<Metric>& metrics) {
  ConstraintMatrix m;
  for (int c = 0; c < cols; ++c) m.tasks.push_back("T" + std::to_string(c));
  for (int r = 0; r < rows; ++r) m.interests.push_back("I" + std::to_string(r));
  for (const auto& i : m.interests) {
    for (const auto& t : m.tasks) {
      Cell cell;
      if (Coin(rng, 0.8)) cell.relevance = kAllRelevances[UniformInt(rng, 0, 3)];
      cell.resolution = RandomResolution(rng, metrics);
      m.cells[{i, t}] = cell;
    }
  }
  return m;
}

Model RandomModel(std::mt19937& rng, const ModelLimits& limits) {
  Model model;

  int metrics = UniformInt(rng, 0, limits.max_metrics);
  for (int i = 0; i < metrics; ++i) {
    Metric m;
    m.name = "m" + std::to_string(i);
    m.unit = Pick(rng, kUnits);
    m.direction = Coin(rng) ? Direction::kLowerIsBetter : Direction::kHigherIsBetter;
    model.metrics.push_back(m);
  }

  int infos = UniformInt(rng, 0, limits.max_infos);
  for (int i = 0; i < infos; ++i) {
    InformationObject info;
    info.name = RandomText(rng) + " #" + std::to_string(i);
    info.description = RandomText(rng, true);
    info.external = Coin(rng, 0.3);
    model.info_objects.push_back(info);
  }

  int tasks = UniformInt(rng, 0, limits.max_tasks);
  for (int t = 0; t < tasks; ++t) {
    Task task;
    task.name = RandomText(rng) + " task " + std::to_string(t);
    task.goal = RandomText(rng);
    task.priority = kAllPriorities[UniformInt(rng, 0, 3)];
    int subtasks = UniformInt(rng, 0, limits.max_subtasks);
    for (int s = 0; s < subtasks; ++s) {
      Subtask sub;
      sub.name = RandomText(rng) + " step " + std::to_string(s);
      sub.intention = RandomText(rng);
      int resp = UniformInt(rng, 1, 3);
      for (int r = 0; r < resp; ++r) sub.responsibilities.push_back({RandomText(rng), {}});
      for (int k = UniformInt(rng, 0, 2); k > 0; --k) sub.preconditions.push_back(RandomText(rng, true));
      for (int k = UniformInt(rng, 0, 2); k > 0; --k) sub.postconditions.push_back(RandomText(rng, true));
      for (const auto& info : model.info_objects) {
        int use = UniformInt(rng, 0, 3);
        if (use == 1) sub.consumes.push_back({info.name, {}});
        if (use == 2) sub.produces.push_back({info.name, {}});
      }
      if (Coin(rng, 0.2)) sub.refined_in = "detail/" + std::to_string(t) + "_" + std::to_string(s) + ".tac";
      task.subtasks.push_back(sub);
    }
    if (subtasks > 0) {
      int edges = UniformInt(rng, 0, subtasks + 1);
      for (int e = 0; e < edges; ++e) {
        PlanEdge edge;
        edge.from = Pick(rng, task.subtasks).name;
        edge.to = Pick(rng, task.subtasks).name;
        if (Coin(rng, 0.4)) edge.guard = RandomText(rng, true);
        task.plan.edges.push_back(edge);
      }
    }
    model.tasks.push_back(task);
  }

  int interests = UniformInt(rng, 0, limits.max_interests);
  for (int i = 0; i < interests; ++i) {
    StakeholderInterest in;
    in.id = "I_" + std::to_string(i);
    in.statement = RandomText(rng);
    in.interest_class = kAllInterestClasses[UniformInt(rng, 0, 9)];
    if (i > 0 && Coin(rng, 0.3)) in.refines = model.interests[UniformInt(rng, 0, i - 1)].id;
    model.interests.push_back(in);
  }

  if (!model.tasks.empty() && !model.interests.empty() && Coin(rng, 0.7)) {
    auto& m = model.matrix;
    for (const auto& t : model.tasks) {
      if (Coin(rng, 0.7) || m.tasks.empty()) m.tasks.push_back(t.name);
    }
    for (const auto& in : model.interests) {
      if (Coin(rng, 0.7) || m.interests.empty()) m.interests.push_back(in.id);
    }
    std::shuffle(m.tasks.begin(), m.tasks.end(), rng);
    std::shuffle(m.interests.begin(), m.interests.end(), rng);
    for (const auto& i : m.interests) {
      for (const auto& t : m.tasks) {
        Cell cell;
        if (Coin(rng, 0.85)) cell.relevance = kAllRelevances[UniformInt(rng, 0, 3)];
        cell.resolution = RandomResolution(rng, model.metrics);
        m.cells[{i, t}] = cell;
      }
    }
  }
  return model;
}

Task TaskFromAdjacency(int n, std::uint64_t adj) {
  Task task;
  task.name = "G";
  task.goal = "g";
  for (int i = 0; i < n; ++i) {
    Subtask s;
    s.name = "n" + std::to_string(i);
    s.intention = "i";
    s.responsibilities.push_back({"r", {}});
    task.subtasks.push_back(s);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (adj >> (i * n + j) & 1) {
        task.plan.edges.push_back({"n" + std::to_string(i), "n" + std::to_string(j), "g", {}});
      }
    }
  }
  return task;
}

bool HasCycleBySubsets(int n, std::uint64_t adj) {
  std::vector<unsigned> out(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (adj >> (i * n + j) & 1) out[i] |= 1u << j;
    }
  }
  for (unsigned s = 1; s < (1u << n); ++s) {
    bool closed = true;
    for (int i = 0; i < n && closed; ++i) {
      if ((s >> i & 1) && (out[i] & s) == 0) closed = false;
    }
    if (closed) return true;
  }
  return false;
}

bool HasTopologicalOrderByPermutations(int n, std::uint64_t adj) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[perm[k]] = k;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        if ((adj >> (i * n + j) & 1) && pos[i] >= pos[j]) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace {

int NodeIndex(const std::string& name) { return name[1] - '0'; }

}  // namespace

std::string GraphOracleDisagreement(int n, std::uint64_t adj, bool check_permutations) {
  // Subtasks stay fixed per node count; only the plan changes.
  static std::vector<Task> templates;
  while (static_cast<int>(templates.size()) <= n) {
    templates.push_back(TaskFromAdjacency(static_cast<int>(templates.size()), 0));
  }
  Task& task = templates[n];
  task.plan.edges.clear();
  unsigned endpoints = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (adj >> (i * n + j) & 1) {
        task.plan.edges.push_back({task.subtasks[i].name, task.subtasks[j].name, "g", {}});
        endpoints |= 1u << i | 1u << j;
      }
    }
  }

  std::string disagreement;
  bool cyclic = HasCycleBySubsets(n, adj);
  auto fail = [&](const std::string& what) {
    if (disagreement.empty()) disagreement = what + " on n=" + std::to_string(n) + " adj=" + std::to_string(adj);
  };
  if (check_permutations && HasTopologicalOrderByPermutations(n, adj) == cyclic) {
    fail("oracles disagree");
  }

  auto plan_diags = analysis::check_plan(task);
  bool r1 = std::any_of(plan_diags.begin(), plan_diags.end(),
                        [](const Diagnostic& d) { return d.rule == Rule::kR1; });
  if (r1 != cyclic) fail("R1");

  try {
    auto order = topological_order(task.plan);
    if (cyclic) fail("topological_order accepted a cyclic plan");
    int pos[8];
    std::fill(std::begin(pos), std::end(pos), -1);
    unsigned seen = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      int v = NodeIndex(order[k]);
      if (seen >> v & 1) fail("topological_order repeats a node");
      seen |= 1u << v;
      pos[v] = static_cast<int>(k);
    }
    if (seen != endpoints) fail("topological_order is not a permutation of the plan nodes");
    for (const auto& e : task.plan.edges) {
      if (pos[NodeIndex(e.from)] >= pos[NodeIndex(e.to)]) fail("topological_order puts an edge backwards");
    }
  } catch (const CycleError& e) {
    if (!cyclic) fail("topological_order rejected an acyclic plan");
    const auto& w = e.witness();
    if (w.empty()) fail("empty witness");
    for (std::size_t i = 0; i < w.size(); ++i) {
      int from = NodeIndex(w[i]);
      int to = NodeIndex(w[(i + 1) % w.size()]);
      if (!(adj >> (from * n + to) & 1)) fail("witness uses a missing edge");
    }
  }
  return disagreement;
}

namespace {

class DotScanner {
 public:
  explicit DotScanner(std::string_view text) : text_(text) {}

  bool Run(std::string* why) {
    try {
      Next();
      Expect("digraph");
      if (kind_ == Kind::kId) Next();
      Block();
      if (kind_ != Kind::kEnd) Fail("trailing content after the graph");
      return true;
    } catch (const std::runtime_error& e) {
      if (why) *why = e.what();
      return false;
    }
  }

 private:
  enum class Kind { kId, kPunct, kArrow, kEnd };

  [[noreturn]] void Fail(const std::string& msg) {
    throw std::runtime_error("offset " + std::to_string(pos_) + ": " + msg);
  }

  void Next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      kind_ = Kind::kEnd;
      tok_.clear();
      return;
    }
    char c = text_[pos_];
    if (c == '"') {
      std::size_t i = pos_ + 1;
      while (i < text_.size() && text_[i] != '"') i += text_[i] == '\\' ? 2 : 1;
      if (i >= text_.size()) Fail("unterminated string");
      tok_ = std::string(text_.substr(pos_, i + 1 - pos_));
      pos_ = i + 1;
      kind_ = Kind::kId;
    } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      tok_ = "->";
      pos_ += 2;
      kind_ = Kind::kArrow;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' ||
               static_cast<unsigned char>(c) >= 0x80) {
      std::size_t i = pos_;
      while (i < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i])) ||
                                  text_[i] == '_' || text_[i] == '.' ||
                                  static_cast<unsigned char>(text_[i]) >= 0x80 ||
                                  (i == pos_ && text_[i] == '-'))) {
        ++i;
      }
      tok_ = std::string(text_.substr(pos_, i - pos_));
      pos_ = i;
      kind_ = Kind::kId;
    } else if (std::string_view("{}[]=;,").find(c) != std::string_view::npos) {
      tok_ = std::string(1, c);
      ++pos_;
      kind_ = Kind::kPunct;
    } else {
      Fail(std::string("unexpected character '") + c + "'");
    }
  }

  bool Is(std::string_view punct) const { return kind_ == Kind::kPunct && tok_ == punct; }

  void Expect(std::string_view t) {
    if (tok_ != t) Fail("expected '" + std::string(t) + "', got '" + tok_ + "'");
    Next();
  }

  void Block() {
    Expect("{");
    while (!Is("}")) {
      if (kind_ == Kind::kEnd) Fail("unbalanced braces");
      Statement();
      if (Is(";")) Next();
    }
    Next();
  }

  void AttrList() {
    while (Is("[")) {
      Next();
      while (!Is("]")) {
        if (kind_ != Kind::kId) Fail("expected attribute name");
        Next();
        if (Is("=")) {
          Next();
          if (kind_ != Kind::kId) Fail("expected attribute value");
          Next();
        }
        if (Is(",") || Is(";")) Next();
      }
      Next();
    }
  }

  void Statement() {
    if (kind_ != Kind::kId) Fail("expected a statement, got '" + tok_ + "'");
    if (tok_ == "subgraph") {
      Next();
      if (kind_ == Kind::kId) Next();
      Block();
      return;
    }
    if (tok_ == "graph" || tok_ == "node" || tok_ == "edge") {
      Next();
      AttrList();
      return;
    }
    Next();
    if (Is("=")) {
      Next();
      if (kind_ != Kind::kId) Fail("expected a value");
      Next();
      return;
    }
    while (kind_ == Kind::kArrow) {
      Next();
      if (kind_ != Kind::kId) Fail("expected an edge target");
      Next();
    }
    AttrList();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Kind kind_ = Kind::kEnd;
  std::string tok_;
};

}  // namespace

bool DotWellFormed(std::string_view dot, std::string* why) {
  return DotScanner(dot).Run(why);
}

}  // namespace taskcon::testing
