#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "support.h"
#include "taskcon/error.h"
#include "taskcon/tailor.h"

using namespace taskcon;
using namespace taskcon::tailor;
using taskcon::testing::Coin;
using taskcon::testing::LoadFixture;
using taskcon::testing::UniformInt;

namespace {

const std::vector<Metric> kMetrics = {
    {"response_time", "ms", Direction::kLowerIsBetter, {}},
    {"users", "users/min", Direction::kHigherIsBetter, {}},
};

Resolved Lt(double v) { return Resolved{{"response_time", Comparator::kLt, v, "ms"}}; }
Resolved Gt(double v) { return Resolved{{"users", Comparator::kGt, v, "users/min"}}; }

/// All ordered pairs, straight from the definition.
std::size_t OrderViolationsByPairs(const ConstraintMatrix& m, std::span<const Metric> metrics) {
  std::size_t count = 0;
  for (const auto& row : m.interests) {
    for (const auto& a : m.tasks) {
      for (const auto& b : m.tasks) {
        const Cell& ca = *m.Find(row, a);
        const Cell& cb = *m.Find(row, b);
        if (!ca.relevance || !cb.relevance || !ca.constraint() || !cb.constraint()) continue;
        if (Level(*ca.relevance) <= Level(*cb.relevance)) continue;
        auto metric = std::find_if(metrics.begin(), metrics.end(),
                                   [&](const Metric& x) { return x.name == ca.constraint()->metric; });
        double ta = ca.constraint()->threshold;
        double tb = cb.constraint()->threshold;
        bool ok = metric->direction == Direction::kLowerIsBetter ? ta <= tb : ta >= tb;
        if (!ok) ++count;
      }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("build_matrix") {
  auto m = build_matrix({"T"}, {"I"});
  REQUIRE(m.cells.size() == 1);
  CHECK(m.Find("I", "T")->unresolved());
  CHECK_FALSE(m.Find("I", "T")->relevance);

  auto table = build_matrix({"a", "b", "c", "d"}, {"1", "2", "3", "4", "5"});
  CHECK(table.cells.size() == 20);
  CHECK(check_complete(table).size() == 20);
  CHECK_THROWS_AS(build_matrix({"a", "a"}, {"I"}), DuplicateError);
  CHECK_THROWS_AS(build_matrix({"a"}, {"I", "I"}), DuplicateError);
  CHECK_THROWS_AS(build_matrix({}, {"I"}), EmptyAxisError);
  CHECK_THROWS_AS(build_matrix({"a"}, {}), EmptyAxisError);
}

TEST_CASE("rate and resolve") {
  auto m = build_matrix({"Search for book", "Write book review"}, {"RESP"});
  m = rate(m, "RESP", "Search for book", Relevance::kVeryImportant);
  CHECK(m.Find("RESP", "Search for book")->relevance == Relevance::kVeryImportant);
  m = rate(m, "RESP", "Search for book", Relevance::kImportant);
  CHECK(m.Find("RESP", "Search for book")->relevance == Relevance::kImportant);
  CHECK_THROWS_AS(rate(m, "RESP", "Nope", Relevance::kImportant), UnknownCellError);

  m = resolve(m, kMetrics, "RESP", "Search for book", Lt(2));
  CHECK(*m.Find("RESP", "Search for book")->constraint() ==
        Constraint{"response_time", Comparator::kLt, 2, "ms"});
  m = resolve(m, kMetrics, "RESP", "Write book review", Waived{"industry-default availability"});
  CHECK(std::get<Waived>(m.Find("RESP", "Write book review")->resolution).reason ==
        "industry-default availability");

  CHECK_THROWS_AS(resolve(m, kMetrics, "RESP", "Search for book",
                          Resolved{{"response_time", Comparator::kGt, 2, "ms"}}),
                  DirectionMismatchError);
  CHECK_THROWS_AS(resolve(m, kMetrics, "RESP", "Search for book", Resolved{{"mtbf", Comparator::kLt, 1, "min"}}),
                  UnknownMetricError);
  CHECK_THROWS_AS(resolve(m, kMetrics, "RESP", "Search for book",
                          Resolved{{"response_time", Comparator::kLt, 2, "s"}}),
                  UnitMismatchError);
  CHECK_THROWS_AS(resolve(m, kMetrics, "RESP", "Nope", Lt(1)), UnknownCellError);
  CHECK_THROWS_AS(resolve(m, kMetrics, "RESP", "Search for book", Waived{""}), InvalidArgumentError);
  CHECK_THROWS_AS(resolve(m, kMetrics, "RESP", "Search for book", Unresolved{}), InvalidArgumentError);
}

TEST_CASE("operations leave other cells untouched") {
  std::mt19937 rng(1);
  for (int iter = 0; iter < 100; ++iter) {
    auto m = testing::RandomMatrix(rng, UniformInt(rng, 1, 4), UniformInt(rng, 1, 4), kMetrics);
    const auto& row = m.interests[UniformInt(rng, 0, static_cast<int>(m.interests.size()) - 1)];
    const auto& col = m.tasks[UniformInt(rng, 0, static_cast<int>(m.tasks.size()) - 1)];
    auto next = Coin(rng) ? rate(m, row, col, kAllRelevances[UniformInt(rng, 0, 3)])
                          : resolve(m, kMetrics, row, col, Coin(rng) ? Resolution{Lt(5)} : Resolution{Waived{"w"}});
    CHECK(next.tasks == m.tasks);
    CHECK(next.interests == m.interests);
    for (const auto& [key, cell] : m.cells) {
      if (key == CellKey{row, col}) continue;
      CHECK(next.cells.at(key) == cell);
    }
  }
}

TEST_CASE("check_complete") {
  CHECK(check_complete(LoadFixture("bookstore.tac").matrix).empty());
  CHECK(check_complete(build_matrix({"a", "b"}, {"x", "y"})) ==
        std::vector<CellKey>{{"x", "a"}, {"x", "b"}, {"y", "a"}, {"y", "b"}});

  auto m = build_matrix({"a", "b", "c"}, {"x", "y", "z"});
  m = resolve(m, kMetrics, "x", "a", Lt(1));
  m = resolve(m, kMetrics, "x", "c", Lt(1));
  m = resolve(m, kMetrics, "y", "b", Lt(1));
  m = resolve(m, kMetrics, "z", "c", Lt(1));
  m = resolve(m, kMetrics, "y", "a", Waived{"w"});
  m = resolve(m, kMetrics, "z", "a", Waived{"w"});
  std::vector<CellKey> brute;
  for (const auto& i : m.interests) {
    for (const auto& t : m.tasks) {
      if (m.Find(i, t)->unresolved()) brute.push_back({i, t});
    }
  }
  CHECK(brute.size() == 3);
  CHECK(check_complete(m) == brute);
}

TEST_CASE("check_monotone on the bookstore and mutations") {
  Model store = LoadFixture("bookstore.tac");
  CHECK(check_monotone(store.matrix, store.metrics).empty());

  auto m = build_matrix({"A", "B"}, {"RESP"});
  m = rate(m, "RESP", "A", Relevance::kVeryImportant);
  m = rate(m, "RESP", "B", Relevance::kImportant);
  m = resolve(m, kMetrics, "RESP", "A", Lt(3));
  m = resolve(m, kMetrics, "RESP", "B", Lt(2));
  auto v = check_monotone(m, kMetrics);
  REQUIRE(v.size() == 1);
  CHECK(OrderViolationsByPairs(m, kMetrics) == 1);
  CHECK(v.front().kind == MonotoneViolation::Kind::kOrder);
  CHECK(v.front().task_a == "A");
  CHECK(v.front().task_b == "B");
  CHECK(v.front().threshold_a == 3);
  CHECK(v.front().threshold_b == 2);

  auto peak = build_matrix({"A", "B"}, {"PEAK"});
  peak = rate(peak, "PEAK", "A", Relevance::kImportant);
  peak = rate(peak, "PEAK", "B", Relevance::kRatherImportant);
  peak = resolve(peak, kMetrics, "PEAK", "A", Gt(70));
  peak = resolve(peak, kMetrics, "PEAK", "B", Gt(50));
  CHECK(check_monotone(peak, kMetrics).empty());
  peak = resolve(peak, kMetrics, "PEAK", "A", Gt(40));
  CHECK(check_monotone(peak, kMetrics).size() == 1);
}

TEST_CASE("mixed metrics in a row are one violation") {
  auto m = build_matrix({"A", "B", "C"}, {"R"});
  for (const auto& t : m.tasks) m = rate(m, "R", t, Relevance::kImportant);
  m = resolve(m, kMetrics, "R", "A", Lt(1));
  m = resolve(m, kMetrics, "R", "B", Gt(1));
  m = resolve(m, kMetrics, "R", "C", Gt(2));
  auto v = check_monotone(m, kMetrics);
  REQUIRE(v.size() == 1);
  CHECK(v.front().kind == MonotoneViolation::Kind::kMixedMetric);
  CHECK(v.front().task_a == "A");
  CHECK(v.front().task_b == "B");
}

TEST_CASE("check_monotone matches the all-pairs oracle") {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 300; ++iter) {
    const Metric& metric = kMetrics[UniformInt(rng, 0, 1)];
    std::vector<Metric> one = {metric};
    auto m = testing::RandomMatrix(rng, UniformInt(rng, 1, 5), UniformInt(rng, 1, 5), one);
    for (auto& [key, cell] : m.cells) {
      if (auto* r = std::get_if<Resolved>(&cell.resolution)) r->constraint.threshold = UniformInt(rng, 0, 6);
    }
    auto v = check_monotone(m, one);
    CHECK(v.size() == OrderViolationsByPairs(m, one));
    for (const auto& x : v) CHECK(x.kind == MonotoneViolation::Kind::kOrder);
  }
}

TEST_CASE("derive_proposals examples") {
  Model store = LoadFixture("bookstore.tac");
  auto m = store.matrix;
  for (const auto& t : m.tasks) {
    if (t != "Search for book") {
      m.Find("RESP", t)->resolution = Unresolved{};
      m.Find("PEAK", t)->resolution = Unresolved{};
    }
  }
  m.Find("RESP", "Update credit card information")->relevance = Relevance::kVeryImportant;

  auto additive = [](double step) { return DerivationPolicy{DerivationPolicy::Mode::kAdditive, step, 2}; };
  auto p = derive_proposals(m, store.metrics, {{"RESP", "Search for book"}}, additive(0.5));
  REQUIRE(p.size() == 3);
  auto threshold = [&](const std::string& task) {
    auto it = std::find_if(p.begin(), p.end(), [&](const Proposal& x) { return x.key.task == task; });
    REQUIRE(it != p.end());
    return it->cell.constraint()->threshold;
  };
  CHECK(threshold("Change shipping address") == 2.5);
  CHECK(threshold("Update credit card information") == 2);
  CHECK(threshold("Write book review") == 3.5);
  CHECK(p.front().cell.constraint()->comparator == Comparator::kLt);

  p = derive_proposals(m, store.metrics, {{"PEAK", "Search for book"}}, additive(10));
  CHECK(threshold("Change shipping address") == 80);
  CHECK(threshold("Update credit card information") == 100);
  CHECK(threshold("Write book review") == 90);

  DerivationPolicy mult{DerivationPolicy::Mode::kMultiplicative, 0.1, 2};
  p = derive_proposals(m, store.metrics, {{"RESP", "Search for book"}}, mult);
  CHECK(threshold("Change shipping address") == 2.2);
  CHECK(threshold("Write book review") == doctest::Approx(2.66));

  CHECK(derive_proposals(store.matrix, store.metrics, {{"RESP", "Search for book"}}, additive(1)).empty());
}

TEST_CASE("derive_proposals errors") {
  Model store = LoadFixture("bookstore.tac");
  auto m = store.matrix;
  DerivationPolicy pol{DerivationPolicy::Mode::kAdditive, 1, 2};
  CHECK_THROWS_AS(derive_proposals(m, store.metrics, {{"RESP", "Nope"}}, pol), UnknownCellError);
  m.Find("RESP", "Search for book")->resolution = Unresolved{};
  CHECK_THROWS_AS(derive_proposals(m, store.metrics, {{"RESP", "Search for book"}}, pol), AnchorUnresolvedError);
  m = store.matrix;
  m.Find("RESP", "Write book review")->resolution = Unresolved{};
  m.Find("RESP", "Write book review")->relevance.reset();
  CHECK_THROWS_AS(derive_proposals(m, store.metrics, {{"RESP", "Search for book"}}, pol), UnratedCellError);
  CHECK_THROWS_AS(derive_proposals(store.matrix, store.metrics,
                                   {{"RESP", "Search for book"}, {"RESP", "Write book review"}}, pol),
                  DuplicateError);
  CHECK_THROWS_AS(derive_proposals(store.matrix, store.metrics, {{"RESP", "Search for book"}},
                                   DerivationPolicy{DerivationPolicy::Mode::kAdditive, 0, 2}),
                  InvalidArgumentError);
  CHECK_THROWS_AS(derive_proposals(store.matrix, store.metrics, {{"RESP", "Search for book"}},
                                   DerivationPolicy{DerivationPolicy::Mode::kAdditive, 1, -1}),
                  InvalidArgumentError);
}

TEST_CASE("applied proposals never break monotonicity") {
  std::mt19937 rng(2718);
  for (int iter = 0; iter < 200; ++iter) {
    const Metric& metric = kMetrics[UniformInt(rng, 0, 1)];
    std::vector<Metric> one = {metric};
    auto m = build_matrix({"a", "b", "c", "d", "e"}, {"r1", "r2", "r3"});
    std::vector<CellKey> anchors;
    const auto rows = m.interests;
    const auto cols = m.tasks;
    for (const auto& row : rows) {
      for (const auto& t : cols) m = rate(m, row, t, kAllRelevances[UniformInt(rng, 0, 3)]);
      const std::string anchor_task = m.tasks[UniformInt(rng, 0, 4)];
      double value = UniformInt(rng, -1000, 1000) / 10.0;
      Comparator cmp = metric.direction == Direction::kLowerIsBetter ? Comparator::kLe : Comparator::kGe;
      m = resolve(m, one, row, anchor_task, Resolved{{metric.name, cmp, value, metric.unit}});
      anchors.push_back({row, anchor_task});
    }
    DerivationPolicy pol;
    pol.mode = Coin(rng) ? DerivationPolicy::Mode::kAdditive : DerivationPolicy::Mode::kMultiplicative;
    pol.step = UniformInt(rng, 1, 40) / 20.0;
    pol.rounding = UniformInt(rng, 0, 3);
    auto applied = Apply(m, derive_proposals(m, one, anchors, pol));
    CHECK(check_complete(applied).empty());
    CHECK(check_monotone(applied, one).empty());
  }
}

TEST_CASE("RoundHalfUp") {
  CHECK(RoundHalfUp(2.345, 2) == 2.35);
  CHECK(RoundHalfUp(2.5, 0) == 3);
  CHECK(RoundHalfUp(-2.5, 0) == -2);
  CHECK(RoundHalfUp(1.005, 2) == 1.01);
  CHECK(RoundHalfUp(7, 3) == 7);
}

TEST_CASE("ToCsv") {
  auto m = build_matrix({"Search, fast", "Say \"hi\""}, {"RESP"});
  m = rate(m, "RESP", "Search, fast", Relevance::kVeryImportant);
  m = resolve(m, kMetrics, "RESP", "Search, fast", Lt(2));
  m = resolve(m, kMetrics, "RESP", "Say \"hi\"", Waived{"n/a"});
  CHECK(ToCsv(m) ==
        ",\"Search, fast\",\"Say \"\"hi\"\"\"\r\n"
        "RESP,very_important|response_time < 2 ms,|waived\r\n");
}
