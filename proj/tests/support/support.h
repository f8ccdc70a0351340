// Shared helpers for the unit tests and the acceptance runner: fixture
// access, seeded model generators, brute-force oracles and a DOT scanner.
#ifndef TASKCON_TESTS_SUPPORT_H_
#define TASKCON_TESTS_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "taskcon/model.h"

namespace taskcon::testing {

std::filesystem::path FixtureDir();
std::string ReadFile(const std::filesystem::path& path);

/// Parses a file below the fixture directory; throws if it does not parse.
Model LoadFixture(std::string_view relative);

/// Parses text that is expected to be valid; throws otherwise.
Model ParseOrThrow(std::string_view text, std::string_view file_name = "test.tac");

struct ModelLimits {
  int max_tasks = 5;
  int max_subtasks = 6;
  int max_interests = 6;
  int max_infos = 5;
  int max_metrics = 3;
};

/// A model that the parser accepts: unique names, resolvable references,
/// matching units, refinement forest, full matrix cross product. Plans are
/// arbitrary edge lists over the task's own subtasks.
Model RandomModel(std::mt19937& rng, const ModelLimits& limits = {});

/// Text drawn from a pool that includes quotes, backslashes, control
/// characters and non-ASCII letters.
std::string RandomText(std::mt19937& rng, bool allow_empty = false);

/// Full matrix over `rows` x `cols` with random ratings (possibly
/// absent) and random resolutions. Resolved cells use `metrics`.
ConstraintMatrix RandomMatrix(std::mt19937& rng, int rows, int cols,
                              const std::vector<Metric>& metrics);

int UniformInt(std::mt19937& rng, int lo, int hi);
bool Coin(std::mt19937& rng, double p = 0.5);

/// A task named "G" whose subtasks are n0..n{n-1} and whose plan holds
/// one edge per set bit of the adjacency matrix `adj` (bit i*n+j: i -> j).
Task TaskFromAdjacency(int n, std::uint64_t adj);

/// True iff some non-empty node subset has every member point to another
/// member of the subset, i.e. the graph has a cycle.
bool HasCycleBySubsets(int n, std::uint64_t adj);

/// True iff some permutation of the nodes puts every edge forwards.
bool HasTopologicalOrderByPermutations(int n, std::uint64_t adj);

/// Runs R1 (via check_plan) and topological_order on the plan of
/// TaskFromAdjacency(n, adj) and compares them with HasCycleBySubsets and,
/// if asked, HasTopologicalOrderByPermutations. Also checks that returned
/// orders are permutations of the plan nodes with every edge forwards and
/// that cycle witnesses use existing edges. Empty when everything agrees,
/// else a description of the first disagreement. Supports n <= 8.
std::string GraphOracleDisagreement(int n, std::uint64_t adj, bool check_permutations);

/// Minimal structural check of DOT output: balanced braces outside
/// strings, terminated strings, one top-level digraph, statements built
/// from ids, quoted strings, `->`, `=`, `[...]` attribute lists and `;`.
/// Fills `why` on failure.
bool DotWellFormed(std::string_view dot, std::string* why = nullptr);

}  // namespace taskcon::testing

#endif  // TASKCON_TESTS_SUPPORT_H_
