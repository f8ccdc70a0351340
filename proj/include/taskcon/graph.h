/// @file graph.h
/// Index-based directed graph algorithms shared by plans and the analysis
/// rules. Nodes are dense integers [0, size()).
#ifndef TASKCON_GRAPH_H_
#define TASKCON_GRAPH_H_

#include <optional>
#include <vector>

namespace taskcon::graph {

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int num_nodes) : out_(num_nodes), in_degree_(num_nodes) {}

  int size() const { return static_cast<int>(out_.size()); }

  /// Parallel edges are kept; they count toward in/out degree.
  void Reserve(int node, int out_degree) { out_[node].reserve(out_degree); }

  void AddEdge(int from, int to) {
    out_[from].push_back(to);
    ++in_degree_[to];
  }

  const std::vector<int>& successors(int node) const { return out_[node]; }
  int in_degree(int node) const { return in_degree_[node]; }
  int out_degree(int node) const {
    return static_cast<int>(out_[node].size());
  }

 private:
  std::vector<std::vector<int>> out_;
  std::vector<int> in_degree_;
};

/// Kahn's algorithm; among ready nodes the lowest index goes first, so the
/// result is deterministic. Empty when the graph has a cycle.
std::optional<std::vector<int>> TopologicalOrder(const Digraph& graph);

/// Depth-first search from nodes in index order. Returns the nodes of the
/// first cycle closed by a back edge, starting at the back edge's target.
std::optional<std::vector<int>> FindCycle(const Digraph& graph);

/// Nodes without incoming edges, ascending.
std::vector<int> Sources(const Digraph& graph);

/// Every maximal path from `start` to a node without successors, in DFS
/// order following edge insertion order. The graph must be acyclic.
std::vector<std::vector<int>> MaximalPaths(const Digraph& graph, int start);

/// Nodes reachable from any of `starts` (including the starts).
std::vector<bool> Reachable(const Digraph& graph, const std::vector<int>& starts);

}  // namespace taskcon::graph

#endif  // TASKCON_GRAPH_H_
