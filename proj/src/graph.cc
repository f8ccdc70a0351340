/// @file graph.cc
#include "taskcon/graph.h"

#include <algorithm>
#include <functional>
#include <queue>

namespace taskcon::graph {

std::optional<std::vector<int>> TopologicalOrder(const Digraph& graph) {
  const int n = graph.size();
  std::vector<int> in_degree(n);
  for (int v = 0; v < n; ++v) in_degree[v] = graph.in_degree(v);

  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v) {
    if (in_degree[v] == 0) ready.push(v);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : graph.successors(v)) {
      if (--in_degree[w] == 0) ready.push(w);
    }
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

std::optional<std::vector<int>> FindCycle(const Digraph& graph) {
  enum class Mark { kWhite, kGray, kBlack };
  const int n = graph.size();
  std::vector<Mark> mark(n, Mark::kWhite);
  std::vector<int> stack;  // current DFS path
  std::vector<std::size_t> next_edge(n, 0);

  for (int root = 0; root < n; ++root) {
    if (mark[root] != Mark::kWhite) continue;
    stack.push_back(root);
    mark[root] = Mark::kGray;
    while (!stack.empty()) {
      int v = stack.back();
      const auto& succ = graph.successors(v);
      if (next_edge[v] == succ.size()) {
        mark[v] = Mark::kBlack;
        stack.pop_back();
        continue;
      }
      int w = succ[next_edge[v]++];
      if (mark[w] == Mark::kGray) {
        auto it = std::find(stack.begin(), stack.end(), w);
        return std::vector<int>(it, stack.end());
      }
      if (mark[w] == Mark::kWhite) {
        mark[w] = Mark::kGray;
        stack.push_back(w);
      }
    }
  }
  return std::nullopt;
}

std::vector<int> Sources(const Digraph& graph) {
  std::vector<int> result;
  for (int v = 0; v < graph.size(); ++v) {
    if (graph.in_degree(v) == 0) result.push_back(v);
  }
  return result;
}

namespace {

void ExtendPaths(const Digraph& graph, std::vector<int>& path,
                 std::vector<std::vector<int>>& out) {
  int v = path.back();
  if (graph.successors(v).empty()) {
    out.push_back(path);
    return;
  }
  for (int w : graph.successors(v)) {
    path.push_back(w);
    ExtendPaths(graph, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> MaximalPaths(const Digraph& graph, int start) {
  std::vector<std::vector<int>> out;
  std::vector<int> path{start};
  ExtendPaths(graph, path, out);
  return out;
}

std::vector<bool> Reachable(const Digraph& graph,
                            const std::vector<int>& starts) {
  std::vector<bool> seen(graph.size(), false);
  std::vector<int> todo;
  for (int s : starts) {
    if (!seen[s]) {
      seen[s] = true;
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int w : graph.successors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace taskcon::graph
