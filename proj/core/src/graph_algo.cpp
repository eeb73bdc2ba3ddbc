#include "fairorder/graph_algo.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

namespace fairorder {

std::optional<std::vector<std::size_t>> find_path(const Adjacency& graph, std::size_t from, std::size_t to,
                                                  const std::function<bool(std::size_t)>& allowed) {
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(graph.size(), none);
  std::deque<std::size_t> frontier{from};
  parent[from] = from;
  while (!frontier.empty()) {
    const auto v = frontier.front();
    frontier.pop_front();
    if (v == to) {
      std::vector<std::size_t> path{to};
      for (auto at = to; at != from;) {
        at = parent[at];
        path.push_back(at);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto w : graph[v]) {
      if (parent[w] != none) continue;
      if (w != to && allowed && !allowed(w)) continue;
      parent[w] = v;
      frontier.push_back(w);
    }
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& graph) {
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  const auto size = graph.size();
  std::vector<std::size_t> index(size, none), low(size, 0), comp(size, none);
  std::vector<bool> on_stack(size, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  // Iterative Tarjan; each frame is (vertex, next child position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < size; ++root) {
    if (index[root] != none) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < graph[v].size()) {
        const auto w = graph[v][pos++];
        if (index[w] == none) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const auto done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const auto parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<std::size_t> c;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components.size();
          c.push_back(w);
        } while (w != done);
        std::sort(c.begin(), c.end());
        components.push_back(std::move(c));
      }
    }
  }

  Adjacency condensed(components.size());
  for (std::size_t v = 0; v < size; ++v) {
    for (auto w : graph[v]) {
      if (comp[v] != comp[w]) condensed[comp[v]].push_back(comp[w]);
    }
  }
  // Order components by smallest vertex before sorting so ties follow ids.
  std::vector<std::size_t> by_min(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) by_min[c] = c;
  std::sort(by_min.begin(), by_min.end(),
            [&](std::size_t a, std::size_t b) { return components[a].front() < components[b].front(); });
  std::vector<std::size_t> rank(components.size());
  for (std::size_t r = 0; r < by_min.size(); ++r) rank[by_min[r]] = r;
  Adjacency ranked(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (auto d : condensed[c]) ranked[rank[c]].push_back(rank[d]);
  }
  const auto order = topological_sort(ranked);
  std::vector<std::vector<std::size_t>> result;
  result.reserve(components.size());
  for (auto r : *order) result.push_back(std::move(components[by_min[r]]));
  return result;
}

std::optional<std::vector<std::size_t>> topological_sort(const Adjacency& graph) {
  std::vector<std::size_t> indegree(graph.size(), 0);
  for (const auto& out : graph) {
    for (auto w : out) ++indegree[w];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  order.reserve(graph.size());
  while (!ready.empty()) {
    const auto v = ready.top();
    ready.pop();
    order.push_back(v);
    for (auto w : graph[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != graph.size()) return std::nullopt;
  return order;
}

Reachability::Reachability(std::size_t size)
    : size_(size), rows_(size, std::vector<std::uint64_t>((size + 63) / 64, 0)) {}

void Reachability::add_edge(std::size_t from, std::size_t to) {
  if (reaches(from, to)) return;
  auto gained = rows_[to];
  gained[to / 64] |= std::uint64_t{1} << (to % 64);
  std::vector<std::size_t> sources;
  for (std::size_t x = 0; x < size_; ++x) {
    if (reaches(x, from)) sources.push_back(x);
  }
  for (auto x : sources) {
    auto& row = rows_[x];
    for (std::size_t w = 0; w < row.size(); ++w) row[w] |= gained[w];
  }
}

}  // namespace fairorder
