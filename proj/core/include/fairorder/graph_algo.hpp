#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fairorder {

/// Out-adjacency lists over vertices 0..size-1.
using Adjacency = std::vector<std::vector<std::size_t>>;

/// Shortest directed path from `from` to `to` (both ends included) through
/// vertices accepted by `allowed`. The endpoints are never filtered.
std::optional<std::vector<std::size_t>> find_path(const Adjacency& graph, std::size_t from, std::size_t to,
                                                  const std::function<bool(std::size_t)>& allowed = {});

/// Strongly connected components in topological order of the condensation.
/// Components are sorted internally; incomparable components appear in order
/// of their smallest vertex.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& graph);

/// Kahn's algorithm, always taking the smallest available vertex. Empty when
/// the graph has a cycle.
std::optional<std::vector<std::size_t>> topological_sort(const Adjacency& graph);

/// Transitive closure maintained under edge insertion; rows are bitsets.
class Reachability {
 public:
  explicit Reachability(std::size_t size);

  bool reaches(std::size_t from, std::size_t to) const {
    return from == to || ((rows_[from][to / 64] >> (to % 64)) & 1U) != 0;
  }
  void add_edge(std::size_t from, std::size_t to);

 private:
  std::size_t size_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace fairorder
