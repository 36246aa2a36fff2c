#pragma once

// Contention graph over the current hops of active flows.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "raqs/channel.hpp"

namespace raqs {

/// True iff the links share a node or either cross-interference power
/// exceeds `sigma` (mW).
bool in_contention(const Channel& channel, const DirectedLink& a,
                   const DirectedLink& b, double sigma);

/// Same test on precomputed link indices of `budget`.
bool in_contention(const LinkBudget& budget, std::size_t a, std::size_t b,
                   double sigma);

/// Undirected simple graph whose vertices are flow ids. Vertices can only be
/// removed; degrees always count surviving neighbours.
class ContentionGraph {
 public:
  ContentionGraph() = default;

  /// `conflict(i, j)` is queried once per unordered pair of positions in
  /// `vertices`, with i < j.
  template <typename Conflict>
  ContentionGraph(std::vector<std::size_t> vertices, double sigma,
                  Conflict&& conflict)
      : ids_(std::move(vertices)),
        alive_(ids_.size(), 1),
        adj_(ids_.size() * ids_.size(), 0),
        sigma_(sigma) {
    const std::size_t n = ids_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (conflict(i, j)) adj_[i * n + j] = adj_[j * n + i] = 1;
      }
    }
  }

  /// Vertex per (flow id, current hop link).
  static ContentionGraph build(
      const Channel& channel,
      const std::vector<std::pair<std::size_t, DirectedLink>>& hops,
      double sigma);

  double sigma() const { return sigma_; }
  bool empty() const;
  std::size_t size() const;
  bool contains(std::size_t flow) const;
  bool adjacent(std::size_t a, std::size_t b) const;
  /// Throws std::out_of_range for a missing vertex.
  std::size_t degree(std::size_t flow) const;
  /// Surviving vertices in insertion order.
  std::vector<std::size_t> vertices() const;
  std::vector<std::size_t> neighbors(std::size_t flow) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  void remove(std::size_t flow);
  /// Removes `flow` and every surviving neighbour. Throws std::out_of_range
  /// for a missing vertex.
  void remove_closed_neighborhood(std::size_t flow);

  /// "v0 v1 ...|a-b c-d ..." for debug dumps.
  std::string to_string() const;

 private:
  std::size_t local(std::size_t flow) const;

  std::vector<std::size_t> ids_;
  std::vector<char> alive_;
  std::vector<char> adj_;
  double sigma_ = 0.0;
};

}  // namespace raqs
