#pragma once

#include <utility>
#include <vector>

#include "susd/vec2.hpp"

namespace susd {

enum class GraphKind { Complete, Static, DynamicKNearest };

// Who each agent can see. Complete and Static are position-independent;
// DynamicKNearest recomputes the k nearest other agents every query
// (directed perception: i seeing j does not imply j seeing i).
class VisibilityGraph {
  public:
    static VisibilityGraph complete(int agent_count);
    // Undirected edge list; validates indices and rejects self-loops.
    static VisibilityGraph static_edges(int agent_count, const std::vector<std::pair<int, int>>& edges);
    static VisibilityGraph dynamic_k_nearest(int agent_count, int k);

    // Neighbor ids of agent i, ascending. Dynamic mode returns exactly
    // min(k, M-1) agents, distance ties broken by lower id.
    std::vector<int> neighbors(int i, const std::vector<Vec2>& positions) const;

    // BFS over the symmetrized edge set.
    bool is_connected(const std::vector<Vec2>& positions) const;

    int agent_count() const { return count_; }
    GraphKind kind() const { return kind_; }
    int k() const { return k_; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }

  private:
    VisibilityGraph() = default;

    GraphKind kind_ = GraphKind::Complete;
    int count_ = 0;
    int k_ = 0;
    std::vector<std::vector<int>> adj_;
};

}  // namespace susd
