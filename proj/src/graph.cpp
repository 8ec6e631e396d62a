#include "susd/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "susd/errors.hpp"

namespace susd {

VisibilityGraph VisibilityGraph::complete(int agent_count) {
    if (agent_count < 1) throw ConfigError("graph needs at least one agent");
    VisibilityGraph g;
    g.kind_ = GraphKind::Complete;
    g.count_ = agent_count;
    return g;
}

VisibilityGraph VisibilityGraph::static_edges(int agent_count,
                                              const std::vector<std::pair<int, int>>& edges) {
    if (agent_count < 1) throw ConfigError("graph needs at least one agent");
    VisibilityGraph g;
    g.kind_ = GraphKind::Static;
    g.count_ = agent_count;
    g.adj_.assign(static_cast<std::size_t>(agent_count), {});
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= agent_count || b >= agent_count)
            throw ConfigError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") out of range for " + std::to_string(agent_count) + " agents");
        if (a == b) throw ConfigError("self-loop on agent " + std::to_string(a));
        g.adj_[static_cast<std::size_t>(a)].push_back(b);
        g.adj_[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& list : g.adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return g;
}

VisibilityGraph VisibilityGraph::dynamic_k_nearest(int agent_count, int k) {
    if (agent_count < 1) throw ConfigError("graph needs at least one agent");
    if (k < 1) throw ConfigError("dynamic graph needs k >= 1");
    VisibilityGraph g;
    g.kind_ = GraphKind::DynamicKNearest;
    g.count_ = agent_count;
    g.k_ = k;
    return g;
}

std::vector<int> VisibilityGraph::neighbors(int i, const std::vector<Vec2>& positions) const {
    if (i < 0 || i >= count_) throw DegenerateInputError("agent id out of range");
    switch (kind_) {
        case GraphKind::Complete: {
            std::vector<int> out;
            out.reserve(static_cast<std::size_t>(count_ - 1));
            for (int j = 0; j < count_; ++j)
                if (j != i) out.push_back(j);
            return out;
        }
        case GraphKind::Static:
            return adj_[static_cast<std::size_t>(i)];
        case GraphKind::DynamicKNearest: {
            if (static_cast<int>(positions.size()) != count_)
                throw DegenerateInputError("positions size does not match agent count");
            std::vector<std::pair<double, int>> by_dist;
            by_dist.reserve(static_cast<std::size_t>(count_ - 1));
            for (int j = 0; j < count_; ++j) {
                if (j == i) continue;
                by_dist.emplace_back(norm2(positions[static_cast<std::size_t>(j)] -
                                           positions[static_cast<std::size_t>(i)]),
                                     j);
            }
            std::sort(by_dist.begin(), by_dist.end());
            const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k_), by_dist.size());
            std::vector<int> out;
            out.reserve(take);
            for (std::size_t s = 0; s < take; ++s) out.push_back(by_dist[s].second);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return {};
}

bool VisibilityGraph::is_connected(const std::vector<Vec2>& positions) const {
    if (count_ == 1) return true;
    std::vector<std::vector<int>> sym(static_cast<std::size_t>(count_));
    for (int i = 0; i < count_; ++i) {
        for (int j : neighbors(i, positions)) {
            sym[static_cast<std::size_t>(i)].push_back(j);
            sym[static_cast<std::size_t>(j)].push_back(i);
        }
    }
    std::vector<char> seen(static_cast<std::size_t>(count_), 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int visited = 1;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (int w : sym[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++visited;
                frontier.push(w);
            }
        }
    }
    return visited == count_;
}

}  // namespace susd
