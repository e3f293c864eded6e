#pragma once

// From-scratch reference answers for the trace runner. The oracle keeps its
// own copy of the graph as an edge map and shares no code with the engines.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dapsp/graph.hpp"
#include "dapsp/lex_weight.hpp"

namespace dapsp::harness {

class OracleGraph {
  public:
    explicit OracleGraph(std::size_t n = 0) : n_(n) {}

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] std::size_t m() const { return edges_.size(); }
    [[nodiscard]] const std::map<std::pair<VertexId, VertexId>, Weight>& edge_map() const { return edges_; }

    void set_edge(VertexId u, VertexId v, Weight w) { edges_[{u, v}] = w; }
    void erase_edge(VertexId u, VertexId v) { edges_.erase({u, v}); }
    [[nodiscard]] bool has_edge(VertexId u, VertexId v) const { return edges_.count({u, v}) != 0; }

    [[nodiscard]] std::optional<Weight> weight(VertexId u, VertexId v) const {
        auto it = edges_.find({u, v});
        if (it == edges_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    void replace_vertex(VertexId v, const std::vector<Arc>& out, const std::vector<Arc>& in) {
        for (auto it = edges_.begin(); it != edges_.end();) {
            if (it->first.first == v || it->first.second == v) {
                it = edges_.erase(it);
            } else {
                ++it;
            }
        }
        for (const Arc& a : out) {
            edges_[{v, a.to}] = a.weight;
        }
        for (const Arc& a : in) {
            edges_[{a.to, v}] = a.weight;
        }
    }

    // True iff some cycle has negative total length.
    [[nodiscard]] bool has_negative_cycle() const {
        std::vector<std::int64_t> d(n_, 0);
        for (std::size_t round = 0; round <= n_; ++round) {
            bool changed = false;
            for (const auto& [e, w] : edges_) {
                if (d[e.first] + w < d[e.second]) {
                    d[e.second] = d[e.first] + w;
                    changed = true;
                }
            }
            if (!changed) {
                return false;
            }
        }
        return true;
    }

    // Lexicographic (length, hops) Bellman-Ford from s; requires no negative
    // cycle. A zero-length cycle has positive hop count, so distances
    // stabilise within n - 1 rounds.
    [[nodiscard]] std::vector<LexWeight> distances(VertexId s) const {
        std::vector<std::int64_t> len(n_, 0);
        std::vector<std::int64_t> hops(n_, 0);
        std::vector<std::uint8_t> reached(n_, 0);
        reached[s] = 1;
        for (std::size_t round = 0; round < n_; ++round) {
            bool changed = false;
            for (const auto& [e, w] : edges_) {
                if (!reached[e.first]) {
                    continue;
                }
                const std::int64_t l = len[e.first] + w;
                const std::int64_t h = hops[e.first] + 1;
                if (!reached[e.second] || l < len[e.second] || (l == len[e.second] && h < hops[e.second])) {
                    reached[e.second] = 1;
                    len[e.second] = l;
                    hops[e.second] = h;
                    changed = true;
                }
            }
            if (!changed) {
                break;
            }
        }
        std::vector<LexWeight> out(n_, kInf);
        for (std::size_t v = 0; v < n_; ++v) {
            if (reached[v]) {
                out[v] = LexWeight(len[v], static_cast<std::uint32_t>(hops[v]));
            }
        }
        return out;
    }

    // (length, hops) of the walk if every consecutive pair is an edge.
    [[nodiscard]] std::optional<LexWeight> walk_weight(const std::vector<VertexId>& walk) const {
        if (walk.empty()) {
            return std::nullopt;
        }
        std::int64_t total = 0;
        for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
            const auto w = weight(walk[i], walk[i + 1]);
            if (!w) {
                return std::nullopt;
            }
            total += *w;
        }
        return LexWeight(total, static_cast<std::uint32_t>(walk.size() - 1));
    }

    [[nodiscard]] bool reaches(VertexId s, VertexId t) const {
        std::vector<std::vector<VertexId>> adj(n_);
        for (const auto& [e, w] : edges_) {
            adj[e.first].push_back(e.second);
        }
        std::vector<std::uint8_t> seen(n_, 0);
        std::vector<VertexId> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const VertexId u = stack.back();
            stack.pop_back();
            for (VertexId v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        return seen[t] != 0;
    }

  private:
    std::size_t n_;
    std::map<std::pair<VertexId, VertexId>, Weight> edges_;
};

} // namespace dapsp::harness
