#pragma once

// Start-of-phase preprocessing: a family of hop-bounded paths (at most one
// per ordered pair) with degree-weighted congestion counters, the congested
// vertex set those counters produce, the hitting set of the longer stored
// paths, and the optional high-degree split.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dapsp/errors.hpp"
#include "dapsp/graph.hpp"
#include "dapsp/hitting.hpp"
#include "dapsp/lex_weight.hpp"
#include "dapsp/sssp.hpp"

namespace dapsp {

struct PathRecord {
    VertexId s = kNoVertex;
    VertexId t = kNoVertex;
    LexWeight length;
    std::vector<VertexId> vertices;
    // The walk traverses a negative cycle (has a repeated vertex). Such paths
    // still charge congestion but are never hit, shortcut, or reported.
    bool negative = false;

    [[nodiscard]] std::size_t distinct_vertices() const {
        if (!negative) {
            return vertices.size();
        }
        std::vector<VertexId> sorted = vertices;
        std::sort(sorted.begin(), sorted.end());
        return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    }
};

// Stored paths keyed by (s, t) with the per-vertex membership index and the
// congestion counters alpha(v) = sum of deg(t) over stored s->t paths
// through v, deg being the in-degree in the preprocessed graph.
class PathCollection {
  public:
    PathCollection() = default;
    explicit PathCollection(std::size_t n) : n_(n), slot_(n * n, -1), members_(n), alpha_(n, 0) {}

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] std::size_t size() const { return paths_.size(); }
    [[nodiscard]] const std::vector<PathRecord>& paths() const { return paths_; }
    [[nodiscard]] const PathRecord& path(std::uint32_t id) const { return paths_[id]; }

    [[nodiscard]] const PathRecord* find(VertexId s, VertexId t) const {
        const std::int32_t id = slot_[static_cast<std::size_t>(s) * n_ + t];
        return id < 0 ? nullptr : &paths_[id];
    }

    [[nodiscard]] LexWeight length(VertexId s, VertexId t) const {
        const PathRecord* p = find(s, t);
        return p ? p->length : kInf;
    }

    // Ids of stored paths containing v (each path listed once).
    [[nodiscard]] const std::vector<std::uint32_t>& members(VertexId v) const { return members_[v]; }
    [[nodiscard]] std::int64_t alpha(VertexId v) const { return alpha_[v]; }
    [[nodiscard]] const std::vector<std::int64_t>& alpha() const { return alpha_; }

    void add(PathRecord record, std::int64_t target_degree) {
        const auto id = static_cast<std::uint32_t>(paths_.size());
        std::int32_t& slot = slot_[static_cast<std::size_t>(record.s) * n_ + record.t];
        if (slot >= 0) {
            throw InvariantError("path collection already holds a path for this pair");
        }
        slot = static_cast<std::int32_t>(id);
        std::vector<VertexId> distinct = record.vertices;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (VertexId v : distinct) {
            members_[v].push_back(id);
            alpha_[v] += target_degree;
        }
        paths_.push_back(std::move(record));
    }

  private:
    std::size_t n_ = 0;
    std::vector<PathRecord> paths_;
    std::vector<std::int32_t> slot_;
    std::vector<std::vector<std::uint32_t>> members_;
    std::vector<std::int64_t> alpha_;
};

enum class WeightMode : std::uint8_t { kWeighted, kUnweighted };

struct PhaseBuild {
    PathCollection paths;
    std::vector<VertexId> congested; // sorted
    VertexMask congested_mask;
};

// Upper bound on |C|: 2 n m h / tau.
inline double congested_size_bound(std::size_t n, std::size_t m, std::uint32_t h, std::int64_t tau) {
    if (tau <= 0) {
        return m == 0 ? 0.0 : INFINITY;
    }
    return 2.0 * static_cast<double>(n) * static_cast<double>(m) * static_cast<double>(h) / static_cast<double>(tau);
}

// Sources are processed in ascending id. Before each source every vertex
// outside C with alpha > tau/2 joins C; then one shortest <=h-hop path to
// every target is computed in g0 - C and stored. Guarantees, for all s, t:
//   delta^h_{g0}(s,t) <= l(pi_{s,t}) <= delta^h_{g0-C}(s,t)   and   alpha <= tau.
inline PhaseBuild build_phase(const DynamicGraph& g0, std::uint32_t h, std::int64_t tau,
                              WeightMode mode = WeightMode::kWeighted, WorkCounters* counters = nullptr) {
    const std::size_t n = g0.n();
    if (tau < 2 * static_cast<std::int64_t>(g0.m())) {
        throw ParameterError("congestion threshold tau = " + std::to_string(tau) + " is below 2m = " +
                             std::to_string(2 * g0.m()));
    }
    if (h < 1 || (n > 0 && h > n)) {
        throw ParameterError("hop bound h = " + std::to_string(h) + " outside [1, n]");
    }
    if (mode == WeightMode::kUnweighted && !g0.unweighted()) {
        throw ModeError("unweighted preprocessing on a weighted graph");
    }
    PhaseBuild out{PathCollection(n), {}, VertexMask(n, 0)};
    for (VertexId s = 0; s < n; ++s) {
        for (VertexId v = 0; v < n; ++v) {
            if (!out.congested_mask[v] && 2 * out.paths.alpha(v) > tau) {
                out.congested_mask[v] = 1;
                out.congested.push_back(v);
            }
        }
        if (mode == WeightMode::kUnweighted) {
            // Every <=h-hop shortest path in a unit-weight graph is a global
            // shortest path, so depth-limited BFS yields the same family.
            if (out.congested_mask[s]) {
                out.paths.add({s, s, LexWeight::zero(), {s}, false}, static_cast<std::int64_t>(g0.in_degree(s)));
                continue;
            }
            const ShortestPathTree tree = bfs_tree(g0, s, Direction::kForward, out.congested_mask, counters, h);
            for (VertexId t = 0; t < n; ++t) {
                if (tree.reached(t)) {
                    out.paths.add({s, t, tree.dist[t], tree.path(t), false},
                                  static_cast<std::int64_t>(g0.in_degree(t)));
                }
            }
            continue;
        }
        const HopBoundedTable table = hop_bounded_bellman_ford(g0, s, h, out.congested_mask, counters);
        for (VertexId t = 0; t < n; ++t) {
            if (!table.reached(t)) {
                continue;
            }
            PathRecord record{s, t, table.dist[t], table.path(t), false};
            std::vector<VertexId> sorted = record.vertices;
            std::sort(sorted.begin(), sorted.end());
            record.negative = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
            out.paths.add(std::move(record), static_cast<std::int64_t>(g0.in_degree(t)));
        }
    }
    return out;
}

inline std::uint32_t half_ceil(std::uint32_t h) { return (h + 1) / 2; }

// Hits every non-negative stored path with at least ceil(h/2) vertices.
inline std::vector<VertexId> build_h0(const PathCollection& paths, std::uint32_t h) {
    const std::uint32_t k = std::max<std::uint32_t>(1, half_ceil(h));
    SetFamily family{paths.n(), {}};
    for (const PathRecord& p : paths.paths()) {
        if (!p.negative && p.vertices.size() >= k) {
            family.sets.push_back(p.vertices);
        }
    }
    return greedy_hitting_set(family, k);
}

// The min(delta, n) vertices of largest total degree, ties to smaller id.
inline std::vector<VertexId> degree_split(const DynamicGraph& g0, std::size_t delta) {
    std::vector<VertexId> order(g0.n());
    for (VertexId v = 0; v < g0.n(); ++v) {
        order[v] = v;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return g0.degree(a) > g0.degree(b); });
    order.resize(std::min(delta, order.size()));
    std::sort(order.begin(), order.end());
    return order;
}

} // namespace dapsp
