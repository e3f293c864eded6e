#pragma once

// Single-source primitives over DynamicGraph: Dijkstra on price-reduced
// weights, hop-bounded Bellman-Ford, level-synchronous BFS, and from-scratch
// feasible price functions.
//
// All routines work with LexWeight (length, hops). Among optimal
// predecessors the smallest VertexId wins, so trees are canonical and runs
// are bit-reproducible.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "dapsp/errors.hpp"
#include "dapsp/graph.hpp"
#include "dapsp/lex_weight.hpp"

namespace dapsp {

enum class Direction : std::uint8_t { kForward, kReverse };

// Optional instrumentation threaded through every primitive.
struct WorkCounters {
    std::uint64_t edges_relaxed = 0;
    std::uint64_t heap_pops = 0;

    WorkCounters& operator+=(const WorkCounters& o) {
        edges_relaxed += o.edges_relaxed;
        heap_pops += o.heap_pops;
        return *this;
    }
};

struct PriceFunction {
    std::vector<Weight> p; // empty when a negative cycle exists
    std::vector<VertexId> negative_cycle; // witness when p is absent

    [[nodiscard]] bool feasible() const { return negative_cycle.empty(); }

    [[nodiscard]] Weight operator[](VertexId v) const { return p.empty() ? 0 : p[v]; }

    static PriceFunction zero(std::size_t n) { return {std::vector<Weight>(n, 0), {}}; }
};

// w(uv) + p(u) - p(v) >= 0 for every edge.
inline bool is_feasible(const DynamicGraph& g, const PriceFunction& prices) {
    if (!prices.feasible()) {
        return false;
    }
    for (VertexId u = 0; u < g.n(); ++u) {
        for (const Arc& a : g.out(u)) {
            if (a.weight + prices[u] - prices[a.to] < 0) {
                return false;
            }
        }
    }
    return true;
}

struct ShortestPathTree {
    VertexId source = kNoVertex;
    Direction direction = Direction::kForward;
    std::vector<LexWeight> dist;
    std::vector<VertexId> parent; // next vertex towards the source

    [[nodiscard]] bool reached(VertexId v) const { return dist[v].finite(); }

    // Forward trees: source -> v. Reverse trees: v -> source.
    [[nodiscard]] std::vector<VertexId> path(VertexId v) const {
        std::vector<VertexId> result;
        if (!reached(v)) {
            return result;
        }
        for (VertexId x = v; x != kNoVertex; x = parent[x]) {
            result.push_back(x);
        }
        if (direction == Direction::kForward) {
            std::reverse(result.begin(), result.end());
        }
        return result;
    }
};

namespace detail {

struct HeapEntry {
    LexWeight key;
    VertexId v;
    bool operator>(const HeapEntry& o) const { return key != o.key ? key > o.key : v > o.v; }
};

using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

} // namespace detail

// Dijkstra over reduced weights w + p(u) - p(v). Distances are converted
// back to true lengths before returning. Vertices in `forbidden` (and all
// their incident edges) are ignored.
inline ShortestPathTree dijkstra(const DynamicGraph& g, VertexId source, Direction direction,
                                 const PriceFunction& prices, const VertexMask& forbidden = {},
                                 WorkCounters* counters = nullptr) {
    const std::size_t n = g.n();
    ShortestPathTree tree{source, direction, std::vector<LexWeight>(n, kInf), std::vector<VertexId>(n, kNoVertex)};
    if (in_mask(forbidden, source)) {
        throw InvariantError("dijkstra source is forbidden");
    }
    const bool forward = direction == Direction::kForward;
    std::vector<std::uint8_t> settled(n, 0);
    detail::MinHeap heap;
    tree.dist[source] = LexWeight::zero();
    heap.push({LexWeight::zero(), source});
    while (!heap.empty()) {
        auto [key, u] = heap.top();
        heap.pop();
        if (settled[u] || key != tree.dist[u]) {
            continue;
        }
        settled[u] = 1;
        if (counters) {
            ++counters->heap_pops;
        }
        for (const Arc& a : forward ? g.out(u) : g.in(u)) {
            const VertexId v = a.to;
            if (in_mask(forbidden, v) || settled[v]) {
                continue;
            }
            const Weight reduced = forward ? a.weight + prices[u] - prices[v] : a.weight + prices[v] - prices[u];
            if (reduced < 0) {
                throw InvariantError("negative reduced weight: price function is stale");
            }
            if (counters) {
                ++counters->edges_relaxed;
            }
            const LexWeight cand = key + LexWeight::edge(reduced);
            if (cand < tree.dist[v] || (cand == tree.dist[v] && u < tree.parent[v])) {
                const bool improved = cand < tree.dist[v];
                tree.dist[v] = cand;
                tree.parent[v] = u;
                if (improved) {
                    heap.push({cand, v});
                }
            }
        }
    }
    // Reduced length of an s->t path is l + p(s) - p(t).
    for (VertexId v = 0; v < n; ++v) {
        if (tree.dist[v].finite()) {
            const Weight shift = forward ? prices[v] - prices[source] : prices[source] - prices[v];
            tree.dist[v] = tree.dist[v].shifted(shift);
        }
    }
    return tree;
}

// Level-synchronous BFS for unit-weight graphs. Each level is scanned in
// ascending id order, so parent[v] is the smallest-id predecessor one level
// up, the same tree dijkstra() returns for all-ones weights.
inline ShortestPathTree bfs_tree(const DynamicGraph& g, VertexId source, Direction direction,
                                 const VertexMask& forbidden = {}, WorkCounters* counters = nullptr,
                                 std::uint32_t max_depth = UINT32_MAX) {
    if (!g.unweighted()) {
        throw ModeError("bfs_tree requires an unweighted graph");
    }
    const std::size_t n = g.n();
    ShortestPathTree tree{source, direction, std::vector<LexWeight>(n, kInf), std::vector<VertexId>(n, kNoVertex)};
    if (in_mask(forbidden, source)) {
        throw InvariantError("bfs source is forbidden");
    }
    const bool forward = direction == Direction::kForward;
    tree.dist[source] = LexWeight::zero();
    std::vector<VertexId> frontier{source};
    std::vector<VertexId> next;
    for (std::uint32_t depth = 1; !frontier.empty() && depth <= max_depth; ++depth) {
        next.clear();
        for (VertexId u : frontier) {
            if (counters) {
                ++counters->heap_pops;
            }
            for (const Arc& a : forward ? g.out(u) : g.in(u)) {
                if (in_mask(forbidden, a.to) || tree.dist[a.to].finite()) {
                    continue;
                }
                if (counters) {
                    ++counters->edges_relaxed;
                }
                tree.dist[a.to] = LexWeight(depth, depth);
                tree.parent[a.to] = u;
                next.push_back(a.to);
            }
        }
        std::sort(next.begin(), next.end());
        frontier.swap(next);
    }
    return tree;
}

// Exact delta^h(source, .) under lexicographic weights, one Jacobi round per
// hop. Negative weights and negative cycles are fine: the hop bound keeps
// every value well defined.
class HopBoundedTable {
  public:
    VertexId source = kNoVertex;
    std::uint32_t h = 0;
    std::vector<LexWeight> dist;

    [[nodiscard]] bool reached(VertexId t) const { return dist[t].finite(); }

    // One optimal <=h-hop walk source -> t (simple unless it has to traverse
    // a negative cycle). Empty when t is unreachable within h hops.
    [[nodiscard]] std::vector<VertexId> path(VertexId t) const {
        std::vector<VertexId> result;
        if (!reached(t)) {
            return result;
        }
        std::uint32_t round = round_of(t, h);
        VertexId v = t;
        result.push_back(v);
        while (round > 0) {
            const VertexId u = pred_[static_cast<std::size_t>(round) * n_ + v];
            v = u;
            --round;
            round = round_of(v, round);
            result.push_back(v);
        }
        std::reverse(result.begin(), result.end());
        return result;
    }

  private:
    friend HopBoundedTable hop_bounded_bellman_ford(const DynamicGraph&, VertexId, std::uint32_t, const VertexMask&,
                                                    WorkCounters*);

    // Latest round <= r in which v's value changed (0 means v == source).
    [[nodiscard]] std::uint32_t round_of(VertexId v, std::uint32_t r) const {
        while (r > 0 && pred_[static_cast<std::size_t>(r) * n_ + v] == kNoVertex) {
            --r;
        }
        return r;
    }

    std::size_t n_ = 0;
    std::vector<VertexId> pred_; // (h+1) x n; kNoVertex when unchanged that round
};

inline HopBoundedTable hop_bounded_bellman_ford(const DynamicGraph& g, VertexId source, std::uint32_t h,
                                                const VertexMask& forbidden = {}, WorkCounters* counters = nullptr) {
    if (h < 1) {
        throw ParameterError("hop bound must be at least 1");
    }
    const std::size_t n = g.n();
    HopBoundedTable table;
    table.source = source;
    table.h = h;
    table.n_ = n;
    table.dist.assign(n, kInf);
    table.pred_.assign(static_cast<std::size_t>(h + 1) * n, kNoVertex);
    if (in_mask(forbidden, source)) {
        table.dist[source] = LexWeight::zero();
        return table;
    }
    table.dist[source] = LexWeight::zero();
    std::vector<LexWeight> prev = table.dist;
    std::vector<VertexId> active{source};
    std::vector<std::uint8_t> touched(n, 0);
    for (std::uint32_t round = 1; round <= h && !active.empty(); ++round) {
        std::vector<VertexId> changed;
        VertexId* pred = table.pred_.data() + static_cast<std::size_t>(round) * n;
        // Only vertices whose value changed last round can improve anyone.
        for (VertexId u : active) {
            if (in_mask(forbidden, u)) {
                continue;
            }
            for (const Arc& a : g.out(u)) {
                const VertexId v = a.to;
                if (in_mask(forbidden, v)) {
                    continue;
                }
                if (counters) {
                    ++counters->edges_relaxed;
                }
                const LexWeight cand = prev[u] + LexWeight::edge(a.weight);
                if (cand < table.dist[v] || (cand == table.dist[v] && pred[v] != kNoVertex && u < pred[v])) {
                    table.dist[v] = cand;
                    pred[v] = u;
                    if (!touched[v]) {
                        touched[v] = 1;
                        changed.push_back(v);
                    }
                }
            }
        }
        for (VertexId v : changed) {
            touched[v] = 0;
            prev[v] = table.dist[v];
        }
        std::sort(changed.begin(), changed.end());
        active.swap(changed);
        if (counters) {
            counters->heap_pops += active.size();
        }
    }
    return table;
}

namespace detail {

// A cycle in the parent graph, in forward edge order, or empty.
inline std::vector<VertexId> parent_cycle(const std::vector<VertexId>& parent) {
    const std::size_t n = parent.size();
    std::vector<std::uint32_t> mark(n, 0);
    for (VertexId start = 0; start < n; ++start) {
        if (mark[start]) {
            continue;
        }
        const std::uint32_t stamp = start + 1;
        VertexId x = start;
        while (x != kNoVertex && !mark[x]) {
            mark[x] = stamp;
            x = parent[x];
        }
        if (x != kNoVertex && mark[x] == stamp) {
            std::vector<VertexId> cycle{x};
            for (VertexId y = parent[x]; y != x; y = parent[y]) {
                cycle.push_back(y);
            }
            std::reverse(cycle.begin(), cycle.end());
            return cycle;
        }
    }
    return {};
}

} // namespace detail

// From-scratch Bellman-Ford from a virtual source joined to every vertex by a
// zero edge. Returns a feasible price function or a negative-cycle witness.
inline PriceFunction feasible_price_function(const DynamicGraph& g, WorkCounters* counters = nullptr) {
    const std::size_t n = g.n();
    std::vector<Weight> dist(n, 0);
    std::vector<VertexId> parent(n, kNoVertex);
    std::vector<std::uint8_t> queued(n, 0);
    std::vector<VertexId> active(n);
    for (VertexId v = 0; v < n; ++v) {
        active[v] = v;
    }
    auto round = [&] {
        std::vector<VertexId> next;
        for (VertexId u : active) {
            for (const Arc& a : g.out(u)) {
                if (counters) {
                    ++counters->edges_relaxed;
                }
                if (dist[u] + a.weight < dist[a.to]) {
                    dist[a.to] = dist[u] + a.weight;
                    parent[a.to] = u;
                    if (!queued[a.to]) {
                        queued[a.to] = 1;
                        next.push_back(a.to);
                    }
                }
            }
        }
        for (VertexId v : next) {
            queued[v] = 0;
        }
        std::sort(next.begin(), next.end());
        active.swap(next);
    };
    for (std::size_t r = 0; r < n && !active.empty(); ++r) {
        round();
    }
    if (active.empty()) {
        return {std::move(dist), {}};
    }
    // Relaxation never stops, so a negative cycle exists. Any cycle of the
    // parent graph is negative and one appears after finitely many rounds.
    for (std::size_t extra = 0; extra <= 4 * n + 4; ++extra) {
        if (auto cycle = detail::parent_cycle(parent); !cycle.empty()) {
            return {{}, std::move(cycle)};
        }
        if (active.empty()) {
            break;
        }
        round();
    }
    throw InvariantError("negative cycle detected but no witness found");
}

// Length of the closed walk c0 -> c1 -> ... -> c0; kInf if an edge is missing.
inline LexWeight cycle_length(const DynamicGraph& g, const std::vector<VertexId>& cycle) {
    LexWeight total = LexWeight::zero();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Arc* a = g.find_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
        if (!a) {
            return kInf;
        }
        total += LexWeight::edge(a->weight);
    }
    return total;
}

// Length of an explicit vertex sequence; kInf if some hop is not an edge.
inline LexWeight walk_length(const DynamicGraph& g, const std::vector<VertexId>& walk) {
    if (walk.empty()) {
        return kInf;
    }
    LexWeight total = LexWeight::zero();
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        const Arc* a = g.find_edge(walk[i], walk[i + 1]);
        if (!a) {
            return kInf;
        }
        total += LexWeight::edge(a->weight);
    }
    return total;
}

} // namespace dapsp
