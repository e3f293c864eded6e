#pragma once

// Sparse directed graph with exact integer weights and vertex-granularity
// updates. Adjacency lists are kept sorted by neighbor id so every scan runs
// in ascending VertexId order.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dapsp/errors.hpp"
#include "dapsp/lex_weight.hpp"

namespace dapsp {

struct Arc {
    VertexId to; // neighbor: head for out-lists, tail for in-lists
    Weight weight;

    friend bool operator==(const Arc&, const Arc&) = default;
};

struct Edge {
    VertexId from;
    VertexId to;
    Weight weight;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct ChangeSet {
    std::vector<Edge> removed;
    std::vector<Edge> added;

    [[nodiscard]] bool empty() const { return removed.empty() && added.empty(); }
};

// Membership mask over [0, n). An empty mask means "no vertex".
using VertexMask = std::vector<std::uint8_t>;

inline bool in_mask(const VertexMask& mask, VertexId v) { return !mask.empty() && mask[v] != 0; }

inline VertexMask make_mask(std::size_t n, std::span<const VertexId> members) {
    VertexMask mask(n, 0);
    for (VertexId v : members) {
        mask[v] = 1;
    }
    return mask;
}

class DynamicGraph {
  public:
    DynamicGraph() = default;
    explicit DynamicGraph(std::size_t n) : out_(n), in_(n) {}

    static DynamicGraph from_edges(std::size_t n, std::span<const Edge> edges) {
        DynamicGraph g(n);
        for (const Edge& e : edges) {
            g.insert_edge(e.from, e.to, e.weight);
        }
        g.version_ = 0;
        return g;
    }

    [[nodiscard]] std::size_t n() const { return out_.size(); }
    [[nodiscard]] std::size_t m() const { return m_; }
    [[nodiscard]] std::uint64_t version() const { return version_; }

    [[nodiscard]] std::span<const Arc> out(VertexId v) const { return out_[v]; }
    [[nodiscard]] std::span<const Arc> in(VertexId v) const { return in_[v]; }
    [[nodiscard]] std::size_t in_degree(VertexId v) const { return in_[v].size(); }
    [[nodiscard]] std::size_t out_degree(VertexId v) const { return out_[v].size(); }
    [[nodiscard]] std::size_t degree(VertexId v) const { return in_[v].size() + out_[v].size(); }

    [[nodiscard]] const Arc* find_edge(VertexId u, VertexId v) const {
        const auto& list = out_[u];
        auto it = std::lower_bound(list.begin(), list.end(), v, [](const Arc& a, VertexId x) { return a.to < x; });
        return (it != list.end() && it->to == v) ? &*it : nullptr;
    }
    [[nodiscard]] bool has_edge(VertexId u, VertexId v) const { return find_edge(u, v) != nullptr; }

    [[nodiscard]] bool unweighted() const {
        for (const auto& list : out_) {
            for (const Arc& a : list) {
                if (a.weight != 1) {
                    return false;
                }
            }
        }
        return true;
    }

    // All edges in (from, to) order.
    [[nodiscard]] std::vector<Edge> edges() const {
        std::vector<Edge> result;
        result.reserve(m_);
        for (VertexId u = 0; u < n(); ++u) {
            for (const Arc& a : out_[u]) {
                result.push_back({u, a.to, a.weight});
            }
        }
        return result;
    }

    void insert_edge(VertexId u, VertexId v, Weight w) {
        check_vertex(u);
        check_vertex(v);
        check_weight(w);
        if (u == v) {
            throw MalformedUpdate("self-loop at vertex " + std::to_string(u));
        }
        if (has_edge(u, v)) {
            throw MalformedUpdate("parallel edge " + std::to_string(u) + "->" + std::to_string(v));
        }
        sorted_insert(out_[u], {v, w});
        sorted_insert(in_[v], {u, w});
        ++m_;
        ++version_;
    }

    bool erase_edge(VertexId u, VertexId v) {
        check_vertex(u);
        check_vertex(v);
        if (!sorted_erase(out_[u], v)) {
            return false;
        }
        sorted_erase(in_[v], u);
        --m_;
        ++version_;
        return true;
    }

    // Replace every edge incident to v. new_out holds (head, weight) pairs
    // for edges v->head, new_in holds (tail, weight) pairs for tail->v.
    ChangeSet apply_vertex_update(VertexId v, std::span<const Arc> new_out, std::span<const Arc> new_in) {
        check_vertex(v);
        validate_list(v, new_out, "out");
        validate_list(v, new_in, "in");

        ChangeSet changes;
        for (const Arc& a : out_[v]) {
            changes.removed.push_back({v, a.to, a.weight});
            sorted_erase(in_[a.to], v);
        }
        for (const Arc& a : in_[v]) {
            changes.removed.push_back({a.to, v, a.weight});
            sorted_erase(out_[a.to], v);
        }
        m_ -= out_[v].size() + in_[v].size();
        out_[v].clear();
        in_[v].clear();

        for (const Arc& a : new_out) {
            sorted_insert(out_[v], a);
            sorted_insert(in_[a.to], {v, a.weight});
            changes.added.push_back({v, a.to, a.weight});
        }
        for (const Arc& a : new_in) {
            sorted_insert(in_[v], a);
            sorted_insert(out_[a.to], {v, a.weight});
            changes.added.push_back({a.to, v, a.weight});
        }
        m_ += new_out.size() + new_in.size();
        std::sort(changes.removed.begin(), changes.removed.end());
        std::sort(changes.added.begin(), changes.added.end());
        ++version_;
        return changes;
    }

    // Copy of the graph with every edge incident to a masked vertex dropped.
    [[nodiscard]] DynamicGraph without(const VertexMask& removed) const {
        DynamicGraph g(n());
        for (VertexId u = 0; u < n(); ++u) {
            if (in_mask(removed, u)) {
                continue;
            }
            for (const Arc& a : out_[u]) {
                if (!in_mask(removed, a.to)) {
                    g.out_[u].push_back(a);
                    g.in_[a.to].push_back({u, a.weight});
                    ++g.m_;
                }
            }
        }
        return g;
    }

    // Full mirror/ordering audit; returns false on any violation.
    [[nodiscard]] bool check_invariants() const {
        std::size_t count = 0;
        for (VertexId u = 0; u < n(); ++u) {
            for (std::size_t i = 0; i < out_[u].size(); ++i) {
                const Arc& a = out_[u][i];
                if (a.to == u || a.to >= n() || (i > 0 && out_[u][i - 1].to >= a.to)) {
                    return false;
                }
                auto it = std::find_if(in_[a.to].begin(), in_[a.to].end(), [&](const Arc& b) { return b.to == u; });
                if (it == in_[a.to].end() || it->weight != a.weight) {
                    return false;
                }
                ++count;
            }
            for (std::size_t i = 1; i < in_[u].size(); ++i) {
                if (in_[u][i - 1].to >= in_[u][i].to) {
                    return false;
                }
            }
        }
        std::size_t in_count = 0;
        for (const auto& list : in_) {
            in_count += list.size();
        }
        return count == m_ && in_count == m_;
    }

  private:
    void check_vertex(VertexId v) const {
        if (v >= n()) {
            throw MalformedUpdate("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n()) + ")");
        }
    }

    static void check_weight(Weight w) {
        if (w <= -kMaxEdgeWeight || w >= kMaxEdgeWeight) {
            throw MalformedUpdate("edge weight " + std::to_string(w) + " exceeds the supported magnitude");
        }
    }

    void validate_list(VertexId v, std::span<const Arc> list, const char* which) const {
        std::vector<VertexId> seen;
        seen.reserve(list.size());
        for (const Arc& a : list) {
            check_vertex(a.to);
            check_weight(a.weight);
            if (a.to == v) {
                throw MalformedUpdate(std::string("self-loop in ") + which + "-list of vertex " + std::to_string(v));
            }
            seen.push_back(a.to);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
            throw MalformedUpdate(std::string("duplicate neighbor in ") + which + "-list of vertex " +
                                  std::to_string(v));
        }
    }

    static void sorted_insert(std::vector<Arc>& list, Arc a) {
        auto it = std::lower_bound(list.begin(), list.end(), a.to, [](const Arc& x, VertexId y) { return x.to < y; });
        list.insert(it, a);
    }

    static bool sorted_erase(std::vector<Arc>& list, VertexId v) {
        auto it = std::lower_bound(list.begin(), list.end(), v, [](const Arc& x, VertexId y) { return x.to < y; });
        if (it == list.end() || it->to != v) {
            return false;
        }
        list.erase(it);
        return true;
    }

    std::vector<std::vector<Arc>> out_;
    std::vector<std::vector<Arc>> in_;
    std::size_t m_ = 0;
    std::uint64_t version_ = 0;
};

} // namespace dapsp
