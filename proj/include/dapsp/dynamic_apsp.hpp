#pragma once

// Fully dynamic exact all-pairs shortest paths under vertex updates.
//
// The structure runs in phases of `delta` updates. A phase starts by
// preprocessing the current graph G0 into stored <=h-hop paths Pi and a
// congested set C. Every update then
//   1. recomputes a feasible price function (or enters the poisoned state
//      while a negative cycle exists),
//   2. grows the affected set D,
//   3. builds shortest-path trees from and to every vertex of C u D in G,
//   4. repairs the stored paths that touch D with one small Dijkstra per
//      source over raw edges of G - D plus shortcuts along surviving paths,
//   5. builds a hitting set H of all long repaired paths and shortest-path
//      trees from and to H in G - (C u D).
// A distance query returns the minimum of the routes through C u D, the
// routes through H, and the repaired stored path.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dapsp/errors.hpp"
#include "dapsp/graph.hpp"
#include "dapsp/hitting.hpp"
#include "dapsp/lex_weight.hpp"
#include "dapsp/phase.hpp"
#include "dapsp/sssp.hpp"

namespace dapsp {

enum class HittingMode : std::uint8_t { kDeterministic, kRandomized };

struct Params {
    std::optional<std::uint32_t> h;
    std::optional<std::uint32_t> delta;
    std::optional<std::int64_t> tau;
    HittingMode mode = HittingMode::kDeterministic;
    WeightMode weight_mode = WeightMode::kWeighted;
    bool degree_split = false;
    double rand_c = 3.0;
    std::uint64_t seed = 1;
};

inline std::uint32_t round_root(std::size_t n, double exponent) {
    return static_cast<std::uint32_t>(std::lround(std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), exponent)));
}

// h = n^{1/5}, delta = h^2, tau = m n^{2/5} (weighted);
// h = delta = n^{1/4}, tau = m n^{1/2} (unweighted).
inline std::uint32_t default_h(std::size_t n, WeightMode mode) {
    const double e = mode == WeightMode::kWeighted ? 0.2 : 0.25;
    return std::max<std::uint32_t>(2, round_root(n, e));
}

inline std::uint32_t default_delta(std::size_t n, WeightMode mode) {
    if (mode == WeightMode::kWeighted) {
        const std::uint32_t h = default_h(n, mode);
        return h * h;
    }
    return std::max<std::uint32_t>(1, round_root(n, 0.25));
}

inline std::int64_t default_tau(std::size_t n, std::size_t m0, WeightMode mode) {
    const double e = mode == WeightMode::kWeighted ? 0.4 : 0.5;
    const auto m = static_cast<std::int64_t>(m0);
    return std::max<std::int64_t>(2 * m, m * round_root(n, e));
}

enum class EdgeKind : std::uint8_t { kRaw, kCompressed };

// Dijkstra tree of the auxiliary graph used to repair stored paths from one
// source. Compressed edges leave the root only and stand for the stored
// path to their head; every other edge is an edge of G - D.
struct RebuildTree {
    struct Node {
        VertexId vertex;
        LexWeight dist;
        VertexId parent; // kNoVertex at the root
        EdgeKind kind;
    };

    VertexId source = kNoVertex;
    std::vector<Node> nodes; // sorted by vertex

    [[nodiscard]] const Node* find(VertexId v) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), v,
                                   [](const Node& node, VertexId x) { return node.vertex < x; });
        return (it != nodes.end() && it->vertex == v) ? &*it : nullptr;
    }

    [[nodiscard]] LexWeight dist(VertexId v) const {
        const Node* node = find(v);
        return node ? node->dist : kInf;
    }
};

struct UpdateReport {
    bool poisoned = false;
    bool phase_rebuilt = false;
    WorkCounters work;
    std::uint64_t qs_degree_mass = 0; // sum over s, t in Q_s of deg(t)
    std::int64_t alpha_mass = 0;      // sum over d in D of alpha(d)
    std::int64_t tau = 0;
    std::size_t congested = 0;
    std::size_t affected = 0;
    std::size_t hitting = 0;
    std::size_t hitting_h0 = 0;
    std::size_t hitting_h1 = 0;
    std::size_t rebuilt_sources = 0;
};

class DynamicApsp {
  public:
    DynamicApsp(DynamicGraph graph, Params params) : params_(params), graph_(std::move(graph)) {
        const std::size_t n = graph_.n();
        h_ = params_.h.value_or(default_h(n, params_.weight_mode));
        h_ = std::min<std::uint32_t>(h_, static_cast<std::uint32_t>(std::max<std::size_t>(n, 1)));
        delta_ = params_.delta.value_or(default_delta(n, params_.weight_mode));
        if (h_ < 1) {
            throw ParameterError("h must be at least 1");
        }
        if (delta_ < 1) {
            throw ParameterError("delta must be at least 1");
        }
        if (params_.mode == HittingMode::kRandomized && params_.rand_c < 1.0) {
            throw ParameterError("randomized hitting constant c must be at least 1");
        }
        if (params_.weight_mode == WeightMode::kUnweighted && !graph_.unweighted()) {
            throw ModeError("unweighted mode requires every edge weight to be 1");
        }
        if (params_.tau) {
            const auto m0 = static_cast<std::int64_t>(preprocessed_edge_count());
            if (*params_.tau < 2 * m0) {
                throw ParameterError("tau = " + std::to_string(*params_.tau) + " is below 2m0 = " +
                                     std::to_string(2 * m0));
            }
        }
        UpdateReport report;
        refresh_prices(report);
        if (!poisoned_) {
            start_phase(report);
        }
        last_report_ = report;
    }

    // --- updates -----------------------------------------------------------

    UpdateReport vertex_update(VertexId v, std::span<const Arc> new_out, std::span<const Arc> new_in) {
        if (params_.weight_mode == WeightMode::kUnweighted) {
            for (const Arc& a : new_out) {
                if (a.weight != 1) {
                    throw ModeError("unweighted mode: edge weight must be 1");
                }
            }
            for (const Arc& a : new_in) {
                if (a.weight != 1) {
                    throw ModeError("unweighted mode: edge weight must be 1");
                }
            }
        }
        graph_.apply_vertex_update(v, new_out, new_in);
        ++update_serial_;
        UpdateReport report;
        const bool was_poisoned = poisoned_;
        refresh_prices(report);
        if (poisoned_) {
            report.poisoned = true;
            last_report_ = report;
            return report;
        }
        if (was_poisoned) {
            start_phase(report);
        } else {
            ++update_count_;
            if (update_count_ >= delta_) {
                start_phase(report);
            } else {
                add_affected(v);
                recompute_update_state(report);
            }
        }
        last_report_ = report;
        return report;
    }

    // --- queries -----------------------------------------------------------

    [[nodiscard]] LexWeight distance(VertexId s, VertexId t) const { return best_route(s, t).dist; }

    [[nodiscard]] std::vector<VertexId> shortest_path(VertexId s, VertexId t) const {
        const Route route = best_route(s, t);
        if (!route.dist.finite()) {
            throw NoPath(s, t);
        }
        switch (route.kind) {
        case RouteKind::kTrivial:
            return {s};
        case RouteKind::kStored:
            return expand_pi_prime(s, t);
        case RouteKind::kThroughCD:
            return join(cd_to_[route.index].path(s), cd_from_[route.index].path(t));
        case RouteKind::kThroughH:
            return join(h_to_[route.index].path(s), h_from_[route.index].path(t));
        }
        return {};
    }

    // l(pi'_{s,t}): the repaired path when t is in Q_s, the stored path
    // otherwise.
    [[nodiscard]] LexWeight pi_prime_length(VertexId s, VertexId t) const {
        check_query_allowed();
        if (in_q(s, t)) {
            return rebuild_[s].dist(t);
        }
        const PathRecord* p = phase_.paths.find(s, t);
        return (p && !p->negative) ? p->length : kInf;
    }

    // Explicit vertex sequence of pi'_{s,t}; empty when it does not exist.
    [[nodiscard]] std::vector<VertexId> expand_pi_prime(VertexId s, VertexId t) const {
        check_query_allowed();
        if (!in_q(s, t)) {
            const PathRecord* p = phase_.paths.find(s, t);
            return (p && !p->negative) ? p->vertices : std::vector<VertexId>{};
        }
        const RebuildTree& tree = rebuild_[s];
        const RebuildTree::Node* node = tree.find(t);
        if (!node || !node->dist.finite()) {
            return {};
        }
        std::vector<VertexId> reversed;
        while (node->parent != kNoVertex && node->parent != s) {
            reversed.push_back(node->vertex);
            node = tree.find(node->parent);
        }
        if (node->parent == kNoVertex) {
            return {s}; // t == s
        }
        std::vector<VertexId> result;
        if (node->kind == EdgeKind::kCompressed) {
            result = phase_.paths.find(s, node->vertex)->vertices;
        } else {
            result = {s, node->vertex};
        }
        result.insert(result.end(), reversed.rbegin(), reversed.rend());
        return result;
    }

    // --- state inspection (tests, harness, audits) -------------------------

    [[nodiscard]] bool poisoned() const { return poisoned_; }
    [[nodiscard]] const DynamicGraph& graph() const { return graph_; }
    [[nodiscard]] const PriceFunction& prices() const { return prices_; }
    [[nodiscard]] std::uint32_t h() const { return h_; }
    [[nodiscard]] std::uint32_t delta() const { return delta_; }
    [[nodiscard]] std::int64_t tau() const { return tau_; }
    [[nodiscard]] std::uint32_t update_count() const { return update_count_; }
    [[nodiscard]] std::uint64_t phases_started() const { return phases_started_; }
    [[nodiscard]] const Params& params() const { return params_; }
    [[nodiscard]] const UpdateReport& last_report() const { return last_report_; }

    // The graph the current phase preprocessed (G0, minus the split set B).
    [[nodiscard]] const DynamicGraph& phase_graph() const { return g0_; }
    [[nodiscard]] const PathCollection& paths() const { return phase_.paths; }
    [[nodiscard]] const std::vector<VertexId>& congested() const { return phase_.congested; }
    [[nodiscard]] const std::vector<VertexId>& split_set() const { return split_; }
    [[nodiscard]] const std::vector<VertexId>& affected() const { return affected_; }
    [[nodiscard]] const std::vector<VertexId>& h0() const { return h0_; }
    [[nodiscard]] const std::vector<VertexId>& h1() const { return h1_; }
    [[nodiscard]] const std::vector<VertexId>& hitting_set() const { return hitting_; }
    [[nodiscard]] const std::vector<VertexId>& hitting_roots() const { return h_roots_; }
    [[nodiscard]] const std::vector<VertexId>& q_set(VertexId s) const { return q_sets_[s]; }
    [[nodiscard]] const RebuildTree& rebuild_tree(VertexId s) const { return rebuild_[s]; }

    // Repair the stored paths from s whose targets are in q (each must be a
    // stored path meeting D). Uses the current graph, prices, and D.
    [[nodiscard]] RebuildTree rebuild_short_paths(VertexId s, const std::vector<VertexId>& q,
                                                  WorkCounters* counters = nullptr) const {
        const std::size_t n = graph_.n();
        RebuildTree tree;
        tree.source = s;
        // Local ids: 0 is the root.
        std::vector<std::int32_t> local(n, -1);
        std::vector<VertexId> vertex_of{s};
        local[s] = 0;
        std::vector<std::uint8_t> in_q(n, 0);
        for (VertexId t : q) {
            const PathRecord* p = phase_.paths.find(s, t);
            if (!p || !meets_affected(*p)) {
                throw InvariantError("rebuild target " + std::to_string(t) + " has no stored path through D");
            }
            in_q[t] = 1;
        }
        auto local_id = [&](VertexId v) {
            if (local[v] < 0) {
                local[v] = static_cast<std::int32_t>(vertex_of.size());
                vertex_of.push_back(v);
            }
            return local[v];
        };
        struct YArc {
            std::int32_t to;
            LexWeight reduced;
            EdgeKind kind;
        };
        std::vector<std::vector<YArc>> adj(1);
        auto add_arc = [&](std::int32_t from, std::int32_t to, LexWeight reduced, EdgeKind kind) {
            if (adj.size() < vertex_of.size()) {
                adj.resize(vertex_of.size());
            }
            adj[from].push_back({to, reduced, kind});
        };
        std::vector<std::uint8_t> shortcut_added(n, 0);
        for (VertexId t : q) {
            if (affected_mask_[t]) {
                continue; // no edges of G - D enter t
            }
            const std::int32_t lt = local_id(t);
            for (const Arc& a : graph_.in(t)) {
                const VertexId v = a.to;
                if (affected_mask_[v]) {
                    continue;
                }
                const std::int32_t lv = local_id(v);
                add_arc(lv, lt, LexWeight::edge(a.weight + prices_[v] - prices_[t]), EdgeKind::kRaw);
                if (v != s && !in_q[v] && !shortcut_added[v]) {
                    const PathRecord* p = phase_.paths.find(s, v);
                    if (p && !p->negative && !meets_affected(*p)) {
                        shortcut_added[v] = 1;
                        add_arc(0, lv, p->length.shifted(prices_[s] - prices_[v]), EdgeKind::kCompressed);
                    }
                }
            }
        }
        adj.resize(vertex_of.size());

        const std::size_t local_n = vertex_of.size();
        std::vector<LexWeight> dist(local_n, kInf);
        std::vector<std::int32_t> parent(local_n, -1);
        std::vector<EdgeKind> kind(local_n, EdgeKind::kRaw);
        std::vector<std::uint8_t> settled(local_n, 0);
        detail::MinHeap heap;
        dist[0] = LexWeight::zero();
        heap.push({LexWeight::zero(), 0});
        while (!heap.empty()) {
            auto [key, lu] = heap.top();
            heap.pop();
            if (settled[lu] || key != dist[lu]) {
                continue;
            }
            settled[lu] = 1;
            if (counters) {
                ++counters->heap_pops;
            }
            for (const YArc& arc : adj[lu]) {
                if (settled[arc.to]) {
                    continue;
                }
                if (arc.reduced.length() < 0) {
                    throw InvariantError("negative reduced weight in rebuild graph");
                }
                if (counters) {
                    ++counters->edges_relaxed;
                }
                const LexWeight cand = key + arc.reduced;
                const bool better = cand < dist[arc.to];
                if (better || (cand == dist[arc.to] && vertex_of[lu] < vertex_of[parent[arc.to]])) {
                    dist[arc.to] = cand;
                    parent[arc.to] = static_cast<std::int32_t>(lu);
                    kind[arc.to] = arc.kind;
                    if (better) {
                        heap.push({cand, static_cast<VertexId>(arc.to)});
                    }
                }
            }
        }
        for (std::size_t lv = 0; lv < local_n; ++lv) {
            if (!dist[lv].finite()) {
                continue;
            }
            const VertexId v = vertex_of[lv];
            tree.nodes.push_back({v, dist[lv].shifted(prices_[v] - prices_[s]),
                                  parent[lv] < 0 ? kNoVertex : vertex_of[parent[lv]], kind[lv]});
        }
        std::sort(tree.nodes.begin(), tree.nodes.end(),
                  [](const RebuildTree::Node& a, const RebuildTree::Node& b) { return a.vertex < b.vertex; });
        return tree;
    }

    // The trees whose k-hop root paths H1 must hit: subtrees T_s[u] below
    // root children u entered by a raw edge or by a short compressed path.
    [[nodiscard]] TreeFamily update_tree_family() const {
        TreeFamily family{graph_.n(), {}};
        const std::uint32_t half = half_ceil(h_);
        for (VertexId s = 0; s < graph_.n(); ++s) {
            const RebuildTree& tree = rebuild_[s];
            if (tree.nodes.size() <= 1) {
                continue;
            }
            const std::size_t size = tree.nodes.size();
            // Index nodes by position in tree.nodes.
            std::vector<std::vector<std::int32_t>> children(size);
            std::int32_t root = -1;
            for (std::size_t i = 0; i < size; ++i) {
                const auto& node = tree.nodes[i];
                if (node.parent == kNoVertex) {
                    root = static_cast<std::int32_t>(i);
                    continue;
                }
                const auto* p = tree.find(node.parent);
                children[p - tree.nodes.data()].push_back(static_cast<std::int32_t>(i));
            }
            for (std::int32_t u : children[root]) {
                const auto& node = tree.nodes[u];
                if (node.kind == EdgeKind::kCompressed &&
                    phase_.paths.find(s, node.vertex)->vertices.size() >= half) {
                    continue;
                }
                RootedTree sub;
                std::vector<std::pair<std::int32_t, std::int32_t>> stack{{u, -1}};
                while (!stack.empty()) {
                    auto [x, parent_local] = stack.back();
                    stack.pop_back();
                    const auto id = static_cast<std::int32_t>(sub.size());
                    sub.label.push_back(tree.nodes[x].vertex);
                    sub.parent.push_back(parent_local);
                    for (std::int32_t c : children[x]) {
                        stack.push_back({c, id});
                    }
                }
                family.trees.push_back(std::move(sub));
            }
        }
        return family;
    }

    // H0 u H1 in deterministic mode; a fresh uniform sample otherwise.
    [[nodiscard]] std::vector<VertexId> compute_update_hitting_set(std::vector<VertexId>* h1_out = nullptr) const {
        const std::size_t n = graph_.n();
        if (params_.mode == HittingMode::kRandomized) {
            if (n <= 1) {
                return std::vector<VertexId>(n, 0);
            }
            const std::size_t h = std::clamp<std::size_t>(h_, 2, n);
            return random_hitting_set(n, h, params_.rand_c, mix_seed(params_.seed, update_serial_));
        }
        const std::uint32_t k = half_ceil(h_) - 1;
        std::vector<VertexId> h1 = tree_hitting_set(update_tree_family(), k);
        std::vector<VertexId> result;
        std::set_union(h0_.begin(), h0_.end(), h1.begin(), h1.end(), std::back_inserter(result));
        if (h1_out) {
            *h1_out = std::move(h1);
        }
        return result;
    }

  private:
    enum class RouteKind : std::uint8_t { kTrivial, kStored, kThroughCD, kThroughH };

    struct Route {
        LexWeight dist = kInf;
        RouteKind kind = RouteKind::kStored;
        std::size_t index = 0;
    };

    static std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t serial) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (serial + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::vector<VertexId> join(std::vector<VertexId> a, const std::vector<VertexId>& b) {
        a.insert(a.end(), b.begin() + 1, b.end());
        return a;
    }

    void check_query_allowed() const {
        if (poisoned_) {
            throw QueryForbidden();
        }
    }

    Route best_route(VertexId s, VertexId t) const {
        check_query_allowed();
        if (s >= graph_.n() || t >= graph_.n()) {
            throw std::out_of_range("query vertex out of range");
        }
        if (s == t) {
            return {LexWeight::zero(), RouteKind::kTrivial, 0};
        }
        Route best{pi_prime_length(s, t), RouteKind::kStored, 0};
        for (std::size_t i = 0; i < cd_.size(); ++i) {
            const LexWeight cand = cd_to_[i].dist[s] + cd_from_[i].dist[t];
            if (cand < best.dist) {
                best = {cand, RouteKind::kThroughCD, i};
            }
        }
        for (std::size_t i = 0; i < h_roots_.size(); ++i) {
            const LexWeight cand = h_to_[i].dist[s] + h_from_[i].dist[t];
            if (cand < best.dist) {
                best = {cand, RouteKind::kThroughH, i};
            }
        }
        return best;
    }

    [[nodiscard]] bool in_q(VertexId s, VertexId t) const {
        const auto& q = q_sets_[s];
        return std::binary_search(q.begin(), q.end(), t);
    }

    [[nodiscard]] bool meets_affected(const PathRecord& p) const {
        for (VertexId v : p.vertices) {
            if (affected_mask_[v]) {
                return true;
            }
        }
        return false;
    }

    [[nodiscard]] std::size_t preprocessed_edge_count() const {
        if (!params_.degree_split) {
            return graph_.m();
        }
        const auto split = degree_split(graph_, delta_);
        return graph_.without(make_mask(graph_.n(), split)).m();
    }

    void refresh_prices(UpdateReport& report) {
        if (params_.weight_mode == WeightMode::kUnweighted) {
            prices_ = PriceFunction::zero(graph_.n());
            poisoned_ = false;
            return;
        }
        prices_ = feasible_price_function(graph_, &report.work);
        poisoned_ = !prices_.feasible();
    }

    void add_affected(VertexId v) {
        if (!affected_mask_[v]) {
            affected_mask_[v] = 1;
            affected_.insert(std::lower_bound(affected_.begin(), affected_.end(), v), v);
        }
    }

    void start_phase(UpdateReport& report) {
        const std::size_t n = graph_.n();
        report.phase_rebuilt = true;
        ++phases_started_;
        update_count_ = 0;
        affected_.clear();
        affected_mask_.assign(n, 0);
        split_.clear();
        if (params_.degree_split) {
            split_ = degree_split(graph_, delta_);
            g0_ = graph_.without(make_mask(n, split_));
            for (VertexId b : split_) {
                add_affected(b);
            }
        } else {
            g0_ = graph_;
        }
        const auto m0 = static_cast<std::int64_t>(g0_.m());
        tau_ = params_.tau ? std::max<std::int64_t>(*params_.tau, 2 * m0) : default_tau(n, g0_.m(), params_.weight_mode);
        phase_ = build_phase(g0_, std::min<std::uint32_t>(h_, static_cast<std::uint32_t>(std::max<std::size_t>(n, 1))),
                             tau_, params_.weight_mode, &report.work);
        h0_.clear();
        if (params_.mode == HittingMode::kDeterministic) {
            h0_ = build_h0(phase_.paths, h_);
        }
        recompute_update_state(report);
    }

    ShortestPathTree tree(VertexId root, Direction dir, const VertexMask& forbidden, WorkCounters* counters) const {
        if (params_.weight_mode == WeightMode::kUnweighted) {
            return bfs_tree(graph_, root, dir, forbidden, counters);
        }
        return dijkstra(graph_, root, dir, prices_, forbidden, counters);
    }

    void recompute_update_state(UpdateReport& report) {
        const std::size_t n = graph_.n();
        WorkCounters* work = &report.work;

        // C u D and its trees in G.
        cd_.clear();
        std::set_union(phase_.congested.begin(), phase_.congested.end(), affected_.begin(), affected_.end(),
                       std::back_inserter(cd_));
        cd_from_.clear();
        cd_to_.clear();
        for (VertexId v : cd_) {
            cd_from_.push_back(tree(v, Direction::kForward, {}, work));
            cd_to_.push_back(tree(v, Direction::kReverse, {}, work));
        }

        // Q_s for every source, read off the membership lists of D.
        q_sets_.assign(n, {});
        for (VertexId d : affected_) {
            for (std::uint32_t id : phase_.paths.members(d)) {
                const PathRecord& p = phase_.paths.path(id);
                q_sets_[p.s].push_back(p.t);
            }
        }
        std::uint64_t mass = 0;
        for (VertexId s = 0; s < n; ++s) {
            auto& q = q_sets_[s];
            std::sort(q.begin(), q.end());
            q.erase(std::unique(q.begin(), q.end()), q.end());
            for (VertexId t : q) {
                mass += g0_.in_degree(t);
            }
        }
        std::int64_t alpha_mass = 0;
        for (VertexId d : affected_) {
            alpha_mass += phase_.paths.alpha(d);
        }

        rebuild_.assign(n, {});
        std::size_t rebuilt = 0;
        for (VertexId s = 0; s < n; ++s) {
            if (!q_sets_[s].empty()) {
                rebuild_[s] = rebuild_short_paths(s, q_sets_[s], work);
                ++rebuilt;
            }
        }

        h1_.clear();
        hitting_ = compute_update_hitting_set(&h1_);

        // Trees from and to H \ (C u D) in G - (C u D).
        VertexMask cd_mask = make_mask(n, cd_);
        h_roots_.clear();
        for (VertexId v : hitting_) {
            if (!cd_mask[v]) {
                h_roots_.push_back(v);
            }
        }
        h_from_.clear();
        h_to_.clear();
        for (VertexId v : h_roots_) {
            h_from_.push_back(tree(v, Direction::kForward, cd_mask, work));
            h_to_.push_back(tree(v, Direction::kReverse, cd_mask, work));
        }

        report.qs_degree_mass = mass;
        report.alpha_mass = alpha_mass;
        report.tau = tau_;
        report.congested = phase_.congested.size();
        report.affected = affected_.size();
        report.hitting = hitting_.size();
        report.hitting_h0 = h0_.size();
        report.hitting_h1 = h1_.size();
        report.rebuilt_sources = rebuilt;
    }

    Params params_;
    DynamicGraph graph_;
    PriceFunction prices_;
    bool poisoned_ = false;
    std::uint32_t h_ = 2;
    std::uint32_t delta_ = 1;
    std::int64_t tau_ = 0;
    std::uint32_t update_count_ = 0;
    std::uint64_t update_serial_ = 0;
    std::uint64_t phases_started_ = 0;
    UpdateReport last_report_;

    // Phase state.
    DynamicGraph g0_;
    PhaseBuild phase_;
    std::vector<VertexId> split_;
    std::vector<VertexId> h0_;

    // Update state.
    std::vector<VertexId> affected_;
    VertexMask affected_mask_;
    std::vector<VertexId> cd_;
    std::vector<ShortestPathTree> cd_from_;
    std::vector<ShortestPathTree> cd_to_;
    std::vector<std::vector<VertexId>> q_sets_;
    std::vector<RebuildTree> rebuild_;
    std::vector<VertexId> hitting_;
    std::vector<VertexId> h1_;
    std::vector<VertexId> h_roots_;
    std::vector<ShortestPathTree> h_from_;
    std::vector<ShortestPathTree> h_to_;
};

} // namespace dapsp
