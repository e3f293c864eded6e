#pragma once

// Hitting sets for the long-path part of the APSP structure:
//  * uniform sampling (Monte Carlo),
//  * the folklore greedy over an explicit set family,
//  * a near-linear deterministic algorithm hitting every k-hop root path in
//    a family of rooted trees that share one ground set.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dapsp/errors.hpp"
#include "dapsp/lex_weight.hpp"
#include "dapsp/path_tree.hpp"

namespace dapsp {

struct SetFamily {
    std::size_t ground_size = 0;
    std::vector<std::vector<VertexId>> sets;
};

struct TreeFamily {
    std::size_t ground_size = 0;
    std::vector<RootedTree> trees;

    [[nodiscard]] std::size_t total_size() const {
        std::size_t total = 0;
        for (const auto& t : trees) {
            total += t.size();
        }
        return total;
    }
};

// Uniform integer in [0, bound) that does not depend on the standard
// library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// ceil(c * (n/h) * ln n) uniform samples with replacement, deduplicated and
// sorted. Deterministic for a fixed seed.
inline std::vector<VertexId> random_hitting_set(std::size_t n, std::size_t h, double c, std::uint64_t seed) {
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {0};
    }
    if (h < 2 || h > n) {
        throw ParameterError("random_hitting_set: h must lie in [2, n]");
    }
    if (c < 1.0) {
        throw ParameterError("random_hitting_set: c must be at least 1");
    }
    const auto samples =
        static_cast<std::size_t>(std::ceil(c * (static_cast<double>(n) / static_cast<double>(h)) * std::log(n)));
    std::mt19937_64 rng(seed);
    std::vector<VertexId> result;
    result.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        result.push_back(static_cast<VertexId>(uniform_below(rng, n)));
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

// Does `hitting` intersect every set? `hitting` must be sorted.
inline bool hits_all(const std::vector<std::vector<VertexId>>& sets, const std::vector<VertexId>& hitting) {
    for (const auto& s : sets) {
        bool hit = false;
        for (VertexId v : s) {
            if (std::binary_search(hitting.begin(), hitting.end(), v)) {
                hit = true;
                break;
            }
        }
        if (!hit) {
            return false;
        }
    }
    return true;
}

// Bound on the greedy result: ceil((n/k) ln max(|Y|, 2)) + 1.
inline std::size_t greedy_size_bound(std::size_t n, std::size_t k, std::size_t family_size) {
    const double sets = std::max<double>(2.0, static_cast<double>(family_size));
    return static_cast<std::size_t>(std::ceil(static_cast<double>(n) / static_cast<double>(k) * std::log(sets))) + 1;
}

// Greedy: repeatedly take the element contained in the most sets not yet
// hit (smallest id on ties). Every set must have at least k distinct
// elements.
inline std::vector<VertexId> greedy_hitting_set(const SetFamily& family, std::size_t k) {
    if (k < 1) {
        throw std::invalid_argument("greedy_hitting_set: k must be at least 1");
    }
    const std::size_t n = family.ground_size;
    std::vector<std::vector<VertexId>> sets(family.sets.size());
    std::vector<std::vector<std::uint32_t>> containing(n);
    for (std::size_t i = 0; i < family.sets.size(); ++i) {
        sets[i] = family.sets[i];
        std::sort(sets[i].begin(), sets[i].end());
        sets[i].erase(std::unique(sets[i].begin(), sets[i].end()), sets[i].end());
        if (sets[i].size() < k) {
            throw std::invalid_argument("greedy_hitting_set: set " + std::to_string(i) + " has " +
                                        std::to_string(sets[i].size()) + " < k = " + std::to_string(k) +
                                        " elements");
        }
        for (VertexId v : sets[i]) {
            if (v >= n) {
                throw std::invalid_argument("greedy_hitting_set: element out of range in set " + std::to_string(i));
            }
            containing[v].push_back(static_cast<std::uint32_t>(i));
        }
    }
    std::vector<std::size_t> count(n);
    // Ordered by (count desc, id asc).
    std::set<std::pair<std::int64_t, VertexId>> queue;
    for (VertexId v = 0; v < n; ++v) {
        count[v] = containing[v].size();
        if (count[v] > 0) {
            queue.insert({-static_cast<std::int64_t>(count[v]), v});
        }
    }
    std::vector<std::uint8_t> hit(sets.size(), 0);
    std::vector<VertexId> result;
    while (!queue.empty()) {
        const VertexId z = queue.begin()->second;
        queue.erase(queue.begin());
        result.push_back(z);
        for (std::uint32_t s : containing[z]) {
            if (hit[s]) {
                continue;
            }
            hit[s] = 1;
            for (VertexId v : sets[s]) {
                if (v == z || count[v] == 0) {
                    continue;
                }
                queue.erase({-static_cast<std::int64_t>(count[v]), v});
                if (--count[v] > 0) {
                    queue.insert({-static_cast<std::int64_t>(count[v]), v});
                }
            }
        }
        count[z] = 0;
    }
    std::sort(result.begin(), result.end());
    return result;
}

// Drop every node that has no descendant (inclusive) at depth exactly k.
// Afterwards all leaves sit at depth k and the k-hop root paths are
// unchanged. Node labels are preserved; local ids are renumbered in BFS
// order, so the root becomes node 0.
inline RootedTree prune_to_depth(const RootedTree& tree, std::uint32_t k) {
    RootedTree result;
    if (tree.empty()) {
        return result;
    }
    std::vector<std::vector<std::int32_t>> children;
    std::vector<std::int32_t> order;
    tree.layout(children, order);
    std::vector<std::uint32_t> depth(tree.size(), 0);
    for (std::int32_t v : order) {
        if (tree.parent[v] >= 0) {
            depth[v] = depth[tree.parent[v]] + 1;
        }
    }
    std::vector<std::uint8_t> keep(tree.size(), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::int32_t v = *it;
        if (depth[v] == k) {
            keep[v] = 1;
        }
        if (keep[v] && tree.parent[v] >= 0) {
            keep[tree.parent[v]] = 1;
        }
    }
    std::vector<std::int32_t> remap(tree.size(), -1);
    for (std::int32_t v : order) {
        if (!keep[v]) {
            continue;
        }
        remap[v] = static_cast<std::int32_t>(result.size());
        result.label.push_back(tree.label[v]);
        result.parent.push_back(tree.parent[v] >= 0 ? remap[tree.parent[v]] : -1);
    }
    return result;
}

// Size bound for tree_hitting_set: ceil((2n/(k+1)) (ln max(L0, 2) + 1)) + 1.
inline std::size_t tree_hitting_size_bound(std::size_t n, std::size_t k, std::size_t leaves) {
    const double l = std::max<double>(2.0, static_cast<double>(leaves));
    return static_cast<std::size_t>(
               std::ceil(2.0 * static_cast<double>(n) / static_cast<double>(k + 1) * (std::log(l) + 1.0))) +
           1;
}

struct TreeHittingOptions {
    // Recompute the exact hit counts at every pick and check the counter
    // and progress guarantees. Quadratic; meant for small instances.
    bool audit = false;
};

struct TreeHittingStats {
    std::size_t initial_leaves = 0; // L0: depth-k leaves after pruning
    std::size_t picks = 0;
    std::size_t counter_violations = 0;  // c_z > D_z or c_z <= D_z / 2
    std::size_t progress_violations = 0; // D_z < L (k+1) / (2 n')
    std::size_t level_violations = 0;    // a level structure disagrees with d_{v,T}
};

namespace detail {

// One pruned tree with its level structures S_{T,0..levels-1}.
struct HittingTree {
    RootedTree tree;
    std::vector<std::vector<std::int32_t>> children;
    std::vector<std::uint32_t> depth;
    std::vector<std::uint8_t> visited;
    std::vector<std::int64_t> exact; // audit only: d_{v,T}
    std::vector<std::int32_t> level; // v in V_{T,level[v]}; -1 once d = 0
    std::vector<WeightedPathTree> structures;
};

inline std::int32_t floor_log2(std::int64_t x) {
    std::int32_t r = -1;
    while (x > 0) {
        x >>= 1;
        ++r;
    }
    return r;
}

} // namespace detail

// Deterministic hitting set for all k-hop root paths of every tree.
//
// Each ground vertex v keeps a counter c_v = sum over trees T of 2^i where
// d_{v,T} (the number of unhit root-leaf paths of T through v) lies in
// [2^i, 2^{i+1}). Hence D_v >= c_v > D_v / 2 for D_v = sum_T d_{v,T}, and
// picking the largest c_v always removes at least L (k+1) / (2 n') of the L
// remaining paths. Per tree, S_{T,i} holds d_{v,T} for vertices with
// d_{v,T} >= 2^i and INF otherwise.
inline std::vector<VertexId> tree_hitting_set(const TreeFamily& family, std::uint32_t k,
                                              const TreeHittingOptions& options = {},
                                              TreeHittingStats* stats = nullptr) {
    using detail::HittingTree;
    const std::size_t n = family.ground_size;
    TreeHittingStats local_stats;
    TreeHittingStats& st = stats ? *stats : local_stats;
    st = {};

    std::vector<HittingTree> trees;
    // occurrences[v] = (tree index, node) pairs.
    std::vector<std::vector<std::pair<std::uint32_t, std::int32_t>>> occurrences(n);
    std::vector<std::int64_t> counter(n, 0);
    std::size_t remaining = 0;

    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t tree_serial = 0;
    for (const RootedTree& input : family.trees) {
        ++tree_serial;
        for (VertexId label : input.label) {
            if (label >= n) {
                throw std::invalid_argument("tree_hitting_set: tree label out of range");
            }
            if (stamp[label] == tree_serial) {
                throw std::invalid_argument("tree_hitting_set: vertex " + std::to_string(label) +
                                            " appears twice in one tree");
            }
            stamp[label] = tree_serial;
        }
        RootedTree pruned = prune_to_depth(input, k);
        if (pruned.empty()) {
            continue;
        }
        HittingTree ht;
        ht.tree = std::move(pruned);
        const std::size_t size = ht.tree.size();
        std::vector<std::int32_t> order;
        ht.tree.layout(ht.children, order);
        ht.depth.assign(size, 0);
        for (std::int32_t v : order) {
            if (ht.tree.parent[v] >= 0) {
                ht.depth[v] = ht.depth[ht.tree.parent[v]] + 1;
            }
        }
        std::vector<std::int64_t> d(size, 0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const std::int32_t v = *it;
            if (ht.depth[v] == k) {
                d[v] = 1;
            }
            if (ht.tree.parent[v] >= 0) {
                d[ht.tree.parent[v]] += d[v];
            }
        }
        remaining += static_cast<std::size_t>(d[0]);
        const std::int32_t levels = detail::floor_log2(d[0]) + 1;
        auto hld = std::make_shared<const HeavyPathDecomposition>(ht.tree);
        ht.structures.reserve(levels);
        std::vector<WeightedPathTree::Value> init(size);
        for (std::int32_t i = 0; i < levels; ++i) {
            const std::int64_t threshold = std::int64_t{1} << i;
            for (std::size_t v = 0; v < size; ++v) {
                init[v] = d[v] >= threshold ? d[v] : WeightedPathTree::kInf;
            }
            ht.structures.emplace_back(hld, init);
        }
        ht.level.assign(size, 0);
        ht.visited.assign(size, 0);
        const auto tree_index = static_cast<std::uint32_t>(trees.size());
        for (std::size_t v = 0; v < size; ++v) {
            const VertexId label = ht.tree.label[v];
            occurrences[label].push_back({tree_index, static_cast<std::int32_t>(v)});
            ht.level[v] = detail::floor_log2(d[v]);
            counter[label] += std::int64_t{1} << ht.level[v];
        }
        if (options.audit) {
            ht.exact = d;
        }
        trees.push_back(std::move(ht));
    }
    st.initial_leaves = remaining;

    std::set<std::pair<std::int64_t, VertexId>> queue; // (-c_v, v)
    for (VertexId v = 0; v < n; ++v) {
        if (counter[v] > 0) {
            queue.insert({-counter[v], v});
        }
    }
    auto change_counter = [&](VertexId v, std::int64_t delta) {
        if (counter[v] > 0) {
            queue.erase({-counter[v], v});
        }
        counter[v] += delta;
        if (counter[v] > 0) {
            queue.insert({-counter[v], v});
        }
    };

    std::vector<VertexId> result;
    std::vector<std::int32_t> stack;
    std::vector<std::int32_t> new_leaves;
    std::vector<std::int32_t> dropped;
    while (remaining > 0) {
        if (queue.empty()) {
            throw std::logic_error("tree_hitting_set: paths remain but every counter is zero");
        }
        const VertexId z = queue.begin()->second;

        if (options.audit) {
            std::vector<std::int64_t> exact_total(n, 0);
            for (const HittingTree& ht : trees) {
                for (std::size_t v = 0; v < ht.tree.size(); ++v) {
                    exact_total[ht.tree.label[v]] += ht.exact[v];
                }
            }
            for (VertexId v = 0; v < n; ++v) {
                if (counter[v] > exact_total[v] || 2 * counter[v] <= exact_total[v]) {
                    if (counter[v] != 0 || exact_total[v] != 0) {
                        ++st.counter_violations;
                    }
                }
            }
            const double unchosen = static_cast<double>(n - result.size());
            if (static_cast<double>(exact_total[z]) <
                static_cast<double>(remaining) * static_cast<double>(k + 1) / (2.0 * unchosen)) {
                ++st.progress_violations;
            }
        }

        result.push_back(z);
        ++st.picks;
        for (auto [tree_index, node] : occurrences[z]) {
            HittingTree& ht = trees[tree_index];
            if (ht.visited[node]) {
                continue;
            }
            // Every unvisited leaf below z is an unhit path.
            new_leaves.clear();
            stack.assign(1, node);
            while (!stack.empty()) {
                const std::int32_t v = stack.back();
                stack.pop_back();
                if (ht.visited[v]) {
                    continue;
                }
                ht.visited[v] = 1;
                if (ht.depth[v] == k) {
                    new_leaves.push_back(v);
                }
                for (std::int32_t c : ht.children[v]) {
                    stack.push_back(c);
                }
            }
            remaining -= new_leaves.size();
            if (options.audit) {
                for (std::int32_t y : new_leaves) {
                    for (std::int32_t x = y; x >= 0; x = ht.tree.parent[x]) {
                        --ht.exact[x];
                    }
                }
            }
            dropped.clear();
            for (std::size_t i = 0; i < ht.structures.size(); ++i) {
                WeightedPathTree& s = ht.structures[i];
                for (std::int32_t y : new_leaves) {
                    s.add_root_path(y, -1);
                }
                const std::int64_t threshold = std::int64_t{1} << i;
                for (;;) {
                    auto [value, x] = s.global_min();
                    if (x < 0 || WeightedPathTree::is_inf(value) || value >= threshold) {
                        break;
                    }
                    s.reset_to_inf(x);
                    // x no longer reaches level i: its level is at most i-1.
                    if (ht.level[x] >= static_cast<std::int32_t>(i)) {
                        const VertexId label = ht.tree.label[x];
                        std::int64_t delta = -(std::int64_t{1} << ht.level[x]);
                        ht.level[x] = static_cast<std::int32_t>(i) - 1;
                        if (ht.level[x] >= 0) {
                            delta += std::int64_t{1} << ht.level[x];
                        }
                        change_counter(label, delta);
                    }
                }
            }
        }
        if (counter[z] != 0) {
            throw std::logic_error("tree_hitting_set: picked vertex still hits unhit paths");
        }

        if (options.audit) {
            for (const HittingTree& ht : trees) {
                for (std::size_t i = 0; i < ht.structures.size(); ++i) {
                    const std::int64_t threshold = std::int64_t{1} << i;
                    for (std::size_t v = 0; v < ht.tree.size(); ++v) {
                        const auto value = ht.structures[i].value(static_cast<std::int32_t>(v));
                        const bool finite = !WeightedPathTree::is_inf(value);
                        const bool should = ht.exact[v] >= threshold;
                        if (finite != should || (finite && value != ht.exact[v])) {
                            ++st.level_violations;
                        }
                    }
                }
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

// Brute-force coverage check shared by tests: every depth-k node of every
// tree has a hitting ancestor (inclusive). `hitting` must be sorted.
inline bool hits_all_root_paths(const TreeFamily& family, std::uint32_t k, const std::vector<VertexId>& hitting) {
    for (const RootedTree& tree : family.trees) {
        std::vector<std::vector<std::int32_t>> children;
        std::vector<std::int32_t> order;
        tree.layout(children, order);
        std::vector<std::uint32_t> depth(tree.size(), 0);
        for (std::int32_t v : order) {
            if (tree.parent[v] >= 0) {
                depth[v] = depth[tree.parent[v]] + 1;
            }
        }
        for (std::size_t y = 0; y < tree.size(); ++y) {
            if (depth[y] != k) {
                continue;
            }
            bool hit = false;
            for (std::int32_t x = static_cast<std::int32_t>(y); x >= 0 && !hit; x = tree.parent[x]) {
                hit = std::binary_search(hitting.begin(), hitting.end(), tree.label[x]);
            }
            if (!hit) {
                return false;
            }
        }
    }
    return true;
}

} // namespace dapsp
