#pragma once

// Static rooted trees with root-path additive updates and global minimum
// queries. The topology never changes, so a heavy-path decomposition over a
// lazy range-add / range-min segment tree gives O(log^2 n) path updates and
// O(1) global minimum, the two operations the tree hitting-set algorithm
// needs from its per-level structures.

#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dapsp {

// A rooted tree over local node ids [0, size). parent[root] == -1.
// label[i] is the ground-set vertex stored at node i.
struct RootedTree {
    std::vector<std::uint32_t> label;
    std::vector<std::int32_t> parent;

    [[nodiscard]] std::size_t size() const { return parent.size(); }
    [[nodiscard]] bool empty() const { return parent.empty(); }

    [[nodiscard]] std::int32_t root() const {
        for (std::size_t i = 0; i < parent.size(); ++i) {
            if (parent[i] < 0) {
                return static_cast<std::int32_t>(i);
            }
        }
        return -1;
    }

    // Children lists plus a BFS order starting at the root. Throws if the
    // parent array is not a single rooted tree.
    void layout(std::vector<std::vector<std::int32_t>>& children, std::vector<std::int32_t>& order) const {
        const std::size_t n = size();
        children.assign(n, {});
        order.clear();
        std::int32_t r = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (parent[i] < 0) {
                if (r >= 0) {
                    throw std::invalid_argument("tree has more than one root");
                }
                r = static_cast<std::int32_t>(i);
            } else {
                if (static_cast<std::size_t>(parent[i]) >= n) {
                    throw std::invalid_argument("tree parent out of range");
                }
                children[parent[i]].push_back(static_cast<std::int32_t>(i));
            }
        }
        if (n == 0) {
            return;
        }
        if (r < 0) {
            throw std::invalid_argument("tree has no root");
        }
        order.reserve(n);
        order.push_back(r);
        for (std::size_t head = 0; head < order.size(); ++head) {
            for (std::int32_t c : children[order[head]]) {
                order.push_back(c);
            }
        }
        if (order.size() != n) {
            throw std::invalid_argument("tree parent array contains a cycle");
        }
    }
};

class HeavyPathDecomposition {
  public:
    explicit HeavyPathDecomposition(const RootedTree& tree) {
        const std::size_t n = tree.size();
        parent_ = tree.parent;
        head_.assign(n, 0);
        pos_.assign(n, 0);
        node_at_.assign(n, 0);
        if (n == 0) {
            return;
        }
        std::vector<std::vector<std::int32_t>> children;
        std::vector<std::int32_t> order;
        tree.layout(children, order);
        std::vector<std::int32_t> subtree(n, 1);
        std::vector<std::int32_t> heavy(n, -1);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const std::int32_t v = *it;
            std::int32_t best = 0;
            for (std::int32_t c : children[v]) {
                subtree[v] += subtree[c];
                if (subtree[c] > best) {
                    best = subtree[c];
                    heavy[v] = c;
                }
            }
        }
        // Iterative DFS laying each heavy chain out contiguously.
        std::int32_t next_pos = 0;
        std::vector<std::int32_t> stack{order.front()};
        head_[order.front()] = order.front();
        while (!stack.empty()) {
            std::int32_t v = stack.back();
            stack.pop_back();
            for (std::int32_t x = v; x >= 0; x = heavy[x]) {
                pos_[x] = next_pos;
                node_at_[next_pos] = x;
                ++next_pos;
                for (std::int32_t c : children[x]) {
                    if (c != heavy[x]) {
                        head_[c] = c;
                        stack.push_back(c);
                    }
                }
                if (heavy[x] >= 0) {
                    head_[heavy[x]] = head_[x];
                }
            }
        }
    }

    [[nodiscard]] std::size_t size() const { return parent_.size(); }
    [[nodiscard]] std::int32_t pos(std::int32_t v) const { return pos_[v]; }
    [[nodiscard]] std::int32_t node_at(std::int32_t p) const { return node_at_[p]; }

    // Calls f(lo, hi) for the O(log n) position ranges covering root -> v.
    template <class F>
    void for_each_root_path_range(std::int32_t v, F&& f) const {
        while (v >= 0) {
            const std::int32_t h = head_[v];
            f(pos_[h], pos_[v]);
            v = parent_[h];
        }
    }

  private:
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> head_;
    std::vector<std::int32_t> pos_;
    std::vector<std::int32_t> node_at_;
};

// Vertex weights on a static tree: add delta along a root path, read the
// global minimum, reset one vertex to INF. Values at or above kInfThreshold
// count as infinite; path additions never bring them back below it.
class WeightedPathTree {
  public:
    using Value = std::int64_t;
    static constexpr Value kInf = std::numeric_limits<Value>::max() / 4;
    static constexpr Value kInfThreshold = kInf / 2;

    WeightedPathTree(std::shared_ptr<const HeavyPathDecomposition> hld, const std::vector<Value>& initial)
        : hld_(std::move(hld)), n_(hld_->size()) {
        size_ = 1;
        while (size_ < n_) {
            size_ <<= 1;
        }
        min_.assign(2 * size_, kInf);
        arg_.assign(2 * size_, -1);
        lazy_.assign(2 * size_, 0);
        for (std::size_t p = 0; p < n_; ++p) {
            const std::int32_t v = hld_->node_at(static_cast<std::int32_t>(p));
            min_[size_ + p] = initial[v];
            arg_[size_ + p] = v;
        }
        for (std::size_t i = size_ - 1; i >= 1; --i) {
            pull(i);
        }
    }

    [[nodiscard]] bool empty() const { return n_ == 0; }

    // Add delta to every vertex on the path root -> v (inclusive).
    void add_root_path(std::int32_t v, Value delta) {
        hld_->for_each_root_path_range(v, [&](std::int32_t lo, std::int32_t hi) { add(1, 0, size_ - 1, lo, hi, delta); });
    }

    void reset_to_inf(std::int32_t v) { assign(1, 0, size_ - 1, hld_->pos(v), kInf); }

    // (value, vertex) of the minimum weight; vertex is -1 for an empty tree.
    [[nodiscard]] std::pair<Value, std::int32_t> global_min() const {
        if (n_ == 0) {
            return {kInf, -1};
        }
        return {min_[1], arg_[1]};
    }

    [[nodiscard]] Value value(std::int32_t v) const {
        std::size_t lo = 0;
        std::size_t hi = size_ - 1;
        std::size_t node = 1;
        const auto p = static_cast<std::size_t>(hld_->pos(v));
        Value acc = 0;
        while (lo != hi) {
            acc += lazy_[node];
            const std::size_t mid = (lo + hi) / 2;
            if (p <= mid) {
                node = 2 * node;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
        return min_[node] + acc;
    }

    [[nodiscard]] static bool is_inf(Value v) { return v >= kInfThreshold; }

  private:
    void pull(std::size_t i) {
        const std::size_t l = 2 * i;
        const std::size_t r = l + 1;
        // Ties resolve to the left child, i.e. the smaller position.
        if (min_[l] <= min_[r]) {
            min_[i] = min_[l] + lazy_[i];
            arg_[i] = arg_[l];
        } else {
            min_[i] = min_[r] + lazy_[i];
            arg_[i] = arg_[r];
        }
    }

    void add(std::size_t node, std::size_t lo, std::size_t hi, std::size_t ql, std::size_t qr, Value delta) {
        if (qr < lo || hi < ql) {
            return;
        }
        if (ql <= lo && hi <= qr) {
            min_[node] += delta;
            lazy_[node] += delta;
            return;
        }
        const std::size_t mid = (lo + hi) / 2;
        add(2 * node, lo, mid, ql, qr, delta);
        add(2 * node + 1, mid + 1, hi, ql, qr, delta);
        pull(node);
    }

    // Point assignment: the stored leaf value is the target minus the lazy
    // sum on its ancestors.
    void assign(std::size_t node, std::size_t lo, std::size_t hi, std::size_t p, Value target) {
        if (lo == hi) {
            min_[node] = target;
            return;
        }
        const std::size_t mid = (lo + hi) / 2;
        if (p <= mid) {
            assign(2 * node, lo, mid, p, target - lazy_[node]);
        } else {
            assign(2 * node + 1, mid + 1, hi, p, target - lazy_[node]);
        }
        pull(node);
    }

    std::shared_ptr<const HeavyPathDecomposition> hld_;
    std::size_t n_;
    std::size_t size_ = 1;
    std::vector<Value> min_;
    std::vector<std::int32_t> arg_;
    std::vector<Value> lazy_;
};

} // namespace dapsp
