#pragma once

// Reproducible random traces.
//
// APSP traces draw a hidden potential phi: V -> [0, 5] and only emit edges
// with w(u, v) >= phi(u) - phi(v), so no cycle is ever negative. Negative
// edges go "uphill" (phi(u) < phi(v)). Optional negative-cycle windows
// break that rule on purpose for a few operations and then repair it.
//
// DAG traces fix a hidden topological order and only insert forward edges.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dapsp/hitting.hpp"
#include "dapsp/harness/trace.hpp"

namespace dapsp::harness {

struct GenOptions {
    Engine engine = Engine::kApsp;
    std::size_t n = 20;
    std::size_t m = 60;
    std::size_t ops = 200;
    Weight weight_lo = -5;
    Weight weight_hi = 50;
    double neg_fraction = 0.0;
    double update_fraction = 0.4; // apsp: vset share; dag: ins + del share
    bool unweighted = false;
    std::size_t cycle_windows = 0; // apsp only
    std::uint64_t seed = 1;
};

class TraceGenerator {
  public:
    explicit TraceGenerator(const GenOptions& opt) : opt_(opt), rng_(opt.seed) {
        if (opt.n == 0 && (opt.m > 0 || opt.ops > 0)) {
            throw std::invalid_argument("a trace with edges or operations needs n >= 1");
        }
        if (opt.m > opt.n * (opt.n > 0 ? opt.n - 1 : 0) / (opt.engine == Engine::kDag ? 2 : 1)) {
            throw std::invalid_argument("m exceeds the number of available vertex pairs");
        }
        if (opt.weight_lo > 0 || opt.weight_hi < 1 || opt.weight_lo <= -kMaxEdgeWeight ||
            opt.weight_hi >= kMaxEdgeWeight) {
            throw std::invalid_argument("weight range must contain [0, 1] and fit the supported range");
        }
        if (opt.neg_fraction < 0.0 || opt.neg_fraction > 1.0 || opt.update_fraction < 0.0 ||
            opt.update_fraction > 1.0) {
            throw std::invalid_argument("fractions must lie in [0, 1]");
        }
        if (opt.engine == Engine::kApsp && opt.cycle_windows > 0 && (opt.n < 3 || opt.unweighted)) {
            throw std::invalid_argument("negative-cycle windows need a weighted trace with n >= 3");
        }
    }

    Trace generate() {
        return opt_.engine == Engine::kApsp ? generate_apsp() : generate_dag();
    }

  private:
    std::uint64_t below(std::uint64_t bound) { return uniform_below(rng_, bound); }
    bool chance(double p) { return static_cast<double>(below(1'000'000)) < p * 1'000'000.0; }
    Weight in_range(Weight lo, Weight hi) { return lo + static_cast<Weight>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    VertexId other_than(VertexId v) {
        VertexId u = static_cast<VertexId>(below(opt_.n - 1));
        return u >= v ? u + 1 : u;
    }

    // Weight for (u, v) respecting the potential; negative with probability
    // neg_fraction when the direction allows it.
    Weight feasible_weight(VertexId u, VertexId v) {
        if (opt_.unweighted) {
            return 1;
        }
        const Weight floor = phi_[u] - phi_[v];
        if (floor < 0 && chance(opt_.neg_fraction)) {
            return in_range(std::max(opt_.weight_lo, floor), -1);
        }
        return in_range(std::max<Weight>(0, floor), opt_.weight_hi);
    }

    Trace generate_apsp() {
        const std::size_t n = opt_.n;
        Trace trace{Engine::kApsp, n, {}, {}};
        phi_.resize(n);
        for (auto& p : phi_) {
            p = opt_.unweighted ? 0 : in_range(0, std::min<Weight>(5, -opt_.weight_lo));
        }
        std::set<std::pair<VertexId, VertexId>> used;
        while (used.size() < opt_.m) {
            VertexId u = static_cast<VertexId>(below(n));
            VertexId v = other_than(u);
            // Bias towards uphill edges so negative weights actually occur.
            if (opt_.neg_fraction > 0 && phi_[u] > phi_[v] && chance(0.5)) {
                std::swap(u, v);
            }
            if (used.insert({u, v}).second) {
                trace.setup.push_back({u, v, feasible_weight(u, v)});
            }
        }
        std::sort(trace.setup.begin(), trace.setup.end());

        // Spread the negative-cycle windows evenly over the op sequence.
        std::vector<std::size_t> window_at;
        for (std::size_t w = 0; w < opt_.cycle_windows; ++w) {
            window_at.push_back((w + 1) * opt_.ops / (opt_.cycle_windows + 1));
        }
        const std::size_t avg_degree = std::max<std::size_t>(1, (opt_.m + n / 2) / std::max<std::size_t>(n, 1));
        std::size_t next_window = 0;
        while (trace.ops.size() < opt_.ops) {
            if (next_window < window_at.size() && trace.ops.size() >= window_at[next_window]) {
                ++next_window;
                emit_cycle_window(trace, avg_degree);
                continue;
            }
            if (chance(opt_.update_fraction)) {
                const auto v = static_cast<VertexId>(below(n));
                trace.ops.push_back(random_vset(v, avg_degree, kNoVertex, kNoVertex));
            } else {
                trace.ops.push_back(random_query());
            }
        }
        trace.ops.resize(opt_.ops);
        return trace;
    }

    TraceOp random_query() {
        TraceOp op;
        op.kind = chance(0.5) ? OpKind::kDist : OpKind::kPath;
        op.a = static_cast<VertexId>(below(opt_.n));
        op.b = static_cast<VertexId>(below(opt_.n));
        return op;
    }

    // Replace all edges of v; neighbors avoid the optional excluded vertices.
    TraceOp random_vset(VertexId v, std::size_t avg_degree, VertexId skip_a, VertexId skip_b) {
        TraceOp op;
        op.kind = OpKind::kVset;
        op.a = v;
        if (opt_.n < 2) {
            return op;
        }
        auto pick = [&](bool outgoing) {
            std::vector<Arc> arcs;
            std::set<VertexId> seen;
            const std::size_t k = below(2 * avg_degree + 1);
            for (std::size_t tries = 0; arcs.size() < k && tries < 4 * k + 8; ++tries) {
                const VertexId u = other_than(v);
                if (u == skip_a || u == skip_b || !seen.insert(u).second) {
                    continue;
                }
                arcs.push_back({u, outgoing ? feasible_weight(v, u) : feasible_weight(u, v)});
            }
            return arcs;
        };
        op.out = pick(true);
        op.in = pick(false);
        return op;
    }

    // vset v with v -> u (-5) and u -> v (1): a cycle of length -4. A few
    // queries and an unrelated update follow; then v is reset to feasible
    // edges and queries resume.
    void emit_cycle_window(Trace& trace, std::size_t avg_degree) {
        const auto v = static_cast<VertexId>(below(opt_.n));
        const VertexId u = other_than(v);
        TraceOp poison = random_vset(v, avg_degree, u, u);
        poison.out.push_back({u, -5});
        poison.in.push_back({u, 1});
        std::sort(poison.out.begin(), poison.out.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
        std::sort(poison.in.begin(), poison.in.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
        trace.ops.push_back(std::move(poison));
        trace.ops.push_back(random_query());
        VertexId w = other_than(v);
        while (w == u) {
            w = other_than(v);
        }
        trace.ops.push_back(random_vset(w, avg_degree, u, v));
        trace.ops.push_back(random_query());
        trace.ops.push_back(random_vset(v, avg_degree, kNoVertex, kNoVertex));
        trace.ops.push_back(random_query());
    }

    Trace generate_dag() {
        const std::size_t n = opt_.n;
        Trace trace{Engine::kDag, n, {}, {}};
        std::vector<VertexId> rank(n);
        for (VertexId v = 0; v < n; ++v) {
            rank[v] = v;
        }
        for (std::size_t i = n; i > 1; --i) {
            std::swap(rank[i - 1], rank[below(i)]);
        }
        std::set<std::pair<VertexId, VertexId>> edges;
        auto forward_pair = [&]() {
            VertexId a = static_cast<VertexId>(below(n));
            VertexId b = other_than(a);
            if (rank[a] > rank[b]) {
                std::swap(a, b);
            }
            return std::make_pair(a, b);
        };
        while (edges.size() < opt_.m) {
            edges.insert(forward_pair());
        }
        for (const auto& [a, b] : edges) {
            trace.setup.push_back({a, b, 1});
        }
        const std::size_t max_edges = n * (n - 1) / 2;
        while (trace.ops.size() < opt_.ops) {
            TraceOp op;
            if (n >= 2 && chance(opt_.update_fraction)) {
                const bool insert = edges.empty() || (edges.size() < max_edges && chance(0.55));
                if (insert) {
                    std::pair<VertexId, VertexId> e = forward_pair();
                    while (edges.count(e)) {
                        e = forward_pair();
                    }
                    edges.insert(e);
                    op = {OpKind::kInsert, e.first, e.second, {}, {}, 0};
                } else {
                    auto it = edges.begin();
                    std::advance(it, static_cast<std::ptrdiff_t>(below(edges.size())));
                    op = {OpKind::kDelete, it->first, it->second, {}, {}, 0};
                    edges.erase(it);
                }
            } else {
                op = {OpKind::kReach, static_cast<VertexId>(below(n)), static_cast<VertexId>(below(n)), {}, {}, 0};
            }
            trace.ops.push_back(std::move(op));
        }
        return trace;
    }

    GenOptions opt_;
    std::mt19937_64 rng_;
    std::vector<Weight> phi_;
};

inline Trace generate_trace(const GenOptions& opt) { return TraceGenerator(opt).generate(); }

} // namespace dapsp::harness
