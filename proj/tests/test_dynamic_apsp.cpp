#include <gtest/gtest.h>

#include <random>

#include "dapsp/dynamic_apsp.hpp"
#include "dapsp/harness/generator.hpp"
#include "support/oracles.hpp"
#include "support/replay.hpp"

using namespace dapsp;

namespace {

const std::vector<Edge> kG4{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 5}};

Params with(std::optional<std::uint32_t> h, std::optional<std::uint32_t> delta, std::optional<std::int64_t> tau) {
    Params p;
    p.h = h;
    p.delta = delta;
    p.tau = tau;
    return p;
}

harness::Trace apsp_trace(std::size_t n, std::size_t m, std::size_t ops, double neg, std::uint64_t seed,
                          std::size_t windows = 0, bool unweighted = false) {
    harness::GenOptions o;
    o.n = n;
    o.m = m;
    o.ops = ops;
    o.neg_fraction = neg;
    o.seed = seed;
    o.cycle_windows = windows;
    o.unweighted = unweighted;
    return harness::generate_trace(o);
}

} // namespace

TEST(DefaultParams, Formulas) {
    // n = 100: h = round(100^0.2) = 3, delta = 9, tau = m * round(100^0.4) = 6m.
    EXPECT_EQ(default_h(100, WeightMode::kWeighted), 3u);
    EXPECT_EQ(default_delta(100, WeightMode::kWeighted), 9u);
    EXPECT_EQ(default_tau(100, 300, WeightMode::kWeighted), 1800);
    // Unweighted, n = 256: h = delta = 4, tau = 16m.
    EXPECT_EQ(default_h(256, WeightMode::kUnweighted), 4u);
    EXPECT_EQ(default_delta(256, WeightMode::kUnweighted), 4u);
    EXPECT_EQ(default_tau(256, 10, WeightMode::kUnweighted), 160);
    // Tiny graphs still get h >= 2 and tau >= 2m.
    EXPECT_EQ(default_h(4, WeightMode::kWeighted), 2u);
    EXPECT_EQ(default_tau(4, 4, WeightMode::kWeighted), 8);
}

TEST(DynamicApsp, G4Queries) {
    DynamicApsp d(DynamicGraph::from_edges(4, kG4), {});
    EXPECT_FALSE(d.poisoned());
    EXPECT_EQ(d.distance(0, 3), LexWeight(3, 3));
    EXPECT_EQ(d.shortest_path(0, 3), (std::vector<VertexId>{0, 1, 2, 3}));
    EXPECT_EQ(d.distance(2, 2), LexWeight::zero());
    EXPECT_EQ(d.shortest_path(2, 2), std::vector<VertexId>{2});
    EXPECT_EQ(d.distance(3, 0), kInf);
    EXPECT_THROW((void)d.shortest_path(3, 0), NoPath);

    const auto report = d.vertex_update(1, {}, {});
    EXPECT_FALSE(report.poisoned);
    EXPECT_EQ(d.distance(0, 3), LexWeight(5, 1));
    EXPECT_EQ(d.shortest_path(0, 3), (std::vector<VertexId>{0, 3}));
    EXPECT_EQ(d.distance(0, 1), kInf);
}

TEST(DynamicApsp, EdgelessAndEmpty) {
    DynamicApsp e(DynamicGraph(5), {});
    for (VertexId s = 0; s < 5; ++s) {
        for (VertexId t = 0; t < 5; ++t) {
            EXPECT_EQ(e.distance(s, t), s == t ? LexWeight::zero() : kInf);
        }
    }
    DynamicApsp z(DynamicGraph(0), {});
    EXPECT_FALSE(z.poisoned());
    EXPECT_EQ(z.hitting_set().size(), 0u);
}

TEST(DynamicApsp, RebuildExampleOnG4) {
    // D = {2} after re-setting vertex 2 to its current edges; pi'_{0,3} must
    // avoid 2 and falls back to the direct edge.
    DynamicApsp d(DynamicGraph::from_edges(4, kG4), with(3, 4, 1000));
    const std::vector<Arc> out{{3, 1}};
    const std::vector<Arc> in{{1, 1}};
    const auto report = d.vertex_update(2, out, in);
    EXPECT_FALSE(report.phase_rebuilt);
    EXPECT_EQ(d.affected(), std::vector<VertexId>{2});
    EXPECT_EQ(d.q_set(0), (std::vector<VertexId>{2, 3}));
    EXPECT_EQ(d.pi_prime_length(0, 3), LexWeight(5, 1));
    EXPECT_EQ(d.expand_pi_prime(0, 3), (std::vector<VertexId>{0, 3}));
    EXPECT_EQ(d.pi_prime_length(0, 2), kInf);
    EXPECT_EQ(d.rebuild_tree(0).find(3)->kind, EdgeKind::kRaw);
    // The query still sees the path through 2 via the tree rooted at D.
    EXPECT_EQ(d.distance(0, 3), LexWeight(3, 3));
    // Q_0 = Q_1 = Q_2 = {2, 3}; in-degrees 1 and 2.
    EXPECT_EQ(report.qs_degree_mass, 9u);
    EXPECT_EQ(report.alpha_mass, 9);
}

TEST(DynamicApsp, UpdateAwayFromStoredPaths) {
    std::vector<Edge> edges = kG4;
    DynamicApsp d(DynamicGraph::from_edges(5, edges), with(3, 10, std::nullopt));
    d.vertex_update(4, {}, {});
    for (VertexId s = 0; s < 4; ++s) {
        EXPECT_TRUE(d.q_set(s).empty()) << s;
    }
    // Only the trivial stored path pi_{4,4} passes through 4.
    EXPECT_EQ(d.q_set(4), std::vector<VertexId>{4});
    EXPECT_EQ(d.distance(0, 3), LexWeight(3, 3));
}

TEST(DynamicApsp, NegativeCycleIsPoisoned) {
    const std::vector<Edge> cyc{{0, 1, -2}, {1, 0, 1}, {1, 2, 4}};
    DynamicApsp d(DynamicGraph::from_edges(3, cyc), {});
    EXPECT_TRUE(d.poisoned());
    EXPECT_THROW((void)d.distance(0, 2), QueryForbidden);
    EXPECT_THROW((void)d.shortest_path(0, 2), QueryForbidden);
    // Repair: vertex 1 loses its edge back to 0.
    const std::vector<Arc> out{{2, 4}};
    const std::vector<Arc> in{{0, -2}};
    const auto report = d.vertex_update(1, out, in);
    EXPECT_FALSE(report.poisoned);
    EXPECT_TRUE(report.phase_rebuilt);
    EXPECT_EQ(d.distance(0, 2), LexWeight(2, 2));
}

TEST(DynamicApsp, RejectsBadParameters) {
    const auto g = DynamicGraph::from_edges(4, kG4);
    EXPECT_THROW((void)DynamicApsp(g, with(std::nullopt, std::nullopt, 7)), ParameterError);
    EXPECT_THROW((void)DynamicApsp(g, with(0, std::nullopt, std::nullopt)), ParameterError);
    EXPECT_THROW((void)DynamicApsp(g, with(std::nullopt, 0, std::nullopt)), ParameterError);
    Params unweighted;
    unweighted.weight_mode = WeightMode::kUnweighted;
    const std::vector<Edge> two{{0, 1, 2}};
    const std::vector<Edge> one{{0, 1, 1}};
    EXPECT_THROW((void)DynamicApsp(DynamicGraph::from_edges(4, two), unweighted), ModeError);
    DynamicApsp ok(DynamicGraph::from_edges(4, one), unweighted);
    const std::vector<Arc> heavy{{1, 3}};
    EXPECT_THROW((void)ok.vertex_update(0, heavy, {}), ModeError);
}

TEST(DynamicApsp, PhaseRestartsEveryDeltaUpdates) {
    DynamicApsp d(DynamicGraph::from_edges(4, kG4), with(3, 3, std::nullopt));
    EXPECT_EQ(d.phases_started(), 1u);
    const std::vector<Arc> out{{3, 1}};
    const std::vector<Arc> in{{1, 1}};
    EXPECT_FALSE(d.vertex_update(2, out, in).phase_rebuilt);
    EXPECT_FALSE(d.vertex_update(2, out, in).phase_rebuilt);
    EXPECT_TRUE(d.vertex_update(2, out, in).phase_rebuilt);
    EXPECT_EQ(d.phases_started(), 2u);
    EXPECT_TRUE(d.affected().empty());
    EXPECT_EQ(d.update_count(), 0u);
}

TEST(DynamicApsp, HittingSetBeforeUpdatesIsH0) {
    std::mt19937_64 rng(8);
    const auto edges = oracle::random_feasible_edges(rng, 40, 120, 0.2);
    DynamicApsp d(DynamicGraph::from_edges(40, edges), with(6, std::nullopt, std::nullopt));
    EXPECT_EQ(d.hitting_set(), d.h0());
    EXPECT_TRUE(d.h1().empty());
}

TEST(DynamicApsp, ExplicitTauIsClampedAtLaterPhases) {
    // tau = 2m0 is legal at start; a later phase with more edges raises it.
    DynamicApsp d(DynamicGraph::from_edges(4, kG4), with(3, 1, 8));
    const std::vector<Arc> out{{0, 1}, {1, 1}, {3, 1}};
    const std::vector<Arc> in{{1, 1}};
    d.vertex_update(2, out, in);
    EXPECT_EQ(d.tau(), 2 * static_cast<std::int64_t>(d.graph().m()));
}

TEST(DynamicApsp, RandomTracesMatchOracle) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto trace = apsp_trace(30, 90, 150, seed % 2 ? 0.2 : 0.0, seed);
        for (const Params& p : {Params{}, with(4, 3, 180), with(6, 2, 180)}) {
            replay::Config cfg{p, true, true, true, true};
            const auto stats = replay::run(trace, cfg);
            ASSERT_TRUE(stats.ok()) << "seed " << seed << ": " << stats.first_failure;
            EXPECT_GT(stats.exact, 0u);
        }
    }
}

TEST(DynamicApsp, DegreeSplitMatchesOracle) {
    for (std::uint64_t seed = 11; seed <= 14; ++seed) {
        const auto trace = apsp_trace(25, 90, 120, 0.2, seed);
        Params p = with(4, 5, std::nullopt);
        p.degree_split = true;
        const auto stats = replay::run(trace, {p, true, true, true, true});
        ASSERT_TRUE(stats.ok()) << "seed " << seed << ": " << stats.first_failure;
    }
}

TEST(DynamicApsp, RandomizedModeMatchesOracle) {
    for (std::uint64_t seed = 21; seed <= 24; ++seed) {
        const auto trace = apsp_trace(30, 90, 150, 0.2, seed);
        Params p = with(4, 4, 180);
        p.mode = HittingMode::kRandomized;
        p.seed = seed;
        const auto stats = replay::run(trace, {p, false, true, false, true});
        ASSERT_TRUE(stats.ok()) << "seed " << seed << ": " << stats.first_failure;
    }
}

TEST(DynamicApsp, UnweightedMatchesOracle) {
    for (std::uint64_t seed = 31; seed <= 33; ++seed) {
        const auto trace = apsp_trace(40, 120, 150, 0.0, seed, 0, true);
        Params p;
        p.weight_mode = WeightMode::kUnweighted;
        const auto stats = replay::run(trace, {p, true, true, true, true});
        ASSERT_TRUE(stats.ok()) << "seed " << seed << ": " << stats.first_failure;
    }
}

TEST(DynamicApsp, NegativeCycleWindows) {
    const auto trace = apsp_trace(20, 60, 60, 0.2, 5, 3);
    const auto stats = replay::run(trace, {with(4, 3, std::nullopt), false, true, true, true});
    ASSERT_TRUE(stats.ok()) << stats.first_failure;
    EXPECT_GE(stats.forbidden, 3u);
}

TEST(DynamicApsp, Deterministic) {
    const auto trace = apsp_trace(30, 90, 80, 0.2, 9);
    auto run = [&] {
        DynamicApsp d(DynamicGraph::from_edges(trace.n, trace.setup), with(4, 5, std::nullopt));
        std::vector<std::size_t> sizes;
        for (const auto& op : trace.ops) {
            if (op.kind == harness::OpKind::kVset) {
                const auto r = d.vertex_update(op.a, op.out, op.in);
                sizes.push_back(r.hitting);
                sizes.push_back(r.work.edges_relaxed);
            }
        }
        sizes.insert(sizes.end(), d.hitting_set().begin(), d.hitting_set().end());
        return sizes;
    };
    EXPECT_EQ(run(), run());
}
