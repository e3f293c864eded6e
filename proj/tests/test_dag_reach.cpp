#include <gtest/gtest.h>

#include <random>

#include "dapsp/dag_reach.hpp"
#include "dapsp/harness/generator.hpp"
#include "dapsp/mod_field.hpp"
#include "support/oracles.hpp"

using namespace dapsp;

namespace {

DagGraph dag_of(std::size_t n, const std::vector<Edge>& edges) {
    DagGraph g(n);
    for (const Edge& e : edges) {
        g.insert(e.from, e.to);
    }
    return g;
}

std::vector<Edge> edges_of(const DagGraph& g) {
    std::vector<Edge> out;
    for (VertexId u = 0; u < g.n(); ++u) {
        for (VertexId v : g.out(u)) {
            out.push_back({u, v, 1});
        }
    }
    return out;
}

} // namespace

TEST(PrimeField, Primality) {
    EXPECT_TRUE(is_prime(kDefaultPrime));
    EXPECT_EQ(kDefaultPrime, (1ULL << 50) - 27);
    EXPECT_FALSE(is_prime((1ULL << 50) - 25));
    EXPECT_FALSE(is_prime(1));
    EXPECT_TRUE(is_prime(2));
    EXPECT_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_TRUE(is_prime(1000000007ULL));
    EXPECT_THROW(PrimeField(15), ParameterError);
    EXPECT_THROW(PrimeField((1ULL << 62) + 135), ParameterError);
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        const PrimeField f = PrimeField::from_seed(seed);
        EXPECT_TRUE(is_prime(f.p()));
        EXPECT_GE(f.p(), 1ULL << 49);
        EXPECT_LT(f.p(), 1ULL << 50);
        EXPECT_EQ(f, PrimeField::from_seed(seed));
    }
}

TEST(PrimeField, Arithmetic) {
    const PrimeField f(13);
    EXPECT_EQ(f.add(7, 9), 3u);
    EXPECT_EQ(f.sub(2, 5), 10u);
    EXPECT_EQ(f.neg(0), 0u);
    EXPECT_EQ(f.mul(f.inv(5), 5), 1u);
    EXPECT_EQ(f.from_int(-1), 12u);
    const PrimeField big;
    const std::uint64_t x = big.p() - 2;
    EXPECT_EQ(big.mul(x, x), 4u);
    EXPECT_THROW((void)big.inv(0), std::domain_error);
}

TEST(DagPathCounts, Examples) {
    const PrimeField f;
    const ModMatrix empty = dag_path_counts(DagGraph(4), f);
    EXPECT_EQ(empty, ModMatrix::identity(4));

    const std::vector<Edge> diamond{{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}};
    const ModMatrix c = dag_path_counts(dag_of(4, diamond), f);
    EXPECT_EQ(c(0, 3), 2u);
    EXPECT_EQ(c(3, 0), 0u);
    EXPECT_EQ(c(1, 2), 0u);

    const std::vector<Edge> path{{0, 1, 1}, {1, 2, 1}};
    const ModMatrix p = dag_path_counts(dag_of(3, path), f);
    EXPECT_EQ(p(0, 2), 1u);
    EXPECT_EQ(p(2, 0), 0u);

    const DagGraph cyc = [] {
        DagGraph g(2);
        g.insert(0, 1);
        g.insert(1, 0);
        return g;
    }();
    EXPECT_THROW((void)dag_path_counts(cyc, f), NotADag);
}

TEST(DagPathCounts, InverseOfIMinusA) {
    std::mt19937_64 rng(3);
    const PrimeField f;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial;
        const auto edges = oracle::random_dag_edges(rng, n, 0.3);
        const DagGraph g = dag_of(n, edges);
        const ModMatrix inv = dag_path_counts(g, f);
        EXPECT_EQ(multiply(inv, g.identity_minus_adjacency(f), f), ModMatrix::identity(n));
        EXPECT_EQ(gauss_inverse(g.identity_minus_adjacency(f), f), inv);
        const auto want = oracle::path_counts_memo(n, edges, f.p());
        for (VertexId s = 0; s < n; ++s) {
            for (VertexId t = 0; t < n; ++t) {
                ASSERT_EQ(inv(s, t), want[s][t]);
            }
        }
    }
}

TEST(DagPathCounts, SmallGraphsAgainstEnumeration) {
    std::mt19937_64 rng(12);
    const PrimeField f;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 9;
        const auto edges = oracle::random_dag_edges(rng, n, 0.5);
        const ModMatrix c = dag_path_counts(dag_of(n, edges), f);
        const auto want = oracle::enumerate_path_counts(n, edges, f.p());
        for (VertexId s = 0; s < n; ++s) {
            for (VertexId t = 0; t < n; ++t) {
                ASSERT_EQ(c(s, t), want[s][t]);
            }
        }
    }
}

TEST(GaussInverse, SingularThrows) {
    const PrimeField f(7);
    ModMatrix a(2, 2);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 2;
    a(1, 1) = 4;
    EXPECT_THROW((void)gauss_inverse(a, f), std::domain_error);
}

TEST(DagReach, RejectsBadUpdates) {
    DagReach d(DagGraph(3), 4);
    EXPECT_THROW(d.edge_update(EdgeOp::kInsert, 1, 1), NotADag);
    d.edge_update(EdgeOp::kInsert, 0, 1);
    d.edge_update(EdgeOp::kInsert, 1, 2);
    EXPECT_THROW(d.edge_update(EdgeOp::kInsert, 2, 0), NotADag);
    EXPECT_THROW(d.edge_update(EdgeOp::kInsert, 0, 1), MalformedUpdate);
    EXPECT_THROW(d.edge_update(EdgeOp::kDelete, 0, 2), MalformedUpdate);
    EXPECT_THROW(d.edge_update(EdgeOp::kInsert, 0, 3), MalformedUpdate);
    EXPECT_THROW(DagReach(DagGraph(2), 0), ParameterError);
    // Rejected updates leave the state unchanged.
    EXPECT_EQ(d.graph().m(), 2u);
    EXPECT_TRUE(d.reach_query(0, 2));
    EXPECT_FALSE(d.reach_query(2, 0));
}

TEST(DagReach, InsertThenDeleteRestoresQueries) {
    std::mt19937_64 rng(5);
    const std::size_t n = 12;
    const auto edges = oracle::random_dag_edges(rng, n, 0.2);
    DagReach d(dag_of(n, edges), 100);
    std::vector<std::vector<std::uint64_t>> before(n, std::vector<std::uint64_t>(n));
    for (VertexId s = 0; s < n; ++s) {
        for (VertexId t = 0; t < n; ++t) {
            before[s][t] = d.inverse_entry(s, t);
        }
    }
    // A forward edge in some topological order of the current graph.
    const auto order = d.graph().topological_order();
    VertexId i = order[0];
    VertexId j = order[n - 1];
    if (d.graph().has_edge(i, j)) {
        d.edge_update(EdgeOp::kDelete, i, j);
        d.edge_update(EdgeOp::kInsert, i, j);
    } else {
        d.edge_update(EdgeOp::kInsert, i, j);
        EXPECT_EQ(d.phase().rank(), 1u);
        d.edge_update(EdgeOp::kDelete, i, j);
    }
    EXPECT_EQ(d.phase().rank(), 0u);
    for (VertexId s = 0; s < n; ++s) {
        for (VertexId t = 0; t < n; ++t) {
            EXPECT_EQ(d.inverse_entry(s, t), before[s][t]);
        }
    }
}

TEST(DagReach, PhaseRestartsAfterTOps) {
    DagReach d(DagGraph(5), 3);
    d.edge_update(EdgeOp::kInsert, 0, 1);
    d.edge_update(EdgeOp::kInsert, 1, 2);
    EXPECT_EQ(d.phases_started(), 1u);
    EXPECT_EQ(d.phase().rank(), 2u);
    d.edge_update(EdgeOp::kInsert, 2, 3);
    EXPECT_EQ(d.phases_started(), 2u);
    EXPECT_EQ(d.ops_in_phase(), 0u);
    EXPECT_EQ(d.phase().rank(), 0u);
    EXPECT_EQ(d.inverse_entry(0, 3), 1u);
}

TEST(DagReach, RandomTracesMatchOracles) {
    for (std::uint32_t t : {1u, 4u, 16u}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            harness::GenOptions o;
            o.engine = harness::Engine::kDag;
            o.n = 25;
            o.m = 40;
            o.ops = 200;
            o.update_fraction = 0.6;
            o.seed = seed;
            const auto trace = harness::generate_trace(o);
            const PrimeField f = seed == 3 ? PrimeField::from_seed(seed) : PrimeField();
            DagReach d(dag_of(trace.n, trace.setup), t, f);
            for (const auto& op : trace.ops) {
                if (op.kind == harness::OpKind::kReach) {
                    const auto r = oracle::reachability(trace.n, edges_of(d.graph()));
                    ASSERT_EQ(d.reach_query(op.a, op.b), r[op.a][op.b] != 0) << "line " << op.line;
                    continue;
                }
                d.edge_update(op.kind == harness::OpKind::kInsert ? EdgeOp::kInsert : EdgeOp::kDelete, op.a, op.b);
                const auto want = oracle::path_counts_memo(trace.n, edges_of(d.graph()), f.p());
                for (VertexId s = 0; s < trace.n; ++s) {
                    for (VertexId u = 0; u < trace.n; ++u) {
                        ASSERT_EQ(d.inverse_entry(s, u), want[s][u]) << "t=" << t << " line " << op.line;
                    }
                }
            }
        }
    }
}
