// Acceptance suite: one PASS/FAIL line per criterion. Every tolerance is a
// constant below; all randomness is seeded so a run is reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dapsp/dapsp.hpp"
#include "dapsp/harness/generator.hpp"
#include "dapsp/harness/runner.hpp"
#include "support/oracles.hpp"
#include "support/replay.hpp"

using namespace dapsp;

namespace {

constexpr std::size_t kAllowedMismatches = 0;
constexpr std::size_t kAllowedViolations = 0;

constexpr std::size_t kCorpusTraces = 30;
constexpr std::size_t kCorpusOps = 200;
constexpr double kCorpusUpdateShare = 0.4;
constexpr Weight kWeightLo = -5;
constexpr Weight kWeightHi = 50;
constexpr std::size_t kSmallN = 40; // sandwich and rebuild audits at or below this size
constexpr std::size_t kRandSeeds = 10;
constexpr double kRandC = 3.0;
constexpr std::size_t kTreeFamilies = 500;
constexpr std::size_t kTreeMaxGround = 300;
constexpr std::size_t kTreeMaxNodes = 5000;
constexpr std::size_t kGreedyFamilies = 500;
constexpr std::size_t kDagTraces = 20;
constexpr std::size_t kDagOps = 500;
constexpr std::size_t kInverseSamples = 20;
constexpr std::size_t kPathCountDags = 200;
constexpr std::size_t kPathCountMaxN = 9;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
}

struct CorpusEntry {
    harness::Trace trace;
    Params params;
    std::string label;
};

// Default parameters on every third trace; the rest use small h/delta and
// the tightest legal tau so congestion, H1 and phase restarts all occur.
Params corpus_params(std::size_t i, std::size_t m) {
    Params p;
    switch (i % 3) {
    case 0:
        break;
    case 1:
        p.h = 4;
        p.delta = 4;
        p.tau = static_cast<std::int64_t>(2 * m);
        break;
    default:
        p.h = 6;
        p.delta = 3;
        p.tau = static_cast<std::int64_t>(3 * m);
        p.degree_split = true;
        break;
    }
    return p;
}

std::vector<CorpusEntry> exactness_corpus(bool unweighted) {
    static const std::size_t sizes[] = {20, 50, 100, 200};
    std::vector<CorpusEntry> corpus;
    for (std::size_t i = 0; i < kCorpusTraces; ++i) {
        harness::GenOptions o;
        o.n = sizes[i % 4];
        o.m = 3 * o.n;
        o.ops = kCorpusOps;
        o.update_fraction = kCorpusUpdateShare;
        o.weight_lo = kWeightLo;
        o.weight_hi = kWeightHi;
        o.neg_fraction = unweighted ? 0.0 : ((i / 4) % 2 ? 0.2 : 0.0);
        o.unweighted = unweighted;
        o.seed = 1000 + i;
        Params p = unweighted ? Params{} : corpus_params(i, o.m);
        if (unweighted) {
            p.weight_mode = WeightMode::kUnweighted;
        }
        corpus.push_back({harness::generate_trace(o), p, "trace " + std::to_string(i) + " (n=" + std::to_string(o.n) + ")"});
    }
    return corpus;
}

// Small traces (n <= 40) for the sandwich and rebuild audits.
std::vector<CorpusEntry> small_corpus() {
    std::vector<CorpusEntry> corpus;
    for (std::size_t i = 0; i < 12; ++i) {
        harness::GenOptions o;
        o.n = 10 + 15 * (i % 3); // 10, 25, 40
        o.m = 3 * o.n;
        o.ops = 150;
        o.update_fraction = 0.5;
        o.neg_fraction = i % 2 ? 0.2 : 0.0;
        o.seed = 2000 + i;
        corpus.push_back({harness::generate_trace(o), corpus_params(i, o.m),
                          "small " + std::to_string(i) + " (n=" + std::to_string(o.n) + ")"});
    }
    return corpus;
}

replay::Config audits_for(const CorpusEntry& e) {
    replay::Config c;
    c.params = e.params;
    c.audit_phase = e.trace.n <= kSmallN;
    c.audit_rebuild = e.trace.n <= kSmallN;
    c.audit_hitting = e.params.mode == HittingMode::kDeterministic && e.trace.n <= 100;
    c.audit_charging = true;
    return c;
}

struct Totals {
    std::size_t traces = 0;
    std::size_t queries = 0;
    std::size_t exact = 0;
    std::size_t forbidden = 0;
    std::size_t updates = 0;
    std::size_t phase_audits = 0;
    std::size_t rebuild_checks = 0;
    std::size_t charging_checks = 0;
    std::size_t hitting_checks = 0;
    std::size_t violations = 0;
    std::size_t query = 0;
    std::size_t phase = 0;
    std::size_t rebuild = 0;
    std::size_t charging = 0;
    std::size_t hitting = 0;
    std::string first;

    void add(const replay::Stats& s, const std::string& label) {
        ++traces;
        queries += s.queries;
        exact += s.exact;
        forbidden += s.forbidden;
        updates += s.updates;
        phase_audits += s.phase_audits;
        rebuild_checks += s.rebuild_checks;
        charging_checks += s.charging_checks;
        hitting_checks += s.hitting_checks;
        if (!s.ok() && first.empty()) {
            first = label + ": " + s.first_failure;
        }
        violations += s.violations;
        query += s.query_mismatches;
        phase += s.phase_violations;
        rebuild += s.rebuild_violations;
        charging += s.charging_violations;
        hitting += s.hitting_violations;
    }
};

std::string counts(const Totals& t) {
    std::ostringstream o;
    o << t.traces << " traces, " << t.updates << " updates, " << t.queries << " queries, " << t.query
      << " mismatches";
    if (t.hitting_checks) {
        o << ", " << t.hitting_checks << " long pi' paths hit-checked, " << t.hitting << " missed";
    }
    if (!t.first.empty()) {
        o << "; first: " << t.first;
    }
    return o.str();
}

Outcome outcome(bool ok, const std::string& detail) { return {ok, detail}; }

} // namespace

int main() {
    const auto corpus = exactness_corpus(false);
    const auto small = small_corpus();

    // The deterministic corpus replay also feeds criteria 3 to 5.
    Totals det;
    report(1, "exactness (deterministic)", [&] {
        for (const auto& e : corpus) {
            det.add(replay::run(e.trace, audits_for(e)), e.label);
        }
        return outcome(det.query + det.hitting <= kAllowedMismatches && det.exact == det.queries, counts(det));
    });

    report(2, "randomized mode soundness", [&] {
        Totals t;
        for (std::uint64_t seed = 1; seed <= kRandSeeds; ++seed) {
            for (const auto& e : corpus) {
                replay::Config c = audits_for(e);
                c.params.mode = HittingMode::kRandomized;
                c.params.rand_c = kRandC;
                c.params.seed = seed;
                c.audit_phase = false;
                c.audit_rebuild = false;
                c.audit_hitting = false;
                t.add(replay::run(e.trace, c), e.label + " seed " + std::to_string(seed));
            }
        }
        return outcome(t.query <= kAllowedMismatches && t.exact == t.queries, counts(t));
    });

    Totals small_totals;

    auto first_of = [](const Totals& a, const Totals& b) { return a.first.empty() ? b.first : a.first; };

    report(3, "preprocessing invariants", [&] {
        for (const auto& e : small) {
            small_totals.add(replay::run(e.trace, audits_for(e)), e.label);
        }
        std::ostringstream o;
        const std::size_t v = det.phase + small_totals.phase;
        o << det.phase_audits + small_totals.phase_audits << " sandwich audits on n <= " << kSmallN
          << ", alpha and |C| checked on every phase of " << det.traces + small_totals.traces << " traces, " << v
          << " violations";
        if (v) {
            o << "; first: " << first_of(det, small_totals);
        }
        return outcome(v <= kAllowedViolations && small_totals.phase_audits > 0, o.str());
    });

    report(4, "rebuild contract", [&] {
        std::ostringstream o;
        const std::size_t v = det.rebuild + small_totals.rebuild;
        o << det.rebuild_checks + small_totals.rebuild_checks << " (s, t in Q_s) pairs on n <= " << kSmallN << ", " << v
          << " violations";
        if (v) {
            o << "; first: " << first_of(small_totals, det);
        }
        return outcome(v <= kAllowedViolations && small_totals.rebuild_checks > 0, o.str());
    });

    report(5, "charging bound", [&] {
        std::ostringstream o;
        const std::size_t v = det.charging + small_totals.charging;
        o << det.charging_checks + small_totals.charging_checks << " updates checked, " << v << " violations";
        if (v) {
            o << "; first: " << first_of(det, small_totals);
        }
        return outcome(v <= kAllowedViolations, o.str());
    });

    report(6, "tree hitting set", [&] {
        std::mt19937_64 rng(6006);
        static const std::uint32_t ks[] = {1, 2, 3, 5, 8};
        std::size_t violations = 0;
        std::size_t paths = 0;
        std::string first;
        for (std::size_t f = 0; f < kTreeFamilies; ++f) {
            const std::size_t ground = 10 + rng() % (kTreeMaxGround - 9);
            const std::uint32_t k = ks[f % 5];
            TreeFamily family{ground, {}};
            std::size_t total = 0;
            const std::size_t tree_count = 1 + rng() % 40;
            for (std::size_t i = 0; i < tree_count; ++i) {
                const std::size_t size = 1 + rng() % ground;
                if (total + size > kTreeMaxNodes) {
                    break;
                }
                total += size;
                family.trees.push_back(oracle::random_tree(rng, size, ground, 1 + static_cast<std::uint32_t>(rng() % 4)));
            }
            std::vector<std::vector<VertexId>> all;
            for (const auto& t : family.trees) {
                for (auto& p : oracle::depth_k_root_paths(t, k)) {
                    all.push_back(std::move(p));
                }
            }
            const auto h = tree_hitting_set(family, k);
            for (const auto& p : all) {
                ++paths;
                if (!oracle::hits(p, h)) {
                    ++violations;
                    if (first.empty()) {
                        first = "family " + std::to_string(f) + ": root path missed";
                    }
                    break;
                }
            }
            const double l0 = std::max<double>(static_cast<double>(all.size()), 2.0);
            const auto bound = static_cast<std::size_t>(
                                   std::ceil(2.0 * static_cast<double>(ground) / (k + 1.0) * (std::log(l0) + 1.0))) +
                               1;
            if (h.size() > bound) {
                ++violations;
                if (first.empty()) {
                    first = "family " + std::to_string(f) + ": |H| = " + std::to_string(h.size()) + " > " +
                            std::to_string(bound);
                }
            }
        }
        std::ostringstream o;
        o << kTreeFamilies << " families, " << paths << " root paths, " << violations << " violations";
        if (!first.empty()) {
            o << "; first: " << first;
        }
        return outcome(violations <= kAllowedViolations, o.str());
    });

    report(7, "greedy hitting set", [&] {
        std::mt19937_64 rng(7007);
        std::size_t violations = 0;
        std::string first;
        for (std::size_t f = 0; f < kGreedyFamilies; ++f) {
            const std::size_t ground = 10 + rng() % 291;
            const std::size_t k = 1 + rng() % std::min<std::size_t>(10, ground);
            SetFamily family{ground, {}};
            const std::size_t sets = 1 + rng() % 400;
            for (std::size_t i = 0; i < sets; ++i) {
                const std::size_t size = std::min(ground, k + rng() % (k + 4));
                std::set<VertexId> s;
                while (s.size() < size) {
                    s.insert(static_cast<VertexId>(rng() % ground));
                }
                family.sets.emplace_back(s.begin(), s.end());
            }
            const auto h = greedy_hitting_set(family, k);
            bool ok = true;
            for (const auto& s : family.sets) {
                ok = ok && oracle::hits(s, h);
            }
            const double y = std::max<double>(static_cast<double>(sets), 2.0);
            const auto bound =
                static_cast<std::size_t>(std::ceil(static_cast<double>(ground) / static_cast<double>(k) * std::log(y))) +
                1;
            if (!ok || h.size() > bound) {
                ++violations;
                if (first.empty()) {
                    first = "family " + std::to_string(f) + (ok ? ": size above bound" : ": a set is missed");
                }
            }
        }
        std::ostringstream o;
        o << kGreedyFamilies << " families, " << violations << " violations";
        if (!first.empty()) {
            o << "; first: " << first;
        }
        return outcome(violations <= kAllowedViolations, o.str());
    });

    report(8, "negative-cycle semantics", [&] {
        Totals t;
        for (std::size_t i = 0; i < 12; ++i) {
            harness::GenOptions o;
            o.n = 10 + 10 * (i % 4);
            o.m = 3 * o.n;
            o.ops = 120;
            o.neg_fraction = 0.2;
            o.cycle_windows = 4;
            o.seed = 8000 + i;
            const auto trace = harness::generate_trace(o);
            replay::Config c;
            c.params = corpus_params(i, o.m);
            c.audit_hitting = true;
            t.add(replay::run(trace, c), "window trace " + std::to_string(i));
        }
        std::ostringstream o;
        o << counts(t) << ", " << t.forbidden << " forbidden, " << t.exact << " exact";
        return outcome(t.violations <= kAllowedViolations && t.forbidden >= 12 * 4, o.str());
    });

    report(9, "unweighted mode", [&] {
        Totals t;
        for (const auto& e : exactness_corpus(true)) {
            t.add(replay::run(e.trace, audits_for(e)), e.label);
        }
        return outcome(t.violations <= kAllowedMismatches && t.exact == t.queries, counts(t));
    });

    report(10, "DAG reachability", [&] {
        static const std::uint32_t phase_lengths[] = {1, 4, 16};
        std::size_t reach = 0;
        std::size_t samples = 0;
        std::size_t violations = 0;
        std::string first;
        for (std::size_t i = 0; i < kDagTraces; ++i) {
            harness::GenOptions o;
            o.engine = harness::Engine::kDag;
            o.n = i % 2 ? 100 : 30;
            o.m = 2 * o.n;
            o.ops = kDagOps;
            o.update_fraction = 0.5;
            o.seed = 10000 + i;
            const auto trace = harness::generate_trace(o);
            const std::uint32_t t = phase_lengths[i % 3];
            const PrimeField field = i % 4 == 3 ? PrimeField::from_seed(i) : PrimeField();
            std::set<std::pair<VertexId, VertexId>> mirror;
            DagGraph g(trace.n);
            for (const Edge& e : trace.setup) {
                g.insert(e.from, e.to);
                mirror.insert({e.from, e.to});
            }
            auto edges = [&] {
                std::vector<Edge> out;
                for (auto [u, v] : mirror) {
                    out.push_back({u, v, 1});
                }
                return out;
            };
            DagReach d(std::move(g), t, field);
            std::mt19937_64 rng(o.seed);
            auto fail = [&](const std::string& what) {
                if (violations++ == 0) {
                    first = "dag trace " + std::to_string(i) + ": " + what;
                }
            };
            for (const auto& op : trace.ops) {
                if (op.kind == harness::OpKind::kReach) {
                    ++reach;
                    const auto r = oracle::reachability(trace.n, edges());
                    if (d.reach_query(op.a, op.b) != (r[op.a][op.b] != 0)) {
                        fail("reach mismatch at line " + std::to_string(op.line));
                    }
                    continue;
                }
                const bool ins = op.kind == harness::OpKind::kInsert;
                d.edge_update(ins ? EdgeOp::kInsert : EdgeOp::kDelete, op.a, op.b);
                if (ins) {
                    mirror.insert({op.a, op.b});
                } else {
                    mirror.erase({op.a, op.b});
                }
                const auto inv = oracle::inverse_i_minus_a(trace.n, edges(), field.p());
                if (inv.empty()) {
                    fail("oracle found I - A singular");
                    continue;
                }
                for (std::size_t k = 0; k < kInverseSamples; ++k) {
                    const auto s = static_cast<VertexId>(rng() % trace.n);
                    const auto u = static_cast<VertexId>(rng() % trace.n);
                    ++samples;
                    if (d.inverse_entry(s, u) != inv[s][u]) {
                        fail("inverse entry mismatch at line " + std::to_string(op.line));
                        break;
                    }
                }
            }
        }
        std::ostringstream o;
        o << kDagTraces << " traces, " << reach << " reach queries, " << samples << " inverse samples, " << violations
          << " violations";
        if (!first.empty()) {
            o << "; first: " << first;
        }
        return outcome(violations <= kAllowedViolations, o.str());
    });

    report(11, "dag_path_counts", [&] {
        const PrimeField f;
        std::mt19937_64 rng(1111);
        std::size_t violations = 0;
        for (std::size_t i = 0; i < kPathCountDags; ++i) {
            const std::size_t n = 1 + i % kPathCountMaxN;
            const auto edges = oracle::random_dag_edges(rng, n, 0.2 + 0.6 * static_cast<double>(i % 5) / 4.0);
            DagGraph g(n);
            for (const Edge& e : edges) {
                g.insert(e.from, e.to);
            }
            const ModMatrix c = dag_path_counts(g, f);
            const auto want = oracle::enumerate_path_counts(n, edges, f.p());
            for (VertexId s = 0; s < n; ++s) {
                for (VertexId t = 0; t < n; ++t) {
                    violations += c(s, t) != want[s][t];
                }
            }
        }
        DagGraph diamond(4);
        diamond.insert(0, 1);
        diamond.insert(0, 2);
        diamond.insert(1, 3);
        diamond.insert(2, 3);
        const std::uint64_t d = dag_path_counts(diamond, f)(0, 3);
        std::ostringstream o;
        o << kPathCountDags << " DAGs with n <= " << kPathCountMaxN << ", " << violations
          << " entry mismatches, diamond count " << d;
        return outcome(violations <= kAllowedViolations && d == 2, o.str());
    });

    report(12, "determinism", [&] {
        std::size_t runs = 0;
        std::size_t differ = 0;
        auto twice = [&](const harness::Trace& t, const harness::RunOptions& opt) {
            std::ostringstream a;
            std::ostringstream b;
            (void)harness::run_trace(t, opt, a);
            (void)harness::run_trace(t, opt, b);
            ++runs;
            differ += a.str() != b.str() || a.str().empty();
        };
        for (std::size_t i = 0; i < corpus.size(); i += 5) {
            harness::RunOptions opt;
            opt.params = corpus[i].params;
            opt.oracle_check = true;
            twice(corpus[i].trace, opt);
            opt.params.mode = HittingMode::kRandomized;
            opt.params.seed = 42;
            twice(corpus[i].trace, opt);
        }
        harness::GenOptions o;
        o.engine = harness::Engine::kDag;
        o.n = 40;
        o.m = 80;
        o.ops = 200;
        o.seed = 12;
        harness::RunOptions opt;
        opt.oracle_check = true;
        twice(harness::generate_trace(o), opt);
        std::ostringstream d;
        d << runs << " paired runs, " << differ << " differing reports";
        return outcome(differ == 0, d.str());
    });

    std::printf("%s: %d of 12 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
