#pragma once

// Executes a trace against one engine and writes one JSON record per line:
//   {"type":"run",...}       run header (schema version, engine, parameters)
//   {"type":"op",...}        one per trace operation
//   {"type":"mismatch",...}  oracle disagreement, followed by the summary
//   {"type":"summary",...}   totals
// Wall-clock fields ("us", "wall_ms") appear only when timing is requested,
// so reports are byte-identical across runs otherwise.

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "dapsp/dag_reach.hpp"
#include "dapsp/dynamic_apsp.hpp"
#include "dapsp/harness/oracle.hpp"
#include "dapsp/harness/trace.hpp"
#include "dapsp/mod_field.hpp"

namespace dapsp::harness {

inline constexpr int kReportSchemaVersion = 1;

inline constexpr int kExitClean = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
    Params params;
    bool oracle_check = false;
    bool timing = false;
    std::uint32_t phase_len = 4;
    std::uint64_t prime = kDefaultPrime;
    // dag engine: entries of the maintained inverse compared with a fresh
    // Gauss-Jordan inverse after every edge update.
    std::size_t inverse_samples = 0;
};

struct RunSummary {
    int exit_code = kExitClean;
    std::size_t ops = 0;
    std::size_t updates = 0;
    std::size_t rejected = 0;
    std::size_t queries = 0;
    std::size_t forbidden = 0;
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    std::uint64_t phases = 0;
    WorkCounters work;
    std::string failure; // description of the first mismatch
};

namespace detail {

using Json = nlohmann::ordered_json;

inline Json lex_json(const LexWeight& w) {
    if (!w.finite()) {
        return "INF";
    }
    return Json{{"length", w.length()}, {"hops", w.hops()}};
}

inline Json graph_dump(const OracleGraph& g, bool weighted) {
    Json edges = Json::array();
    for (const auto& [e, w] : g.edge_map()) {
        if (weighted) {
            edges.push_back({e.first, e.second, w});
        } else {
            edges.push_back({e.first, e.second});
        }
    }
    return Json{{"n", g.n()}, {"edges", std::move(edges)}};
}

inline Json op_json(std::size_t index, const TraceOp& op) {
    Json j{{"type", "op"}, {"index", index}, {"line", op.line}, {"op", op_name(op.kind)}};
    if (op.kind == OpKind::kVset) {
        j["v"] = op.a;
        j["k_out"] = op.out.size();
        j["k_in"] = op.in.size();
    } else {
        j["a"] = op.a;
        j["b"] = op.b;
    }
    return j;
}

inline const char* mode_name(HittingMode m) { return m == HittingMode::kDeterministic ? "det" : "rand"; }

class Runner {
  public:
    Runner(const Trace& trace, const RunOptions& opt, std::ostream& out)
        : trace_(trace), opt_(opt), out_(out), oracle_(trace.n) {
        for (const Edge& e : trace.setup) {
            oracle_.set_edge(e.from, e.to, e.weight);
        }
    }

    RunSummary run() {
        const auto start = std::chrono::steady_clock::now();
        if (trace_.engine == Engine::kApsp) {
            run_apsp();
        } else {
            run_dag();
        }
        Json s{{"type", "summary"},
               {"schema", kReportSchemaVersion},
               {"ops", summary_.ops},
               {"updates", summary_.updates},
               {"rejected", summary_.rejected},
               {"queries", summary_.queries},
               {"forbidden", summary_.forbidden},
               {"checked", summary_.checked},
               {"mismatches", summary_.mismatches},
               {"phases", summary_.phases},
               {"edges_relaxed", summary_.work.edges_relaxed},
               {"heap_pops", summary_.work.heap_pops},
               {"exit_code", summary_.exit_code}};
        if (opt_.timing) {
            s["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
        emit(s);
        return summary_;
    }

  private:
    void emit(const Json& j) { out_ << j.dump() << '\n'; }

    // Returns false when the run must stop.
    bool mismatch(std::size_t index, const TraceOp& op, const std::string& what, Json expected, Json got) {
        ++summary_.mismatches;
        summary_.exit_code = kExitMismatch;
        summary_.failure = "op " + std::to_string(index) + " (line " + std::to_string(op.line) + "): " + what;
        Json j{{"type", "mismatch"},
               {"index", index},
               {"line", op.line},
               {"op", op_name(op.kind)},
               {"a", op.a},
               {"b", op.b},
               {"what", what},
               {"expected", std::move(expected)},
               {"got", std::move(got)},
               {"graph", graph_dump(oracle_, trace_.engine == Engine::kApsp)}};
        emit(j);
        return false;
    }

    void run_apsp() {
        DynamicGraph g = DynamicGraph::from_edges(trace_.n, trace_.setup);
        DynamicApsp engine(std::move(g), opt_.params);
        const Params& p = opt_.params;
        Json header{{"type", "run"},
                    {"schema", kReportSchemaVersion},
                    {"engine", "apsp"},
                    {"n", trace_.n},
                    {"m", trace_.setup.size()},
                    {"ops", trace_.ops.size()},
                    {"h", engine.h()},
                    {"delta", engine.delta()},
                    {"tau", engine.tau()},
                    {"mode", mode_name(p.mode)},
                    {"weighted", p.weight_mode == WeightMode::kWeighted},
                    {"degree_split", p.degree_split},
                    {"seed", p.seed},
                    {"oracle_check", opt_.oracle_check},
                    {"poisoned", engine.poisoned()}};
        if (p.mode == HittingMode::kRandomized) {
            header["rand_c"] = p.rand_c;
        }
        emit(header);
        summary_.work += engine.last_report().work;

        // Cached oracle state; invalidated by every accepted update.
        // -1: unknown, otherwise whether the current graph has a negative cycle.
        int negative_cycle = -1;
        std::vector<std::optional<std::vector<LexWeight>>> oracle_rows(trace_.n);

        for (std::size_t index = 0; index < trace_.ops.size(); ++index) {
            const TraceOp& op = trace_.ops[index];
            const auto op_start = std::chrono::steady_clock::now();
            Json j = op_json(index, op);
            ++summary_.ops;
            bool keep_going = true;
            if (op.kind == OpKind::kVset) {
                try {
                    const UpdateReport r = engine.vertex_update(op.a, op.out, op.in);
                    ++summary_.updates;
                    summary_.work += r.work;
                    oracle_.replace_vertex(op.a, op.out, op.in);
                    negative_cycle = -1;
                    for (auto& row : oracle_rows) {
                        row.reset();
                    }
                    j["poisoned"] = r.poisoned;
                    j["phase_rebuilt"] = r.phase_rebuilt;
                    j["edges_relaxed"] = r.work.edges_relaxed;
                    j["heap_pops"] = r.work.heap_pops;
                    if (!r.poisoned) {
                        j["qs_degree_mass"] = r.qs_degree_mass;
                        j["alpha_mass"] = r.alpha_mass;
                        j["tau"] = r.tau;
                        j["C"] = r.congested;
                        j["D"] = r.affected;
                        j["H"] = r.hitting;
                        j["H0"] = r.hitting_h0;
                        j["H1"] = r.hitting_h1;
                        j["rebuilt_sources"] = r.rebuilt_sources;
                    }
                    if (opt_.oracle_check) {
                        negative_cycle = oracle_.has_negative_cycle() ? 1 : 0;
                        if ((negative_cycle == 1) != r.poisoned) {
                            keep_going = mismatch(index, op, "negative-cycle state", negative_cycle == 1, r.poisoned);
                        } else if (!r.poisoned &&
                                   (r.qs_degree_mass > static_cast<std::uint64_t>(r.alpha_mass) ||
                                    r.alpha_mass > static_cast<std::int64_t>(r.affected) * r.tau)) {
                            keep_going = mismatch(index, op, "charging bound",
                                                  Json{{"alpha_mass", r.alpha_mass}, {"D_tau", r.affected * r.tau}},
                                                  r.qs_degree_mass);
                        }
                    }
                } catch (const MalformedUpdate& e) {
                    ++summary_.rejected;
                    j["rejected"] = e.what();
                } catch (const ModeError& e) {
                    ++summary_.rejected;
                    j["rejected"] = e.what();
                }
            } else {
                ++summary_.queries;
                std::optional<LexWeight> got;
                std::vector<VertexId> path;
                try {
                    got = engine.distance(op.a, op.b);
                    if (op.kind == OpKind::kPath && got->finite()) {
                        path = engine.shortest_path(op.a, op.b);
                    }
                } catch (const QueryForbidden&) {
                    ++summary_.forbidden;
                }
                if (!got) {
                    j["result"] = "forbidden";
                } else if (op.kind == OpKind::kDist) {
                    j["result"] = lex_json(*got);
                } else {
                    j["result"] = lex_json(*got);
                    j["path"] = got->finite() ? Json(path) : Json(nullptr);
                }
                if (opt_.oracle_check) {
                    ++summary_.checked;
                    if (negative_cycle < 0) {
                        negative_cycle = oracle_.has_negative_cycle() ? 1 : 0;
                    }
                    if (negative_cycle == 1 || !got) {
                        if ((negative_cycle == 1) != !got) {
                            keep_going = mismatch(index, op, "query-forbidden state", negative_cycle == 1 ? "forbidden" : "answer",
                                                  got ? "answer" : "forbidden");
                        }
                    } else {
                        auto& row = oracle_rows[op.a];
                        if (!row) {
                            row = oracle_.distances(op.a);
                        }
                        const LexWeight want = (*row)[op.b];
                        if (want != *got) {
                            keep_going = mismatch(index, op, "distance", lex_json(want), lex_json(*got));
                        } else if (op.kind == OpKind::kPath && got->finite()) {
                            const auto walked = oracle_.walk_weight(path);
                            if (path.front() != op.a || path.back() != op.b || !walked || *walked != want) {
                                keep_going = mismatch(index, op, "path", lex_json(want), Json(path));
                            }
                        }
                    }
                }
            }
            if (opt_.timing) {
                j["us"] = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - op_start).count();
            }
            emit(j);
            if (!keep_going) {
                break;
            }
        }
        summary_.phases = engine.phases_started();
    }

    void run_dag() {
        DagGraph g(trace_.n);
        for (const Edge& e : trace_.setup) {
            if (e.from == e.to || g.has_edge(e.from, e.to)) {
                throw MalformedUpdate("invalid setup edge " + std::to_string(e.from) + "->" + std::to_string(e.to));
            }
            g.insert(e.from, e.to);
        }
        const PrimeField field(opt_.prime);
        DagReach engine(std::move(g), opt_.phase_len, field);
        emit(Json{{"type", "run"},
                  {"schema", kReportSchemaVersion},
                  {"engine", "dag"},
                  {"n", trace_.n},
                  {"m", trace_.setup.size()},
                  {"ops", trace_.ops.size()},
                  {"phase_len", opt_.phase_len},
                  {"prime", field.p()},
                  {"oracle_check", opt_.oracle_check}});
        std::mt19937_64 sampler(opt_.params.seed);
        for (std::size_t index = 0; index < trace_.ops.size(); ++index) {
            const TraceOp& op = trace_.ops[index];
            const auto op_start = std::chrono::steady_clock::now();
            Json j = op_json(index, op);
            ++summary_.ops;
            bool keep_going = true;
            if (op.kind == OpKind::kReach) {
                ++summary_.queries;
                const bool got = engine.reach_query(op.a, op.b);
                j["result"] = got;
                if (opt_.oracle_check) {
                    ++summary_.checked;
                    const bool want = oracle_.reaches(op.a, op.b);
                    if (want != got) {
                        keep_going = mismatch(index, op, "reachability", want, got);
                    }
                }
            } else {
                const bool insert = op.kind == OpKind::kInsert;
                try {
                    engine.edge_update(insert ? EdgeOp::kInsert : EdgeOp::kDelete, op.a, op.b);
                    ++summary_.updates;
                    if (insert) {
                        oracle_.set_edge(op.a, op.b, 1);
                    } else {
                        oracle_.erase_edge(op.a, op.b);
                    }
                    j["rank"] = engine.phase().rank();
                    j["phase_restart"] = engine.ops_in_phase() == 0;
                    if (opt_.inverse_samples > 0) {
                        keep_going = audit_inverse(index, op, engine, sampler);
                    }
                } catch (const NotADag& e) {
                    ++summary_.rejected;
                    j["rejected"] = e.what();
                } catch (const MalformedUpdate& e) {
                    ++summary_.rejected;
                    j["rejected"] = e.what();
                }
            }
            if (opt_.timing) {
                j["us"] = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - op_start).count();
            }
            emit(j);
            if (!keep_going) {
                break;
            }
        }
        summary_.phases = engine.phases_started();
    }

    bool audit_inverse(std::size_t index, const TraceOp& op, const DagReach& engine, std::mt19937_64& sampler) {
        const std::size_t n = trace_.n;
        if (n == 0) {
            return true;
        }
        const PrimeField& f = engine.field();
        ModMatrix m = ModMatrix::identity(n);
        for (const auto& [e, w] : oracle_.edge_map()) {
            m(e.first, e.second) = f.neg(1);
        }
        const ModMatrix inv = gauss_inverse(std::move(m), f);
        for (std::size_t k = 0; k < opt_.inverse_samples; ++k) {
            const auto s = static_cast<VertexId>(uniform_below(sampler, n));
            const auto t = static_cast<VertexId>(uniform_below(sampler, n));
            const std::uint64_t got = engine.inverse_entry(s, t);
            if (got != inv(s, t)) {
                return mismatch(index, op, "inverse entry (" + std::to_string(s) + "," + std::to_string(t) + ")",
                                inv(s, t), got);
            }
        }
        return true;
    }

    const Trace& trace_;
    RunOptions opt_;
    std::ostream& out_;
    OracleGraph oracle_;
    RunSummary summary_;
};

} // namespace detail

// Runs the trace. Construction failures (bad parameters, invalid setup
// edges, an initial cycle in a dag trace) propagate as exceptions.
inline RunSummary run_trace(const Trace& trace, const RunOptions& options, std::ostream& report) {
    return detail::Runner(trace, options, report).run();
}

} // namespace dapsp::harness
