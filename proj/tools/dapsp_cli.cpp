// dapsp: run or generate traces for the dynamic APSP and DAG reachability
// engines.
//
//   dapsp run trace.txt --oracle-check --report out.jsonl
//   dapsp gen --engine apsp --n 50 --m 150 --ops 200 --neg-fraction 0.2 -o t.txt

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "dapsp/harness/generator.hpp"
#include "dapsp/harness/runner.hpp"
#include "dapsp/harness/trace.hpp"

namespace {

using namespace dapsp;
using namespace dapsp::harness;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DAPSP_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring unparsable DAPSP_SEED='" << env << "'\n";
        }
    }
    return 1;
}

// "h=3,delta=4,tau=100"
void apply_param_string(const std::string& spec, Params& p) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("--params entry '" + item + "' is not key=value");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size() || value.empty() || x < 0) {
            throw ParameterError("--params " + key + " needs a non-negative integer, got '" + value + "'");
        }
        if (key == "h") {
            p.h = static_cast<std::uint32_t>(x);
        } else if (key == "delta") {
            p.delta = static_cast<std::uint32_t>(x);
        } else if (key == "tau") {
            p.tau = x;
        } else {
            throw ParameterError("unknown --params key '" + key + "'");
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic APSP / DAG reachability trace runner"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute a trace");
    std::string trace_path;
    std::string param_spec;
    std::string mode = "det";
    std::string prime_spec = "default";
    std::string report_path;
    bool unweighted = false;
    bool degree_split = false;
    bool oracle_check = false;
    bool timing = false;
    std::uint64_t seed = default_seed();
    std::uint32_t phase_len = 4;
    double rand_c = 3.0;
    std::size_t audit_inverse = 0;
    run->add_option("trace", trace_path, "trace file, '-' for stdin")->required();
    run->add_option("--params", param_spec, "h=..,delta=..,tau=..");
    run->add_option("--mode", mode, "hitting set: det or rand")->check(CLI::IsMember({"det", "rand"}));
    run->add_flag("--unweighted", unweighted, "BFS variant (all weights must be 1)");
    run->add_flag("--degree-split", degree_split, "move the delta highest-degree vertices to D at phase start");
    run->add_flag("--oracle-check", oracle_check, "compare every answer with a from-scratch oracle");
    run->add_option("--seed", seed, "seed (default: $DAPSP_SEED or 1)");
    run->add_option("--prime", prime_spec, "dag modulus: 'default', 'seed', or a prime");
    run->add_option("--phase-len", phase_len, "dag phase length t")->check(CLI::PositiveNumber);
    run->add_option("--rand-c", rand_c, "sampling constant for --mode rand");
    run->add_option("--audit-inverse", audit_inverse, "dag: inverse entries checked per update");
    run->add_option("--report", report_path, "report file (default stdout)");
    run->add_flag("--timing", timing, "add wall-clock fields to the report");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random trace");
    GenOptions g;
    g.seed = default_seed();
    std::string engine = "apsp";
    std::string out_path;
    gen->add_option("--engine", engine, "apsp or dag")->check(CLI::IsMember({"apsp", "dag"}));
    gen->add_option("--n", g.n, "vertices");
    gen->add_option("--m", g.m, "initial edges");
    gen->add_option("--ops", g.ops, "operations");
    gen->add_option("--wmin", g.weight_lo, "smallest weight");
    gen->add_option("--wmax", g.weight_hi, "largest weight");
    gen->add_option("--neg-fraction", g.neg_fraction, "share of negative edges where feasible");
    gen->add_option("--update-fraction", g.update_fraction, "share of update operations");
    gen->add_option("--cycle-windows", g.cycle_windows, "transient negative-cycle windows");
    gen->add_flag("--unweighted", g.unweighted, "all weights 1");
    gen->add_option("--seed", g.seed, "seed (default: $DAPSP_SEED or 1)");
    gen->add_option("-o,--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (gen->parsed()) {
        g.engine = engine == "apsp" ? Engine::kApsp : Engine::kDag;
        try {
            const Trace trace = generate_trace(g);
            if (out_path.empty()) {
                write_trace(std::cout, trace);
            } else {
                std::ofstream out(out_path);
                if (!out) {
                    std::cerr << "error: cannot write " << out_path << '\n';
                    return kExitUsage;
                }
                write_trace(out, trace);
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        }
        return kExitClean;
    }

    RunOptions options;
    options.oracle_check = oracle_check;
    options.timing = timing;
    options.phase_len = phase_len;
    options.inverse_samples = audit_inverse;
    options.params.mode = mode == "det" ? HittingMode::kDeterministic : HittingMode::kRandomized;
    options.params.weight_mode = unweighted ? WeightMode::kUnweighted : WeightMode::kWeighted;
    options.params.degree_split = degree_split;
    options.params.rand_c = rand_c;
    options.params.seed = seed;

    Trace trace;
    try {
        apply_param_string(param_spec, options.params);
        if (prime_spec == "default") {
            options.prime = kDefaultPrime;
        } else if (prime_spec == "seed") {
            options.prime = PrimeField::from_seed(seed).p();
        } else {
            std::size_t used = 0;
            options.prime = std::stoull(prime_spec, &used);
            if (used != prime_spec.size()) {
                throw ParameterError("--prime expects 'default', 'seed', or a number");
            }
            (void)PrimeField(options.prime);
        }
        if (trace_path == "-") {
            trace = parse_trace(std::cin);
        } else {
            std::ifstream in(trace_path);
            if (!in) {
                std::cerr << "error: cannot open " << trace_path << '\n';
                return kExitUsage;
            }
            trace = parse_trace(in);
        }
    } catch (const TraceParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ofstream report_file;
    if (!report_path.empty()) {
        report_file.open(report_path);
        if (!report_file) {
            std::cerr << "error: cannot write " << report_path << '\n';
            return kExitUsage;
        }
    }
    std::ostream& report = report_path.empty() ? std::cout : report_file;

    RunSummary summary;
    try {
        summary = run_trace(trace, options, report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (summary.exit_code == kExitMismatch) {
        std::cerr << "MISMATCH " << summary.failure << '\n';
    } else {
        std::cerr << "ok: " << summary.ops << " ops, " << summary.updates << " updates, " << summary.queries
                  << " queries (" << summary.checked << " checked, " << summary.forbidden << " forbidden)\n";
    }
    return summary.exit_code;
}
