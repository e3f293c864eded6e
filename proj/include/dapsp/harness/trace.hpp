#pragma once

// Line-oriented trace format.
//
//   apsp <n>                  | dag <n>          header, first record
//   edge <u> <v> <w>          | edge <u> <v>     initial graph, before any op
//   vset <v> <k_out> <k_in> <u1> <w1> ... | <u1> <w1> ...
//   dist <s> <t>
//   path <s> <t>
//                             | ins <i> <j>
//                             | del <i> <j>
//                             | reach <s> <t>
//
// '#' starts a comment; blank lines are ignored.

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dapsp/graph.hpp"
#include "dapsp/lex_weight.hpp"

namespace dapsp::harness {

enum class Engine : std::uint8_t { kApsp, kDag };
enum class OpKind : std::uint8_t { kVset, kDist, kPath, kInsert, kDelete, kReach };

inline const char* op_name(OpKind kind) {
    switch (kind) {
    case OpKind::kVset:
        return "vset";
    case OpKind::kDist:
        return "dist";
    case OpKind::kPath:
        return "path";
    case OpKind::kInsert:
        return "ins";
    case OpKind::kDelete:
        return "del";
    case OpKind::kReach:
        return "reach";
    }
    return "?";
}

inline const char* engine_name(Engine e) { return e == Engine::kApsp ? "apsp" : "dag"; }

struct TraceOp {
    OpKind kind = OpKind::kDist;
    VertexId a = 0; // v for vset, s or i otherwise
    VertexId b = 0; // t or j
    std::vector<Arc> out;
    std::vector<Arc> in;
    std::size_t line = 0;
};

struct Trace {
    Engine engine = Engine::kApsp;
    std::size_t n = 0;
    std::vector<Edge> setup;
    std::vector<TraceOp> ops;
};

class TraceParseError : public std::runtime_error {
  public:
    TraceParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

namespace detail {

class LineReader {
  public:
    LineReader(std::size_t line, std::vector<std::string_view> tokens) : line_(line), tokens_(std::move(tokens)) {}

    [[nodiscard]] std::size_t remaining() const { return tokens_.size() - pos_; }
    [[nodiscard]] std::string_view peek() const { return pos_ < tokens_.size() ? tokens_[pos_] : std::string_view{}; }

    std::string_view word() {
        if (pos_ >= tokens_.size()) {
            fail("unexpected end of line");
        }
        return tokens_[pos_++];
    }

    std::int64_t integer() {
        const std::string_view tok = word();
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec == std::errc::result_out_of_range) {
            fail("integer out of range: " + std::string(tok));
        }
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            fail("expected an integer, got '" + std::string(tok) + "'");
        }
        return value;
    }

    VertexId vertex(std::size_t n) {
        const std::int64_t v = integer();
        if (v < 0 || static_cast<std::uint64_t>(v) >= n) {
            fail("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
        }
        return static_cast<VertexId>(v);
    }

    Weight weight() {
        const std::int64_t w = integer();
        if (w <= -kMaxEdgeWeight || w >= kMaxEdgeWeight) {
            fail("weight " + std::to_string(w) + " overflows the supported range");
        }
        return w;
    }

    void expect(std::string_view tok) {
        if (word() != tok) {
            fail("expected '" + std::string(tok) + "'");
        }
    }

    void finish() {
        if (remaining() != 0) {
            fail("too many fields");
        }
    }

    [[noreturn]] void fail(const std::string& what) const { throw TraceParseError(line_, what); }

  private:
    std::size_t line_;
    std::vector<std::string_view> tokens_;
    std::size_t pos_ = 0;
};

inline std::vector<std::string_view> split_tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

} // namespace detail

inline Trace parse_trace(std::istream& in) {
    Trace trace;
    bool have_header = false;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = detail::split_tokens(line);
        if (tokens.empty()) {
            continue;
        }
        detail::LineReader r(line_no, std::move(tokens));
        const std::string_view tag = r.word();
        if (!have_header) {
            if (tag != "apsp" && tag != "dag") {
                r.fail("expected header 'apsp <n>' or 'dag <n>', got '" + std::string(tag) + "'");
            }
            trace.engine = tag == "apsp" ? Engine::kApsp : Engine::kDag;
            const std::int64_t n = r.integer();
            if (n < 0 || n > (std::int64_t{1} << 24)) {
                r.fail("vertex count out of range");
            }
            trace.n = static_cast<std::size_t>(n);
            r.finish();
            have_header = true;
            continue;
        }
        const bool apsp = trace.engine == Engine::kApsp;
        const std::size_t n = trace.n;
        if (tag == "edge") {
            if (!trace.ops.empty()) {
                r.fail("'edge' records must precede all operations");
            }
            const VertexId u = r.vertex(n);
            const VertexId v = r.vertex(n);
            const Weight w = apsp ? r.weight() : 1;
            r.finish();
            trace.setup.push_back({u, v, w});
            continue;
        }
        TraceOp op;
        op.line = line_no;
        if (tag == "vset" && apsp) {
            op.kind = OpKind::kVset;
            op.a = r.vertex(n);
            const std::int64_t k_out = r.integer();
            const std::int64_t k_in = r.integer();
            if (k_out < 0 || k_in < 0 || static_cast<std::uint64_t>(k_out) > n ||
                static_cast<std::uint64_t>(k_in) > n) {
                r.fail("neighbor count out of range");
            }
            for (std::int64_t i = 0; i < k_out; ++i) {
                const VertexId u = r.vertex(n);
                op.out.push_back({u, r.weight()});
            }
            r.expect("|");
            for (std::int64_t i = 0; i < k_in; ++i) {
                const VertexId u = r.vertex(n);
                op.in.push_back({u, r.weight()});
            }
        } else if ((tag == "dist" || tag == "path") && apsp) {
            op.kind = tag == "dist" ? OpKind::kDist : OpKind::kPath;
            op.a = r.vertex(n);
            op.b = r.vertex(n);
        } else if ((tag == "ins" || tag == "del" || tag == "reach") && !apsp) {
            op.kind = tag == "ins" ? OpKind::kInsert : tag == "del" ? OpKind::kDelete : OpKind::kReach;
            op.a = r.vertex(n);
            op.b = r.vertex(n);
        } else if (tag == "vset" || tag == "dist" || tag == "path" || tag == "ins" || tag == "del" ||
                   tag == "reach") {
            r.fail("'" + std::string(tag) + "' is not valid in a " + engine_name(trace.engine) + " trace");
        } else {
            r.fail("unknown record '" + std::string(tag) + "'");
        }
        r.finish();
        trace.ops.push_back(std::move(op));
    }
    return trace;
}

inline Trace parse_trace_string(const std::string& text) {
    std::istringstream in(text);
    return parse_trace(in);
}

inline void write_trace(std::ostream& out, const Trace& trace) {
    const bool apsp = trace.engine == Engine::kApsp;
    out << engine_name(trace.engine) << ' ' << trace.n << '\n';
    for (const Edge& e : trace.setup) {
        out << "edge " << e.from << ' ' << e.to;
        if (apsp) {
            out << ' ' << e.weight;
        }
        out << '\n';
    }
    for (const TraceOp& op : trace.ops) {
        out << op_name(op.kind) << ' ' << op.a;
        if (op.kind == OpKind::kVset) {
            out << ' ' << op.out.size() << ' ' << op.in.size();
            for (const Arc& a : op.out) {
                out << ' ' << a.to << ' ' << a.weight;
            }
            out << " |";
            for (const Arc& a : op.in) {
                out << ' ' << a.to << ' ' << a.weight;
            }
        } else {
            out << ' ' << op.b;
        }
        out << '\n';
    }
}

inline std::string trace_to_string(const Trace& trace) {
    std::ostringstream out;
    write_trace(out, trace);
    return out.str();
}

} // namespace dapsp::harness
