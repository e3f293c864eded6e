#pragma once

// Dynamic reachability on a DAG under single-edge insertions and deletions.
//
// Reachability s -> t is tested as ((I - A)^{-1})_{s,t} != 0 over Z/pZ, the
// entry being the number of s -> t paths mod p. At the start of a phase the
// inverse M0inv is computed by path counting in O(mn). Each edge update is a
// single-entry change of I - A, and the k changes of the current phase are
// folded in through the low-rank identity
//   (M0 + U D V^T)^{-1} = M0inv - W K^{-1} Z,
//   W = M0inv U,  Z = V^T M0inv,  K = D^{-1} + V^T M0inv U,
// with K^{-1} maintained by bordering (append) and Schur downdates (remove).

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dapsp/errors.hpp"
#include "dapsp/lex_weight.hpp"
#include "dapsp/mod_field.hpp"

namespace dapsp {

// Unweighted digraph on [0, n) with sorted adjacency lists.
class DagGraph {
  public:
    DagGraph() = default;
    explicit DagGraph(std::size_t n) : out_(n) {}

    [[nodiscard]] std::size_t n() const { return out_.size(); }
    [[nodiscard]] std::size_t m() const { return m_; }
    [[nodiscard]] const std::vector<VertexId>& out(VertexId v) const { return out_[v]; }

    [[nodiscard]] bool has_edge(VertexId i, VertexId j) const {
        return std::binary_search(out_[i].begin(), out_[i].end(), j);
    }

    // No acyclicity check here; DagReach validates before mutating.
    void insert(VertexId i, VertexId j) {
        auto& list = out_[i];
        list.insert(std::lower_bound(list.begin(), list.end(), j), j);
        ++m_;
    }

    void erase(VertexId i, VertexId j) {
        auto& list = out_[i];
        list.erase(std::lower_bound(list.begin(), list.end(), j));
        --m_;
    }

    [[nodiscard]] bool reaches(VertexId s, VertexId t) const {
        if (s == t) {
            return true;
        }
        std::vector<std::uint8_t> seen(n(), 0);
        std::vector<VertexId> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const VertexId u = stack.back();
            stack.pop_back();
            for (VertexId v : out_[u]) {
                if (v == t) {
                    return true;
                }
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        return false;
    }

    // Kahn order; throws NotADag on a cycle.
    [[nodiscard]] std::vector<VertexId> topological_order() const {
        std::vector<std::uint32_t> indeg(n(), 0);
        for (const auto& list : out_) {
            for (VertexId v : list) {
                ++indeg[v];
            }
        }
        std::vector<VertexId> order;
        order.reserve(n());
        for (VertexId v = 0; v < n(); ++v) {
            if (indeg[v] == 0) {
                order.push_back(v);
            }
        }
        for (std::size_t head = 0; head < order.size(); ++head) {
            for (VertexId v : out_[order[head]]) {
                if (--indeg[v] == 0) {
                    order.push_back(v);
                }
            }
        }
        if (order.size() != n()) {
            throw NotADag("graph contains a directed cycle");
        }
        return order;
    }

    // I - A over the field.
    [[nodiscard]] ModMatrix identity_minus_adjacency(const PrimeField& f) const {
        ModMatrix m = ModMatrix::identity(n());
        for (VertexId i = 0; i < n(); ++i) {
            for (VertexId j : out_[i]) {
                m(i, j) = f.neg(1);
            }
        }
        return m;
    }

  private:
    std::vector<std::vector<VertexId>> out_;
    std::size_t m_ = 0;
};

// Entry (u, v) = number of u -> v paths mod p, the empty path included.
inline ModMatrix dag_path_counts(const DagGraph& g, const PrimeField& f) {
    const std::vector<VertexId> order = g.topological_order();
    const std::size_t n = g.n();
    ModMatrix counts(n, n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const VertexId u = *it;
        counts(u, u) = 1;
        for (VertexId v : g.out(u)) {
            for (std::size_t x = 0; x < n; ++x) {
                counts(u, x) = f.add(counts(u, x), counts(v, x));
            }
        }
    }
    return counts;
}

// The inverse of I - A(G0) plus the single-entry changes made since.
class InversePhase {
  public:
    struct Change {
        VertexId i;
        VertexId j;
        std::int32_t delta; // -1: edge inserted, +1: edge deleted
    };

    InversePhase(ModMatrix m0inv, PrimeField field) : field_(field), m0inv_(std::move(m0inv)) {}

    [[nodiscard]] std::size_t rank() const { return changes_.size(); }
    [[nodiscard]] const std::vector<Change>& changes() const { return changes_; }
    [[nodiscard]] const ModMatrix& m0inv() const { return m0inv_; }
    [[nodiscard]] const PrimeField& field() const { return field_; }

    // Adds delta to entry (i, j) of I - A. Changes to an entry already in
    // the batch cancel it (the only possible sum is zero: an edge can only
    // be toggled back) and the entry is downdated away.
    void apply(VertexId i, VertexId j, std::int32_t delta) {
        for (std::size_t r = 0; r < changes_.size(); ++r) {
            if (changes_[r].i == i && changes_[r].j == j) {
                if (changes_[r].delta + delta != 0) {
                    throw InvariantError("repeated change to one entry does not cancel");
                }
                remove(r);
                return;
            }
        }
        append(i, j, delta);
    }

    // ((I - A)^{-1})_{s,t} for the current matrix, O(k^2).
    [[nodiscard]] std::uint64_t entry(VertexId s, VertexId t) const {
        const std::size_t k = changes_.size();
        std::uint64_t correction = 0;
        for (std::size_t q = 0; q < k; ++q) {
            std::uint64_t x = 0;
            for (std::size_t r = 0; r < k; ++r) {
                x = field_.add(x, field_.mul(w_[r][s], kinv_[r][q]));
            }
            correction = field_.add(correction, field_.mul(x, z_[q][t]));
        }
        return field_.sub(m0inv_(s, t), correction);
    }

  private:
    std::uint64_t delta_inverse(std::int32_t delta) const { return delta < 0 ? field_.neg(1) : 1; }

    void append(VertexId i, VertexId j, std::int32_t delta) {
        const PrimeField& f = field_;
        const std::size_t k = changes_.size();
        const std::size_t n = m0inv_.rows();
        // New column b and row c of K, and its new diagonal entry d.
        std::vector<std::uint64_t> b(k);
        std::vector<std::uint64_t> c(k);
        for (std::size_t r = 0; r < k; ++r) {
            b[r] = m0inv_(changes_[r].j, i);
            c[r] = m0inv_(j, changes_[r].i);
        }
        const std::uint64_t d = f.add(delta_inverse(delta), m0inv_(j, i));
        // u = K^{-1} b, v^T = c^T K^{-1}, s = d - c^T K^{-1} b.
        std::vector<std::uint64_t> u(k, 0);
        std::vector<std::uint64_t> v(k, 0);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t q = 0; q < k; ++q) {
                u[r] = f.add(u[r], f.mul(kinv_[r][q], b[q]));
                v[q] = f.add(v[q], f.mul(c[r], kinv_[r][q]));
            }
        }
        std::uint64_t s = d;
        for (std::size_t r = 0; r < k; ++r) {
            s = f.sub(s, f.mul(c[r], u[r]));
        }
        if (s == 0) {
            throw InvariantError("singular capacitance matrix");
        }
        const std::uint64_t s_inv = f.inv(s);
        for (std::size_t r = 0; r < k; ++r) {
            const std::uint64_t ur = f.mul(u[r], s_inv);
            for (std::size_t q = 0; q < k; ++q) {
                kinv_[r][q] = f.add(kinv_[r][q], f.mul(ur, v[q]));
            }
            kinv_[r].push_back(f.neg(ur));
        }
        std::vector<std::uint64_t> last(k + 1);
        for (std::size_t q = 0; q < k; ++q) {
            last[q] = f.neg(f.mul(v[q], s_inv));
        }
        last[k] = s_inv;
        kinv_.push_back(std::move(last));

        std::vector<std::uint64_t> col(n);
        for (std::size_t x = 0; x < n; ++x) {
            col[x] = m0inv_(x, i);
        }
        w_.push_back(std::move(col));
        z_.emplace_back(m0inv_.row(j), m0inv_.row(j) + n);
        changes_.push_back({i, j, delta});
    }

    // K^{-1} of K without index r: E11 - f g^T / h, where E = K^{-1} is
    // partitioned around r.
    void remove(std::size_t r) {
        const PrimeField& f = field_;
        const std::size_t k = changes_.size();
        const std::uint64_t h = kinv_[r][r];
        if (h == 0) {
            throw InvariantError("singular capacitance downdate");
        }
        const std::uint64_t h_inv = f.inv(h);
        std::vector<std::vector<std::uint64_t>> next;
        next.reserve(k - 1);
        for (std::size_t a = 0; a < k; ++a) {
            if (a == r) {
                continue;
            }
            const std::uint64_t fa = f.mul(kinv_[a][r], h_inv);
            std::vector<std::uint64_t> row;
            row.reserve(k - 1);
            for (std::size_t b = 0; b < k; ++b) {
                if (b != r) {
                    row.push_back(f.sub(kinv_[a][b], f.mul(fa, kinv_[r][b])));
                }
            }
            next.push_back(std::move(row));
        }
        kinv_ = std::move(next);
        changes_.erase(changes_.begin() + static_cast<std::ptrdiff_t>(r));
        w_.erase(w_.begin() + static_cast<std::ptrdiff_t>(r));
        z_.erase(z_.begin() + static_cast<std::ptrdiff_t>(r));
    }

    PrimeField field_;
    ModMatrix m0inv_;
    std::vector<Change> changes_;
    std::vector<std::vector<std::uint64_t>> w_;    // w_[r] = column i_r of M0inv
    std::vector<std::vector<std::uint64_t>> z_;    // z_[r] = row j_r of M0inv
    std::vector<std::vector<std::uint64_t>> kinv_; // k x k
};

inline InversePhase begin_phase(const DagGraph& g, const PrimeField& f) {
    return InversePhase(dag_path_counts(g, f), f);
}

enum class EdgeOp : std::uint8_t { kInsert, kDelete };

// Owns the graph and the current phase. A phase ends after `phase_length`
// edge operations and the inverse is recomputed on the current graph.
class DagReach {
  public:
    DagReach(DagGraph g, std::uint32_t phase_length, PrimeField field = PrimeField())
        : graph_(std::move(g)), field_(field), phase_length_(phase_length), phase_(begin_phase(graph_, field_)) {
        if (phase_length_ < 1) {
            throw ParameterError("phase length must be at least 1");
        }
        ++phases_;
    }

    void edge_update(EdgeOp op, VertexId i, VertexId j) {
        const std::size_t n = graph_.n();
        if (i >= n || j >= n) {
            throw MalformedUpdate("edge endpoint out of range");
        }
        if (op == EdgeOp::kInsert) {
            if (i == j) {
                throw NotADag("inserting " + std::to_string(i) + "->" + std::to_string(j) + " creates a cycle");
            }
            if (graph_.has_edge(i, j)) {
                throw MalformedUpdate("edge " + std::to_string(i) + "->" + std::to_string(j) + " already present");
            }
            if (graph_.reaches(j, i)) {
                throw NotADag("inserting " + std::to_string(i) + "->" + std::to_string(j) + " creates a cycle");
            }
            graph_.insert(i, j);
            phase_.apply(i, j, -1);
        } else {
            if (!graph_.has_edge(i, j)) {
                throw MalformedUpdate("edge " + std::to_string(i) + "->" + std::to_string(j) + " not present");
            }
            graph_.erase(i, j);
            phase_.apply(i, j, +1);
        }
        if (++ops_in_phase_ >= phase_length_) {
            phase_ = begin_phase(graph_, field_);
            ops_in_phase_ = 0;
            ++phases_;
        }
    }

    [[nodiscard]] bool reach_query(VertexId s, VertexId t) const {
        if (s >= graph_.n() || t >= graph_.n()) {
            throw std::out_of_range("query vertex out of range");
        }
        return s == t || phase_.entry(s, t) != 0;
    }

    [[nodiscard]] std::uint64_t inverse_entry(VertexId s, VertexId t) const { return phase_.entry(s, t); }

    [[nodiscard]] const DagGraph& graph() const { return graph_; }
    [[nodiscard]] const PrimeField& field() const { return field_; }
    [[nodiscard]] const InversePhase& phase() const { return phase_; }
    [[nodiscard]] std::uint32_t phase_length() const { return phase_length_; }
    [[nodiscard]] std::uint32_t ops_in_phase() const { return ops_in_phase_; }
    [[nodiscard]] std::uint64_t phases_started() const { return phases_; }

  private:
    DagGraph graph_;
    PrimeField field_;
    std::uint32_t phase_length_;
    std::uint32_t ops_in_phase_ = 0;
    std::uint64_t phases_ = 0;
    InversePhase phase_;
};

} // namespace dapsp
