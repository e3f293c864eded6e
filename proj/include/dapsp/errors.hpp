#pragma once

#include <stdexcept>
#include <string>

namespace dapsp {

// Raised for vertex updates that violate graph-core preconditions (duplicate
// neighbors, self-loops, out-of-range ids, weight overflow).
class MalformedUpdate : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Parameter validation failures (h, tau, delta, prime, phase length...).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Operation requested in a mode that does not support it (e.g. BFS on a
// weighted graph).
class ModeError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// A broken internal invariant: stale price function, corrupted index, ...
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Queries are forbidden while the current graph has a negative cycle.
class QueryForbidden : public std::runtime_error {
  public:
    QueryForbidden() : std::runtime_error("query forbidden: graph contains a negative cycle") {}
};

class NoPath : public std::runtime_error {
  public:
    NoPath(unsigned s, unsigned t)
        : std::runtime_error("no path from " + std::to_string(s) + " to " + std::to_string(t)) {}
};

class NotADag : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace dapsp
