#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ldc {

using Vertex = std::int32_t;
using Color = std::int32_t;
using EdgeIndex = std::int32_t;

// Thrown by the text parser; `line` is 1-based.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// One hyperedge: exactly q distinct vertices, stored ascending, plus a color.
struct Hyperedge {
    std::vector<Vertex> vertices;
    Color color = 0;
    bool operator==(const Hyperedge&) const = default;
};

// Colored q-uniform multi-hypergraph on vertex set [0, n). Parallel edges are
// allowed and count with multiplicity everywhere. Edge identity is the index
// into `edges`; certificates reference edges only by these indices.
//
// Immutable by convention after construction/validation; all operations below
// are pure functions of their inputs.
struct Hypergraph {
    int q = 0;
    int n = 0;
    int k = 0;
    std::vector<Hyperedge> edges;

    std::int64_t size() const { return static_cast<std::int64_t>(edges.size()); }
    bool operator==(const Hypergraph&) const = default;
};

// Throws std::invalid_argument on any structural violation (arity, vertex
// range, duplicate vertex within an edge, color range, unsorted vertices).
void validate(const Hypergraph& h);

// Text format: first non-comment line "q=<int> n=<int> k=<int>", then one edge
// per line as "<color> <v1> ... <vq>". '#' starts a comment, LF line endings.
Hypergraph parse_hypergraph(std::string_view text);

// Emits edges in index order, vertices ascending; parse(serialize(h)) == h.
std::string serialize(const Hypergraph& h);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string content_hash(const Hypergraph& h);

// Number of edges containing the vertex set `q_set` (multiplicity counted).
// |q_set| > q yields 0. `q_set` must be sorted ascending.
std::int64_t co_degree(const Hypergraph& h, std::span<const Vertex> q_set);
std::int64_t co_degree(const Hypergraph& h, std::span<const EdgeIndex> subset,
                       std::span<const Vertex> q_set);

// d[t-1] = max co-degree over vertex sets of size t, for t = 1..q, computed
// exactly by enumerating the t-subsets of every edge. witnesses[t-1] is the
// lexicographically smallest argmax set (empty when d[t-1] == 0).
struct CoDegreeProfile {
    std::vector<std::int64_t> d;
    std::vector<std::vector<Vertex>> witnesses;
    std::int64_t max_at(int t) const { return d.at(static_cast<std::size_t>(t) - 1); }
};

CoDegreeProfile co_degree_profile(const Hypergraph& h);
CoDegreeProfile co_degree_profile(const Hypergraph& h, std::span<const EdgeIndex> subset);

// Indices of all edges containing q_set, in index order.
std::vector<EdgeIndex> restrict_indices(const Hypergraph& h, std::span<const Vertex> q_set);

// Sub-hypergraph of all edges containing q_set, colors preserved. The i-th
// edge of the result is h.edges[restrict_indices(h, q_set)[i]].
Hypergraph restrict_to(const Hypergraph& h, std::span<const Vertex> q_set);

struct MatchingViolation {
    Color color;
    EdgeIndex first, second;
    Vertex shared;
};

// Violations are report content, never failures. A hypergraph whose color
// classes are all matchings is automatically properly edge-colored (edges
// sharing a vertex have distinct colors), and vice versa.
struct MatchingReport {
    bool all_matchings = true;
    bool properly_colored = true;
    std::vector<MatchingViolation> violations;
};

MatchingReport validate_matchings(const Hypergraph& h);

}  // namespace ldc
