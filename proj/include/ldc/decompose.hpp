#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldc/goodindex.hpp"
#include "ldc/hypergraph.hpp"

namespace ldc {

// One extracted restriction: all residual edges that contained q_set at the
// moment of extraction.
struct Group {
    std::vector<Vertex> q_set;
    std::vector<EdgeIndex> edges;
};

// A regular part produced by one extraction round. Group sizes all lie in
// [d_t/2, d_t] for the piece's own maximum t-co-degree d_t, and the chosen t
// is a good index both for gamma_at_creation (the parent hypergraph's gammas)
// and for the piece's own gamma sequence.
struct Piece {
    int t = 0;
    std::vector<Group> groups;
    std::vector<EdgeIndex> edges;  // flattened, extraction order
    GammaSequence gamma_at_creation;
};

struct Decomposition {
    std::vector<Piece> pieces;
    std::vector<EdgeIndex> leftover;
    double eta = 0.0;  // requested error fraction; 0 when unfiltered
    int source_q = 0, source_n = 0, source_k = 0;
    std::int64_t source_edges = 0;
    std::string source_hash;
};

// Greedy single-index split: with D the maximum t-co-degree of `current`,
// repeatedly moves the heaviest restriction (ties: lexicographically smallest
// Q) into the regular part until the residual's t-co-degree drops below D/2.
// Returns (regular piece, residual edge indices). `current` must be nonempty.
std::pair<Piece, std::vector<EdgeIndex>> extract_regular(const Hypergraph& h,
                                                         std::span<const EdgeIndex> current, int t);

// Full iteration: recompute gammas on the residual, pick a good index, peel a
// regular piece, repeat until no edge remains. Piece count is at most
// q * ceil(log2 |H|) + 1. Requires odd q >= 3.
Decomposition decompose(const Hypergraph& h);

// Keeps pieces of size >= eta * |H| / |pieces|, moving the rest to leftover;
// the kept pieces always retain at least (1 - eta) * |H| edges.
Decomposition filter_pieces(Decomposition d, double eta);

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct PieceReport {
    bool ok = false;
    std::int64_t piece_d_t = 0;
    std::optional<GammaSequence> gamma_own;
    std::vector<CheckResult> checks;
};

// Independent re-verification of a piece against the source hypergraph:
// group containment, group sizes vs the recomputed d_t, good index on both
// gamma sequences, group count vs 2|piece|/d_t, and partition sanity.
PieceReport certify_piece(const Hypergraph& h, const Piece& p);

}  // namespace ldc
