#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

#include "ldc/decompose.hpp"
#include "oracles.hpp"

using namespace ldc;

namespace {

Hypergraph triples(int n, const std::vector<std::vector<Vertex>>& edges, int k = 1) {
    Hypergraph h;
    h.q = 3;
    h.n = n;
    h.k = k;
    for (const auto& vs : edges) {
        Hyperedge e;
        e.vertices = vs;
        std::sort(e.vertices.begin(), e.vertices.end());
        h.edges.push_back(std::move(e));
    }
    return h;
}

std::vector<EdgeIndex> all_indices(const Hypergraph& h) {
    std::vector<EdgeIndex> idx(h.edges.size());
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

void check_partition(const Hypergraph& h, const Decomposition& d) {
    std::vector<int> seen(h.edges.size(), 0);
    for (const Piece& p : d.pieces)
        for (EdgeIndex e : p.edges) ++seen[static_cast<std::size_t>(e)];
    for (EdgeIndex e : d.leftover) ++seen[static_cast<std::size_t>(e)];
    for (int count : seen) CHECK(count == 1);
}

std::int64_t piece_bound(const Hypergraph& h) {
    if (h.size() == 0) return 0;
    return h.q * static_cast<std::int64_t>(std::ceil(std::log2(double(h.size())))) + 1;
}

}  // namespace

TEST_CASE("extract_regular: single edge, t=2") {
    Hypergraph h = triples(5, {{1, 2, 3}});
    auto [piece, residual] = extract_regular(h, all_indices(h), 2);
    CHECK(residual.empty());
    REQUIRE(piece.groups.size() == 1);
    CHECK(piece.groups[0].q_set == std::vector<Vertex>{1, 2});  // lexicographic choice
    CHECK(piece.groups[0].edges == std::vector<EdgeIndex>{0});
}

TEST_CASE("extract_regular: heavy pair absorbs everything in one group") {
    Hypergraph h = triples(7, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 6}});
    auto [piece, residual] = extract_regular(h, all_indices(h), 2);
    CHECK(residual.empty());
    REQUIRE(piece.groups.size() == 1);
    CHECK(piece.groups[0].q_set == std::vector<Vertex>{1, 2});
    CHECK(piece.groups[0].edges.size() == 4);
}

TEST_CASE("extract_regular: stops once the residual co-degree halves") {
    // {1,2} has co-degree 4; every other pair at most 2 (< 4/2 boundary is 2,
    // and 2*2 >= 4 so pairs of co-degree 2 still get extracted).
    Hypergraph h = triples(9, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 6}, {7, 8, 3}});
    auto [piece, residual] = extract_regular(h, all_indices(h), 2);
    // The singleton {7,8,3} has all pair co-degrees 1 and 2*1 < 4.
    CHECK(residual == std::vector<EdgeIndex>{4});
    CHECK(piece.edges.size() == 4);
}

TEST_CASE("extract_regular: empty input rejected") {
    Hypergraph h = triples(5, {});
    std::vector<EdgeIndex> none;
    CHECK_THROWS_AS(extract_regular(h, none, 1), std::invalid_argument);
}

TEST_CASE("decompose: empty hypergraph") {
    Hypergraph h = triples(6, {});
    Decomposition d = decompose(h);
    CHECK(d.pieces.empty());
    CHECK(d.leftover.empty());
}

TEST_CASE("decompose: single edge yields one piece with t=2") {
    Hypergraph h = triples(6, {{0, 1, 2}});
    Decomposition d = decompose(h);
    REQUIRE(d.pieces.size() == 1);
    CHECK(d.pieces[0].t == 2);  // flat gammas select 2
    CHECK(d.pieces[0].edges == std::vector<EdgeIndex>{0});
    CHECK(certify_piece(h, d.pieces[0]).ok);
}

TEST_CASE("decompose: even q rejected") {
    Hypergraph h;
    h.q = 4;
    h.n = 8;
    h.k = 1;
    CHECK_THROWS_AS(decompose(h), std::invalid_argument);
}

TEST_CASE("decompose: partition, bound, progress, certification on random inputs") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        int q = trial % 2 == 0 ? 3 : 5;
        int n = 10 + static_cast<int>(rng() % 20);
        int edges = 1 + static_cast<int>(rng() % 120);
        Hypergraph h = oracle::random_hypergraph(n, 4, q, edges, rng);
        Decomposition d = decompose(h);
        check_partition(h, d);
        CHECK(static_cast<std::int64_t>(d.pieces.size()) <= piece_bound(h));
        for (const Piece& p : d.pieces) {
            PieceReport report = certify_piece(h, p);
            if (!report.ok) {
                for (const auto& check : report.checks)
                    if (!check.ok) MESSAGE(check.name, ": ", check.detail);
            }
            CHECK(report.ok);
        }

        // Progress: consecutive pieces with the same t halve the residual d_t.
        std::vector<EdgeIndex> current = all_indices(h);
        for (const Piece& p : d.pieces) {
            std::int64_t before = co_degree_profile(h, current).max_at(p.t);
            std::vector<EdgeIndex> next;
            std::vector<char> used(h.edges.size(), 0);
            for (EdgeIndex e : p.edges) used[static_cast<std::size_t>(e)] = 1;
            for (EdgeIndex e : current)
                if (!used[static_cast<std::size_t>(e)]) next.push_back(e);
            std::int64_t after = next.empty() ? 0 : co_degree_profile(h, next).max_at(p.t);
            CHECK(2 * after < before);
            current = std::move(next);
        }
        CHECK(current.empty());
    }
}

TEST_CASE("decompose: piece count respects the bound on a dense random instance") {
    std::mt19937_64 rng(77);
    Hypergraph h = oracle::random_hypergraph(30, 6, 3, 500, rng);
    Decomposition d = decompose(h);
    CHECK(static_cast<std::int64_t>(d.pieces.size()) <= 3 * 9 + 1);  // q ceil(log2 500) + 1
    check_partition(h, d);
}

TEST_CASE("filter_pieces: worked arithmetic and eta guarantees") {
    // Build a decomposition with piece sizes (90, 9, 1) over |H| = 100.
    Hypergraph h;
    h.q = 3;
    h.n = 300;
    h.k = 1;
    auto add_star = [&](Vertex base, int count) {
        for (int j = 0; j < count; ++j) {
            Hyperedge e;
            e.color = 0;
            e.vertices = {base, static_cast<Vertex>(base + 1), static_cast<Vertex>(base + 2 + j)};
            std::sort(e.vertices.begin(), e.vertices.end());
            h.edges.push_back(std::move(e));
        }
    };
    add_star(0, 90);
    add_star(100, 9);
    add_star(200, 1);
    Decomposition d;
    d.source_q = 3;
    d.source_n = 300;
    d.source_k = 1;
    d.source_edges = 100;
    EdgeIndex next = 0;
    for (int size : {90, 9, 1}) {
        Piece p;
        p.t = 2;
        Group g;
        g.q_set = {h.edges[static_cast<std::size_t>(next)].vertices[0],
                   h.edges[static_cast<std::size_t>(next)].vertices[1]};
        for (int j = 0; j < size; ++j) g.edges.push_back(next++);
        p.edges = g.edges;
        p.groups.push_back(std::move(g));
        d.pieces.push_back(std::move(p));
    }

    Decomposition filtered = filter_pieces(d, 0.3);
    // Threshold 0.3 * 100 / 3 = 10: only the 90-piece survives.
    REQUIRE(filtered.pieces.size() == 1);
    CHECK(filtered.pieces[0].edges.size() == 90);
    CHECK(filtered.leftover.size() == 10);
    CHECK(90 >= (1 - 0.3) * 100);
}

TEST_CASE("filter_pieces: single full piece unchanged; tiny eta keeps everything") {
    std::mt19937_64 rng(5);
    Hypergraph h = oracle::random_hypergraph(12, 3, 3, 40, rng);
    Decomposition d = decompose(h);
    std::size_t pieces = d.pieces.size();
    Decomposition all_kept = filter_pieces(d, 1e-9);
    CHECK(all_kept.pieces.size() == pieces);
    CHECK(all_kept.leftover.empty());
    CHECK_THROWS_AS(filter_pieces(all_kept, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(filter_pieces(all_kept, 1.0), std::invalid_argument);
}

TEST_CASE("filter_pieces: kept fraction is always at least 1 - eta") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Hypergraph h = oracle::random_hypergraph(16, 5, 3, 30 + static_cast<int>(rng() % 100), rng);
        Decomposition d = filter_pieces(decompose(h), 0.25);
        std::int64_t kept = 0;
        for (const Piece& p : d.pieces) kept += static_cast<std::int64_t>(p.edges.size());
        CHECK(static_cast<double>(kept) >= (1 - 0.25) * static_cast<double>(h.size()));
        check_partition(h, d);
    }
}

TEST_CASE("certify_piece: injected group-size violation is reported") {
    Hypergraph h = triples(8, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 6}});
    Decomposition d = decompose(h);
    REQUIRE(d.pieces.size() == 1);
    Piece tampered = d.pieces[0];
    REQUIRE(tampered.groups.size() == 1);
    // Split one group of 4 into groups of 3 and 1; the 1-group breaks d_t/2.
    Group small;
    small.q_set = tampered.groups[0].q_set;
    small.edges = {tampered.groups[0].edges.back()};
    tampered.groups[0].edges.pop_back();
    tampered.groups.push_back(small);
    PieceReport report = certify_piece(h, tampered);
    CHECK_FALSE(report.ok);
    bool size_check_failed = false;
    for (const auto& check : report.checks)
        if (check.name == "group-sizes" && !check.ok) size_check_failed = true;
    CHECK(size_check_failed);
}

TEST_CASE("certify_piece: edge outside its group Q is reported") {
    Hypergraph h = triples(8, {{1, 2, 3}, {4, 5, 6}});
    Decomposition d = decompose(h);
    Piece tampered = d.pieces[0];
    tampered.groups[0].edges.push_back(tampered.groups.back().edges[0]);
    PieceReport report = certify_piece(h, tampered);
    CHECK_FALSE(report.ok);
}
