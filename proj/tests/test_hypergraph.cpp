#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ldc/hypergraph.hpp"
#include "oracles.hpp"

using namespace ldc;

namespace {

Hypergraph from_text(const std::string& text) { return parse_hypergraph(text); }

Hypergraph triples(int n, const std::vector<std::vector<Vertex>>& edges, int k = 1) {
    Hypergraph h;
    h.q = static_cast<int>(edges.empty() ? 3 : edges.front().size());
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

}  // namespace

TEST_CASE("parse: simple document") {
    Hypergraph h = from_text("q=3 n=6 k=2\n0 0 1 2\n1 3 4 5\n");
    CHECK(h.q == 3);
    CHECK(h.n == 6);
    CHECK(h.k == 2);
    REQUIRE(h.edges.size() == 2);
    CHECK(h.edges[0].color == 0);
    CHECK(h.edges[0].vertices == std::vector<Vertex>{0, 1, 2});
    CHECK(h.edges[1].color == 1);
}

TEST_CASE("parse: normalizes vertex order and supports comments") {
    Hypergraph h = from_text("# leading comment\nq=3 n=6 k=1\n0 2 0 1 # trailing\n\n");
    REQUIRE(h.edges.size() == 1);
    CHECK(h.edges[0].vertices == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("parse: errors carry line numbers") {
    CHECK_THROWS_WITH_AS(from_text("q=3 n=6 k=1\n0 0 0 2\n"),
                         doctest::Contains("duplicate vertex"), ParseError);
    try {
        from_text("q=3 n=6 k=1\n0 0 1 2\n0 0 1 9\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }
    CHECK_THROWS_AS(from_text("q=3 n=6\n"), ParseError);
    CHECK_THROWS_AS(from_text("q=3 n=6 k=1\n0 1 2\n"), ParseError);    // wrong arity
    CHECK_THROWS_AS(from_text("q=3 n=6 k=1\n5 0 1 2\n"), ParseError);  // color range
    CHECK_THROWS_AS(from_text("# nothing\n"), ParseError);             // missing header
}

TEST_CASE("parse: empty body after header") {
    Hypergraph h = from_text("q=3 n=6 k=2\n");
    CHECK(h.edges.empty());
    CHECK(h.q == 3);
}

TEST_CASE("co_degree: direct counts") {
    Hypergraph h = triples(7, {{1, 2, 3}, {1, 2, 4}, {1, 5, 6}});
    std::vector<Vertex> q12{1, 2}, q1{1}, q25{2, 5}, big{1, 2, 3, 4};
    CHECK(co_degree(h, q12) == 2);
    CHECK(co_degree(h, q1) == 3);
    CHECK(co_degree(h, q25) == 0);
    CHECK(co_degree(h, big) == 0);  // |Q| > q
}

TEST_CASE("co_degree_profile: worked example against brute force") {
    Hypergraph h = triples(7, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 3, 5}});
    CoDegreeProfile p = co_degree_profile(h);
    CHECK(p.d == std::vector<std::int64_t>{6, 4, 1});
    CHECK(p.witnesses[0] == std::vector<Vertex>{1});
    CHECK(p.witnesses[1] == std::vector<Vertex>{1, 2});
    for (int t = 1; t <= 3; ++t) CHECK(p.max_at(t) == oracle::max_co_degree_brute(h, t));
}

TEST_CASE("co_degree_profile: single edge and parallel edges") {
    CHECK(co_degree_profile(triples(4, {{1, 2, 3}})).d == std::vector<std::int64_t>{1, 1, 1});
    CHECK(co_degree_profile(triples(4, {{1, 2, 3}, {1, 2, 3}})).d ==
          std::vector<std::int64_t>{2, 2, 2});
}

TEST_CASE("co_degree_profile: empty hypergraph gives zero profile without witnesses") {
    Hypergraph h;
    h.q = 3;
    h.n = 5;
    h.k = 1;
    CoDegreeProfile p = co_degree_profile(h);
    CHECK(p.d == std::vector<std::int64_t>{0, 0, 0});
    for (const auto& w : p.witnesses) CHECK(w.empty());
}

TEST_CASE("restrict_to: definition, empty Q, and missing vertex") {
    Hypergraph h = triples(7, {{1, 2, 3}, {1, 2, 4}, {1, 5, 6}});
    std::vector<Vertex> q12{1, 2};
    Hypergraph r = restrict_to(h, q12);
    REQUIRE(r.edges.size() == 2);
    CHECK(r.edges[0].vertices == std::vector<Vertex>{1, 2, 3});
    CHECK(r.edges[1].vertices == std::vector<Vertex>{1, 2, 4});
    CHECK(restrict_to(h, {}).edges.size() == 3);
    std::vector<Vertex> absent{0};
    CHECK(restrict_to(h, absent).edges.empty());
    CHECK(restrict_indices(h, q12) == std::vector<EdgeIndex>{0, 1});
}

TEST_CASE("validate_matchings: violations reported, not thrown") {
    Hypergraph good = from_text("q=3 n=9 k=2\n0 0 1 2\n0 3 4 5\n1 0 3 6\n");
    MatchingReport ok = validate_matchings(good);
    CHECK(ok.all_matchings);
    CHECK(ok.properly_colored);

    Hypergraph bad = from_text("q=3 n=9 k=1\n0 0 1 2\n0 2 3 4\n");
    MatchingReport report = validate_matchings(bad);
    CHECK_FALSE(report.all_matchings);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].shared == 2);
    CHECK(report.violations[0].first == 0);
    CHECK(report.violations[0].second == 1);

    Hypergraph empty = from_text("q=3 n=4 k=1\n");
    CHECK(validate_matchings(empty).all_matchings);
}

TEST_CASE("properties: profile monotonicity, average-degree bound, restriction law") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 6 + static_cast<int>(rng() % 12);
        int q = 3 + 2 * static_cast<int>(rng() % 2);
        int edges = 1 + static_cast<int>(rng() % 60);
        Hypergraph h = oracle::random_hypergraph(n, 3, q, edges, rng);
        CoDegreeProfile p = co_degree_profile(h);
        for (int t = 1; t < q; ++t) CHECK(p.max_at(t) >= p.max_at(t + 1));
        CHECK(p.max_at(1) * static_cast<std::int64_t>(n) >= h.size());
        CHECK(p.max_at(1) >= (h.size() + n - 1) / n);  // d_1 >= ceil(|H| / n)

        std::vector<Vertex> q1{static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n))};
        std::vector<Vertex> q2 = q1;
        Vertex other = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
        if (other != q1[0]) {
            q2.push_back(other);
            std::sort(q2.begin(), q2.end());
        }
        CHECK(restrict_to(h, q1).size() == co_degree(h, q1));
        CHECK(co_degree(h, q2) <= co_degree(h, q1));
    }
}

TEST_CASE("round-trip: parse(serialize(h)) == h") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 5 + static_cast<int>(rng() % 20);
        Hypergraph h = oracle::random_hypergraph(n, 4, 3, 1 + static_cast<int>(rng() % 30), rng);
        CHECK(parse_hypergraph(serialize(h)) == h);
        CHECK(content_hash(h) == content_hash(parse_hypergraph(serialize(h))));
    }
    Hypergraph empty;
    empty.q = 5;
    empty.n = 9;
    empty.k = 2;
    CHECK(parse_hypergraph(serialize(empty)) == empty);
}

TEST_CASE("validate: structural invariants enforced") {
    Hypergraph h = triples(4, {{0, 1, 2}});
    CHECK_NOTHROW(validate(h));
    h.edges[0].vertices = {2, 1, 0};
    CHECK_THROWS_AS(validate(h), std::invalid_argument);
    h.edges[0].vertices = {0, 1};
    CHECK_THROWS_AS(validate(h), std::invalid_argument);
    h.edges[0].vertices = {0, 1, 5};
    CHECK_THROWS_AS(validate(h), std::invalid_argument);
}
