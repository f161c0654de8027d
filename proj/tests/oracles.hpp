#pragma once

// Independent reference implementations used by the test suites. Everything
// here recomputes results from first principles (full enumeration, direct
// inequality evaluation) and deliberately avoids the library's code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "ldc/hypergraph.hpp"

namespace oracle {

using ldc::Color;
using ldc::EdgeIndex;
using ldc::Hyperedge;
using ldc::Hypergraph;
using ldc::Vertex;

template <typename F>
inline void for_all_subsets(int n, int size, F&& fn) {
    std::vector<Vertex> subset(static_cast<std::size_t>(size));
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    if (size > n) return;
    while (true) {
        for (int j = 0; j < size; ++j) subset[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j)];
        fn(subset);
        int j = size - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == n - size + j) --j;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int m = j + 1; m < size; ++m)
            idx[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(m) - 1] + 1;
    }
}

// Max t-co-degree by scanning every possible Q in the full vertex set.
inline std::int64_t max_co_degree_brute(const Hypergraph& h, int t) {
    std::int64_t best = 0;
    for_all_subsets(h.n, t, [&](const std::vector<Vertex>& q_set) {
        std::int64_t count = 0;
        for (const Hyperedge& e : h.edges)
            if (std::includes(e.vertices.begin(), e.vertices.end(), q_set.begin(), q_set.end()))
                ++count;
        best = std::max(best, count);
    });
    return best;
}

// Direct evaluation of the three good-index inequality families, written
// against the formulas rather than the library's slack bookkeeping.
inline bool good_index_direct(int q, const std::vector<double>& gamma, int t, double tol = 1e-9) {
    auto g = [&](int r) { return gamma[static_cast<std::size_t>(r) - 1]; };
    for (int r = 1; 2 * r <= q - t + 1; ++r)
        if (g(r) > g(t) + 1.0 - 2.0 * r / q + tol) return false;
    for (int r = t; 2 * r <= q + t; ++r) {
        double rhs = g(t) - 2.0 * (r - t) / q + (t - (t % 2 == 0 ? 1 : 0)) / static_cast<double>(q);
        if (g(r) > rhs + tol) return false;
    }
    if (2 * t < q) {
        if (g(t) < g(1) - 2.0 * (t - 1) / q - tol) return false;
    } else {
        if (g(t) < g(1) - 1.0 + 2.0 / q - tol) return false;
    }
    return true;
}

// Random properly-colored instance: k partial matchings over [n].
inline Hypergraph random_colored_matchings(int n, int k, int q, int size, std::mt19937_64& rng) {
    Hypergraph h;
    h.q = q;
    h.n = n;
    h.k = k;
    std::vector<Vertex> pool(static_cast<std::size_t>(n));
    for (Color c = 0; c < k; ++c) {
        std::iota(pool.begin(), pool.end(), 0);
        for (int j = n - 1; j > 0; --j) {
            auto pick = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(j + 1));
            std::swap(pool[static_cast<std::size_t>(j)], pool[pick]);
        }
        for (int e = 0; e < size; ++e) {
            Hyperedge edge;
            edge.color = c;
            edge.vertices.assign(pool.begin() + e * q, pool.begin() + (e + 1) * q);
            std::sort(edge.vertices.begin(), edge.vertices.end());
            h.edges.push_back(std::move(edge));
        }
    }
    return h;
}

// Arbitrary random multi-hypergraph (not necessarily matchings).
inline Hypergraph random_hypergraph(int n, int k, int q, int edges, std::mt19937_64& rng) {
    Hypergraph h;
    h.q = q;
    h.n = n;
    h.k = k;
    for (int e = 0; e < edges; ++e) {
        std::set<Vertex> chosen;
        while (static_cast<int>(chosen.size()) < q)
            chosen.insert(static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)));
        Hyperedge edge;
        edge.color = static_cast<Color>(rng() % static_cast<std::uint64_t>(k));
        edge.vertices.assign(chosen.begin(), chosen.end());
        h.edges.push_back(std::move(edge));
    }
    return h;
}

// Exhaustive Kikuchi pair count for one hyperedge pair: walks every ordered
// (S, T) over subsets of the doubled ground set and tests the defining
// conditions verbatim.
inline std::int64_t kikuchi_pairs_exhaustive(const Hyperedge& c1, const Hyperedge& c2,
                                             const std::vector<Vertex>& q_set, int n, int ell) {
    std::vector<std::int32_t> x, y;
    for (Vertex v : c1.vertices)
        if (!std::binary_search(q_set.begin(), q_set.end(), v)) x.push_back(v);
    for (Vertex v : c2.vertices)
        if (!std::binary_search(q_set.begin(), q_set.end(), v)) y.push_back(v + n);

    int m = static_cast<int>(x.size());
    std::int64_t count = 0;
    for_all_subsets(2 * n, ell, [&](const std::vector<Vertex>& s_raw) {
        std::vector<std::int32_t> s(s_raw.begin(), s_raw.end());
        // T = S xor (X u Y)
        std::vector<std::int32_t> flip(x.begin(), x.end());
        flip.insert(flip.end(), y.begin(), y.end());
        std::sort(flip.begin(), flip.end());
        std::vector<std::int32_t> t;
        std::set_symmetric_difference(s.begin(), s.end(), flip.begin(), flip.end(),
                                      std::back_inserter(t));
        if (static_cast<int>(t.size()) != ell) return;
        auto inter = [](const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
            int c = 0;
            for (std::int32_t e : b) c += std::binary_search(a.begin(), a.end(), e);
            return c;
        };
        int sx = inter(s, x), sy = inter(s, y), tx = inter(t, x), ty = inter(t, y);
        bool ok;
        if (m % 2 == 0) {
            ok = sx == m / 2 && sy == m / 2 && tx == m / 2 && ty == m / 2;
        } else {
            int up = (m + 1) / 2, dn = m / 2;
            ok = (sx == up && ty == up && sy == dn && tx == dn) ||
                 (sx == dn && ty == dn && sy == up && tx == up);
        }
        if (ok) ++count;
    });
    return count;
}

// Direct evaluation of the left-right pair polynomial f(x) for one piece:
// sum over groups and ordered color pairs (left, right) of
// b_C b_C' x_{C \ Q} x_{C' \ Q}.
inline std::int64_t eval_f_direct(const Hypergraph& h, const std::vector<std::vector<EdgeIndex>>& groups,
                                  const std::vector<std::vector<Vertex>>& q_sets,
                                  const std::vector<std::int8_t>& signs,
                                  const std::set<Color>& left, const std::set<Color>& right,
                                  const std::vector<std::int8_t>& x) {
    std::int64_t total = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (EdgeIndex e1 : groups[g]) {
            const Hyperedge& c1 = h.edges[static_cast<std::size_t>(e1)];
            if (!left.count(c1.color)) continue;
            int term1 = signs[static_cast<std::size_t>(c1.color)];
            for (Vertex v : c1.vertices)
                if (!std::binary_search(q_sets[g].begin(), q_sets[g].end(), v))
                    term1 *= x[static_cast<std::size_t>(v)];
            for (EdgeIndex e2 : groups[g]) {
                if (e2 == e1) continue;
                const Hyperedge& c2 = h.edges[static_cast<std::size_t>(e2)];
                if (!right.count(c2.color)) continue;
                int term2 = signs[static_cast<std::size_t>(c2.color)];
                for (Vertex v : c2.vertices)
                    if (!std::binary_search(q_sets[g].begin(), q_sets[g].end(), v))
                        term2 *= x[static_cast<std::size_t>(v)];
                total += term1 * term2;
            }
        }
    }
    return total;
}

}  // namespace oracle
