#include "ldc/kikuchi.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace ldc {

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        result *= (n - k + j);
        result /= j;
    }
    return result;
}

BigInt matching_size_D(int q, int t, int n, int ell) {
    if (t < 1 || t >= q) throw std::invalid_argument("matching_size_D requires 1 <= t < q");
    if (ell < 0) throw std::invalid_argument("level ell must be non-negative");
    int m = q - t;
    BigInt half = binomial(m, m / 2);
    BigInt result = half * half * binomial(2 * static_cast<std::int64_t>(n) - 2 * m,
                                           static_cast<std::int64_t>(ell) - m);
    if (m % 2 == 1) result *= 2;
    return result;
}

namespace {

template <typename T, typename F>
void for_each_combination(const std::vector<T>& pool, int size, F&& fn) {
    int total = static_cast<int>(pool.size());
    if (size < 0 || size > total) return;
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<T> chosen(static_cast<std::size_t>(size));
    while (true) {
        for (int j = 0; j < size; ++j)
            chosen[static_cast<std::size_t>(j)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        fn(chosen);
        int j = size - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == total - size + j) --j;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int mth = j + 1; mth < size; ++mth)
            idx[static_cast<std::size_t>(mth)] = idx[static_cast<std::size_t>(mth) - 1] + 1;
    }
}

std::vector<std::int32_t> encoded_difference(const Hyperedge& edge, std::span<const Vertex> q_set,
                                             int offset) {
    std::vector<std::int32_t> out;
    for (Vertex v : edge.vertices)
        if (!std::binary_search(q_set.begin(), q_set.end(), v)) out.push_back(v + offset);
    return out;
}

// (|S n X|, |S n Y|) splits allowed by the balanced-intersection rule.
std::vector<std::pair<int, int>> allowed_splits(int m) {
    if (m % 2 == 0) return {{m / 2, m / 2}};
    return {{(m + 1) / 2, m / 2}, {m / 2, (m + 1) / 2}};
}

KVertex merge_sorted(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b,
                     const std::vector<std::int32_t>& c) {
    KVertex out;
    out.reserve(a.size() + b.size() + c.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::pair<KVertex, KVertex>> pair_matching(const Hyperedge& c1, const Hyperedge& c2,
                                                       std::span<const Vertex> q_set, int n,
                                                       int ell) {
    for (Vertex v : q_set) {
        if (!std::binary_search(c1.vertices.begin(), c1.vertices.end(), v) ||
            !std::binary_search(c2.vertices.begin(), c2.vertices.end(), v))
            throw std::invalid_argument("pair_matching: q_set must be contained in both hyperedges");
    }
    int q = static_cast<int>(c1.vertices.size());
    int t = static_cast<int>(q_set.size());
    if (t < 1 || t >= q) throw std::invalid_argument("pair_matching requires 1 <= |q_set| < q");
    int m = q - t;

    std::vector<std::int32_t> x = encoded_difference(c1, q_set, 0);
    std::vector<std::int32_t> y = encoded_difference(c2, q_set, n);

    // Everything outside X u Y is available for the common part S n T.
    std::vector<std::int32_t> rest;
    rest.reserve(static_cast<std::size_t>(2 * n) - x.size() - y.size());
    for (std::int32_t e = 0; e < 2 * n; ++e) {
        if (std::binary_search(x.begin(), x.end(), e)) continue;
        if (std::binary_search(y.begin(), y.end(), e)) continue;
        rest.push_back(e);
    }

    std::vector<std::pair<KVertex, KVertex>> out;
    for (auto [a1, a2] : allowed_splits(m)) {
        for_each_combination(x, a1, [&](const std::vector<std::int32_t>& sx) {
            std::vector<std::int32_t> tx;
            for (std::int32_t e : x)
                if (!std::binary_search(sx.begin(), sx.end(), e)) tx.push_back(e);
            for_each_combination(y, a2, [&](const std::vector<std::int32_t>& sy) {
                std::vector<std::int32_t> ty;
                for (std::int32_t e : y)
                    if (!std::binary_search(sy.begin(), sy.end(), e)) ty.push_back(e);
                for_each_combination(rest, ell - m, [&](const std::vector<std::int32_t>& w) {
                    out.emplace_back(merge_sorted(sx, sy, w), merge_sorted(tx, ty, w));
                });
            });
        });
    }
    return out;
}

namespace {

struct PairRef {
    EdgeIndex c1, c2;
    std::size_t group;
};

std::vector<PairRef> ordered_pairs(const Hypergraph& h, const Piece& piece,
                                   std::span<const Color> left, std::span<const Color> right) {
    std::set<Color> lset(left.begin(), left.end());
    std::set<Color> rset(right.begin(), right.end());
    std::vector<PairRef> out;
    for (std::size_t g = 0; g < piece.groups.size(); ++g) {
        const Group& group = piece.groups[g];
        for (EdgeIndex e1 : group.edges) {
            if (!lset.count(h.edges[static_cast<std::size_t>(e1)].color)) continue;
            for (EdgeIndex e2 : group.edges) {
                if (e2 == e1) continue;
                if (!rset.count(h.edges[static_cast<std::size_t>(e2)].color)) continue;
                out.push_back({e1, e2, g});
            }
        }
    }
    return out;
}

}  // namespace

SignedKikuchi build_signed(const Hypergraph& h, const Piece& piece, std::span<const std::int8_t> signs,
                           std::span<const Color> left, std::span<const Color> right, int ell,
                           std::int64_t vertex_cap) {
    if (static_cast<int>(signs.size()) != h.k)
        throw std::invalid_argument("build_signed: need one sign per color");
    for (Color c : left)
        if (std::find(right.begin(), right.end(), c) != right.end())
            throw std::invalid_argument("build_signed: left/right split must be disjoint");
    if (ell < 1) throw std::invalid_argument("build_signed: ell must be >= 1");

    SignedKikuchi mat;
    mat.q = h.q;
    mat.t = piece.t;
    mat.ell = ell;
    mat.n = h.n;
    mat.total_vertices = binomial(2 * static_cast<std::int64_t>(h.n), ell);
    mat.pair_edges = matching_size_D(h.q, piece.t, h.n, ell);
    mat.signs.assign(signs.begin(), signs.end());
    mat.left.assign(left.begin(), left.end());
    mat.right.assign(right.begin(), right.end());

    if (mat.total_vertices > vertex_cap)
        throw KikuchiCapError("vertex count C(2n, ell) exceeds the explicit cap of " +
                              std::to_string(vertex_cap) + "; use the implicit Kikuchi interface");

    std::vector<PairRef> pairs = ordered_pairs(h, piece, left, right);

    // Pass 1: rank the incident vertices lexicographically.
    std::map<KVertex, std::int32_t> rank;
    for (const PairRef& pr : pairs) {
        auto edges = pair_matching(h.edges[static_cast<std::size_t>(pr.c1)],
                                   h.edges[static_cast<std::size_t>(pr.c2)],
                                   piece.groups[pr.group].q_set, h.n, ell);
        for (auto& [s, t2] : edges) {
            rank.emplace(s, 0);
            rank.emplace(t2, 0);
        }
    }
    mat.verts.reserve(rank.size());
    std::int32_t next = 0;
    for (auto& [vertex, r] : rank) {
        r = next++;
        mat.verts.push_back(vertex);
    }

    // Pass 2: accumulate signed values and pair multiplicities.
    std::vector<std::unordered_map<std::int32_t, std::pair<std::int64_t, std::int64_t>>> acc(
        mat.verts.size());
    mat.unsigned_degree.assign(mat.verts.size(), 0);
    for (const PairRef& pr : pairs) {
        int sign = signs[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(pr.c1)].color)] *
                   signs[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(pr.c2)].color)];
        auto edges = pair_matching(h.edges[static_cast<std::size_t>(pr.c1)],
                                   h.edges[static_cast<std::size_t>(pr.c2)],
                                   piece.groups[pr.group].q_set, h.n, ell);
        for (auto& [s, t2] : edges) {
            std::int32_t rs = rank[s], rt = rank[t2];
            auto& cell = acc[static_cast<std::size_t>(rs)][rt];
            cell.first += sign;
            cell.second += 1;
            mat.unsigned_degree[static_cast<std::size_t>(rs)] += 1;
        }
    }

    mat.rows.resize(mat.verts.size());
    for (std::size_t r = 0; r < acc.size(); ++r) {
        auto& row = mat.rows[r];
        row.reserve(acc[r].size());
        for (const auto& [col, cell] : acc[r]) row.emplace_back(col, cell.first);
        std::sort(row.begin(), row.end());
        // keep exact zeros out of the sparse structure but remember their
        // pair multiplicity in unsigned_degree (already counted above)
        std::erase_if(row, [](const auto& e) { return e.second == 0; });
    }
    return mat;
}

std::int64_t SignedKikuchi::entry_count() const {
    std::int64_t count = 0;
    for (const auto& row : rows) count += static_cast<std::int64_t>(row.size());
    return count;
}

std::int64_t SignedKikuchi::max_unsigned_degree() const {
    std::int64_t best = 0;
    for (std::int64_t d : unsigned_degree) best = std::max(best, d);
    return best;
}

double SignedKikuchi::row_sum_bound() const {
    double best = 0;
    for (const auto& row : rows) {
        double sum = 0;
        for (const auto& [col, value] : row) sum += std::abs(static_cast<double>(value));
        best = std::max(best, sum);
    }
    return best;
}

double SignedKikuchi::frobenius() const {
    double sum = 0;
    for (const auto& row : rows)
        for (const auto& [col, value] : row) {
            double v = static_cast<double>(value);
            sum += v * v;
        }
    return std::sqrt(sum);
}

std::int64_t quadratic_form(const SignedKikuchi& m, std::span<const std::int8_t> x) {
    if (static_cast<int>(x.size()) != m.n)
        throw std::invalid_argument("quadratic_form: expected one +/-1 entry per base vertex");
    std::vector<std::int8_t> z(m.verts.size(), 1);
    for (std::size_t r = 0; r < m.verts.size(); ++r)
        for (std::int32_t e : m.verts[r])
            z[r] = static_cast<std::int8_t>(z[r] * x[static_cast<std::size_t>(e % m.n)]);
    std::int64_t total = 0;
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        for (const auto& [col, value] : m.rows[r])
            total += value * z[r] * z[static_cast<std::size_t>(col)];
    return total;
}

PruneResult prune_heavy(const SignedKikuchi& m, double threshold) {
    PruneResult result;
    result.pruned = m;
    std::vector<char> drop(m.verts.size(), 0);
    for (std::size_t r = 0; r < m.verts.size(); ++r)
        if (static_cast<double>(m.unsigned_degree[r]) > threshold) drop[r] = 1;

    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        if (drop[r]) {
            result.pruned.rows[r].clear();
            result.pruned.unsigned_degree[r] = 0;
            ++result.removed_vertices;
            continue;
        }
        std::erase_if(result.pruned.rows[r],
                      [&](const auto& e) { return drop[static_cast<std::size_t>(e.first)] != 0; });
    }
    // Degrees of surviving rows are left at their unpruned pair counts: the
    // count is an upper bound and the pruning criterion stays monotone.
    result.removed_fraction =
        m.total_vertices == 0
            ? 0.0
            : static_cast<double>(result.removed_vertices) / m.total_vertices.convert_to<double>();
    return result;
}

SpectralBracket spectral_norm(const SignedKikuchi& m, double tol, int restarts, int max_iterations,
                              std::uint64_t seed) {
    SpectralBracket bracket;
    bracket.upper = std::min(m.row_sum_bound(), m.frobenius());
    std::size_t dim = m.verts.size();
    if (dim == 0 || m.entry_count() == 0) {
        bracket.converged = true;
        return bracket;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(dim), w(dim);

    for (int attempt = 0; attempt < restarts; ++attempt) {
        for (double& c : v) c = gauss(rng);
        double prev = 0;
        for (int iter = 0; iter < max_iterations; ++iter) {
            ++bracket.iterations;
            std::fill(w.begin(), w.end(), 0.0);
            for (std::size_t r = 0; r < dim; ++r)
                for (const auto& [col, value] : m.rows[r])
                    w[r] += static_cast<double>(value) * v[static_cast<std::size_t>(col)];
            double nv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
            double rayleigh = std::inner_product(v.begin(), v.end(), w.begin(), 0.0) / nv;
            bracket.lower = std::max(bracket.lower, std::abs(rayleigh));
            double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
            if (norm == 0) break;
            for (std::size_t r = 0; r < dim; ++r) v[r] = w[r] / norm;
            if (std::abs(std::abs(rayleigh) - prev) <= tol * std::max(1.0, std::abs(rayleigh))) {
                bracket.converged = true;
                break;
            }
            prev = std::abs(rayleigh);
        }
    }
    return bracket;
}

namespace {

// Monomial-size splits (|R|, |R'|) of the degree polynomial.
std::vector<std::pair<int, int>> degree_splits(int m) { return allowed_splits(m); }

std::int64_t small_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

bool has_duplicates(std::span<const Vertex> z) {
    std::vector<Vertex> sorted(z.begin(), z.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace

std::int64_t derivative_poly_eval(const Hypergraph& h, const Piece& piece, Color i,
                                  std::span<const Vertex> z1, std::span<const Vertex> z2,
                                  std::span<const std::uint8_t> s, std::span<const std::uint8_t> s2) {
    if (static_cast<int>(s.size()) != h.n || static_cast<int>(s2.size()) != h.n)
        throw std::invalid_argument("indicator vectors must have length n");
    if (has_duplicates(z1) || has_duplicates(z2)) return 0;

    int m = h.q - piece.t;
    auto splits = degree_splits(m);
    auto k1 = static_cast<int>(z1.size());
    auto k2 = static_cast<int>(z2.size());

    std::int64_t total = 0;
    for (const Group& group : piece.groups) {
        // Per edge: how many admissible R (containing z1, rest switched on in
        // s) and R' (same for z2 / s2) it offers, per split size.
        struct Counts {
            bool z1_ok, z2_ok;
            int avail1, avail2;
        };
        std::vector<Counts> info;
        std::vector<Color> colors;
        info.reserve(group.edges.size());
        for (EdgeIndex idx : group.edges) {
            const Hyperedge& e = h.edges[static_cast<std::size_t>(idx)];
            Counts c{true, true, 0, 0};
            for (Vertex v : z1)
                if (!std::binary_search(e.vertices.begin(), e.vertices.end(), v) ||
                    std::binary_search(group.q_set.begin(), group.q_set.end(), v))
                    c.z1_ok = false;
            for (Vertex v : z2)
                if (!std::binary_search(e.vertices.begin(), e.vertices.end(), v) ||
                    std::binary_search(group.q_set.begin(), group.q_set.end(), v))
                    c.z2_ok = false;
            for (Vertex v : e.vertices) {
                if (std::binary_search(group.q_set.begin(), group.q_set.end(), v)) continue;
                bool in_z1 = std::find(z1.begin(), z1.end(), v) != z1.end();
                bool in_z2 = std::find(z2.begin(), z2.end(), v) != z2.end();
                if (!in_z1 && s[static_cast<std::size_t>(v)]) ++c.avail1;
                if (!in_z2 && s2[static_cast<std::size_t>(v)]) ++c.avail2;
            }
            info.push_back(c);
            colors.push_back(e.color);
        }

        for (auto [r1, r2] : splits) {
            if (r1 < k1 || r2 < k2) continue;
            std::int64_t sum2 = 0;
            for (const Counts& c : info)
                if (c.z2_ok) sum2 += small_binomial(c.avail2, r2 - k2);
            for (std::size_t e = 0; e < info.size(); ++e) {
                if (colors[e] != i || !info[e].z1_ok) continue;
                std::int64_t own1 = small_binomial(info[e].avail1, r1 - k1);
                std::int64_t others2 =
                    sum2 - (info[e].z2_ok ? small_binomial(info[e].avail2, r2 - k2) : 0);
                total += own1 * others2;
            }
        }
    }
    return total;
}

std::int64_t degree_poly_eval(const Hypergraph& h, const Piece& piece, Color i,
                              std::span<const std::uint8_t> s, std::span<const std::uint8_t> s2) {
    return derivative_poly_eval(h, piece, i, {}, {}, s, s2);
}

BigRational expected_derivative(const Hypergraph& h, const Piece& piece, Color i,
                                std::span<const Vertex> z1, std::span<const Vertex> z2,
                                const BigRational& p) {
    if (has_duplicates(z1) || has_duplicates(z2)) return 0;
    std::vector<std::uint8_t> ones(static_cast<std::size_t>(h.n), 1);
    std::int64_t terms = derivative_poly_eval(h, piece, i, z1, z2, ones, ones);
    int exponent = (h.q - piece.t) - static_cast<int>(z1.size()) - static_cast<int>(z2.size());
    if (terms == 0) return 0;
    BigRational scale = 1;
    for (int j = 0; j < exponent; ++j) scale *= p;
    return BigRational(terms) * scale;
}

ImplicitKikuchi::ImplicitKikuchi(const Hypergraph& h, const Piece& piece, int ell)
    : h_(&h), piece_(&piece), ell_(ell) {
    if (ell < 1) throw std::invalid_argument("ImplicitKikuchi: ell must be >= 1");
    if (piece.t >= h.q) throw std::invalid_argument("ImplicitKikuchi: piece must have t < q");
}

std::vector<ImplicitKikuchi::Neighbor> ImplicitKikuchi::neighbors(const KVertex& from) const {
    const Hypergraph& h = *h_;
    int m = h.q - piece_->t;
    auto splits = allowed_splits(m);

    std::vector<Neighbor> out;
    for (std::size_t g = 0; g < piece_->groups.size(); ++g) {
        const Group& group = piece_->groups[g];
        for (EdgeIndex e1 : group.edges) {
            for (EdgeIndex e2 : group.edges) {
                if (e1 == e2) continue;
                std::vector<std::int32_t> x =
                    encoded_difference(h.edges[static_cast<std::size_t>(e1)], group.q_set, 0);
                std::vector<std::int32_t> y =
                    encoded_difference(h.edges[static_cast<std::size_t>(e2)], group.q_set, h.n);
                int a1 = 0, a2 = 0;
                for (std::int32_t e : x) a1 += std::binary_search(from.begin(), from.end(), e);
                for (std::int32_t e : y) a2 += std::binary_search(from.begin(), from.end(), e);
                bool allowed = false;
                for (auto [b1, b2] : splits) allowed = allowed || (a1 == b1 && a2 == b2);
                if (!allowed) continue;
                // T = S ^ (X u Y)
                KVertex to;
                to.reserve(from.size());
                std::vector<std::int32_t> flip = x;
                flip.insert(flip.end(), y.begin(), y.end());
                std::sort(flip.begin(), flip.end());
                std::set_symmetric_difference(from.begin(), from.end(), flip.begin(), flip.end(),
                                              std::back_inserter(to));
                out.push_back({std::move(to), e1, e2, h.edges[static_cast<std::size_t>(e1)].color,
                               h.edges[static_cast<std::size_t>(e2)].color, g});
            }
        }
    }
    return out;
}

std::int64_t ImplicitKikuchi::degree(const KVertex& from) const {
    return static_cast<std::int64_t>(neighbors(from).size());
}

KVertex ImplicitKikuchi::random_vertex(std::mt19937_64& rng) const {
    int total = 2 * h_->n;
    std::vector<std::int32_t> pool(static_cast<std::size_t>(total));
    std::iota(pool.begin(), pool.end(), 0);
    KVertex out;
    for (int j = 0; j < ell_; ++j) {
        auto pick = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(total - j));
        std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(j) + pick]);
        out.push_back(pool[static_cast<std::size_t>(j)]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<KVertex, double>> ImplicitKikuchi::apply(
    const std::vector<std::pair<KVertex, double>>& x, std::span<const std::int8_t> signs,
    std::span<const Color> left, std::span<const Color> right) const {
    std::set<Color> lset(left.begin(), left.end());
    std::set<Color> rset(right.begin(), right.end());
    std::map<KVertex, double> y;
    for (const auto& [vertex, value] : x) {
        for (const Neighbor& nb : neighbors(vertex)) {
            if (!lset.count(nb.color1) || !rset.count(nb.color2)) continue;
            double sign = signs[static_cast<std::size_t>(nb.color1)] *
                          signs[static_cast<std::size_t>(nb.color2)];
            y[nb.to] += sign * value;
        }
    }
    return {y.begin(), y.end()};
}

int default_level(int n, int q) {
    if (n < 2) return 1;
    double value = std::pow(static_cast<double>(n), 1.0 - 2.0 / q) * std::log(static_cast<double>(n));
    return std::max(1, static_cast<int>(std::lround(value)));
}

int max_level_within_cap(int n, std::int64_t cap) {
    int best = 0;
    for (int ell = 1; ell <= n; ++ell) {
        if (binomial(2 * static_cast<std::int64_t>(n), ell) > cap) break;
        best = ell;
    }
    return best;
}

}  // namespace ldc
