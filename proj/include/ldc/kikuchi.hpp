#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ldc/decompose.hpp"
#include "ldc/hypergraph.hpp"

namespace ldc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt binomial(std::int64_t n, std::int64_t k);

// Kikuchi vertices are sorted ell-subsets of the doubled ground set
// [n] x {1, 2}: copy-1 vertex u encodes as u, copy-2 as u + n.
using KVertex = std::vector<std::int32_t>;

// Number of (S, T) pairs a single hyperedge pair contributes at level ell:
//   C(q-t, floor((q-t)/2))^2 * C(2n - 2(q-t), ell - (q-t)) * 2^[q-t odd].
// Zero when ell < q - t. Requires 1 <= t < q.
BigInt matching_size_D(int q, int t, int n, int ell);

// All ordered pairs (S, T) joined by the hyperedge pair (c1, c2) over the
// group set q_set: S ^ T = (c1 \ q_set) x {1} u (c2 \ q_set) x {2}, with the
// copy intersections balanced (split both ways when q - t is odd). The list
// has exactly matching_size_D entries and each vertex has a unique partner.
// Requires q_set subset of c1 and c2.
std::vector<std::pair<KVertex, KVertex>> pair_matching(const Hyperedge& c1, const Hyperedge& c2,
                                                       std::span<const Vertex> q_set, int n,
                                                       int ell);

struct KikuchiCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Materialized signed Kikuchi matrix sum_{i in left} b_i K_{i,t} for one
// piece: entry (S, T) accumulates b_C * b_C' over ordered hyperedge pairs
// (C, C') within a group, C colored in `left` and C' in `right`. Rows are
// indexed by the rank of the vertex in `verts` (incident vertices only,
// sorted lexicographically). `unsigned_degree` counts incident pairs per
// vertex, i.e. the max l1 row norm over sign choices.
struct SignedKikuchi {
    int q = 0, t = 0, ell = 0, n = 0;
    BigInt total_vertices;  // N = C(2n, ell)
    BigInt pair_edges;      // D
    std::vector<std::int8_t> signs;
    std::vector<Color> left, right;
    std::vector<KVertex> verts;
    std::vector<std::vector<std::pair<std::int32_t, std::int64_t>>> rows;  // sorted by column rank
    std::vector<std::int64_t> unsigned_degree;

    std::int64_t entry_count() const;
    std::int64_t max_unsigned_degree() const;
    double row_sum_bound() const;  // max_S sum_T |entry(S,T)|, an upper bound on ||.||_2
    double frobenius() const;
};

SignedKikuchi build_signed(const Hypergraph& h, const Piece& piece, std::span<const std::int8_t> signs,
                           std::span<const Color> left, std::span<const Color> right, int ell,
                           std::int64_t vertex_cap = 100000);

// z^T K z with z_S = prod_{u in S, copy 1} x_u * prod_{u in S, copy 2} x_u.
std::int64_t quadratic_form(const SignedKikuchi& m, std::span<const std::int8_t> x);

struct PruneResult {
    SignedKikuchi pruned;
    std::int64_t removed_vertices = 0;
    double removed_fraction = 0;  // relative to all C(2n, ell) vertices
};

// Zeroes rows and columns whose unsigned degree exceeds the threshold.
PruneResult prune_heavy(const SignedKikuchi& m, double threshold);

struct SpectralBracket {
    double lower = 0;  // best Rayleigh-quotient magnitude seen (<= ||M||_2)
    double upper = 0;  // min(row-sum, Frobenius) certified upper bound
    bool converged = false;
    int iterations = 0;
};

// Power iteration with random restarts; the Rayleigh estimate never exceeds
// the true norm, and the certified upper bound never undercuts it.
SpectralBracket spectral_norm(const SignedKikuchi& m, double tol = 1e-6, int restarts = 5,
                              int max_iterations = 2000, std::uint64_t seed = 1);

// Degree polynomial of the color-i slice of a piece's Kikuchi graph. For the
// 0/1 indicator (s, s2) of a vertex S it upper-bounds deg(S). The polynomial
// is multilinear of degree q - t with non-negative coefficients; the monomial
// family splits on the parity of q - t (balanced halves when even, both
// ceil/floor splits when odd).
std::int64_t degree_poly_eval(const Hypergraph& h, const Piece& piece, Color i,
                              std::span<const std::uint8_t> s, std::span<const std::uint8_t> s2);

// Value at (s, s2) of the partial derivative of the degree polynomial with
// respect to the copy-1 variables z1 and copy-2 variables z2.
std::int64_t derivative_poly_eval(const Hypergraph& h, const Piece& piece, Color i,
                                  std::span<const Vertex> z1, std::span<const Vertex> z2,
                                  std::span<const std::uint8_t> s, std::span<const std::uint8_t> s2);

// Exact expectation of the above under i.i.d. Bernoulli(p) coordinates:
// (number of surviving monomials) * p^(q - t - |z1| - |z2|). Repeated
// variables in z1 or z2 make the derivative vanish identically.
BigRational expected_derivative(const Hypergraph& h, const Piece& piece, Color i,
                                std::span<const Vertex> z1, std::span<const Vertex> z2,
                                const BigRational& p);

// On-demand Kikuchi graph over a piece, for walks and matrix-vector products
// when the vertex count exceeds the explicit cap.
class ImplicitKikuchi {
  public:
    ImplicitKikuchi(const Hypergraph& h, const Piece& piece, int ell);

    struct Neighbor {
        KVertex to;
        EdgeIndex c1, c2;  // ordered hyperedge pair generating the step
        Color color1, color2;
        std::size_t group;
    };

    std::vector<Neighbor> neighbors(const KVertex& from) const;
    std::int64_t degree(const KVertex& from) const;
    KVertex random_vertex(std::mt19937_64& rng) const;

    // y = (sum_{i in left} b_i K_{i,t}) x restricted to the support reachable
    // from x; both vectors are sparse (vertex, value) lists.
    std::vector<std::pair<KVertex, double>> apply(
        const std::vector<std::pair<KVertex, double>>& x, std::span<const std::int8_t> signs,
        std::span<const Color> left, std::span<const Color> right) const;

    int ell() const { return ell_; }
    int doubled_n() const { return 2 * h_->n; }

  private:
    const Hypergraph* h_;
    const Piece* piece_;
    int ell_;
};

// Level heuristic: max(1, round(n^(1-2/q) * ln n)).
int default_level(int n, int q);

// Largest ell with C(2n, ell) <= cap (and ell <= n); 0 if even ell=1 busts it.
int max_level_within_cap(int n, std::int64_t cap);

}  // namespace ldc
