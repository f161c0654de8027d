#include "ldc/evencover.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "ldc/kikuchi.hpp"

namespace ldc {

EvenCoverCertificate verify_even_cover(const Hypergraph& h, std::span<const EdgeIndex> edge_indices) {
    EvenCoverCertificate cert;
    cert.method = "given";
    cert.edge_indices.assign(edge_indices.begin(), edge_indices.end());
    std::sort(cert.edge_indices.begin(), cert.edge_indices.end());

    std::unordered_map<Vertex, std::int64_t> coverage;
    for (EdgeIndex idx : cert.edge_indices) {
        if (idx < 0 || idx >= h.size()) throw std::out_of_range("edge index out of range");
        const Hyperedge& e = h.edges[static_cast<std::size_t>(idx)];
        ++cert.color_counts[e.color];
        for (Vertex v : e.vertices) ++coverage[v];
    }
    cert.verified = !cert.edge_indices.empty();
    for (const auto& [v, count] : coverage)
        if (count % 2 != 0) cert.verified = false;
    for (const auto& [color, count] : cert.color_counts) {
        if (count == 1) {
            cert.rainbow_color = color;
            break;
        }
    }
    return cert;
}

std::vector<EdgeIndex> Gf2KernelBasis::to_indices(std::span<const std::uint64_t> bits,
                                                  std::int64_t edge_count) {
    std::vector<EdgeIndex> out;
    for (std::int64_t i = 0; i < edge_count; ++i)
        if (bits[static_cast<std::size_t>(i >> 6)] >> (i & 63) & 1)
            out.push_back(static_cast<EdgeIndex>(i));
    return out;
}

Gf2KernelBasis gf2_kernel_basis(const Hypergraph& h, std::int64_t edge_cap) {
    std::int64_t m = h.size();
    if (m > edge_cap)
        throw std::invalid_argument("gf2_kernel_basis: edge count " + std::to_string(m) +
                                    " exceeds cap " + std::to_string(edge_cap));
    Gf2KernelBasis kernel;
    kernel.edge_count = m;
    if (m == 0) return kernel;

    std::size_t vertex_words = static_cast<std::size_t>(h.n + 63) / 64;
    std::size_t edge_words = static_cast<std::size_t>(m + 63) / 64;

    // Rows carry the incidence bits plus a combination tracker that records
    // which original edges were xor-ed in.
    std::vector<std::vector<std::uint64_t>> inc(static_cast<std::size_t>(m),
                                                std::vector<std::uint64_t>(vertex_words, 0));
    std::vector<std::vector<std::uint64_t>> combo(static_cast<std::size_t>(m),
                                                  std::vector<std::uint64_t>(edge_words, 0));
    for (std::int64_t r = 0; r < m; ++r) {
        for (Vertex v : h.edges[static_cast<std::size_t>(r)].vertices)
            inc[static_cast<std::size_t>(r)][static_cast<std::size_t>(v) >> 6] |= 1ULL
                                                                                  << (v & 63);
        combo[static_cast<std::size_t>(r)][static_cast<std::size_t>(r) >> 6] |= 1ULL << (r & 63);
    }

    std::vector<char> used(static_cast<std::size_t>(m), 0);
    for (int col = 0; col < h.n; ++col) {
        std::size_t word = static_cast<std::size_t>(col) >> 6;
        std::uint64_t bit = 1ULL << (col & 63);
        std::int64_t pivot = -1;
        for (std::int64_t r = 0; r < m; ++r) {
            if (!used[static_cast<std::size_t>(r)] && (inc[static_cast<std::size_t>(r)][word] & bit)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        used[static_cast<std::size_t>(pivot)] = 1;
        ++kernel.rank;
        for (std::int64_t r = 0; r < m; ++r) {
            if (r == pivot || !(inc[static_cast<std::size_t>(r)][word] & bit)) continue;
            for (std::size_t w = 0; w < vertex_words; ++w)
                inc[static_cast<std::size_t>(r)][w] ^= inc[static_cast<std::size_t>(pivot)][w];
            for (std::size_t w = 0; w < edge_words; ++w)
                combo[static_cast<std::size_t>(r)][w] ^= combo[static_cast<std::size_t>(pivot)][w];
        }
    }

    for (std::int64_t r = 0; r < m; ++r) {
        if (used[static_cast<std::size_t>(r)]) continue;
        bool zero = std::all_of(inc[static_cast<std::size_t>(r)].begin(),
                                inc[static_cast<std::size_t>(r)].end(),
                                [](std::uint64_t w) { return w == 0; });
        if (zero) kernel.basis.push_back(combo[static_cast<std::size_t>(r)]);
    }
    return kernel;
}

namespace {

void require_properly_colored(const Hypergraph& h) {
    MatchingReport report = validate_matchings(h);
    if (!report.properly_colored) {
        const MatchingViolation& v = report.violations.front();
        throw std::invalid_argument(
            "input is not properly edge-colored: edges " + std::to_string(v.first) + " and " +
            std::to_string(v.second) + " of color " + std::to_string(v.color) +
            " share vertex " + std::to_string(v.shared));
    }
}

std::optional<EvenCoverCertificate> certify_if_rainbow(const Hypergraph& h,
                                                       const std::vector<EdgeIndex>& indices,
                                                       const std::string& method,
                                                       std::optional<std::uint64_t> seed) {
    if (indices.empty()) return std::nullopt;
    EvenCoverCertificate cert = verify_even_cover(h, indices);
    if (!cert.verified || !cert.rainbow_color) return std::nullopt;
    cert.method = method;
    cert.seed = seed;
    return cert;
}

}  // namespace

std::optional<EvenCoverCertificate> find_weak_rainbow(const Hypergraph& h, std::int64_t budget,
                                                      std::uint64_t seed) {
    require_properly_colored(h);
    Gf2KernelBasis kernel = gf2_kernel_basis(h);
    if (kernel.basis.empty()) return std::nullopt;

    for (const auto& bits : kernel.basis) {
        auto found = certify_if_rainbow(h, Gf2KernelBasis::to_indices(bits, kernel.edge_count),
                                        "kernel-basis", seed);
        if (found) return found;
    }

    std::mt19937_64 rng(seed);
    std::size_t words = kernel.basis.front().size();
    std::vector<std::uint64_t> acc(words);
    for (std::int64_t trial = 0; trial < budget; ++trial) {
        std::fill(acc.begin(), acc.end(), 0);
        bool any = false;
        for (const auto& bits : kernel.basis) {
            if (rng() & 1) {
                any = true;
                for (std::size_t w = 0; w < words; ++w) acc[w] ^= bits[w];
            }
        }
        if (!any) continue;
        auto found = certify_if_rainbow(h, Gf2KernelBasis::to_indices(acc, kernel.edge_count),
                                        "kernel-combination", seed);
        if (found) return found;
    }
    return std::nullopt;
}

std::optional<EvenCoverCertificate> exhaustive_weak_rainbow(const Hypergraph& h, int max_dim) {
    Gf2KernelBasis kernel = gf2_kernel_basis(h);
    if (kernel.dimension() > max_dim)
        throw std::invalid_argument("kernel dimension " + std::to_string(kernel.dimension()) +
                                    " exceeds exhaustive cap " + std::to_string(max_dim));
    if (kernel.basis.empty()) return std::nullopt;

    std::size_t words = kernel.basis.front().size();
    std::vector<std::uint64_t> acc(words);
    auto dim = static_cast<std::uint64_t>(kernel.dimension());
    for (std::uint64_t mask = 1; mask < (1ULL << dim); ++mask) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::uint64_t j = 0; j < dim; ++j)
            if (mask >> j & 1)
                for (std::size_t w = 0; w < words; ++w) acc[w] ^= kernel.basis[j][w];
        auto found = certify_if_rainbow(h, Gf2KernelBasis::to_indices(acc, kernel.edge_count),
                                        "kernel-exhaustive", std::nullopt);
        if (found) return found;
    }
    return std::nullopt;
}

bool kernel_colors_all_even(const Hypergraph& h, int max_dim) {
    Gf2KernelBasis kernel = gf2_kernel_basis(h);
    if (kernel.dimension() > max_dim)
        throw std::invalid_argument("kernel dimension " + std::to_string(kernel.dimension()) +
                                    " exceeds exhaustive cap " + std::to_string(max_dim));
    if (kernel.basis.empty()) return true;

    std::size_t words = kernel.basis.front().size();
    std::vector<std::uint64_t> acc(words);
    auto dim = static_cast<std::uint64_t>(kernel.dimension());
    for (std::uint64_t mask = 1; mask < (1ULL << dim); ++mask) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::uint64_t j = 0; j < dim; ++j)
            if (mask >> j & 1)
                for (std::size_t w = 0; w < words; ++w) acc[w] ^= kernel.basis[j][w];
        EvenCoverCertificate cert =
            verify_even_cover(h, Gf2KernelBasis::to_indices(acc, kernel.edge_count));
        for (const auto& [color, count] : cert.color_counts)
            if (count % 2 != 0) return false;
    }
    return true;
}

std::optional<EvenCoverCertificate> kikuchi_walk_search(const Hypergraph& h, const Piece& piece,
                                                        int ell, std::int64_t budget,
                                                        std::uint64_t seed) {
    require_properly_colored(h);
    if (budget <= 0) return std::nullopt;
    ImplicitKikuchi graph(h, piece, ell);

    BigInt total = binomial(2 * static_cast<std::int64_t>(h.n), ell);
    int max_len = 2 * static_cast<int>(std::ceil(std::log2(std::max(2.0, total.convert_to<double>()))));

    std::mt19937_64 rng(seed);
    for (std::int64_t attempt = 0; attempt < budget; ++attempt) {
        KVertex current = graph.random_vertex(rng);
        std::map<KVertex, int> visited;
        visited[current] = 0;
        std::vector<std::pair<EdgeIndex, EdgeIndex>> steps;
        for (int len = 1; len <= max_len; ++len) {
            auto nbrs = graph.neighbors(current);
            if (nbrs.empty()) break;
            const auto& step = nbrs[static_cast<std::size_t>(rng() % nbrs.size())];
            steps.emplace_back(step.c1, step.c2);
            current = step.to;
            auto [it, fresh] = visited.try_emplace(current, len);
            if (fresh) continue;
            // Closed sub-walk from position it->second to len.
            std::vector<EdgeIndex> multiset;
            for (int j = it->second; j < len; ++j) {
                multiset.push_back(steps[static_cast<std::size_t>(j)].first);
                multiset.push_back(steps[static_cast<std::size_t>(j)].second);
            }
            auto found = certify_if_rainbow(h, multiset, "kikuchi-walk", seed);
            if (found) return found;
            break;  // restart from a fresh vertex
        }
    }
    return std::nullopt;
}

}  // namespace ldc
