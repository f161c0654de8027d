#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldc/decompose.hpp"
#include "ldc/hypergraph.hpp"

namespace ldc {

// A multiset of hyperedge indices together with its verification status.
// `verified` means every vertex is covered an even number of times;
// `rainbow_color` is the smallest color used exactly once, when one exists.
struct EvenCoverCertificate {
    std::vector<EdgeIndex> edge_indices;  // sorted, repeats allowed
    std::map<Color, std::int64_t> color_counts;
    bool verified = false;
    std::optional<Color> rainbow_color;
    std::string method;  // "given", "kernel-basis", "kernel-combination", "kikuchi-walk"
    std::optional<std::uint64_t> seed;
};

EvenCoverCertificate verify_even_cover(const Hypergraph& h, std::span<const EdgeIndex> edge_indices);

// Kernel of the |H| x n GF(2) incidence matrix (edges as rows): the basis of
// all edge subsets that cover every vertex an even number of times.
struct Gf2KernelBasis {
    std::int64_t edge_count = 0;
    std::int64_t rank = 0;  // rank of the incidence matrix
    std::vector<std::vector<std::uint64_t>> basis;  // bitset rows over edge indices

    std::int64_t dimension() const { return static_cast<std::int64_t>(basis.size()); }
    static std::vector<EdgeIndex> to_indices(std::span<const std::uint64_t> bits,
                                             std::int64_t edge_count);
};

// Dense bitset elimination; refuses more than `edge_cap` edges.
Gf2KernelBasis gf2_kernel_basis(const Hypergraph& h, std::int64_t edge_cap = 4096);

// Kernel search for an even cover using some color exactly once: basis
// vectors first, then `budget` random GF(2) combinations of basis vectors.
// Sound (every return verifies) but incomplete; std::nullopt means "not found
// within budget", never "does not exist". Requires a properly edge-colored
// input and throws std::invalid_argument (with the violating pair) otherwise.
std::optional<EvenCoverCertificate> find_weak_rainbow(const Hypergraph& h, std::int64_t budget,
                                                      std::uint64_t seed);

// Walks every nonzero kernel vector; exact decision procedure for kernels of
// dimension at most `max_dim` (throws beyond that).
std::optional<EvenCoverCertificate> exhaustive_weak_rainbow(const Hypergraph& h, int max_dim = 20);

// Exhaustive law check: true when no nonzero kernel vector uses any color an
// odd number of times.
bool kernel_colors_all_even(const Hypergraph& h, int max_dim = 20);

// Heuristic search via closed walks on the implicit Kikuchi graph of a
// certified piece: each step's symmetric differences telescope, so the
// multiset of traversed hyperedges is an even cover; a walk where some color
// appears exactly once projects to a weak rainbow certificate. Best effort;
// every returned certificate is re-verified.
std::optional<EvenCoverCertificate> kikuchi_walk_search(const Hypergraph& h, const Piece& piece,
                                                        int ell, std::int64_t budget,
                                                        std::uint64_t seed);

}  // namespace ldc
