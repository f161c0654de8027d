#pragma once

#include <optional>
#include <string>

#include "ldc/hypergraph.hpp"

namespace ldc {

struct NoEncoderError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A normal-form locally decodable code: k colors, one q-uniform matching of
// query sets per message bit, and (for the linear corpus families) an exact
// encoder with prod_{u in C} E(b)_u = b_i for every C of color i.
struct NormalLDC {
    std::string family;  // "hadamard", "odd-parity", "random-matchings"
    int k = 0, q = 0, n = 0;
    Hypergraph hypergraph;  // union of the matchings, color i = matching i
    int repetitions = 0;    // odd-parity: edges per matching
    int matching_size = 0;  // random-matchings: edges per matching
    std::optional<std::uint64_t> seed;

    bool has_encoder() const { return family != "random-matchings"; }
    std::vector<std::int8_t> encode(std::span<const std::int8_t> message) const;

    // PRNG algorithm identifier recorded in corpus sidecars.
    static constexpr const char* kRngId = "mt19937_64/fisher-yates-v1";
};

// Coordinates indexed by subsets of [k], E(b)_S = prod_{i in S} b_i, and
// matching i pairing S with S ^ {i}: n = 2^k, q = 2, exact decoding.
NormalLDC hadamard(int k);

// Odd-q linear corpus code: per message bit, `repetitions` disjoint q-sets,
// each combining one data coordinate with (q-1)/2 pairs of full-parity
// coordinates, so the product collapses to b_i exactly.
NormalLDC odd_parity_code(int k, int q, int repetitions = 2);

// k independent uniform partial matchings of `size` disjoint q-sets each;
// deterministic per seed. Carries no encoder.
NormalLDC random_matchings(int n, int k, int q, int size, std::uint64_t seed);

}  // namespace ldc
