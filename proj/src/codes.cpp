#include "ldc/codes.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ldc {

std::vector<std::int8_t> NormalLDC::encode(std::span<const std::int8_t> message) const {
    if (!has_encoder()) throw NoEncoderError("code family '" + family + "' carries no encoder");
    if (static_cast<int>(message.size()) != k)
        throw std::invalid_argument("message must have k entries");
    for (std::int8_t b : message)
        if (b != 1 && b != -1) throw std::invalid_argument("message entries must be +/-1");

    std::vector<std::int8_t> word(static_cast<std::size_t>(n), 1);
    if (family == "hadamard") {
        for (int s = 0; s < n; ++s) {
            std::int8_t value = 1;
            for (int i = 0; i < k; ++i)
                if (s >> i & 1) value = static_cast<std::int8_t>(value * message[static_cast<std::size_t>(i)]);
            word[static_cast<std::size_t>(s)] = value;
        }
        return word;
    }
    if (family == "odd-parity") {
        std::int8_t parity = 1;
        for (std::int8_t b : message) parity = static_cast<std::int8_t>(parity * b);
        int data = k * repetitions;
        for (int c = 0; c < n; ++c)
            word[static_cast<std::size_t>(c)] =
                c < data ? message[static_cast<std::size_t>(c / repetitions)] : parity;
        return word;
    }
    throw NoEncoderError("unknown encoder family '" + family + "'");
}

NormalLDC hadamard(int k) {
    if (k < 2 || k > 16) throw std::invalid_argument("hadamard requires 2 <= k <= 16");
    NormalLDC code;
    code.family = "hadamard";
    code.k = k;
    code.q = 2;
    code.n = 1 << k;
    code.hypergraph.q = 2;
    code.hypergraph.n = code.n;
    code.hypergraph.k = k;
    for (int i = 0; i < k; ++i) {
        for (int s = 0; s < code.n; ++s) {
            if (s >> i & 1) continue;
            Hyperedge e;
            e.color = i;
            e.vertices = {s, s | (1 << i)};
            code.hypergraph.edges.push_back(std::move(e));
        }
    }
    return code;
}

NormalLDC odd_parity_code(int k, int q, int repetitions) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("odd_parity_code requires odd q >= 3");
    if (k < 1 || repetitions < 1)
        throw std::invalid_argument("odd_parity_code requires k >= 1 and repetitions >= 1");

    NormalLDC code;
    code.family = "odd-parity";
    code.k = k;
    code.q = q;
    code.repetitions = repetitions;
    int pairs = (q - 1) / 2;
    int data = k * repetitions;
    code.n = data + data * 2 * pairs;
    code.hypergraph.q = q;
    code.hypergraph.n = code.n;
    code.hypergraph.k = k;

    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < repetitions; ++j) {
            int slot = i * repetitions + j;
            Hyperedge e;
            e.color = i;
            e.vertices.push_back(slot);
            for (int m = 0; m < 2 * pairs; ++m) e.vertices.push_back(data + slot * 2 * pairs + m);
            std::sort(e.vertices.begin(), e.vertices.end());
            code.hypergraph.edges.push_back(std::move(e));
        }
    }
    return code;
}

NormalLDC random_matchings(int n, int k, int q, int size, std::uint64_t seed) {
    if (q < 2) throw std::invalid_argument("random_matchings requires q >= 2");
    if (size < 1 || static_cast<std::int64_t>(size) * q > n)
        throw std::invalid_argument("random_matchings: need size >= 1 and size*q <= n");
    if (k < 1) throw std::invalid_argument("random_matchings requires k >= 1");

    NormalLDC code;
    code.family = "random-matchings";
    code.k = k;
    code.q = q;
    code.n = n;
    code.matching_size = size;
    code.seed = seed;
    code.hypergraph.q = q;
    code.hypergraph.n = n;
    code.hypergraph.k = k;

    std::mt19937_64 rng(seed);
    std::vector<Vertex> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < k; ++i) {
        std::iota(pool.begin(), pool.end(), 0);
        // Fisher-Yates with explicit modulo draws keeps the stream portable.
        for (int j = 0; j < size * q; ++j) {
            auto pick = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n - j));
            std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(j) + pick]);
        }
        for (int e = 0; e < size; ++e) {
            Hyperedge edge;
            edge.color = i;
            edge.vertices.assign(pool.begin() + e * q, pool.begin() + (e + 1) * q);
            std::sort(edge.vertices.begin(), edge.vertices.end());
            code.hypergraph.edges.push_back(std::move(edge));
        }
    }
    return code;
}

}  // namespace ldc
