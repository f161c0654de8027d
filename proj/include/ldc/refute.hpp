#pragma once

#include <optional>
#include <random>

#include "ldc/codes.hpp"
#include "ldc/decompose.hpp"
#include "ldc/hypergraph.hpp"
#include "ldc/kikuchi.hpp"

namespace ldc {

struct XorClause {
    std::vector<Vertex> vars;
    std::int8_t sign = 1;
    Color color = 0;
};

// Psi_b(x) = sum_i b_i sum_{C in H_i} x_C, one signed clause per hyperedge.
struct XorInstance {
    int n = 0;
    std::vector<XorClause> clauses;
};

XorInstance build_xor(const Hypergraph& h, std::span<const std::int8_t> signs);

std::int64_t eval_xor(const XorInstance& inst, std::span<const std::int8_t> x);

// Exact max_{x in {+/-1}^n} Psi(x) by Gray-code enumeration; each step flips
// one variable and patches only the clauses containing it. Work is split
// across `workers` threads (0 = hardware concurrency).
std::int64_t brute_force_val(const XorInstance& inst, int n_cap = 24, int workers = 0);

struct AdvantageEstimate {
    double mean = 0;
    double std_error = 0;
    std::int64_t trials = 0;
};

// Monte-Carlo mean of Psi_b(E(b)) / |H| over uniform messages b.
AdvantageEstimate decoder_advantage(const NormalLDC& code, std::int64_t trials, std::uint64_t seed);

struct SplitBound {
    std::vector<Color> left, right;
    double row_sum_bound = 0;
    double frobenius_bound = 0;
    double norm_upper = 0;          // min of the two, certified
    double infty_to_one_upper = 0;  // N * norm_upper
    double val_f_upper = 0;         // infty_to_one_upper / D
    double power_iteration = 0;     // tightness diagnostic only
};

struct PieceBound {
    int t = 0;
    std::int64_t piece_size = 0;
    std::int64_t d_t = 0;
    int ell = 0;
    double big_n = 0, big_d = 0;
    std::vector<SplitBound> splits;
    double val_f_used = 0;    // max over sampled splits
    double trivial_term = 0;  // 2|Hp|^2 / d_t
    double main_term = 0;     // (8|Hp|/d_t) * val_f_used
    double val_sq_bound = 0;
};

struct RefuteOptions {
    double eta = 0.1;
    int ell = 0;  // 0 = auto: paper default clamped to the explicit vertex cap
    int samples = 8;
    std::uint64_t seed = 1;
    std::int64_t vertex_cap = 100000;
    int brute_force_cap = 24;
    int workers = 0;
    double constant_w = 2.0;
};

struct RefutationCertificate {
    int q = 0, n = 0, k = 0;
    std::int64_t edge_count = 0;
    std::string source_hash;
    std::vector<std::int8_t> signs;
    double eta = 0;
    int ell = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    double constant_w = 0;
    Decomposition decomposition;  // filtered; pieces align with piece_bounds
    std::vector<PieceBound> piece_bounds;
    double sum_val_sq = 0;
    double bound_pieces = 0;    // sqrt(|P| * sum of per-piece val^2 bounds)
    double bound_leftover = 0;  // |leftover|, each leftover clause at its max
    double bound_total = 0;
    std::optional<std::int64_t> brute_force_value;
    std::optional<bool> sound;
    double coupling_slack = 0;  // exp(-ell/4), reported only
};

// One piece of the squared-value chain: val(Psi_piece)^2 <= 2|Hp|^2/d_t +
// (8|Hp|/d_t) * val_f, with val_f bounded per sampled left/right split by
// N/D times a certified spectral upper bound of the signed Kikuchi matrix.
PieceBound cauchy_schwarz_bound(const Hypergraph& h, const Piece& piece,
                                std::span<const std::int8_t> signs, int ell, int samples,
                                std::mt19937_64& rng, std::int64_t vertex_cap = 100000);

// Full pipeline: decompose, filter at eta, bound each kept piece, aggregate
// with the literal sqrt(|P|) Cauchy-Schwarz factor, and charge every leftover
// clause at face value. Attaches the exact brute-force value when n is small
// enough and asserts bound >= value.
RefutationCertificate refute(const Hypergraph& h, std::span<const std::int8_t> signs,
                             const RefuteOptions& options = {});

}  // namespace ldc
