#include "ldc/refute.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <numeric>
#include <thread>

namespace ldc {

XorInstance build_xor(const Hypergraph& h, std::span<const std::int8_t> signs) {
    if (static_cast<int>(signs.size()) != h.k)
        throw std::invalid_argument("build_xor: need one sign per color");
    for (std::int8_t b : signs)
        if (b != 1 && b != -1) throw std::invalid_argument("signs must be +/-1");
    XorInstance inst;
    inst.n = h.n;
    inst.clauses.reserve(h.edges.size());
    for (const Hyperedge& e : h.edges)
        inst.clauses.push_back({e.vertices, signs[static_cast<std::size_t>(e.color)], e.color});
    return inst;
}

std::int64_t eval_xor(const XorInstance& inst, std::span<const std::int8_t> x) {
    if (static_cast<int>(x.size()) != inst.n)
        throw std::invalid_argument("assignment must have n entries");
    std::int64_t total = 0;
    for (const XorClause& c : inst.clauses) {
        int term = c.sign;
        for (Vertex v : c.vars) term *= x[static_cast<std::size_t>(v)];
        total += term;
    }
    return total;
}

namespace {

// Max over the Gray-code segment [begin, end) of assignments; assignment j
// sets x_v = -1 iff bit v of (j ^ (j >> 1)) is set.
std::int64_t brute_force_range(const XorInstance& inst,
                               const std::vector<std::vector<std::int32_t>>& clauses_of_var,
                               std::uint64_t begin, std::uint64_t end) {
    std::uint64_t gray = begin ^ (begin >> 1);
    std::vector<std::int8_t> x(static_cast<std::size_t>(inst.n), 1);
    for (int v = 0; v < inst.n; ++v)
        if (gray >> v & 1) x[static_cast<std::size_t>(v)] = -1;

    std::vector<std::int8_t> term(inst.clauses.size());
    std::int64_t value = 0;
    for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
        int t = inst.clauses[c].sign;
        for (Vertex v : inst.clauses[c].vars) t *= x[static_cast<std::size_t>(v)];
        term[c] = static_cast<std::int8_t>(t);
        value += t;
    }

    std::int64_t best = value;
    for (std::uint64_t j = begin + 1; j < end; ++j) {
        int flip = std::countr_zero(j);
        x[static_cast<std::size_t>(flip)] = static_cast<std::int8_t>(-x[static_cast<std::size_t>(flip)]);
        for (std::int32_t c : clauses_of_var[static_cast<std::size_t>(flip)]) {
            value -= 2 * term[static_cast<std::size_t>(c)];
            term[static_cast<std::size_t>(c)] =
                static_cast<std::int8_t>(-term[static_cast<std::size_t>(c)]);
        }
        best = std::max(best, value);
    }
    return best;
}

}  // namespace

std::int64_t brute_force_val(const XorInstance& inst, int n_cap, int workers) {
    if (inst.n > n_cap)
        throw std::invalid_argument("brute_force_val: n = " + std::to_string(inst.n) +
                                    " exceeds cap " + std::to_string(n_cap));
    if (inst.clauses.empty()) return 0;

    std::vector<std::vector<std::int32_t>> clauses_of_var(static_cast<std::size_t>(inst.n));
    for (std::size_t c = 0; c < inst.clauses.size(); ++c)
        for (Vertex v : inst.clauses[c].vars)
            clauses_of_var[static_cast<std::size_t>(v)].push_back(static_cast<std::int32_t>(c));

    std::uint64_t total = 1ULL << inst.n;
    int threads = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, 8));
    if (inst.n < 16) threads = 1;

    std::vector<std::future<std::int64_t>> parts;
    std::uint64_t chunk = total / static_cast<std::uint64_t>(threads);
    for (int w = 0; w < threads; ++w) {
        std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
        std::uint64_t end = w + 1 == threads ? total : begin + chunk;
        parts.push_back(std::async(std::launch::async, [&, begin, end] {
            return brute_force_range(inst, clauses_of_var, begin, end);
        }));
    }
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (auto& part : parts) best = std::max(best, part.get());
    return best;
}

AdvantageEstimate decoder_advantage(const NormalLDC& code, std::int64_t trials, std::uint64_t seed) {
    if (trials <= 0) throw std::invalid_argument("decoder_advantage requires trials >= 1");
    if (!code.has_encoder()) throw NoEncoderError("decoder_advantage needs an encoder");

    const Hypergraph& h = code.hypergraph;
    std::mt19937_64 rng(seed);
    double sum = 0, sum_sq = 0;
    std::vector<std::int8_t> message(static_cast<std::size_t>(code.k));
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        for (auto& b : message) b = rng() & 1 ? 1 : -1;
        std::vector<std::int8_t> word = code.encode(message);
        std::int64_t value = 0;
        for (const Hyperedge& e : h.edges) {
            int term = message[static_cast<std::size_t>(e.color)];
            for (Vertex v : e.vertices) term *= word[static_cast<std::size_t>(v)];
            value += term;
        }
        double ratio = static_cast<double>(value) / static_cast<double>(h.size());
        sum += ratio;
        sum_sq += ratio * ratio;
    }
    AdvantageEstimate est;
    est.trials = trials;
    est.mean = sum / static_cast<double>(trials);
    double variance = std::max(0.0, sum_sq / static_cast<double>(trials) - est.mean * est.mean);
    est.std_error = std::sqrt(variance / static_cast<double>(trials));
    return est;
}

PieceBound cauchy_schwarz_bound(const Hypergraph& h, const Piece& piece,
                                std::span<const std::int8_t> signs, int ell, int samples,
                                std::mt19937_64& rng, std::int64_t vertex_cap) {
    if (samples < 1) throw std::invalid_argument("cauchy_schwarz_bound requires samples >= 1");
    PieceBound bound;
    bound.t = piece.t;
    bound.piece_size = static_cast<std::int64_t>(piece.edges.size());
    bound.ell = ell;
    CoDegreeProfile profile = co_degree_profile(h, piece.edges);
    bound.d_t = profile.max_at(piece.t);
    if (bound.d_t <= 0) throw std::invalid_argument("cauchy_schwarz_bound: empty piece");

    bound.big_n = binomial(2 * static_cast<std::int64_t>(h.n), ell).convert_to<double>();
    bound.big_d = matching_size_D(h.q, piece.t, h.n, ell).convert_to<double>();
    if (bound.big_d <= 0)
        throw std::invalid_argument("cauchy_schwarz_bound: level ell too small, D = 0");

    bound.trivial_term = 2.0 * static_cast<double>(bound.piece_size) *
                         static_cast<double>(bound.piece_size) / static_cast<double>(bound.d_t);

    for (int s = 0; s < samples; ++s) {
        SplitBound split;
        for (Color c = 0; c < h.k; ++c)
            (rng() & 1 ? split.left : split.right).push_back(c);
        SignedKikuchi mat = build_signed(h, piece, signs, split.left, split.right, ell, vertex_cap);
        split.row_sum_bound = mat.row_sum_bound();
        split.frobenius_bound = mat.frobenius();
        split.norm_upper = std::min(split.row_sum_bound, split.frobenius_bound);
        split.infty_to_one_upper = bound.big_n * split.norm_upper;
        split.val_f_upper = split.infty_to_one_upper / bound.big_d;
        split.power_iteration = spectral_norm(mat, 1e-6, 3, 500, rng()).lower;
        bound.val_f_used = std::max(bound.val_f_used, split.val_f_upper);
        bound.splits.push_back(std::move(split));
    }

    bound.main_term = 8.0 * static_cast<double>(bound.piece_size) /
                      static_cast<double>(bound.d_t) * bound.val_f_used;
    bound.val_sq_bound = bound.trivial_term + bound.main_term;
    return bound;
}

RefutationCertificate refute(const Hypergraph& h, std::span<const std::int8_t> signs,
                             const RefuteOptions& options) {
    if (h.q % 2 == 0 || h.q < 3) throw std::invalid_argument("refute requires odd q >= 3");
    MatchingReport matchings = validate_matchings(h);
    if (!matchings.all_matchings)
        throw std::invalid_argument("refute requires every color class to be a matching");

    RefutationCertificate cert;
    cert.q = h.q;
    cert.n = h.n;
    cert.k = h.k;
    cert.edge_count = h.size();
    cert.source_hash = content_hash(h);
    cert.signs.assign(signs.begin(), signs.end());
    cert.eta = options.eta;
    cert.samples = options.samples;
    cert.seed = options.seed;
    cert.constant_w = options.constant_w;

    int ell = options.ell;
    if (ell <= 0) {
        ell = std::min(default_level(h.n, h.q), max_level_within_cap(h.n, options.vertex_cap));
        ell = std::max(ell, h.q - 1);  // keeps D >= 1 for every possible good index
    }
    cert.ell = ell;
    cert.coupling_slack = std::exp(-static_cast<double>(ell) / 4.0);

    cert.decomposition = h.edges.empty() ? decompose(h) : filter_pieces(decompose(h), options.eta);

    std::mt19937_64 rng(options.seed);
    for (const Piece& piece : cert.decomposition.pieces) {
        cert.piece_bounds.push_back(cauchy_schwarz_bound(h, piece, signs, ell, options.samples, rng,
                                                         options.vertex_cap));
        cert.sum_val_sq += cert.piece_bounds.back().val_sq_bound;
    }

    cert.bound_pieces =
        std::sqrt(static_cast<double>(cert.piece_bounds.size()) * cert.sum_val_sq);
    cert.bound_leftover = static_cast<double>(cert.decomposition.leftover.size());
    cert.bound_total = cert.bound_pieces + cert.bound_leftover;

    if (h.n <= options.brute_force_cap) {
        XorInstance inst = build_xor(h, signs);
        cert.brute_force_value = brute_force_val(inst, options.brute_force_cap, options.workers);
        cert.sound = cert.bound_total >= static_cast<double>(*cert.brute_force_value);
        assert(*cert.sound);
    }
    return cert;
}

}  // namespace ldc
