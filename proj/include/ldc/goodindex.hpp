#pragma once

#include <vector>

#include "ldc/hypergraph.hpp"

namespace ldc {

// gamma[t-1] = log_n d_t when derived from a co-degree profile. Must be
// descending and non-negative; q odd >= 3 everywhere in this module.
struct GammaSequence {
    int q = 0;
    std::vector<double> gamma;
    double log_base = 0;  // n when derived from a profile, 0 when synthetic

    double at(int t) const { return gamma.at(static_cast<std::size_t>(t) - 1); }
};

// Validates the invariants above and throws std::invalid_argument otherwise.
GammaSequence make_gamma_sequence(int q, std::vector<double> gamma, double log_base = 0);
GammaSequence gamma_from_profile(const CoDegreeProfile& profile, int q, int n);

inline constexpr double kGoodIndexTol = 1e-9;

struct SlackEntry {
    int r = 0;
    double slack = 0;
    bool ok = false;
};

// Per-inequality slacks (lhs - rhs). pass iff every condition-1 and -2 slack
// is <= 0 and the condition-3 slack is >= 0, all up to kGoodIndexTol.
struct GoodIndexReport {
    int t = 0;
    bool pass = false;
    std::vector<SlackEntry> condition1;  // r in [1, ceil((q-t)/2)]
    std::vector<SlackEntry> condition2;  // r in [t, floor((q+t)/2)]; r = t can only pass
    SlackEntry condition3;
};

GoodIndexReport is_good_index(const GammaSequence& g, int t);

// Constructive selection: t0 = argmax_{t < q/2} gamma_t + 2t/q (ties toward
// smaller t); if any r > q/2 violates condition 2 for t0, the violator
// maximizing gamma_r + 2r/q is returned instead. The result always passes
// is_good_index; a post-check failure is a bug, reported by assertion.
int find_good_index(const GammaSequence& g);

// Exhaustive oracle: every t in [1, q] that passes is_good_index. Non-empty
// for every valid sequence.
std::vector<int> all_good_indices(const GammaSequence& g);

}  // namespace ldc
