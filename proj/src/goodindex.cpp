#include "ldc/goodindex.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ldc {

GammaSequence make_gamma_sequence(int q, std::vector<double> gamma, double log_base) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be an odd integer >= 3");
    if (static_cast<int>(gamma.size()) != q)
        throw std::invalid_argument("gamma must have exactly q entries");
    for (int t = 0; t < q; ++t) {
        if (!std::isfinite(gamma[static_cast<std::size_t>(t)]))
            throw std::invalid_argument("gamma entries must be finite");
        if (gamma[static_cast<std::size_t>(t)] < -kGoodIndexTol)
            throw std::invalid_argument("gamma entries must be non-negative");
        if (t > 0 && gamma[static_cast<std::size_t>(t)] >
                         gamma[static_cast<std::size_t>(t) - 1] + kGoodIndexTol)
            throw std::invalid_argument("gamma must be descending");
    }
    return GammaSequence{q, std::move(gamma), log_base};
}

GammaSequence gamma_from_profile(const CoDegreeProfile& profile, int q, int n) {
    if (n < 2) throw std::invalid_argument("log base n must be >= 2");
    if (static_cast<int>(profile.d.size()) != q)
        throw std::invalid_argument("profile does not match uniformity q");
    std::vector<double> gamma(static_cast<std::size_t>(q));
    for (int t = 1; t <= q; ++t) {
        std::int64_t d = profile.max_at(t);
        if (d < 1)
            throw std::invalid_argument("gamma is only defined for non-empty hypergraphs (d_t >= 1)");
        gamma[static_cast<std::size_t>(t) - 1] =
            std::log(static_cast<double>(d)) / std::log(static_cast<double>(n));
    }
    return make_gamma_sequence(q, std::move(gamma), static_cast<double>(n));
}

namespace {

double cond2_rhs(int q, int t, int r) {
    double paren = static_cast<double>(t) - (t % 2 == 0 ? 1.0 : 0.0);
    return -2.0 * (r - t) / q + paren / q;
}

}  // namespace

GoodIndexReport is_good_index(const GammaSequence& g, int t) {
    const int q = g.q;
    if (t < 1 || t > q) throw std::invalid_argument("index t out of range [1, q]");
    GoodIndexReport report;
    report.t = t;

    bool ok = true;
    int hi1 = (q - t + 1) / 2;  // ceil((q - t) / 2)
    for (int r = 1; r <= hi1; ++r) {
        double slack = (g.at(r) - g.at(t)) - (1.0 - 2.0 * r / q);
        bool pass = slack <= kGoodIndexTol;
        report.condition1.push_back({r, slack, pass});
        ok = ok && pass;
    }
    int hi2 = (q + t) / 2;  // floor((q + t) / 2)
    for (int r = t; r <= hi2; ++r) {
        double slack = (g.at(r) - g.at(t)) - cond2_rhs(q, t, r);
        bool pass = slack <= kGoodIndexTol;
        report.condition2.push_back({r, slack, pass});
        ok = ok && pass;
    }
    // Cross-check: in the overlap t < r <= ceil((q-t)/2) the condition-2 bound
    // is the tighter one, so a condition-2 pass forces a condition-1 pass.
    for (const SlackEntry& e2 : report.condition2) {
        if (e2.r <= t || e2.r > hi1) continue;
        const SlackEntry& e1 = report.condition1[static_cast<std::size_t>(e2.r) - 1];
        assert(e1.slack <= e2.slack + 1e-12);
        (void)e1;
    }

    double slack3;
    if (2 * t < q)
        slack3 = g.at(t) - (g.at(1) - 2.0 * (t - 1) / q);
    else
        slack3 = g.at(t) - (g.at(1) - 1.0 + 2.0 / q);
    report.condition3 = {t, slack3, slack3 >= -kGoodIndexTol};
    ok = ok && report.condition3.ok;

    report.pass = ok;
    return report;
}

int find_good_index(const GammaSequence& g) {
    const int q = g.q;
    int t0 = 1;
    double best = g.at(1) + 2.0 / q;
    for (int t = 2; 2 * t < q; ++t) {
        double score = g.at(t) + 2.0 * t / q;
        if (score > best + kGoodIndexTol) {
            best = score;
            t0 = t;
        }
    }

    int chosen = t0;
    double best_violator = 0;
    for (int r = t0 + 1; r <= (q + t0) / 2; ++r) {
        if (2 * r < q) continue;
        double slack = (g.at(r) - g.at(t0)) - cond2_rhs(q, t0, r);
        if (slack <= kGoodIndexTol) continue;
        double score = g.at(r) + 2.0 * r / q;
        if (chosen == t0 || score > best_violator + kGoodIndexTol) {
            chosen = r;
            best_violator = score;
        }
    }

    assert(is_good_index(g, chosen).pass);
    return chosen;
}

std::vector<int> all_good_indices(const GammaSequence& g) {
    std::vector<int> out;
    for (int t = 1; t <= g.q; ++t)
        if (is_good_index(g, t).pass) out.push_back(t);
    return out;
}

}  // namespace ldc
