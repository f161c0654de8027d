#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ldc/goodindex.hpp"
#include "oracles.hpp"

using namespace ldc;

namespace {

GammaSequence seq(int q, std::vector<double> gamma) {
    return make_gamma_sequence(q, std::move(gamma));
}

std::vector<double> random_descending(int q, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    std::vector<double> gamma(static_cast<std::size_t>(q));
    for (double& g : gamma) g = unif(rng);
    std::sort(gamma.begin(), gamma.end(), std::greater<>());
    return gamma;
}

}  // namespace

TEST_CASE("hand-derived q=3 cases") {
    // gamma = (0,0,0): t=2 passes, t=1 fails on the second family at r=2.
    GammaSequence flat = seq(3, {0, 0, 0});
    CHECK(is_good_index(flat, 2).pass);
    CHECK_FALSE(is_good_index(flat, 1).pass);
    CHECK(find_good_index(flat) == 2);
    auto all_flat = all_good_indices(flat);
    CHECK(std::find(all_flat.begin(), all_flat.end(), 2) != all_flat.end());

    // gamma = (1/3,0,0): t=1 passes with the r=2 inequality exactly tight.
    GammaSequence tilted = seq(3, {1.0 / 3.0, 0, 0});
    GoodIndexReport report = is_good_index(tilted, 1);
    CHECK(report.pass);
    bool saw_r2 = false;
    for (const SlackEntry& e : report.condition2) {
        if (e.r == 2) {
            saw_r2 = true;
            CHECK(e.slack == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    CHECK(saw_r2);
    CHECK(find_good_index(tilted) == 1);
    auto all_tilted = all_good_indices(tilted);
    CHECK(std::find(all_tilted.begin(), all_tilted.end(), 1) != all_tilted.end());
}

TEST_CASE("q=5 constant sequences always yield a passing selection") {
    for (double g : {0.0, 0.3, 1.0, 1.7}) {
        GammaSequence s = seq(5, {g, g, g, g, g});
        int t = find_good_index(s);
        CHECK(is_good_index(s, t).pass);
        CHECK(oracle::good_index_direct(5, s.gamma, t));
    }
}

TEST_CASE("library verdicts agree with the direct inequality oracle") {
    std::mt19937_64 rng(101);
    for (int q : {3, 5, 7, 9}) {
        for (int trial = 0; trial < 400; ++trial) {
            GammaSequence s = seq(q, random_descending(q, rng));
            for (int t = 1; t <= q; ++t)
                CHECK(is_good_index(s, t).pass == oracle::good_index_direct(q, s.gamma, t));
        }
    }
}

TEST_CASE("existence: find_good_index always lands in all_good_indices") {
    std::mt19937_64 rng(202);
    for (int q : {3, 5, 7, 9}) {
        for (int trial = 0; trial < 500; ++trial) {
            GammaSequence s = seq(q, random_descending(q, rng));
            int t = find_good_index(s);
            CHECK(is_good_index(s, t).pass);
            auto all = all_good_indices(s);
            CHECK_FALSE(all.empty());
            CHECK(std::find(all.begin(), all.end(), t) != all.end());
        }
    }
}

TEST_CASE("no-larger-violation: condition 2 holds for every t > q/2") {
    std::mt19937_64 rng(303);
    for (int q : {3, 5, 7, 9}) {
        for (int trial = 0; trial < 200; ++trial) {
            GammaSequence s = seq(q, random_descending(q, rng));
            for (int t = q / 2 + 1; t <= q; ++t) {
                GoodIndexReport report = is_good_index(s, t);
                for (const SlackEntry& e : report.condition2) CHECK(e.ok);
            }
        }
    }
}

TEST_CASE("shift invariance: adding a constant to gamma preserves the good set") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        int q = trial % 2 == 0 ? 5 : 7;
        GammaSequence s = seq(q, random_descending(q, rng));
        std::vector<double> shifted = s.gamma;
        for (double& g : shifted) g += 0.75;
        GammaSequence s2 = seq(q, shifted);
        CHECK(all_good_indices(s) == all_good_indices(s2));
        CHECK(find_good_index(s) == find_good_index(s2));
        for (int t = 1; t <= q; ++t) {
            GoodIndexReport a = is_good_index(s, t);
            GoodIndexReport b = is_good_index(s2, t);
            for (std::size_t i = 0; i < a.condition1.size(); ++i)
                CHECK(a.condition1[i].slack == doctest::Approx(b.condition1[i].slack).epsilon(1e-9));
            for (std::size_t i = 0; i < a.condition2.size(); ++i)
                CHECK(a.condition2[i].slack == doctest::Approx(b.condition2[i].slack).epsilon(1e-9));
            CHECK(a.condition3.slack == doctest::Approx(b.condition3.slack).epsilon(1e-9));
        }
    }
}

TEST_CASE("validation rejects malformed sequences") {
    CHECK_THROWS_AS(make_gamma_sequence(4, {1, 1, 1, 1}), std::invalid_argument);  // even q
    CHECK_THROWS_AS(make_gamma_sequence(3, {0, 0}), std::invalid_argument);        // wrong size
    CHECK_THROWS_AS(make_gamma_sequence(3, {0, 1, 0}), std::invalid_argument);     // ascending
    CHECK_THROWS_AS(make_gamma_sequence(3, {1, 0, -0.5}), std::invalid_argument);  // negative
    CHECK_THROWS_AS(is_good_index(seq(3, {0, 0, 0}), 4), std::invalid_argument);
}

TEST_CASE("gamma_from_profile matches log-ratios of co-degrees") {
    CoDegreeProfile p;
    p.d = {8, 4, 1};
    p.witnesses = {{0}, {0, 1}, {0, 1, 2}};
    GammaSequence g = gamma_from_profile(p, 3, 8);
    CHECK(g.at(1) == doctest::Approx(1.0));
    CHECK(g.at(2) == doctest::Approx(2.0 / 3.0));
    CHECK(g.at(3) == doctest::Approx(0.0));
    CHECK(g.log_base == doctest::Approx(8.0));

    CoDegreeProfile empty;
    empty.d = {0, 0, 0};
    CHECK_THROWS_AS(gamma_from_profile(empty, 3, 8), std::invalid_argument);
}
