#include "clawlab/concentration.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <map>

using namespace clawlab;

TEST_CASE("adversarial profile has the heavy multiplicity") {
    const std::int64_t n = 4096;
    const double alpha = 0.6;
    const auto x = adversarial_profile(n, 64, alpha);
    REQUIRE(static_cast<std::int64_t>(x.size()) == n);
    std::map<Value, std::int64_t> mult;
    for (auto v : x) {
        REQUIRE(v >= 1);
        REQUIRE(v <= 64);
        ++mult[v];
    }
    const auto heavy = static_cast<std::int64_t>(std::ceil(std::pow(double(n), 1 - alpha)));
    std::int64_t at_heavy = 0;
    for (auto [v, c] : mult) at_heavy += c >= heavy;
    CHECK(at_heavy >= 1);
}

TEST_CASE("E1 trivial cases") {
    CHECK(measure_E1(256, 16, 1.0, 200, 1).frequency == 0.0);
    const std::vector<Value> one(300, 1);
    CHECK(measure_E1(one, 0.3, 200, 2).frequency == 0.0);
}

TEST_CASE("E1 matches the hypergeometric miss probability") {
    // One heavy value of multiplicity 15 among light singletons; a tiny
    // sampling constant keeps the sample at a handful of indices.
    const std::int64_t n = 200;
    const double alpha = 0.5;
    std::vector<Value> x(15, 1);
    for (Value v = 2; static_cast<std::int64_t>(x.size()) < n; ++v) x.push_back(v);
    const double c = 0.05;
    const auto ell = static_cast<std::int64_t>(std::ceil(c * std::pow(double(n), alpha) * std::log(double(n))));
    const std::int64_t trials = 4000;
    const double p = oracle::miss_probability(n, 15, ell);
    const auto m = measure_E1(x, alpha, trials, 3, c);
    CHECK(std::abs(m.frequency - p) <= 5 * oracle::binomial_se(p, trials));
    CHECK(static_cast<std::int64_t>(m.unseen_counts.size()) == trials);
}

TEST_CASE("E2 trivial cases and a two-element oracle") {
    CHECK(measure_E2(100, 1, 300, 1) == 0.0);
    CHECK(measure_E2(100, 5, 50, 1, 0) == 1.0);
    // With |B| = 2 each permutation picks either element first with
    // probability 1/2, so p permutations miss one with probability 2^{1-p}.
    const std::int64_t trials = 6000;
    const double p = 0.25;
    const double f = measure_E2(64, 2, trials, 4, 3);
    CHECK(std::abs(f - p) <= 5 * oracle::binomial_se(p, trials));
    CHECK_THROWS_AS(measure_E2(10, 11, 10, 1), std::invalid_argument);
}

TEST_CASE("E3 trivial cases and a hypergeometric oracle") {
    CHECK(measure_E3(128, 128, 200, 1) == 0.0);
    CHECK(measure_E3(128, 3, 200, 1, 128) == 0.0);
    // Two permutations (sample_const 0.1 at b=4, n=64), cap 16.
    const std::int64_t n = 64, b = 4, cap = 16;
    const double c = 0.1;
    const auto perms = static_cast<std::int64_t>(std::ceil(c * b * std::log(double(n))));
    REQUIRE(perms == 2);
    const double q = oracle::miss_probability(n, b, cap);
    const double p = 1 - std::pow(1 - q, double(perms));
    const std::int64_t trials = 6000;
    const double f = measure_E3(n, b, trials, 5, cap, c);
    CHECK(std::abs(f - p) <= 5 * oracle::binomial_se(p, trials));
}

TEST_CASE("slack formula") {
    CHECK(bound_with_slack(0.0, 100) == 0.0);
    CHECK(bound_with_slack(0.25, 300) == doctest::Approx(0.25 + 3 * std::sqrt(0.25 * 0.75 / 300)));
}

TEST_CASE("report respects the bounds and is reproducible") {
    ConcentrationConfig cfg;
    cfg.trials = 400;
    cfg.seed = 11;
    const auto a = run_concentration(cfg);
    const auto b = run_concentration(cfg);
    CHECK(a.to_json() == b.to_json());
    for (bool ok : a.within_bounds()) CHECK(ok);
    for (double f : {a.event_E1_freq, a.event_E2_freq, a.event_E3_freq}) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
    CHECK(a.paper_bounds[1] == doctest::Approx(1.0 / 256));
    CHECK(a.paper_bounds[2] == doctest::Approx(4 * std::log(1024.0) / 1024));
    CHECK(a.b_empirical.min <= a.b_empirical.median);
    CHECK(a.b_empirical.median <= a.b_empirical.max);
    const auto j = a.to_json();
    for (const char* key : {"trials", "event_E1_freq", "event_E2_freq", "event_E3_freq", "paper_bounds", "b_empirical"})
        CHECK(j.contains(key));
    CHECK(j.size() == 6);
}
