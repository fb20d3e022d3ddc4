#pragma once

#include "clawlab/instance.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace clawlab {

// Monte Carlo estimates of the three bad events behind the sampling analysis:
//   E1  a value occurring >= n^{1-alpha} times is missing from the sample,
//   E2  some element of B is never first-of-B across the step-2 permutations,
//   E3  some permutation has its first B element past ceil(c (n/b) ln n).

/// x side with as many values as possible at multiplicity exactly ceil(n^{1-alpha}).
std::vector<Value> adversarial_profile(std::int64_t n, std::int64_t k, double alpha);

struct E1Measurement {
    double frequency = 0.0;
    std::vector<std::int64_t> unseen_counts;  // |B| per trial
};

/// Samples ell = min(n, ceil(c n^alpha ln n)) indices without replacement per trial.
E1Measurement measure_E1(const std::vector<Value>& x, double alpha, std::int64_t trials, std::uint64_t seed,
                         double sample_const = 4.0);
E1Measurement measure_E1(std::int64_t n, std::int64_t k, double alpha, std::int64_t trials, std::uint64_t seed,
                         double sample_const = 4.0);

/// perm_count defaults to ceil(c b ln n).
double measure_E2(std::int64_t n, std::int64_t b, std::int64_t trials, std::uint64_t seed,
                  std::optional<std::int64_t> perm_count = std::nullopt, double sample_const = 4.0);

/// cap defaults to ceil(c (n/b) ln n); perm_count as for E2.
double measure_E3(std::int64_t n, std::int64_t b, std::int64_t trials, std::uint64_t seed,
                  std::optional<std::int64_t> cap = std::nullopt, double sample_const = 4.0);

/// bound + 3 sqrt(bound (1 - bound) / trials).
double bound_with_slack(double bound, std::int64_t trials);

struct ConcentrationConfig {
    std::int64_t trials = 2000;
    std::uint64_t seed = 1;
    std::int64_t e1_n = 4096;
    double e1_kappa = 0.5;
    int e1_depth = 2;
    std::int64_t e2_n = 256;
    std::int64_t e2_b = 16;
    std::int64_t e3_n = 1024;
    std::int64_t e3_b = 32;
};

struct DistributionSummary {
    double min = 0, median = 0, mean = 0, max = 0;
};

struct ConcentrationReport {
    std::int64_t trials = 0;
    double event_E1_freq = 0;
    double event_E2_freq = 0;
    double event_E3_freq = 0;
    std::array<double, 3> paper_bounds{};  // n^{kappa-2}, 1/n, 4 ln n / n at each event's n
    DistributionSummary b_empirical;

    /// Every frequency within its bound plus three binomial standard errors.
    std::array<bool, 3> within_bounds() const;
    nlohmann::json to_json() const;
};

ConcentrationReport run_concentration(const ConcentrationConfig& cfg);

} // namespace clawlab
