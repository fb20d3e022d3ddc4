#pragma once

#include "clawlab/ledger.hpp"
#include "clawlab/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace clawlab {

struct GroverOutcome {
    std::optional<std::int64_t> found;  // 1-based, predicate holds there
    std::int64_t marked = 0;            // t, known to the harness
    double charged = 0.0;               // in queries to the searched domain
};

/// ceil(c * sqrt(m / t)) for t > 0, ceil(c * sqrt(m)) for t == 0.
/// With cost.grover_charge_uses_marked == false the charge is always ceil(c * sqrt(m)).
double grover_charge(std::int64_t m, std::int64_t marked, const CostModel& cost);

/// Charged search for an index in 1..m satisfying `pred`.
///
/// The marked set is found by a classical scan. When it is non-empty a
/// uniformly random marked index is returned, unless failure injection
/// (cost.grover_miss_prob) drops the answer. The ledger is charged
/// grover_charge(...) * unit_cost, so searches over a derived oracle pay
/// for what each of its queries costs.
GroverOutcome grover_find(std::int64_t m, const std::function<bool(std::int64_t)>& pred, QueryLedger& ledger,
                          const CostModel& cost, Rng& rng, double unit_cost = 1.0,
                          std::string_view label = "grover-find");

struct GroverProbability {
    double closed_form;  // sin^2((2r+1) theta), sin^2 theta = t/m
    double simulated;    // explicit state-vector iteration
};

/// Success probability after r Grover iterations with t of m items marked.
/// Throws std::invalid_argument unless 1 <= t <= m and r >= 0.
GroverProbability grover_exact_success(std::int64_t m, std::int64_t t, std::int64_t r);

/// floor((pi/4) * sqrt(m/t)), the usual iteration count.
std::int64_t grover_optimal_iterations(std::int64_t m, std::int64_t t);

} // namespace clawlab
