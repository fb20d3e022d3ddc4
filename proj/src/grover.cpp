#include "clawlab/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace clawlab {

double grover_charge(std::int64_t m, std::int64_t marked, const CostModel& cost) {
    const double md = static_cast<double>(m);
    if (marked > 0 && cost.grover_charge_uses_marked)
        return ceil_charge(cost.c_grover, std::sqrt(md / static_cast<double>(marked)));
    return ceil_charge(cost.c_grover, std::sqrt(md));
}

GroverOutcome grover_find(std::int64_t m, const std::function<bool(std::int64_t)>& pred, QueryLedger& ledger,
                          const CostModel& cost, Rng& rng, double unit_cost, std::string_view label) {
    if (m < 1) throw std::invalid_argument("grover_find needs a domain of size >= 1");
    std::vector<std::int64_t> marked;
    for (std::int64_t j = 1; j <= m; ++j)
        if (pred(j)) marked.push_back(j);

    GroverOutcome out;
    out.marked = static_cast<std::int64_t>(marked.size());
    out.charged = grover_charge(m, out.marked, cost);
    ledger.charge(label, out.charged * unit_cost);

    if (marked.empty()) return out;
    if (cost.grover_miss_prob > 0.0 && std::bernoulli_distribution(cost.grover_miss_prob)(rng)) return out;
    std::uniform_int_distribution<std::size_t> pick(0, marked.size() - 1);
    out.found = marked[pick(rng)];
    return out;
}

GroverProbability grover_exact_success(std::int64_t m, std::int64_t t, std::int64_t r) {
    if (m < 1 || t < 1 || t > m) throw std::invalid_argument("grover_exact_success needs 1 <= t <= m");
    if (r < 0) throw std::invalid_argument("iteration count must be >= 0");

    const double theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(m)));
    const double s = std::sin(static_cast<double>(2 * r + 1) * theta);

    // Marked items occupy indices [0, t).
    std::vector<double> amp(static_cast<std::size_t>(m), 1.0 / std::sqrt(static_cast<double>(m)));
    const auto tt = static_cast<std::size_t>(t);
    for (std::int64_t it = 0; it < r; ++it) {
        for (std::size_t i = 0; i < tt; ++i) amp[i] = -amp[i];
        double mean = 0.0;
        for (double a : amp) mean += a;
        mean /= static_cast<double>(m);
        for (double& a : amp) a = 2.0 * mean - a;
    }
    double p = 0.0;
    for (std::size_t i = 0; i < tt; ++i) p += amp[i] * amp[i];
    return {s * s, p};
}

std::int64_t grover_optimal_iterations(std::int64_t m, std::int64_t t) {
    return static_cast<std::int64_t>(std::floor(std::numbers::pi / 4 * std::sqrt(static_cast<double>(m) / t)));
}

} // namespace clawlab
