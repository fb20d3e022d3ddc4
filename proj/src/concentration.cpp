#include "clawlab/concentration.hpp"

#include "clawlab/claw_recursive.hpp"
#include "clawlab/exponents.hpp"
#include "clawlab/perm_oracle.hpp"
#include "clawlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace clawlab {

namespace {

std::int64_t ceil_count(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }

void check_trials(std::int64_t trials) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

std::int64_t default_perm_count(std::int64_t n, std::int64_t b, double c) {
    return ceil_count(c * static_cast<double>(b) * std::log(static_cast<double>(n)));
}

std::vector<std::uint8_t> random_subset(std::int64_t n, std::int64_t b, Rng& rng) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), std::int64_t{1});
    std::vector<std::int64_t> picked;
    std::sample(all.begin(), all.end(), std::back_inserter(picked), b, rng);
    std::vector<std::uint8_t> in(static_cast<std::size_t>(n) + 1, 0);
    for (auto i : picked) in[static_cast<std::size_t>(i)] = 1;
    return in;
}

/// 1-based position of the first B element within the first `limit` positions, or 0.
std::int64_t first_in_set(const SeededPerm& perm, const std::vector<std::uint8_t>& in_b, std::int64_t limit,
                          std::int64_t* element = nullptr) {
    for (std::int64_t pos = 1; pos <= limit; ++pos) {
        const std::int64_t e = perm.apply(pos);
        if (in_b[static_cast<std::size_t>(e)]) {
            if (element) *element = e;
            return pos;
        }
    }
    return 0;
}

void check_nb(std::int64_t n, std::int64_t b) {
    if (n < 1 || b < 1 || b > n) throw std::invalid_argument("need 1 <= b <= n");
}

} // namespace

std::vector<Value> adversarial_profile(std::int64_t n, std::int64_t k, double alpha) {
    if (n < 1 || k < 1) throw std::invalid_argument("need n >= 1 and k >= 1");
    const auto mult = std::max<std::int64_t>(1, ceil_count(std::pow(static_cast<double>(n), 1.0 - alpha)));
    const std::int64_t heavy = std::min(k, n / mult);
    std::vector<Value> x;
    x.reserve(static_cast<std::size_t>(n));
    for (std::int64_t v = 1; v <= heavy; ++v) x.insert(x.end(), static_cast<std::size_t>(mult), static_cast<Value>(v));
    // Leftover positions take light values when labels remain, else pad heavy ones.
    Value next = static_cast<Value>(heavy + 1);
    while (static_cast<std::int64_t>(x.size()) < n) {
        if (next <= k) {
            x.push_back(next++);
        } else {
            x.push_back(static_cast<Value>(1 + (static_cast<std::int64_t>(x.size()) % std::max<std::int64_t>(1, heavy))));
        }
    }
    return x;
}

E1Measurement measure_E1(const std::vector<Value>& x, double alpha, std::int64_t trials, std::uint64_t seed,
                         double sample_const) {
    check_trials(trials);
    const auto n = static_cast<std::int64_t>(x.size());
    if (n < 1) throw std::invalid_argument("empty input");
    const double nd = static_cast<double>(n);
    const std::int64_t ell = std::min(n, ceil_count(sample_const * std::pow(nd, alpha) * std::log(nd)));
    const double heavy_at = std::pow(nd, 1.0 - alpha);

    const Value vmax = *std::max_element(x.begin(), x.end());
    std::vector<std::int64_t> mult(static_cast<std::size_t>(vmax) + 1, 0);
    for (Value v : x) ++mult[static_cast<std::size_t>(v)];
    std::vector<Value> heavy;
    for (Value v = 0; v <= vmax; ++v)
        if (mult[static_cast<std::size_t>(v)] > 0 && static_cast<double>(mult[static_cast<std::size_t>(v)]) >= heavy_at - 1e-9)
            heavy.push_back(v);

    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), std::int64_t{0});
    E1Measurement out;
    out.unseen_counts.reserve(static_cast<std::size_t>(trials));
    std::int64_t failures = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, {1, static_cast<std::uint64_t>(t)}));
        std::vector<std::int64_t> picked;
        picked.reserve(static_cast<std::size_t>(ell));
        std::sample(idx.begin(), idx.end(), std::back_inserter(picked), ell, rng);
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(vmax) + 1, 0);
        for (auto i : picked) seen[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])] = 1;
        if (std::any_of(heavy.begin(), heavy.end(), [&](Value v) { return !seen[static_cast<std::size_t>(v)]; }))
            ++failures;
        out.unseen_counts.push_back(
            std::count_if(x.begin(), x.end(), [&](Value v) { return !seen[static_cast<std::size_t>(v)]; }));
    }
    out.frequency = static_cast<double>(failures) / static_cast<double>(trials);
    return out;
}

E1Measurement measure_E1(std::int64_t n, std::int64_t k, double alpha, std::int64_t trials, std::uint64_t seed,
                         double sample_const) {
    return measure_E1(adversarial_profile(n, k, alpha), alpha, trials, seed, sample_const);
}

double measure_E2(std::int64_t n, std::int64_t b, std::int64_t trials, std::uint64_t seed,
                  std::optional<std::int64_t> perm_count, double sample_const) {
    check_trials(trials);
    check_nb(n, b);
    const std::int64_t perms = perm_count.value_or(default_perm_count(n, b, sample_const));
    if (perms < 0) throw std::invalid_argument("permutation count must be >= 0");
    std::int64_t failures = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, {2, static_cast<std::uint64_t>(t)}));
        const auto in_b = random_subset(n, b, rng);
        std::vector<std::uint8_t> hit(static_cast<std::size_t>(n) + 1, 0);
        std::int64_t distinct = 0;
        const std::uint64_t perm_base = rng();
        for (std::int64_t i = 0; i < perms && distinct < b; ++i) {
            const SeededPerm perm(derive_seed(perm_base, {static_cast<std::uint64_t>(i)}), n);
            std::int64_t e = 0;
            if (first_in_set(perm, in_b, n, &e) && !hit[static_cast<std::size_t>(e)]) {
                hit[static_cast<std::size_t>(e)] = 1;
                ++distinct;
            }
        }
        if (distinct < b) ++failures;
    }
    return static_cast<double>(failures) / static_cast<double>(trials);
}

double measure_E3(std::int64_t n, std::int64_t b, std::int64_t trials, std::uint64_t seed,
                  std::optional<std::int64_t> cap, double sample_const) {
    check_trials(trials);
    check_nb(n, b);
    const std::int64_t perms = default_perm_count(n, b, sample_const);
    const std::int64_t limit = std::min(
        n, cap.value_or(ceil_count(sample_const * (static_cast<double>(n) / static_cast<double>(b)) *
                                   std::log(static_cast<double>(n)))));
    if (limit < 1) throw std::invalid_argument("cap must be >= 1");
    std::int64_t failures = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, {3, static_cast<std::uint64_t>(t)}));
        const auto in_b = random_subset(n, b, rng);
        const std::uint64_t perm_base = rng();
        for (std::int64_t i = 0; i < perms; ++i) {
            const SeededPerm perm(derive_seed(perm_base, {static_cast<std::uint64_t>(i)}), n);
            if (first_in_set(perm, in_b, limit) == 0) {
                ++failures;
                break;
            }
        }
    }
    return static_cast<double>(failures) / static_cast<double>(trials);
}

double bound_with_slack(double bound, std::int64_t trials) {
    const double p = std::clamp(bound, 0.0, 1.0);
    return bound + 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::array<bool, 3> ConcentrationReport::within_bounds() const {
    return {event_E1_freq <= bound_with_slack(paper_bounds[0], trials),
            event_E2_freq <= bound_with_slack(paper_bounds[1], trials),
            event_E3_freq <= bound_with_slack(paper_bounds[2], trials)};
}

nlohmann::json ConcentrationReport::to_json() const {
    return {{"trials", trials},
            {"event_E1_freq", event_E1_freq},
            {"event_E2_freq", event_E2_freq},
            {"event_E3_freq", event_E3_freq},
            {"paper_bounds", paper_bounds},
            {"b_empirical",
             {{"min", b_empirical.min}, {"median", b_empirical.median}, {"mean", b_empirical.mean},
              {"max", b_empirical.max}}}};
}

namespace {

DistributionSummary summarize(std::vector<std::int64_t> xs) {
    DistributionSummary s;
    if (xs.empty()) return s;
    std::sort(xs.begin(), xs.end());
    s.min = static_cast<double>(xs.front());
    s.max = static_cast<double>(xs.back());
    const std::size_t h = xs.size() / 2;
    s.median = xs.size() % 2 ? static_cast<double>(xs[h]) : 0.5 * static_cast<double>(xs[h - 1] + xs[h]);
    s.mean = static_cast<double>(std::accumulate(xs.begin(), xs.end(), std::int64_t{0})) / static_cast<double>(xs.size());
    return s;
}

} // namespace

ConcentrationReport run_concentration(const ConcentrationConfig& cfg) {
    const std::int64_t k = alphabet_for(cfg.e1_n, cfg.e1_kappa);
    const AlgoParams p = make_params(cfg.e1_n, k, cfg.e1_depth);

    ConcentrationReport r;
    r.trials = cfg.trials;
    auto e1 = measure_E1(cfg.e1_n, k, p.alpha, cfg.trials, derive_seed(cfg.seed, {1}));
    r.event_E1_freq = e1.frequency;
    r.b_empirical = summarize(std::move(e1.unseen_counts));
    r.event_E2_freq = measure_E2(cfg.e2_n, cfg.e2_b, cfg.trials, derive_seed(cfg.seed, {2}));
    r.event_E3_freq = measure_E3(cfg.e3_n, cfg.e3_b, cfg.trials, derive_seed(cfg.seed, {3}));

    const double n1 = static_cast<double>(cfg.e1_n), n2 = static_cast<double>(cfg.e2_n),
                 n3 = static_cast<double>(cfg.e3_n);
    r.paper_bounds = {std::pow(n1, p.kappa - 2.0), 1.0 / n2, 4.0 * std::log(n3) / n3};
    return r;
}

} // namespace clawlab
