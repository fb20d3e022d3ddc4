#pragma once

#include "clawlab/instance.hpp"
#include "clawlab/ledger.hpp"
#include "clawlab/view.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace clawlab {

/// How step 2 learns the size of the unseen set.
/// bound: b = min(n, ceil(k n^{1-alpha})), information the algorithm has.
/// oracle: the true max(|B|, |B'|), computed out of band and not charged.
enum class BMode { bound, oracle };

std::string_view b_mode_name(BMode m);
BMode parse_b_mode(std::string_view name);

/// Per-level quantities of the recursive algorithm on a size-n input over alphabet k.
struct AlgoParams {
    int depth = 0;
    std::int64_t n = 0;
    std::int64_t k = 0;
    double kappa = 0.0;         // log_n k
    double alpha = 0.0;         // T_depth(kappa)
    std::int64_t ell = 0;       // min(n, ceil(c n^alpha ln n))
    std::int64_t b_hat = 0;     // min(n, ceil(k n^{1-alpha}))
    std::int64_t sub_size = 0;  // m' = min(n, ceil(c b_hat ln n))
    std::int64_t scan_cap = 0;  // min(n, ceil(c (n / b_hat) ln n))
    BMode b_mode = BMode::bound;
    double sample_const = 4.0;  // the constant c above
    bool kappa_in_range = true; // kappa <= 2/3, where the exponent analysis applies
    bool degenerate = false;    // ell == n: the sample is the whole side

    /// log_n b_hat.
    double beta() const;
};

AlgoParams make_params(std::int64_t n, std::int64_t k, int depth, BMode mode = BMode::bound,
                       double sample_const = 4.0);

struct SubSizes {
    std::int64_t sub_size;
    std::int64_t scan_cap;
};

/// Step-2 sizes for an unseen-set size b >= 1 on a size-n input.
SubSizes sub_sizes(std::int64_t n, std::int64_t b, double sample_const);

struct Witness {
    std::int64_t x_index;  // 1-based into the base instance
    std::int64_t y_index;
};

struct RunStats {
    int levels = 0;                     // recursion levels entered, base algorithm included
    bool degenerate_top = false;
    std::int64_t top_unseen_x = -1;     // |B| at the top level when computed (oracle mode), else -1
    std::int64_t top_unseen_y = -1;
    std::int64_t sentinel_events = 0;   // derived queries with no fresh value within the scan cap
    std::int64_t max_fresh_position = 0;
    double a0_modeled_cost = 0.0;
    double a0_oracle_view_cost = 0.0;
};

struct RunResult {
    bool decision = false;
    std::optional<Witness> witness;
    RunStats stats;
};

/// Base algorithm on any view: reads every entry for an exact decision and
/// charges ceil(c m^{2/3}) "A0-model" in units of the view's query cost.
/// The cost of actually reading all 2m entries is recorded as oracle work.
RunResult run_A0(ClawView& view, QueryLedger& ledger, const CostModel& cost);

/// The depth-params.depth recursive algorithm on a base instance. Returns
/// true only with a verified colliding pair.
RunResult run_Ai(const ClawInstance& inst, const AlgoParams& params, QueryLedger& ledger, const CostModel& cost,
                 std::uint64_t seed);

} // namespace clawlab
