#pragma once

#include "clawlab/instance.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace clawlab {

/// Constants behind the modeled query charges.
struct CostModel {
    double c_grover = 1.0;              // multiplier on every sqrt-style charge
    int classical_read_charge = 1;      // 0 or 1: what one sample read costs
    double grover_miss_prob = 0.0;      // failure injection; 0 is the ideal subroutine
    bool grover_charge_uses_marked = true;  // sqrt(m/t) when true, sqrt(m) always when false

    /// Throws std::invalid_argument unless c_grover > 0, read charge in {0,1}, miss prob in [0,1].
    void validate() const;
};

/// ceil(c * x), the one rounding rule for every charge.
double ceil_charge(double c, double x);

struct ChargeEvent {
    std::string label;
    double amount;
};

/// Monotone query counters for one algorithm run. Totals are replayable
/// from the event log; reads go through read_x / read_y below.
class QueryLedger {
public:
    void charge(std::string_view label, double amount);

    /// Simulation-side work that a real quantum run would not pay for
    /// separately (kept apart from charged_cost).
    void note_oracle_work(double amount);

    std::int64_t x_reads() const { return x_reads_; }
    std::int64_t y_reads() const { return y_reads_; }
    double charged_cost() const { return charged_; }
    double oracle_view_cost() const { return oracle_work_; }
    const std::vector<ChargeEvent>& events() const { return events_; }

    std::map<std::string, double> by_label() const;
    double replay_total() const;

    /// {x_reads, y_reads, charged_cost, events:[{label, amount}]}
    nlohmann::json to_json() const;

private:
    friend Value read_x(const ClawInstance&, std::int64_t, QueryLedger&, const CostModel&);
    friend Value read_y(const ClawInstance&, std::int64_t, QueryLedger&, const CostModel&);
    void record_read(Side s, int amount);

    std::int64_t x_reads_ = 0;
    std::int64_t y_reads_ = 0;
    double charged_ = 0.0;
    double oracle_work_ = 0.0;
    std::vector<ChargeEvent> events_;
};

/// Counted 1-based read. Throws std::out_of_range on a bad index.
Value read_x(const ClawInstance& inst, std::int64_t i, QueryLedger& ledger, const CostModel& cost);
Value read_y(const ClawInstance& inst, std::int64_t i, QueryLedger& ledger, const CostModel& cost);
Value read_side(const ClawInstance& inst, Side s, std::int64_t i, QueryLedger& ledger, const CostModel& cost);

} // namespace clawlab
