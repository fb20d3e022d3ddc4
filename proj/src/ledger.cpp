#include "clawlab/ledger.hpp"

#include <cmath>
#include <stdexcept>

namespace clawlab {

void CostModel::validate() const {
    if (!(c_grover > 0.0)) throw std::invalid_argument("c-grover must be > 0");
    if (classical_read_charge != 0 && classical_read_charge != 1)
        throw std::invalid_argument("classical read charge must be 0 or 1");
    if (!(grover_miss_prob >= 0.0 && grover_miss_prob <= 1.0))
        throw std::invalid_argument("grover miss probability must lie in [0, 1]");
}

double ceil_charge(double c, double x) {
    // Guard against sqrt/pow landing a hair above an integer (e.g. 27^{2/3}).
    const double v = c * x;
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, r)) return r;
    return std::ceil(v);
}

void QueryLedger::charge(std::string_view label, double amount) {
    if (!(amount >= 0.0)) throw std::invalid_argument("negative charge for '" + std::string(label) + "'");
    events_.push_back({std::string(label), amount});
    charged_ += amount;
}

void QueryLedger::note_oracle_work(double amount) {
    if (!(amount >= 0.0)) throw std::invalid_argument("negative oracle work");
    oracle_work_ += amount;
}

void QueryLedger::record_read(Side s, int amount) {
    (s == Side::x ? x_reads_ : y_reads_) += amount;
    charge(s == Side::x ? "read-x" : "read-y", amount);
}

std::map<std::string, double> QueryLedger::by_label() const {
    std::map<std::string, double> out;
    for (const auto& e : events_) out[e.label] += e.amount;
    return out;
}

double QueryLedger::replay_total() const {
    double total = 0.0;
    for (const auto& e : events_) total += e.amount;
    return total;
}

nlohmann::json QueryLedger::to_json() const {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : events_) events.push_back({{"label", e.label}, {"amount", e.amount}});
    return {{"x_reads", x_reads_}, {"y_reads", y_reads_}, {"charged_cost", charged_}, {"events", std::move(events)}};
}

Value read_x(const ClawInstance& inst, std::int64_t i, QueryLedger& ledger, const CostModel& cost) {
    const Value v = inst.at(Side::x, i);
    ledger.record_read(Side::x, cost.classical_read_charge);
    return v;
}

Value read_y(const ClawInstance& inst, std::int64_t i, QueryLedger& ledger, const CostModel& cost) {
    const Value v = inst.at(Side::y, i);
    ledger.record_read(Side::y, cost.classical_read_charge);
    return v;
}

Value read_side(const ClawInstance& inst, Side s, std::int64_t i, QueryLedger& ledger, const CostModel& cost) {
    return s == Side::x ? read_x(inst, i, ledger, cost) : read_y(inst, i, ledger, cost);
}

} // namespace clawlab
