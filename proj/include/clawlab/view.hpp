#pragma once

#include "clawlab/instance.hpp"
#include "clawlab/ledger.hpp"

#include <cstdint>
#include <vector>

namespace clawlab {

/// Membership bitmap over values 0..max_value.
class ValueSet {
public:
    explicit ValueSet(std::int64_t max_value = 0) : bits_(static_cast<std::size_t>(max_value) + 1, 0) {}

    void insert(Value v) {
        if (static_cast<std::size_t>(v) >= bits_.size()) bits_.resize(static_cast<std::size_t>(v) + 1, 0);
        if (!bits_[static_cast<std::size_t>(v)]) {
            bits_[static_cast<std::size_t>(v)] = 1;
            ++size_;
        }
    }
    bool contains(Value v) const {
        return v >= 0 && static_cast<std::size_t>(v) < bits_.size() && bits_[static_cast<std::size_t>(v)] != 0;
    }
    std::int64_t size() const { return size_; }

private:
    std::vector<std::uint8_t> bits_;
    std::int64_t size_ = 0;
};

/// Oracle access to a claw input of size m. The base instance is one view;
/// the derived sub-instances of the recursion are others.
///
/// Real entries lie in 1..alphabet(). A derived view may also return the
/// side-specific sentinels alphabet()+1 (x) and alphabet()+2 (y).
class ClawView {
public:
    virtual ~ClawView() = default;

    virtual std::int64_t size() const = 0;
    virtual std::int64_t alphabet() const = 0;

    /// Modeled cost, in base-instance queries, of one query to this view.
    virtual double unit_cost() const = 0;

    /// Uncharged access for the classical simulation (1-based).
    virtual Value peek(Side s, std::int64_t j) = 0;

    /// One charged query (1-based).
    virtual Value query(Side s, std::int64_t j, QueryLedger& ledger, const CostModel& cost) = 0;

    /// Base-instance index behind entry j, or 0 if the entry is a sentinel.
    virtual std::int64_t origin(Side s, std::int64_t j) = 0;
};

class InstanceView final : public ClawView {
public:
    explicit InstanceView(const ClawInstance& inst) : inst_(inst) {}

    std::int64_t size() const override { return inst_.n(); }
    std::int64_t alphabet() const override { return inst_.k(); }
    double unit_cost() const override { return 1.0; }
    Value peek(Side s, std::int64_t j) override { return inst_.at(s, j); }
    Value query(Side s, std::int64_t j, QueryLedger& ledger, const CostModel& cost) override {
        return read_side(inst_, s, j, ledger, cost);
    }
    std::int64_t origin(Side, std::int64_t j) override { return j; }

private:
    const ClawInstance& inst_;
};

} // namespace clawlab
