#pragma once

#include "clawlab/ledger.hpp"
#include "clawlab/view.hpp"

#include <cstdint>
#include <optional>

namespace clawlab {

/// Keyed pseudorandom permutation of 1..n, evaluable point-wise.
///
/// A four-round balanced Feistel network over the smallest even bit width
/// 2h with 2^{2h} >= n, restricted to 0..n-1 by cycle walking. The Feistel
/// domain is at most 4n, so a walk takes fewer than four steps on average.
class SeededPerm {
public:
    SeededPerm(std::uint64_t seed, std::int64_t n);

    std::uint64_t seed() const { return seed_; }
    std::int64_t n() const { return n_; }

    /// Image of position j in 1..n; throws std::out_of_range otherwise.
    std::int64_t apply(std::int64_t j) const;

private:
    std::uint64_t encrypt(std::uint64_t v) const;

    static constexpr int kRounds = 4;
    std::uint64_t seed_;
    std::int64_t n_;
    unsigned half_bits_ = 1;
    std::uint64_t half_mask_ = 1;
    std::uint64_t keys_[kRounds] = {};
};

struct FreshHit {
    Value value;
    std::int64_t position;  // 1-based position in permuted order
    std::int64_t index;     // underlying index into the view, perm.apply(position)
};

/// Earliest permuted position within scan_cap whose value is outside `seen`.
/// No charge; this is the classical realization of the scan.
std::optional<FreshHit> scan_first_unseen(ClawView& view, Side side, const SeededPerm& perm, const ValueSet& seen,
                                          std::int64_t scan_cap);

/// Charge for one minimum-finding call: ceil(c * sqrt(min(scan_cap, m))) view queries.
double grover_min_charge(std::int64_t m, std::int64_t scan_cap, const CostModel& cost);

/// scan_first_unseen plus a "grover-min" charge of
/// grover_min_charge(...) * view.unit_cost(). Individual reads are not charged.
std::optional<FreshHit> first_unseen(ClawView& view, Side side, const SeededPerm& perm, const ValueSet& seen,
                                     std::int64_t scan_cap, QueryLedger& ledger, const CostModel& cost);

std::optional<FreshHit> first_unseen(const ClawInstance& inst, Side side, const SeededPerm& perm, const ValueSet& seen,
                                     std::int64_t scan_cap, QueryLedger& ledger, const CostModel& cost);

} // namespace clawlab
