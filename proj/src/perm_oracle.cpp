#include "clawlab/perm_oracle.hpp"

#include "clawlab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace clawlab {

SeededPerm::SeededPerm(std::uint64_t seed, std::int64_t n) : seed_(seed), n_(n) {
    if (n < 1) throw std::invalid_argument("permutation domain must be >= 1");
    const auto width = static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(n - 1)));
    half_bits_ = std::max(1u, (width + 1) / 2);
    half_mask_ = (std::uint64_t{1} << half_bits_) - 1;
    for (int r = 0; r < kRounds; ++r)
        keys_[r] = derive_seed(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)});
}

std::uint64_t SeededPerm::encrypt(std::uint64_t v) const {
    std::uint64_t left = v >> half_bits_;
    std::uint64_t right = v & half_mask_;
    for (int r = 0; r < kRounds; ++r) {
        const std::uint64_t f = splitmix64(keys_[r] ^ right) & half_mask_;
        const std::uint64_t next = left ^ f;
        left = right;
        right = next;
    }
    return (left << half_bits_) | right;
}

std::int64_t SeededPerm::apply(std::int64_t j) const {
    if (j < 1 || j > n_) throw std::out_of_range("permutation position " + std::to_string(j) + " outside 1..n");
    const auto n = static_cast<std::uint64_t>(n_);
    std::uint64_t v = encrypt(static_cast<std::uint64_t>(j - 1));
    while (v >= n) v = encrypt(v);
    return static_cast<std::int64_t>(v) + 1;
}

std::optional<FreshHit> scan_first_unseen(ClawView& view, Side side, const SeededPerm& perm, const ValueSet& seen,
                                          std::int64_t scan_cap) {
    if (perm.n() != view.size()) throw std::invalid_argument("permutation size does not match the view");
    if (scan_cap < 1) throw std::invalid_argument("scan cap must be >= 1");
    const std::int64_t limit = std::min(scan_cap, view.size());
    for (std::int64_t pos = 1; pos <= limit; ++pos) {
        const std::int64_t idx = perm.apply(pos);
        const Value v = view.peek(side, idx);
        if (!seen.contains(v)) return FreshHit{v, pos, idx};
    }
    return std::nullopt;
}

double grover_min_charge(std::int64_t m, std::int64_t scan_cap, const CostModel& cost) {
    return ceil_charge(cost.c_grover, std::sqrt(static_cast<double>(std::min(scan_cap, m))));
}

std::optional<FreshHit> first_unseen(ClawView& view, Side side, const SeededPerm& perm, const ValueSet& seen,
                                     std::int64_t scan_cap, QueryLedger& ledger, const CostModel& cost) {
    auto hit = scan_first_unseen(view, side, perm, seen, scan_cap);
    ledger.charge("grover-min", grover_min_charge(view.size(), scan_cap, cost) * view.unit_cost());
    return hit;
}

std::optional<FreshHit> first_unseen(const ClawInstance& inst, Side side, const SeededPerm& perm, const ValueSet& seen,
                                     std::int64_t scan_cap, QueryLedger& ledger, const CostModel& cost) {
    InstanceView view(inst);
    return first_unseen(view, side, perm, seen, scan_cap, ledger, cost);
}

} // namespace clawlab
