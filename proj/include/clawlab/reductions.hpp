#pragma once

#include "clawlab/instance.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace clawlab {

/// A promise-search block: cells are values in 1..k or empty (the star).
/// Valid iff exactly one cell holds a value.
struct PSearchBlock {
    std::vector<std::optional<Value>> cells;

    std::int64_t length() const { return static_cast<std::int64_t>(cells.size()); }
    bool valid() const;
};

/// The unique non-empty cell, or nullopt when the promise does not hold.
std::optional<Value> psearch_eval(const PSearchBlock& block);

/// Claw over k_inner blocks per side, each block of length m, inner alphabet 1..k.
struct ComposedInstance {
    std::int64_t k = 0;
    std::int64_t m = 0;
    std::vector<PSearchBlock> x_blocks;
    std::vector<PSearchBlock> y_blocks;

    std::int64_t k_inner() const { return static_cast<std::int64_t>(x_blocks.size()); }
    bool promise_holds() const;
};

/// Blocks laid out contiguously; empty x cells become k+1, empty y cells k+2.
/// Total: off-promise blocks are mapped too.
ClawInstance reduce_to_claw(const ComposedInstance& ci);

enum class ComposedValue { no_claw, claw, promise_violation };

ComposedValue composed_eval(const ComposedInstance& ci);

/// Hides an inner claw instance of size k-2 over alphabet 1..k-2 in blocks of
/// length floor(n/(k-2)); reduces to a size-(k-2)*floor(n/(k-2)) claw over alphabet k.
/// Throws InvalidSpec for infeasible dimensions.
ComposedInstance gen_composed(std::int64_t n, std::int64_t k, std::uint64_t seed, bool want_claw);

} // namespace clawlab

namespace clawlab {

struct ReductionCheck {
    std::int64_t cases = 0;
    std::int64_t mismatches = 0;
};

/// composed_eval against exact_claw(reduce_to_claw(.)) over every on-promise
/// instance with k_inner <= k_inner_max and m <= m_max: all inner values and
/// all cell placements. Size classes beyond `full_limit` cases enumerate inner
/// values up to relabeling of the alphabet instead.
ReductionCheck check_reduction_exhaustive(std::int64_t k_inner_max, std::int64_t m_max,
                                          std::int64_t full_limit = 20'000'000);

/// Same comparison on random on-promise instances (k_inner <= 16, m <= 8).
ReductionCheck check_reduction_random(std::int64_t count, std::uint64_t seed);

} // namespace clawlab
