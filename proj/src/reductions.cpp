#include "clawlab/reductions.hpp"

#include "clawlab/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace clawlab {

bool PSearchBlock::valid() const {
    return std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.has_value(); }) == 1;
}

std::optional<Value> psearch_eval(const PSearchBlock& block) {
    std::optional<Value> found;
    for (const auto& c : block.cells) {
        if (!c) continue;
        if (found) return std::nullopt;
        found = c;
    }
    return found;
}

bool ComposedInstance::promise_holds() const {
    auto ok = [](const PSearchBlock& b) { return b.valid(); };
    return std::all_of(x_blocks.begin(), x_blocks.end(), ok) && std::all_of(y_blocks.begin(), y_blocks.end(), ok);
}

ClawInstance reduce_to_claw(const ComposedInstance& ci) {
    if (ci.x_blocks.size() != ci.y_blocks.size()) throw std::invalid_argument("x and y need the same block count");
    auto flatten = [&](const std::vector<PSearchBlock>& blocks, Value star) {
        std::vector<Value> out;
        for (const auto& b : blocks) {
            if (b.length() != ci.m) throw std::invalid_argument("block length differs from m");
            for (const auto& c : b.cells) out.push_back(c ? *c : star);
        }
        return out;
    };
    return ClawInstance(ci.k + 2, flatten(ci.x_blocks, static_cast<Value>(ci.k + 1)),
                        flatten(ci.y_blocks, static_cast<Value>(ci.k + 2)));
}

ComposedValue composed_eval(const ComposedInstance& ci) {
    std::vector<std::uint8_t> in_x(static_cast<std::size_t>(ci.k) + 1, 0);
    for (const auto& b : ci.x_blocks) {
        const auto v = psearch_eval(b);
        if (!v) return ComposedValue::promise_violation;
        in_x[static_cast<std::size_t>(*v)] = 1;
    }
    bool claw = false;
    for (const auto& b : ci.y_blocks) {
        const auto v = psearch_eval(b);
        if (!v) return ComposedValue::promise_violation;
        claw = claw || in_x[static_cast<std::size_t>(*v)] != 0;
    }
    return claw ? ComposedValue::claw : ComposedValue::no_claw;
}

ComposedInstance gen_composed(std::int64_t n, std::int64_t k, std::uint64_t seed, bool want_claw) {
    if (k < 3) throw InvalidSpec("composed instances need k >= 3");
    const std::int64_t inner = k - 2;
    const std::int64_t m = n / inner;
    if (m < 1) throw InvalidSpec("block length floor(n/(k-2)) must be >= 1");
    if (!want_claw && inner < 2) throw InvalidSpec("a claw-free inner instance needs alphabet >= 2");

    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), want_claw ? 1u : 0u}));
    std::uniform_int_distribution<Value> any(1, static_cast<Value>(inner));
    std::vector<Value> xs(static_cast<std::size_t>(inner)), ys(static_cast<std::size_t>(inner));
    if (want_claw) {
        for (auto& v : xs) v = any(rng);
        for (auto& v : ys) v = any(rng);
        std::uniform_int_distribution<std::size_t> slot(0, static_cast<std::size_t>(inner) - 1);
        ys[slot(rng)] = xs[slot(rng)];
    } else {
        std::vector<Value> labels(static_cast<std::size_t>(inner));
        std::iota(labels.begin(), labels.end(), Value{1});
        std::shuffle(labels.begin(), labels.end(), rng);
        const std::size_t split = std::uniform_int_distribution<std::size_t>(1, labels.size() - 1)(rng);
        std::uniform_int_distribution<std::size_t> left(0, split - 1), right(split, labels.size() - 1);
        for (auto& v : xs) v = labels[left(rng)];
        for (auto& v : ys) v = labels[right(rng)];
    }

    std::uniform_int_distribution<std::size_t> where(0, static_cast<std::size_t>(m) - 1);
    auto hide = [&](const std::vector<Value>& vals) {
        std::vector<PSearchBlock> blocks;
        for (Value v : vals) {
            PSearchBlock b{std::vector<std::optional<Value>>(static_cast<std::size_t>(m))};
            b.cells[where(rng)] = v;
            blocks.push_back(std::move(b));
        }
        return blocks;
    };
    return ComposedInstance{inner, m, hide(xs), hide(ys)};
}

} // namespace clawlab

namespace clawlab {

namespace {

std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Advances `digits` as a base-`base` counter; false after the last value.
bool next_tuple(std::vector<std::int64_t>& digits, std::int64_t base) {
    for (auto& d : digits) {
        if (++d < base) return true;
        d = 0;
    }
    return false;
}

// Restricted growth strings of length len with labels 0..labels-1.
bool next_rgs(std::vector<std::int64_t>& s, std::int64_t labels) {
    for (std::size_t i = s.size(); i-- > 1;) {
        std::int64_t prefix_max = 0;
        for (std::size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, s[j]);
        if (s[i] <= prefix_max && s[i] + 1 < labels) {
            ++s[i];
            std::fill(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end(), 0);
            return true;
        }
    }
    return false;
}

void compare(const ComposedInstance& ci, ReductionCheck& out) {
    ++out.cases;
    const bool direct = composed_eval(ci) == ComposedValue::claw;
    if (direct != exact_claw(reduce_to_claw(ci))) ++out.mismatches;
}

void place(ComposedInstance& ci, const std::vector<std::int64_t>& values, const std::vector<std::int64_t>& xpos,
           const std::vector<std::int64_t>& ypos) {
    const auto kk = static_cast<std::size_t>(ci.k_inner());
    for (std::size_t b = 0; b < kk; ++b) {
        auto& xb = ci.x_blocks[b].cells;
        auto& yb = ci.y_blocks[b].cells;
        std::fill(xb.begin(), xb.end(), std::nullopt);
        std::fill(yb.begin(), yb.end(), std::nullopt);
        xb[static_cast<std::size_t>(xpos[b])] = static_cast<Value>(values[b] + 1);
        yb[static_cast<std::size_t>(ypos[b])] = static_cast<Value>(values[kk + b] + 1);
    }
}

} // namespace

ReductionCheck check_reduction_exhaustive(std::int64_t k_inner_max, std::int64_t m_max, std::int64_t full_limit) {
    ReductionCheck out;
    for (std::int64_t kk = 1; kk <= k_inner_max; ++kk) {
        for (std::int64_t m = 1; m <= m_max; ++m) {
            ComposedInstance ci{kk, m,
                                std::vector<PSearchBlock>(static_cast<std::size_t>(kk),
                                                          PSearchBlock{std::vector<std::optional<Value>>(static_cast<std::size_t>(m))}),
                                {}};
            ci.y_blocks = ci.x_blocks;
            const bool full = ipow(kk, 2 * kk) * ipow(m, 2 * kk) <= full_limit;
            std::vector<std::int64_t> values(static_cast<std::size_t>(2 * kk), 0);
            do {
                std::vector<std::int64_t> xpos(static_cast<std::size_t>(kk), 0);
                do {
                    std::vector<std::int64_t> ypos(static_cast<std::size_t>(kk), 0);
                    do {
                        place(ci, values, xpos, ypos);
                        compare(ci, out);
                    } while (next_tuple(ypos, m));
                } while (next_tuple(xpos, m));
            } while (full ? next_tuple(values, kk) : next_rgs(values, kk));
        }
    }
    return out;
}

ReductionCheck check_reduction_random(std::int64_t count, std::uint64_t seed) {
    ReductionCheck out;
    Rng rng(derive_seed(seed, {0x7265}));
    std::uniform_int_distribution<std::int64_t> kpick(1, 16), mpick(1, 8);
    for (std::int64_t c = 0; c < count; ++c) {
        const std::int64_t kk = kpick(rng), m = mpick(rng);
        // Small alphabets make claws common, large ones rare.
        const std::int64_t alphabet = std::uniform_int_distribution<std::int64_t>(1, 2 * kk)(rng);
        std::uniform_int_distribution<Value> val(1, static_cast<Value>(alphabet));
        std::uniform_int_distribution<std::size_t> pos(0, static_cast<std::size_t>(m) - 1);
        auto blocks = [&] {
            std::vector<PSearchBlock> bs;
            for (std::int64_t b = 0; b < kk; ++b) {
                PSearchBlock blk{std::vector<std::optional<Value>>(static_cast<std::size_t>(m))};
                blk.cells[pos(rng)] = val(rng);
                bs.push_back(std::move(blk));
            }
            return bs;
        };
        ComposedInstance ci{alphabet, m, blocks(), blocks()};
        compare(ci, out);
    }
    return out;
}

} // namespace clawlab
