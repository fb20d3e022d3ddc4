#include "clawlab/claw_recursive.hpp"

#include "clawlab/exponents.hpp"
#include "clawlab/grover.hpp"
#include "clawlab/perm_oracle.hpp"
#include "clawlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace clawlab {

std::string_view b_mode_name(BMode m) { return m == BMode::bound ? "bound" : "oracle"; }

BMode parse_b_mode(std::string_view name) {
    if (name == "bound") return BMode::bound;
    if (name == "oracle") return BMode::oracle;
    throw std::invalid_argument("unknown b-mode: " + std::string(name));
}

double AlgoParams::beta() const {
    if (n < 2 || b_hat < 1) return 0.0;
    return std::log(static_cast<double>(b_hat)) / std::log(static_cast<double>(n));
}

namespace {

std::int64_t ceil_count(double x) { return static_cast<std::int64_t>(ceil_charge(1.0, x)); }

std::int64_t clamp_count(double x, std::int64_t hi) { return std::clamp<std::int64_t>(ceil_count(x), 1, hi); }

} // namespace

SubSizes sub_sizes(std::int64_t n, std::int64_t b, double sample_const) {
    if (b < 1) throw std::invalid_argument("unseen-set size must be >= 1");
    const double ln_n = std::log(static_cast<double>(n));
    const double nd = static_cast<double>(n), bd = static_cast<double>(b);
    return {clamp_count(sample_const * bd * ln_n, n), clamp_count(sample_const * (nd / bd) * ln_n, n)};
}

AlgoParams make_params(std::int64_t n, std::int64_t k, int depth, BMode mode, double sample_const) {
    if (n < 1) throw std::invalid_argument("instance size must be >= 1");
    if (k < 2) throw std::invalid_argument("alphabet must be >= 2");
    if (depth < 0) throw std::invalid_argument("recursion depth must be >= 0");
    if (!(sample_const > 0.0)) throw std::invalid_argument("sample constant must be > 0");

    AlgoParams p;
    p.depth = depth;
    p.n = n;
    p.k = k;
    p.b_mode = mode;
    p.sample_const = sample_const;
    const double nd = static_cast<double>(n);
    p.kappa = n >= 2 ? std::log(static_cast<double>(k)) / std::log(nd) : 1.0;
    p.kappa_in_range = p.kappa <= 2.0 / 3.0 + 1e-12;
    p.alpha = exponent_T(depth, p.kappa);
    p.ell = n >= 2 ? std::min(n, ceil_count(sample_const * std::pow(nd, p.alpha) * std::log(nd))) : n;
    p.degenerate = p.ell >= n;
    p.b_hat = clamp_count(static_cast<double>(k) * std::pow(nd, 1.0 - p.alpha), n);
    const auto sizes = sub_sizes(n, p.b_hat, sample_const);
    p.sub_size = sizes.sub_size;
    p.scan_cap = sizes.scan_cap;
    return p;
}

namespace {

Value sentinel(Side s, std::int64_t k) { return static_cast<Value>(s == Side::x ? k + 1 : k + 2); }

struct RunContext {
    QueryLedger& ledger;
    const CostModel& cost;
    BMode b_mode;
    double sample_const;
    std::uint64_t seed;
    RunStats stats;
};

/// Sub-instance of step 2: entry j on a side is the first value, in the
/// j-th seeded permutation of the parent side, that the sample did not see.
class DerivedView final : public ClawView {
public:
    DerivedView(ClawView& parent, std::int64_t size, ValueSet seen_x, ValueSet seen_y, std::int64_t scan_cap,
                std::uint64_t perm_seed, const CostModel& cost, RunContext& ctx)
        : parent_(parent), size_(size), scan_cap_(scan_cap), perm_seed_(perm_seed), ctx_(ctx) {
        seen_[0] = std::move(seen_x);
        seen_[1] = std::move(seen_y);
        for (auto& c : cache_) c.assign(static_cast<std::size_t>(size), Entry{});
        unit_ = parent.unit_cost() * grover_min_charge(parent.size(), scan_cap, cost);
    }

    std::int64_t size() const override { return size_; }
    std::int64_t alphabet() const override { return parent_.alphabet(); }
    double unit_cost() const override { return unit_; }

    Value peek(Side s, std::int64_t j) override { return entry(s, j).value; }

    Value query(Side s, std::int64_t j, QueryLedger& ledger, const CostModel& cost) override {
        check(j);
        auto& e = cache_[side_slot(s)][static_cast<std::size_t>(j - 1)];
        if (e.value != 0) {
            ledger.charge("grover-min", grover_min_charge(parent_.size(), scan_cap_, cost) * parent_.unit_cost());
            return e.value;
        }
        fill(s, j, first_unseen(parent_, s, perm(s, j), seen_[side_slot(s)], scan_cap_, ledger, cost));
        return e.value;
    }

    std::int64_t origin(Side s, std::int64_t j) override {
        const auto& e = entry(s, j);
        return e.parent_index == 0 ? 0 : parent_.origin(s, e.parent_index);
    }

private:
    struct Entry {
        Value value = 0;  // 0 = not computed yet
        std::int64_t parent_index = 0;
    };

    static std::size_t side_slot(Side s) { return s == Side::x ? 0 : 1; }

    void check(std::int64_t j) const {
        if (j < 1 || j > size_) throw std::out_of_range("derived index outside 1..m'");
    }

    SeededPerm perm(Side s, std::int64_t j) const {
        return SeededPerm(derive_seed(perm_seed_, {side_slot(s), static_cast<std::uint64_t>(j)}), parent_.size());
    }

    const Entry& entry(Side s, std::int64_t j) {
        check(j);
        auto& e = cache_[side_slot(s)][static_cast<std::size_t>(j - 1)];
        if (e.value == 0) fill(s, j, scan_first_unseen(parent_, s, perm(s, j), seen_[side_slot(s)], scan_cap_));
        return e;
    }

    void fill(Side s, std::int64_t j, const std::optional<FreshHit>& hit) {
        auto& e = cache_[side_slot(s)][static_cast<std::size_t>(j - 1)];
        if (hit) {
            e.value = hit->value;
            e.parent_index = hit->index;
            ctx_.stats.max_fresh_position = std::max(ctx_.stats.max_fresh_position, hit->position);
        } else {
            e.value = sentinel(s, alphabet());
            e.parent_index = 0;
            ++ctx_.stats.sentinel_events;
        }
    }

    ClawView& parent_;
    std::int64_t size_;
    std::int64_t scan_cap_;
    std::uint64_t perm_seed_;
    RunContext& ctx_;
    double unit_ = 1.0;
    ValueSet seen_[2];
    std::vector<Entry> cache_[2];
};

/// Finds a claw among the real values of a fully peeked view.
std::optional<std::pair<std::int64_t, std::int64_t>> find_claw(ClawView& view) {
    const std::int64_t m = view.size(), k = view.alphabet();
    std::vector<std::int64_t> first_x(static_cast<std::size_t>(k) + 1, 0);
    for (std::int64_t j = 1; j <= m; ++j) {
        const Value v = view.peek(Side::x, j);
        if (v >= 1 && v <= k && first_x[static_cast<std::size_t>(v)] == 0) first_x[static_cast<std::size_t>(v)] = j;
    }
    for (std::int64_t j = 1; j <= m; ++j) {
        const Value v = view.peek(Side::y, j);
        if (v >= 1 && v <= k && first_x[static_cast<std::size_t>(v)] != 0)
            return std::pair{first_x[static_cast<std::size_t>(v)], j};
    }
    return std::nullopt;
}

Witness to_witness(ClawView& view, std::int64_t xj, std::int64_t yj) {
    return {view.origin(Side::x, xj), view.origin(Side::y, yj)};
}

RunResult a0_on(ClawView& view, RunContext& ctx) {
    const std::int64_t m = view.size();
    const double modeled = ceil_charge(ctx.cost.c_grover, std::cbrt(static_cast<double>(m) * static_cast<double>(m))) *
                           view.unit_cost();
    const double actual = 2.0 * static_cast<double>(m) * view.unit_cost();
    ctx.ledger.charge("A0-model", modeled);
    ctx.ledger.note_oracle_work(actual);
    ctx.stats.a0_modeled_cost += modeled;
    ctx.stats.a0_oracle_view_cost += actual;
    ++ctx.stats.levels;

    RunResult out;
    if (auto claw = find_claw(view)) {
        out.decision = true;
        out.witness = to_witness(view, claw->first, claw->second);
    }
    return out;
}

struct SampleResult {
    ValueSet values;
    std::unordered_map<Value, std::int64_t> index_of;  // a sampled index holding each value
};

SampleResult sample_side(ClawView& view, Side s, std::int64_t ell, Rng& rng, RunContext& ctx) {
    const std::int64_t m = view.size();
    std::vector<std::int64_t> all(static_cast<std::size_t>(m));
    std::iota(all.begin(), all.end(), std::int64_t{1});
    std::vector<std::int64_t> picked;
    picked.reserve(static_cast<std::size_t>(ell));
    std::sample(all.begin(), all.end(), std::back_inserter(picked), ell, rng);

    SampleResult out{ValueSet(view.alphabet() + 2), {}};
    for (auto j : picked) {
        const Value v = view.query(s, j, ctx.ledger, ctx.cost);
        out.values.insert(v);
        out.index_of.emplace(v, j);
    }
    return out;
}

/// Steps 1 / 1': search the other side for a value in the sample.
std::optional<Witness> probe_other_side(ClawView& view, Side sampled, const SampleResult& sample, Rng& rng,
                                        RunContext& ctx) {
    const Side other = sampled == Side::x ? Side::y : Side::x;
    const std::int64_t k = view.alphabet();
    auto pred = [&](std::int64_t j) {
        const Value v = view.peek(other, j);
        return v >= 1 && v <= k && sample.values.contains(v);
    };
    const auto outcome = grover_find(view.size(), pred, ctx.ledger, ctx.cost, rng, view.unit_cost());
    if (!outcome.found) return std::nullopt;
    const Value v = view.peek(other, *outcome.found);
    const std::int64_t mine = sample.index_of.at(v);
    return sampled == Side::x ? to_witness(view, mine, *outcome.found) : to_witness(view, *outcome.found, mine);
}

std::int64_t count_unseen(ClawView& view, Side s, const ValueSet& seen) {
    std::int64_t count = 0;
    for (std::int64_t j = 1; j <= view.size(); ++j)
        if (!seen.contains(view.peek(s, j))) ++count;
    return count;
}

RunResult run_level(ClawView& view, int depth, int level, RunContext& ctx) {
    if (depth == 0) return a0_on(view, ctx);

    const AlgoParams p = make_params(view.size(), view.alphabet(), depth, ctx.b_mode, ctx.sample_const);
    Rng rng(derive_seed(ctx.seed, {static_cast<std::uint64_t>(level), 1}));
    ++ctx.stats.levels;
    if (level == 0) ctx.stats.degenerate_top = p.degenerate;

    RunResult out;
    // Step 1.
    const SampleResult sx = sample_side(view, Side::x, p.ell, rng, ctx);
    if (auto w = probe_other_side(view, Side::x, sx, rng, ctx)) {
        out.decision = true;
        out.witness = w;
        return out;
    }
    // With the whole of x sampled the search above was exhaustive.
    if (p.degenerate) return out;

    // Step 1'.
    const SampleResult sy = sample_side(view, Side::y, p.ell, rng, ctx);
    if (auto w = probe_other_side(view, Side::y, sy, rng, ctx)) {
        out.decision = true;
        out.witness = w;
        return out;
    }

    // Step 2.
    std::int64_t b = p.b_hat;
    if (ctx.b_mode == BMode::oracle) {
        const std::int64_t bx = count_unseen(view, Side::x, sx.values);
        const std::int64_t by = count_unseen(view, Side::y, sy.values);
        if (level == 0) {
            ctx.stats.top_unseen_x = bx;
            ctx.stats.top_unseen_y = by;
        }
        b = std::max(bx, by);
        // Every x value was sampled, so step 1 already searched all of y (and symmetrically).
        if (bx == 0 || by == 0) return out;
    }
    const SubSizes sizes = sub_sizes(view.size(), b, ctx.sample_const);
    DerivedView sub(view, sizes.sub_size, sx.values, sy.values, sizes.scan_cap,
                    derive_seed(ctx.seed, {static_cast<std::uint64_t>(level), 2}), ctx.cost, ctx);
    return run_level(sub, depth - 1, level + 1, ctx);
}

} // namespace

RunResult run_A0(ClawView& view, QueryLedger& ledger, const CostModel& cost) {
    cost.validate();
    RunContext ctx{ledger, cost, BMode::bound, 4.0, 0, {}};
    RunResult out = a0_on(view, ctx);
    out.stats = ctx.stats;
    return out;
}

RunResult run_Ai(const ClawInstance& inst, const AlgoParams& params, QueryLedger& ledger, const CostModel& cost,
                 std::uint64_t seed) {
    cost.validate();
    if (params.n != inst.n() || params.k != inst.k())
        throw std::invalid_argument("algorithm parameters were built for a different instance shape");
    InstanceView view(inst);
    RunContext ctx{ledger, cost, params.b_mode, params.sample_const, seed, {}};
    RunResult out = run_level(view, params.depth, 0, ctx);
    out.stats = ctx.stats;
    if (out.decision) {
        if (!out.witness || out.witness->x_index < 1 || out.witness->y_index < 1 ||
            inst.at(Side::x, out.witness->x_index) != inst.at(Side::y, out.witness->y_index))
            throw std::logic_error("claw reported without a valid witness");
    }
    return out;
}

} // namespace clawlab
