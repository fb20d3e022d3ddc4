#include "clawlab/instance.hpp"

#include "clawlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace clawlab {

ClawInstance::ClawInstance(std::int64_t k, std::vector<Value> x, std::vector<Value> y)
    : k_(k), x_(std::move(x)), y_(std::move(y)) {
    if (k_ < 2) throw std::invalid_argument("alphabet size k must be >= 2");
    if (x_.empty()) throw std::invalid_argument("instance must have n >= 1");
    if (x_.size() != y_.size()) throw std::invalid_argument("x and y must have the same length");
    auto in_range = [this](Value v) { return v >= 1 && v <= k_; };
    if (!std::all_of(x_.begin(), x_.end(), in_range) || !std::all_of(y_.begin(), y_.end(), in_range))
        throw std::invalid_argument("instance value outside 1..k");
}

Value ClawInstance::at(Side s, std::int64_t i) const {
    if (i < 1 || i > n()) throw std::out_of_range("instance index " + std::to_string(i) + " outside 1..n");
    return side(s)[static_cast<std::size_t>(i - 1)];
}

std::string_view family_name(Family f) {
    switch (f) {
    case Family::random_no_claw: return "random-no-claw";
    case Family::random_planted_claw: return "random-planted-claw";
    case Family::hard_singleton_yes: return "hard-singleton-yes";
    case Family::hard_singleton_no: return "hard-singleton-no";
    case Family::uniform: return "uniform";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    for (auto f : {Family::random_no_claw, Family::random_planted_claw, Family::hard_singleton_yes,
                   Family::hard_singleton_no, Family::uniform}) {
        if (family_name(f) == name) return f;
    }
    throw std::invalid_argument("unknown instance family: " + std::string(name));
}

std::optional<bool> family_promise(Family f) {
    switch (f) {
    case Family::random_no_claw:
    case Family::hard_singleton_no: return false;
    case Family::random_planted_claw:
    case Family::hard_singleton_yes: return true;
    case Family::uniform: return std::nullopt;
    }
    return std::nullopt;
}

std::int64_t alphabet_for(std::int64_t n, double kappa) {
    // Nudge by an ulp-scale epsilon so exact powers (e.g. 1000^{1/3}) floor correctly.
    auto k = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), kappa) * (1 + 1e-12)));
    return std::max<std::int64_t>(2, k);
}

HardShape hard_shape(std::int64_t n) {
    const double nd = static_cast<double>(n);
    HardShape s{};
    s.singletons = static_cast<std::int64_t>(std::floor(std::cbrt(nd * nd) / 2 * (1 + 1e-12)));
    s.block = static_cast<std::int64_t>(std::ceil(std::cbrt(nd) * (1 - 1e-12)));
    s.blocks = s.block > 0 ? (n - s.singletons) / s.block : 0;
    s.k = 2 * s.singletons + 2 * s.blocks;
    return s;
}

bool exact_claw(const ClawInstance& inst) {
    std::vector<std::uint8_t> in_x(static_cast<std::size_t>(inst.k()) + 1, 0);
    for (Value v : inst.x()) in_x[static_cast<std::size_t>(v)] = 1;
    return std::any_of(inst.y().begin(), inst.y().end(),
                       [&](Value v) { return in_x[static_cast<std::size_t>(v)] != 0; });
}

namespace {

std::vector<Value> shuffled_labels(std::int64_t k, Rng& rng) {
    std::vector<Value> labels(static_cast<std::size_t>(k));
    std::iota(labels.begin(), labels.end(), Value{1});
    std::shuffle(labels.begin(), labels.end(), rng);
    return labels;
}

std::vector<Value> fill_from(std::int64_t n, const std::vector<Value>& pool, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<Value> out(static_cast<std::size_t>(n));
    for (auto& v : out) v = pool[pick(rng)];
    return out;
}

// Overwrites `count` distinct random positions with `v`.
void plant(std::vector<Value>& side, Value v, std::int64_t count, Rng& rng) {
    std::vector<std::size_t> pos(side.size());
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    for (std::int64_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), pos.size() - 1);
        std::swap(pos[static_cast<std::size_t>(i)], pos[pick(rng)]);
        side[pos[static_cast<std::size_t>(i)]] = v;
    }
}

ClawInstance random_family(const InstanceSpec& spec, Rng& rng) {
    const std::int64_t k = alphabet_for(spec.n, spec.kappa);
    const bool planted = spec.family == Family::random_planted_claw;
    if (planted && k < 3)
        throw InvalidSpec("random-planted-claw needs k >= 3 to plant a single pair (got k=" + std::to_string(k) + ")");
    if (planted && (spec.planted_multiplicity < 1 || spec.planted_multiplicity > spec.n))
        throw InvalidSpec("planted multiplicity must lie in 1..n");

    auto labels = shuffled_labels(k, rng);
    Value shared = 0;
    if (planted) {
        shared = labels.back();
        labels.pop_back();
    }
    const auto split = static_cast<std::ptrdiff_t>((labels.size() + 1) / 2);
    std::vector<Value> xpool(labels.begin(), labels.begin() + split);
    std::vector<Value> ypool(labels.begin() + split, labels.end());

    auto x = fill_from(spec.n, xpool, rng);
    auto y = fill_from(spec.n, ypool, rng);
    if (planted) {
        plant(x, shared, spec.planted_multiplicity, rng);
        plant(y, shared, spec.planted_multiplicity, rng);
    }
    return ClawInstance(k, std::move(x), std::move(y));
}

ClawInstance hard_family(const InstanceSpec& spec, Rng& rng) {
    const HardShape shape = hard_shape(spec.n);
    if (shape.singletons < 2 || shape.blocks < 1)
        throw InvalidSpec("hard-singleton family needs >= 2 singletons and >= 1 block per side (n=" +
                          std::to_string(spec.n) + ")");
    const bool yes = spec.family == Family::hard_singleton_yes;
    const auto labels = shuffled_labels(shape.k, rng);
    const auto s = static_cast<std::size_t>(shape.singletons);
    const auto h = static_cast<std::size_t>(shape.blocks);

    auto build = [&](std::size_t singleton_base, std::size_t block_base, bool share_first) {
        std::vector<Value> out;
        out.reserve(static_cast<std::size_t>(spec.n));
        for (std::size_t i = 0; i < s; ++i)
            out.push_back(share_first && i == 0 ? labels[0] : labels[singleton_base + i]);
        for (std::size_t b = 0; b < h; ++b) {
            const bool last = b + 1 == h;
            const auto copies = last ? static_cast<std::size_t>(spec.n) - out.size()
                                     : static_cast<std::size_t>(shape.block);
            out.insert(out.end(), copies, labels[block_base + b]);
        }
        std::shuffle(out.begin(), out.end(), rng);
        return out;
    };
    auto x = build(0, 2 * s, false);
    auto y = build(s, 2 * s + h, yes);
    return ClawInstance(shape.k, std::move(x), std::move(y));
}

} // namespace

ClawInstance generate(const InstanceSpec& spec) {
    if (spec.n < 4) throw InvalidSpec("instance generation needs n >= 4");
    if (!(spec.kappa >= 0.0 && spec.kappa <= 1.0)) throw InvalidSpec("kappa must lie in [0, 1]");
    Rng rng(derive_seed(spec.seed, {static_cast<std::uint64_t>(spec.family), static_cast<std::uint64_t>(spec.n)}));
    switch (spec.family) {
    case Family::random_no_claw:
    case Family::random_planted_claw: return random_family(spec, rng);
    case Family::hard_singleton_yes:
    case Family::hard_singleton_no: return hard_family(spec, rng);
    case Family::uniform: {
        const std::int64_t k = alphabet_for(spec.n, spec.kappa);
        std::uniform_int_distribution<Value> pick(1, static_cast<Value>(k));
        std::vector<Value> x(static_cast<std::size_t>(spec.n)), y(static_cast<std::size_t>(spec.n));
        for (auto& v : x) v = pick(rng);
        for (auto& v : y) v = pick(rng);
        return ClawInstance(k, std::move(x), std::move(y));
    }
    }
    throw InvalidSpec("unhandled family");
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<std::int64_t> parse_ints(const std::string& text, std::size_t line_no) {
    std::istringstream ss(text);
    std::vector<std::int64_t> out;
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw ParseError(line_no, "not an integer: '" + tok + "'");
        }
        if (used != tok.size()) throw ParseError(line_no, "not an integer: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

} // namespace

ClawInstance read_instance(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next = [&](const char* what) {
        if (!std::getline(in, line)) throw ParseError(line_no + 1, std::string("missing ") + what);
        ++line_no;
        return parse_ints(line, line_no);
    };

    const auto header = next("header line 'n k'");
    if (header.size() != 2) throw ParseError(1, "header must be 'n k'");
    const std::int64_t n = header[0], k = header[1];
    if (n < 1) throw ParseError(1, "n must be >= 1");
    if (k < 2) throw ParseError(1, "k must be >= 2");

    auto read_side = [&](const char* name) {
        const auto vals = next(name);
        if (static_cast<std::int64_t>(vals.size()) != n)
            throw ParseError(line_no, std::string(name) + " has " + std::to_string(vals.size()) + " entries, expected " +
                                          std::to_string(n));
        std::vector<Value> out;
        out.reserve(vals.size());
        for (auto v : vals) {
            if (v < 1 || v > k) throw ParseError(line_no, "value " + std::to_string(v) + " outside 1..k");
            out.push_back(static_cast<Value>(v));
        }
        return out;
    };
    auto x = read_side("x values");
    auto y = read_side("y values");
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError(line_no, "trailing content");
    }
    return ClawInstance(k, std::move(x), std::move(y));
}

void write_instance(std::ostream& out, const ClawInstance& inst) {
    out << inst.n() << ' ' << inst.k() << '\n';
    for (Side s : {Side::x, Side::y}) {
        const auto& vals = inst.side(s);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) out << ' ';
            out << vals[i];
        }
        out << '\n';
    }
}

ClawInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return read_instance(in);
}

void save_instance(const std::string& path, const ClawInstance& inst) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    write_instance(out, inst);
}

} // namespace clawlab
