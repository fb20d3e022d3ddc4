#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clawlab {

using Value = std::int32_t;

enum class Side { x, y };

inline constexpr std::string_view side_name(Side s) { return s == Side::x ? "x" : "y"; }

/// Two length-n arrays over the alphabet 1..k. Construction validates both
/// invariants, so any live ClawInstance is well-formed.
class ClawInstance {
public:
    ClawInstance(std::int64_t k, std::vector<Value> x, std::vector<Value> y);

    std::int64_t n() const { return static_cast<std::int64_t>(x_.size()); }
    std::int64_t k() const { return k_; }

    const std::vector<Value>& x() const { return x_; }
    const std::vector<Value>& y() const { return y_; }
    const std::vector<Value>& side(Side s) const { return s == Side::x ? x_ : y_; }

    /// 1-based access, no query accounting. The ledger module owns counted reads.
    Value at(Side s, std::int64_t i) const;

    friend bool operator==(const ClawInstance&, const ClawInstance&) = default;

private:
    std::int64_t k_;
    std::vector<Value> x_;
    std::vector<Value> y_;
};

enum class Family {
    random_no_claw,
    random_planted_claw,
    hard_singleton_yes,
    hard_singleton_no,
    uniform,
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

struct InstanceSpec {
    std::int64_t n = 0;
    double kappa = 0.5;
    Family family = Family::random_no_claw;
    std::uint64_t seed = 0;
    /// Copies of the shared value per side for random-planted-claw.
    std::int64_t planted_multiplicity = 1;
};

/// Thrown when a spec asks for an instance the family cannot produce.
class InvalidSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// k = max(2, floor(n^kappa)).
std::int64_t alphabet_for(std::int64_t n, double kappa);

/// Shape of the hard singleton family for a given n.
struct HardShape {
    std::int64_t singletons;   // per side, floor(n^{2/3} / 2)
    std::int64_t block;        // ceil(n^{1/3})
    std::int64_t blocks;       // per side, floor((n - singletons) / block)
    std::int64_t k;            // 2 * singletons + 2 * blocks
};
HardShape hard_shape(std::int64_t n);

bool exact_claw(const ClawInstance& inst);

ClawInstance generate(const InstanceSpec& spec);

/// Whether the family promises a claw (true), no claw (false), or nothing.
std::optional<bool> family_promise(Family f);

// Text format: "n k", then the x line, then the y line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

ClawInstance read_instance(std::istream& in);
void write_instance(std::ostream& out, const ClawInstance& inst);
ClawInstance load_instance(const std::string& path);
void save_instance(const std::string& path, const ClawInstance& inst);

} // namespace clawlab
