#include "clawlab/exponents.hpp"

#include <cctype>
#include <cmath>

namespace clawlab {

namespace {

mpz_class pow2(unsigned e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
    return out;
}

} // namespace

Rational exponent_T(int depth, const Rational& kappa) {
    if (depth < 0) throw std::invalid_argument("recursion depth must be >= 0");
    const auto i = static_cast<unsigned>(depth);
    Rational num = Rational(pow2(i) - 1) * kappa + Rational(pow2(i + 1));
    Rational out = num / Rational(pow2(i + 2) - 1);
    out.canonicalize();
    return out;
}

double exponent_T(int depth, double kappa) {
    if (depth < 0) throw std::invalid_argument("recursion depth must be >= 0");
    const double p = std::ldexp(1.0, depth);
    return ((p - 1) * kappa + 2 * p) / (4 * p - 1);
}

Rational limit_exponent(const Rational& kappa) { return kappa / 4 + Rational(1, 2); }

double limit_exponent(double kappa) { return kappa / 4 + 0.5; }

double epsilon_achieved(int depth, double kappa) { return exponent_T(depth, kappa) - limit_exponent(kappa); }

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("bad rational: " + s);
        q.canonicalize();
        return q;
    }
    const auto dot = s.find('.');
    std::string digits = s;
    unsigned scale = 0;
    if (dot != std::string::npos) {
        scale = static_cast<unsigned>(s.size() - dot - 1);
        digits = s.substr(0, dot) + s.substr(dot + 1);
    }
    const std::size_t start = (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) ? 1 : 0;
    if (digits.size() == start) throw std::invalid_argument("bad rational: " + s);
    for (std::size_t i = start; i < digits.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(digits[i]))) throw std::invalid_argument("bad rational: " + s);
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    Rational q(mpz_class(digits, 10), den);
    q.canonicalize();
    return q;
}

std::vector<RecurrencePoint> verify_recurrence(int depth, const Rational& grid_step) {
    if (depth < 1) throw std::invalid_argument("verify_recurrence needs depth >= 1");
    if (grid_step <= 0) throw std::invalid_argument("grid step must be positive");

    const Rational two_thirds(2, 3);
    std::vector<Rational> grid;
    for (Rational kappa = 0; kappa <= two_thirds; kappa += grid_step) grid.push_back(kappa);
    if (grid.back() != two_thirds) grid.push_back(two_thirds);

    std::vector<RecurrencePoint> out;
    out.reserve(grid.size());
    for (const auto& kappa : grid) {
        const Rational alpha = exponent_T(depth, kappa);
        const Rational shrink = 1 - alpha + kappa;  // log_n of the sub-instance size, up to logs
        Rational sub_kappa = kappa / shrink;
        sub_kappa.canonicalize();
        const Rational lhs = shrink * exponent_T(depth - 1, sub_kappa) + (alpha - kappa) / 2;
        Rational residual = alpha - lhs;
        residual.canonicalize();

        RecurrencePoint pt{kappa, residual, sub_kappa, kappa <= alpha && alpha <= two_thirds, sub_kappa <= two_thirds};
        if (residual < 0)
            throw RecurrenceViolation("negative residual " + to_string(residual) + " at depth " +
                                      std::to_string(depth) + ", kappa " + to_string(kappa));
        if (!pt.alpha_ok || !pt.sub_kappa_ok)
            throw RecurrenceViolation("side condition fails at depth " + std::to_string(depth) + ", kappa " +
                                      to_string(kappa));
        out.push_back(std::move(pt));
    }
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

} // namespace clawlab
