#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clawlab {

using Rational = mpq_class;

/// Query exponent of the depth-i recursive algorithm:
///   T_i(kappa) = ((2^i - 1) kappa + 2^{i+1}) / (2^{i+2} - 1).
/// T_0 is the constant 2/3 of the base algorithm.
Rational exponent_T(int depth, const Rational& kappa);
double exponent_T(int depth, double kappa);

/// kappa/4 + 1/2, the limit of T_i as i grows.
Rational limit_exponent(const Rational& kappa);
double limit_exponent(double kappa);

/// How far depth i is from the limit: T_i(kappa) - (kappa/4 + 1/2).
double epsilon_achieved(int depth, double kappa);

/// Parses "p/q", an integer, or a plain decimal such as "0.001" exactly.
Rational parse_rational(std::string_view text);

struct RecurrencePoint {
    Rational kappa;
    Rational residual;         // T_i - [(1 - T_i + kappa) T_{i-1}(kappa / (1 - T_i + kappa)) + (T_i - kappa)/2]
    Rational sub_kappa;        // kappa / (1 - T_i + kappa)
    bool alpha_ok;             // kappa <= T_i <= 2/3
    bool sub_kappa_ok;         // sub_kappa <= 2/3
};

class RecurrenceViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Checks the inductive step on kappa = 0, step, 2 step, ... <= 2/3, plus 2/3 itself.
/// Throws RecurrenceViolation on a negative residual or a failed side condition.
std::vector<RecurrencePoint> verify_recurrence(int depth, const Rational& grid_step);

std::string to_string(const Rational& q);

} // namespace clawlab
