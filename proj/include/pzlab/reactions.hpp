#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pzlab/spline.hpp"

namespace pzlab {

/// A monostable/bistable reaction pair (f, g) with its derived constants.
///
/// The cubic defaults are f(u) = u(1-u) and g(u) = u(u-theta)(1-u), defined on
/// [-1, 2] and extended linearly outside (matching value and slope at the
/// junctions) so both functions are globally Lipschitz. User-supplied pairs
/// are tabulated as [u, f, g] triples and interpolated by natural cubic
/// splines, with the same linear extension beyond the table.
///
/// Immutable after construction; all methods are const and thread-safe.
class ReactionPair {
public:
    enum class Kind { cubic, tabulated };

    static ReactionPair cubic(double theta);
    static ReactionPair tabulated(double theta, std::vector<std::array<double, 3>> table);

    Kind kind() const { return kind_; }
    double theta() const { return theta_; }

    double f(double u) const;
    double g(double u) const;
    double f_derivative(double u) const;
    double g_derivative(double u) const;

    /// Derivatives at the rest states. Analytic for the cubic defaults;
    /// one-sided second-order differences (step 1e-6) for tabulated pairs.
    double fp0() const { return fp0_; }
    double gp0() const { return gp0_; }
    double fp1() const { return fp1_; }
    double gp1() const { return gp1_; }

    /// A constant M with |f(u)|, |g(u)| <= M u for u >= 0 and
    /// |f'|, |g'| <= M on the whole line.
    double lipschitz_bound() const { return lipschitz_; }

    /// Exact integrals of f and g (closed form per polynomial piece).
    double integral_f(double a, double b) const;
    double integral_g(double a, double b) const;

    /// Offset forms: integral over [c-s, c] parameterised by the width s.
    /// Cancellation-free for arbitrarily small s; used by the quadratures
    /// whose integrands are singular at an endpoint.
    double integral_f_below(double c, double s) const;
    double integral_g_below(double c, double s) const;

    /// F(q) = -2 int_0^q f,  G(q) = -2 int_0^q g.
    double primitive_F(double q) const { return -2.0 * integral_f(0.0, q); }
    double primitive_G(double q) const { return -2.0 * integral_g(0.0, q); }

    /// The balance level in (theta, 1) where int_0^{theta*} g = 0.
    /// Throws std::domain_error if the pair does not admit one.
    double theta_star() const;

    const std::vector<std::array<double, 3>>& table() const { return table_; }

private:
    ReactionPair() = default;
    void finish_construction();

    Kind kind_ = Kind::cubic;
    double theta_ = 0.25;
    // tabulated representation
    std::vector<std::array<double, 3>> table_;
    CubicSpline fs_, gs_;
    // core interval and linear extension coefficients
    double core_lo_ = -1.0, core_hi_ = 2.0;
    double f_lo_val_ = 0, f_lo_slope_ = 0, f_hi_val_ = 0, f_hi_slope_ = 0;
    double g_lo_val_ = 0, g_lo_slope_ = 0, g_hi_val_ = 0, g_hi_slope_ = 0;

    double fp0_ = 0, gp0_ = 0, fp1_ = 0, gp1_ = 0;
    double lipschitz_ = 0;
    std::optional<double> theta_star_;

    double core_f(double u) const;
    double core_g(double u) const;
    double core_f_derivative(double u) const;
    double core_g_derivative(double u) const;
    double core_f_second(double u) const;
    double core_g_second(double u) const;
    double integral_one(bool use_f, double a, double b) const;
    double piece_integral(bool use_f, double a, double b) const;
};

/// Checks every structural condition on the pair by dense sampling plus the
/// integral conditions; returns the list of violations (empty if valid).
std::vector<std::string> validate(const ReactionPair& pair, int samples = 10000);

/// theta* as a standalone operation (same value as pair.theta_star()).
double theta_star(const ReactionPair& pair);

/// Half-width of the level-alpha bistable bump:
/// l_alpha = int_0^alpha ds / sqrt(G(s) - G(alpha)), alpha in (theta*, 1).
double l_alpha(const ReactionPair& pair, double alpha);

/// Upper bound for the ground-state critical length:
/// L0 = int_0^{theta*} dr / sqrt(2 int_r^{theta*} f).
double length_bound_L0(const ReactionPair& pair);

}  // namespace pzlab
