#include "pzlab/reactions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pzlab/quadrature.hpp"
#include "pzlab/roots.hpp"

namespace pzlab {

ReactionPair ReactionPair::cubic(double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("ReactionPair::cubic: theta must lie in (0,1)");
    ReactionPair p;
    p.kind_ = Kind::cubic;
    p.theta_ = theta;
    p.core_lo_ = -1.0;
    p.core_hi_ = 2.0;
    p.finish_construction();
    return p;
}

ReactionPair ReactionPair::tabulated(double theta, std::vector<std::array<double, 3>> table) {
    if (table.size() < 4)
        throw std::invalid_argument("ReactionPair::tabulated: need at least 4 rows");
    std::sort(table.begin(), table.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    ReactionPair p;
    p.kind_ = Kind::tabulated;
    p.theta_ = theta;
    p.table_ = table;
    std::vector<double> u, fv, gv;
    for (const auto& row : table) {
        u.push_back(row[0]);
        fv.push_back(row[1]);
        gv.push_back(row[2]);
    }
    p.fs_ = CubicSpline(u, fv);
    p.gs_ = CubicSpline(u, gv);
    p.core_lo_ = u.front();
    p.core_hi_ = u.back();
    p.finish_construction();
    return p;
}

void ReactionPair::finish_construction() {
    f_lo_val_ = core_f(core_lo_);
    f_lo_slope_ = core_f_derivative(core_lo_);
    f_hi_val_ = core_f(core_hi_);
    f_hi_slope_ = core_f_derivative(core_hi_);
    g_lo_val_ = core_g(core_lo_);
    g_lo_slope_ = core_g_derivative(core_lo_);
    g_hi_val_ = core_g(core_hi_);
    g_hi_slope_ = core_g_derivative(core_hi_);

    if (kind_ == Kind::cubic) {
        fp0_ = 1.0;
        gp0_ = -theta_;
        fp1_ = -1.0;
        gp1_ = theta_ - 1.0;
    } else {
        // one-sided second-order differences on the interpolant
        const double e = 1e-6;
        fp0_ = (-3 * f(0.0) + 4 * f(e) - f(2 * e)) / (2 * e);
        gp0_ = (-3 * g(0.0) + 4 * g(e) - g(2 * e)) / (2 * e);
        fp1_ = (3 * f(1.0) - 4 * f(1.0 - e) + f(1.0 - 2 * e)) / (2 * e);
        gp1_ = (3 * g(1.0) - 4 * g(1.0 - e) + g(1.0 - 2 * e)) / (2 * e);
    }

    double m = std::max(std::abs(f_hi_slope_), std::abs(g_hi_slope_));
    m = std::max({m, std::abs(f_lo_slope_), std::abs(g_lo_slope_)});
    const int n = 4000;
    for (int i = 1; i <= n; ++i) {
        double u = core_lo_ + (core_hi_ - core_lo_) * i / n;
        m = std::max(m, std::abs(f_derivative(u)));
        m = std::max(m, std::abs(g_derivative(u)));
        if (u > 1e-12) {
            m = std::max(m, std::abs(f(u)) / u);
            m = std::max(m, std::abs(g(u)) / u);
        }
    }
    lipschitz_ = m;

    // balance level: the pair may not admit one, in which case theta_star()
    // reports the failure on access
    try {
        double at_theta = integral_g(0.0, theta_);
        double at_one = integral_g(0.0, 1.0);
        if (at_theta < 0.0 && at_one > 0.0) {
            double ts = bisect([this](double b) { return integral_g(0.0, b); }, theta_, 1.0,
                               1e-15);
            theta_star_ = ts;
        }
    } catch (const std::exception&) {
        theta_star_.reset();
    }
}

double ReactionPair::core_f(double u) const {
    if (kind_ == Kind::cubic) return u * (1.0 - u);
    return fs_.value(u);
}

double ReactionPair::core_g(double u) const {
    if (kind_ == Kind::cubic) return u * (u - theta_) * (1.0 - u);
    return gs_.value(u);
}

double ReactionPair::core_f_derivative(double u) const {
    if (kind_ == Kind::cubic) return 1.0 - 2.0 * u;
    return fs_.derivative(u);
}

double ReactionPair::core_g_derivative(double u) const {
    if (kind_ == Kind::cubic) return -3.0 * u * u + 2.0 * (1.0 + theta_) * u - theta_;
    return gs_.derivative(u);
}

double ReactionPair::core_f_second(double u) const {
    if (kind_ == Kind::cubic) return -2.0;
    const double e = 1e-5;
    double lo = std::max(core_lo_, u - e), hi = std::min(core_hi_, u + e);
    return (fs_.derivative(hi) - fs_.derivative(lo)) / (hi - lo);
}

double ReactionPair::core_g_second(double u) const {
    if (kind_ == Kind::cubic) return -6.0 * u + 2.0 * (1.0 + theta_);
    const double e = 1e-5;
    double lo = std::max(core_lo_, u - e), hi = std::min(core_hi_, u + e);
    return (gs_.derivative(hi) - gs_.derivative(lo)) / (hi - lo);
}

double ReactionPair::f(double u) const {
    if (u < core_lo_) return f_lo_val_ + f_lo_slope_ * (u - core_lo_);
    if (u > core_hi_) return f_hi_val_ + f_hi_slope_ * (u - core_hi_);
    return core_f(u);
}

double ReactionPair::g(double u) const {
    if (u < core_lo_) return g_lo_val_ + g_lo_slope_ * (u - core_lo_);
    if (u > core_hi_) return g_hi_val_ + g_hi_slope_ * (u - core_hi_);
    return core_g(u);
}

double ReactionPair::f_derivative(double u) const {
    if (u < core_lo_) return f_lo_slope_;
    if (u > core_hi_) return f_hi_slope_;
    return core_f_derivative(u);
}

double ReactionPair::g_derivative(double u) const {
    if (u < core_lo_) return g_lo_slope_;
    if (u > core_hi_) return g_hi_slope_;
    return core_g_derivative(u);
}

double ReactionPair::piece_integral(bool use_f, double a, double b) const {
    // [a,b] must not straddle a core/extension junction; midpoint expansion,
    // exact for polynomial pieces up to cubic
    double d = 0.5 * (b - a), m = 0.5 * (a + b);
    if (m < core_lo_ || m > core_hi_) {
        double v = use_f ? f(m) : g(m);
        return 2.0 * d * v;  // linear piece
    }
    if (kind_ == Kind::tabulated) {
        // the spline handles its own knots exactly
        return use_f ? fs_.integral(a, b) : gs_.integral(a, b);
    }
    double v = use_f ? core_f(m) : core_g(m);
    double v2 = use_f ? core_f_second(m) : core_g_second(m);
    return 2.0 * d * v + d * d * d / 3.0 * v2;
}

double ReactionPair::integral_one(bool use_f, double a, double b) const {
    if (a == b) return 0.0;
    if (a > b) return -integral_one(use_f, b, a);
    double total = 0.0;
    double cuts[2] = {core_lo_, core_hi_};
    double lo = a;
    for (double c : cuts) {
        if (c > lo && c < b) {
            total += piece_integral(use_f, lo, c);
            lo = c;
        }
    }
    total += piece_integral(use_f, lo, b);
    return total;
}

double ReactionPair::integral_f(double a, double b) const { return integral_one(true, a, b); }
double ReactionPair::integral_g(double a, double b) const { return integral_one(false, a, b); }

double ReactionPair::integral_f_below(double c, double s) const {
    if (s <= 0) return 0.0;
    if (s < 1e-4) {
        double d = 0.5 * s, m = c - d;
        return 2.0 * d * core_f(m) + d * d * d / 3.0 * core_f_second(m);
    }
    return integral_f(c - s, c);
}

double ReactionPair::integral_g_below(double c, double s) const {
    if (s <= 0) return 0.0;
    if (s < 1e-4) {
        double d = 0.5 * s, m = c - d;
        return 2.0 * d * core_g(m) + d * d * d / 3.0 * core_g_second(m);
    }
    return integral_g(c - s, c);
}

double ReactionPair::theta_star() const {
    if (!theta_star_)
        throw std::domain_error(
            "ReactionPair::theta_star: no sign change of int_0^b g in (theta, 1); "
            "the pair is not a valid bistable/monostable pair");
    return *theta_star_;
}

double theta_star(const ReactionPair& pair) { return pair.theta_star(); }

std::vector<std::string> validate(const ReactionPair& pair, int samples) {
    std::vector<std::string> bad;
    auto check = [&bad](bool ok, const std::string& msg) {
        if (!ok) bad.push_back(msg);
    };
    const double th = pair.theta();
    const double ztol = 1e-9;

    check(th > 0.0 && th < 1.0, "theta outside (0, 1)");
    check(std::abs(pair.g(0.0)) < ztol, "g(0) != 0");
    check(std::abs(pair.g(th)) < ztol, "g(theta) != 0");
    check(std::abs(pair.g(1.0)) < ztol, "g(1) != 0");
    check(std::abs(pair.f(0.0)) < ztol, "f(0) != 0");
    check(std::abs(pair.f(1.0)) < ztol, "f(1) != 0");
    check(pair.fp0() > 0.0, "f'(0) <= 0");
    check(pair.fp1() < 0.0, "f'(1) >= 0");
    check(pair.gp0() < 0.0, "g'(0) >= 0");
    check(pair.gp1() < 0.0, "g'(1) >= 0");

    auto sign_ok = [&](auto fn, double a, double b, bool positive) {
        for (int i = 0; i < samples; ++i) {
            double u = a + (b - a) * (i + 0.5) / samples;
            double v = fn(u);
            if (positive ? (v < -1e-12) : (v > 1e-12)) return false;
        }
        return true;
    };
    auto gf = [&pair](double u) { return pair.g(u); };
    auto ff = [&pair](double u) { return pair.f(u); };
    check(sign_ok(gf, 0.0, th, false), "g is not negative on (0, theta)");
    check(sign_ok(gf, th, 1.0, true), "g is not positive on (theta, 1)");
    check(sign_ok(gf, 1.0, 2.0, false), "g is not negative on (1, 2)");
    check(sign_ok(ff, 0.0, 1.0, true), "f is not positive on (0, 1)");
    check(sign_ok(ff, 1.0, 2.0, false), "f is not negative on (1, 2)");

    bool h_ok = true;
    for (int i = 0; i < samples; ++i) {
        double u = (i + 0.5) / samples;
        if (!(pair.g(u) < pair.f(u))) {
            h_ok = false;
            break;
        }
    }
    check(h_ok, "g < f fails on (0, 1)");

    double unbalance = pair.integral_g(0.0, 1.0);
    check(unbalance > 1e-12, "integral of g over (0,1) is not positive");
    check(pair.integral_g(0.0, th) < -1e-12 && unbalance > 1e-12,
          "balance level theta* is not bracketed in (theta, 1)");
    return bad;
}

double l_alpha(const ReactionPair& pair, double alpha) {
    const double ts = pair.theta_star();
    if (!(alpha > ts && alpha < 1.0))
        throw std::domain_error("l_alpha: alpha must lie in (theta*, 1)");
    // G(s) - G(alpha) = 2 int_s^alpha g; inverse-sqrt singularity at s = alpha
    auto h = [&](double off) {  // off = alpha - s
        return 1.0 / std::sqrt(2.0 * pair.integral_g_below(alpha, off));
    };
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    return integrate_from_singular_offset(h, alpha, opt);
}

double length_bound_L0(const ReactionPair& pair) {
    const double ts = pair.theta_star();
    auto h = [&](double off) {  // off = theta* - r
        return 1.0 / std::sqrt(2.0 * pair.integral_f_below(ts, off));
    };
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    return integrate_from_singular_offset(h, ts, opt);
}

}  // namespace pzlab
