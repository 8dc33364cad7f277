#include "pzlab/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pzlab/roots.hpp"
#include "pzlab/tridiag.hpp"

namespace pzlab {

namespace {

double relation_connected(double th1, double th2) { return std::atan(th1 / th2) / th2; }

double relation_separate(double th1, double th2, double L1) {
    return (std::atan(th1 / th2 * std::tanh(th1 * L1)) + std::atan(th1 / th2)) / th2;
}

// Solves relation(lambda) = L for lambda on (-f'(0), -g'(0)); the relation is
// strictly decreasing in lambda and spans (0, inf) on that interval.
template <class Rel>
double solve_lambda(const ReactionPair& pair, double L, const Rel& rel) {
    const double fp0 = pair.fp0(), gp0 = pair.gp0();
    const double eps = 1e-13 * (fp0 - gp0);
    double lo = -fp0 + eps, hi = -gp0 - eps;
    auto len_at = [&](double lam) {
        double th1 = std::sqrt(-(gp0 + lam));
        double th2 = std::sqrt(fp0 + lam);
        return rel(th1, th2);
    };
    // bisection on the monotone residual; run to machine resolution
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (len_at(mid) > L ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double EigenResult::phi(double x) const {
    if (zone.is_separate() && x <= zone.L1) return amp_cosh * std::cosh(theta1 * x);
    if (x <= zone.L2) return amp_cos * std::cos(theta2 * (x - a));
    return amp_exp * std::exp(-theta1 * (x - zone.L2));
}

double EigenResult::phi_prime(double x) const {
    if (zone.is_separate() && x <= zone.L1) return amp_cosh * theta1 * std::sinh(theta1 * x);
    if (x <= zone.L2) return -amp_cos * theta2 * std::sin(theta2 * (x - a));
    return -theta1 * amp_exp * std::exp(-theta1 * (x - zone.L2));
}

double EigenResult::phi_second(double x) const {
    if (zone.is_separate() && x <= zone.L1) return theta1 * theta1 * phi(x);
    if (x <= zone.L2) return -theta2 * theta2 * phi(x);
    return theta1 * theta1 * phi(x);
}

EigenResult lambda1_connected(const ReactionPair& pair, double L) {
    if (!(L > 0)) throw std::invalid_argument("lambda1_connected: L must be positive");
    double lam = solve_lambda(pair, L,
                              [](double t1, double t2) { return relation_connected(t1, t2); });
    EigenResult r;
    r.lambda1 = lam;
    r.zone = ProtectionZone::connected(L);
    r.theta1 = std::sqrt(-(pair.gp0() + lam));
    r.theta2 = std::sqrt(pair.fp0() + lam);
    r.a = 0.0;
    r.amp_cosh = 0.0;
    r.amp_cos = 1.0;
    r.amp_exp = std::cos(r.theta2 * L);
    return r;
}

EigenResult lambda1_separate(const ReactionPair& pair, const ProtectionZone& zone) {
    if (!zone.is_separate())
        throw std::invalid_argument("lambda1_separate: zone must be separate");
    const double L1 = zone.L1, L = zone.length();
    double lam = solve_lambda(pair, L, [L1](double t1, double t2) {
        return relation_separate(t1, t2, L1);
    });
    EigenResult r;
    r.lambda1 = lam;
    r.zone = zone;
    r.theta1 = std::sqrt(-(pair.gp0() + lam));
    r.theta2 = std::sqrt(pair.fp0() + lam);
    r.a = zone.L2 - std::atan(r.theta1 / r.theta2) / r.theta2;
    r.amp_cos = 1.0;
    r.amp_cosh = std::cos(r.theta2 * (L1 - r.a)) / std::cosh(r.theta1 * L1);
    r.amp_exp = std::cos(r.theta2 * (zone.L2 - r.a));
    return r;
}

double critical_length(double fp0, double gp0) {
    return std::atan(std::sqrt(-gp0 / fp0)) / std::sqrt(fp0);
}

double critical_Lstar(const ReactionPair& pair) {
    return critical_length(pair.fp0(), pair.gp0());
}

double critical_Lstar_tilde(const ReactionPair& pair, double L1) {
    if (!(L1 > 0)) throw std::invalid_argument("critical_Lstar_tilde: L1 must be positive");
    // the relation is explicit in L at lambda = 0
    double th1 = std::sqrt(-pair.gp0());
    double th2 = std::sqrt(pair.fp0());
    return relation_separate(th1, th2, L1);
}

namespace {

double truncated_smallest(const ReactionPair& pair, double R, double h,
                          const ProtectionZone* zone) {
    if (!(R > 0) || !(h > 0))
        throw std::domain_error("lambda1_truncated: R and h must be positive");
    if (!(h <= R / 100.0)) throw std::domain_error("lambda1_truncated: need h <= R/100");
    if (zone && !(R > zone->outer_edge()))
        throw std::domain_error("lambda1_truncated: need R beyond the zone");
    const int n = static_cast<int>(std::lround(2.0 * R / h));
    const double hh = 2.0 * R / n;
    const double vin = -pair.fp0(), vout = -pair.gp0();
    std::vector<double> d(n - 1), e(n - 2, -1.0 / (hh * hh));
    for (int i = 1; i < n; ++i) {
        double x = -R + i * hh;
        double ax = std::abs(x);
        double v = vout;
        if (zone) {
            bool at_hi = std::abs(ax - zone->L2) < 1e-9 * std::max(1.0, R);
            bool at_lo =
                zone->is_separate() && std::abs(ax - zone->L1) < 1e-9 * std::max(1.0, R);
            if (at_hi || at_lo)
                v = 0.5 * (vin + vout);  // interface node
            else if (zone->contains(ax))
                v = vin;
        }
        d[i - 1] = 2.0 / (hh * hh) + v;
    }
    return tridiag_smallest_eigenvalue(d, e, 1e-13);
}

}  // namespace

double lambda1_truncated(const ReactionPair& pair, const ProtectionZone& zone, double R,
                         double h) {
    return truncated_smallest(pair, R, h, &zone);
}

double lambda1_truncated_no_zone(const ReactionPair& pair, double R, double h) {
    return truncated_smallest(pair, R, h, nullptr);
}

}  // namespace pzlab
