#include "pzlab/phaseplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pzlab/quadrature.hpp"
#include "pzlab/roots.hpp"
#include "pzlab/spline.hpp"

namespace pzlab {

namespace {

constexpr double kQuadTol = 1e-12;

// Energy along Gamma_0, i.e. G(q) = -2 int_0^q g, evaluated from whichever
// endpoint keeps the expression cancellation-free: from zero for small q,
// as 2 int_q^{theta*} g near the turning point (where theta* is treated as
// the exact root of the primitive).
double gamma0_energy(const ReactionPair& pair, double q) {
    const double ts = pair.theta_star();
    if (q < 0.5 * ts) return -2.0 * pair.integral_g(0.0, q);
    return 2.0 * pair.integral_g_below(ts, ts - q);
}

// x-distance from the turning point of a monostable arc peaking at q_turn
// down to the level q_turn - w.
double f_arc_x_from_turn(const ReactionPair& pair, double q_turn, double w) {
    if (w <= 0) return 0.0;
    auto h = [&](double s) {
        return 1.0 / std::sqrt(2.0 * pair.integral_f_below(q_turn, s));
    };
    QuadOptions opt;
    opt.rel_tol = kQuadTol;
    return integrate_from_singular_offset(h, w, opt);
}

// same along Gamma_0 from (theta*, 0) down to theta* - w
double g_arc_x_from_turn(const ReactionPair& pair, double w) {
    const double ts = pair.theta_star();
    if (w <= 0) return 0.0;
    auto h = [&](double s) {
        return 1.0 / std::sqrt(2.0 * pair.integral_g_below(ts, s));
    };
    QuadOptions opt;
    opt.rel_tol = kQuadTol;
    return integrate_from_singular_offset(h, w, opt);
}

// abscissa of the Gamma_0 crossing of the monostable arc with turning point
// q_top: unique root of G(q) - 2 int_q^{q_top} f on (0, q_top)
double meet_gamma0(const ReactionPair& pair, double q_top) {
    auto D = [&](double q) {
        return gamma0_energy(pair, q) - 2.0 * pair.integral_f(q, q_top);
    };
    return bisect(D, 0.0, q_top, 1e-14 * q_top);
}

// interpolating lookup shared by TailV and GroundStateProfile
struct TableView {
    const std::vector<double>&xs, &ys, &ds;
    double operator()(double x) const {
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        size_t i = (it == xs.begin()) ? 0 : static_cast<size_t>(it - xs.begin()) - 1;
        i = std::min(i, xs.size() - 2);
        return hermite(xs[i], xs[i + 1], ys[i], ys[i + 1], ds[i], ds[i + 1], x);
    }
};

}  // namespace

TailV TailV::build(const ReactionPair& pair, double dx, double cutoff) {
    TailV t;
    t.pair_ = &pair;
    t.dx_ = dx;
    t.decay_rate_ = std::sqrt(-pair.gp0());
    const double ts = pair.theta_star();

    t.xs_ = {0.0};
    t.qs_ = {ts};
    t.ps_ = {0.0};

    // first step away from the turning point; bracket by doubling so the
    // quadrature never runs deep into the tail
    auto xtop = [&](double w) { return g_arc_x_from_turn(pair, w); };
    double whi = 1e-8;
    while (xtop(whi) < dx && whi < 0.5 * ts) whi *= 2.0;
    double w1 = bisect([&](double w) { return xtop(w) - dx; }, 1e-300, whi, 1e-16);
    double q = ts - w1;
    t.xs_.push_back(dx);
    t.qs_.push_back(q);
    t.ps_.push_back(-std::sqrt(gamma0_energy(pair, q)));

    QuadOptions opt;
    opt.rel_tol = kQuadTol;
    auto speed_inv = [&](double s) { return 1.0 / std::sqrt(gamma0_energy(pair, s)); };
    while (q > cutoff && t.xs_.back() < 1000.0) {
        // next level a step dx further along the arc
        double hi = q;
        double lo = q * 0.5;
        while (integrate(speed_inv, lo, hi, opt) < dx && lo > 1e-300) lo *= 0.5;
        double qn = bisect([&](double c) { return integrate(speed_inv, c, hi, opt) - dx; },
                           lo, hi, 1e-16 * std::max(q, 1e-6));
        q = qn;
        t.xs_.push_back(t.xs_.back() + dx);
        t.qs_.push_back(q);
        t.ps_.push_back(-std::sqrt(gamma0_energy(pair, q)));
    }
    t.x_cut_ = t.xs_.back();
    return t;
}

double TailV::value(double x) const {
    if (x <= 0.0) return qs_.front();
    if (x >= x_cut_) return qs_.back() * std::exp(-decay_rate_ * (x - x_cut_));
    return TableView{xs_, qs_, ps_}(x);
}

double TailV::derivative(double x) const {
    if (x <= 0.0) return 0.0;
    double v = value(x);
    return -std::sqrt(std::max(0.0, gamma0_energy(*pair_, v)));
}

double TailV::x_of_value(double q) const {
    const double ts = pair_->theta_star();
    if (q >= ts) return 0.0;
    if (!(q > 0)) throw std::domain_error("TailV::x_of_value: level must lie in (0, theta*)");
    // split: substituted quadrature near the turning point, direct quadrature
    // through the logarithmic tail
    const double qref = 0.5 * ts;
    if (q >= qref) return g_arc_x_from_turn(*pair_, ts - q);
    QuadOptions opt;
    opt.rel_tol = kQuadTol;
    double head = g_arc_x_from_turn(*pair_, ts - qref);
    double tail = integrate(
        [this](double s) { return 1.0 / std::sqrt(gamma0_energy(*pair_, s)); }, q, qref,
        opt);
    return head + tail;
}

std::vector<PhasePoint> gamma_intersections(const ReactionPair& pair, double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("gamma_intersections: beta must lie in (0, 1)");
    const double ts = pair.theta_star();
    if (beta > ts + 1e-12) return {};
    if (std::abs(beta - ts) <= 1e-12) return {PhasePoint{ts, 0.0}};
    auto D = [&](double q) {
        return gamma0_energy(pair, q) - 2.0 * pair.integral_f(q, beta);
    };
    double qc = bisect(D, 0.0, beta, 1e-14 * beta);
    double pc = std::sqrt(std::max(0.0, gamma0_energy(pair, qc)));
    return {PhasePoint{qc, -pc}, PhasePoint{qc, pc}};
}

double connected_length_of(const ReactionPair& pair, double beta, Branch) {
    const double ts = pair.theta_star();
    if (!(beta > 0.0 && beta < ts))
        throw std::domain_error("connected_length_of: beta must lie in (0, theta*)");
    auto pts = gamma_intersections(pair, beta);
    double qc = pts.front().q;
    // both intersection points share the abscissa; the mirror arcs have equal extent
    return f_arc_x_from_turn(pair, beta, beta - qc);
}

double GroundStateProfile::value(double x) const {
    if (x <= xs.front()) return us.front();
    if (x >= xs.back()) {
        double rate = ps.back() < 0 && us.back() > 0 ? -ps.back() / us.back() : 1.0;
        return us.back() * std::exp(-rate * (x - xs.back()));
    }
    return TableView{xs, us, ps}(x);
}

double GroundStateProfile::derivative(double x) const {
    if (x <= xs.front()) return ps.front();
    if (x >= xs.back()) return ps.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t i = static_cast<size_t>(it - xs.begin()) - 1;
    i = std::min(i, xs.size() - 2);
    double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return (1 - t) * ps[i] + t * ps[i + 1];
}

namespace {

// marches the monostable arc q(x) from (beta, 0) at x = 0 down to the level
// q_end reached at x = L, sampling every dx
void march_zone_arc(const ReactionPair& pair, double beta, double q_end, double L, double dx,
                    std::vector<double>& xs, std::vector<double>& qs, std::vector<double>& ps) {
    xs = {0.0};
    qs = {beta};
    ps = {0.0};
    QuadOptions opt;
    opt.rel_tol = kQuadTol;
    auto energy = [&](double q) { return 2.0 * pair.integral_f(q, beta); };
    auto speed_inv = [&](double q) { return 1.0 / std::sqrt(energy(q)); };
    double x = 0.0, q = beta;
    bool first = true;
    while (x + dx < L) {
        double qn;
        if (first) {
            auto xtop = [&](double w) { return f_arc_x_from_turn(pair, beta, w); };
            double wmax = beta - q_end;
            if (xtop(wmax) <= dx) break;  // arc shorter than one step
            double whi = std::min(wmax, 1e-8);
            while (whi < wmax && xtop(whi) < dx) whi = std::min(wmax, 2.0 * whi);
            double w1 = bisect([&](double w) { return xtop(w) - dx; }, 1e-300, whi, 1e-16);
            qn = beta - w1;
            first = false;
        } else {
            double hi = q;
            double lo = std::max(q_end, q - 2.0 * std::sqrt(energy(q)) * dx - 1e-12);
            while (integrate(speed_inv, lo, hi, opt) < dx && lo > q_end)
                lo = std::max(q_end, lo - (hi - lo));
            if (integrate(speed_inv, lo, hi, opt) < dx) break;  // q_end within one step
            qn = bisect([&](double c) { return integrate(speed_inv, c, hi, opt) - dx; }, lo,
                        hi, 1e-16 * std::max(q, 1e-6));
        }
        q = qn;
        x += dx;
        xs.push_back(x);
        qs.push_back(q);
        ps.push_back(-std::sqrt(energy(q)));
    }
    // final partial step lands exactly on the interface
    xs.push_back(L);
    qs.push_back(q_end);
    ps.push_back(-std::sqrt(energy(q_end)));
}

GroundStateProfile assemble_connected(const ReactionPair& pair, double beta, double L,
                                      const TailV& tail, const ProfileOptions& opts) {
    auto pts = gamma_intersections(pair, beta);
    double qc = pts.front().q;
    double pc = pts.front().p;

    GroundStateProfile prof;
    prof.zone = ProtectionZone::connected(L);
    prof.kind = "connected";
    prof.peak = beta;
    prof.value_at0 = beta;
    prof.match_points = {MatchPoint{L, qc, pc}};
    prof.tail_shift = L - tail.x_of_value(qc);

    march_zone_arc(pair, beta, qc, L, opts.table_dx, prof.xs, prof.us, prof.ps);
    double x_end = prof.tail_shift + tail.x_cut();
    for (double x = L + opts.table_dx; x < x_end; x += opts.table_dx) {
        prof.xs.push_back(x);
        prof.us.push_back(tail.value(x - prof.tail_shift));
        prof.ps.push_back(tail.derivative(x - prof.tail_shift));
    }
    prof.x_cut = prof.xs.back();
    return prof;
}

}  // namespace

GroundStateProfile connected_profile_for_peak(const ReactionPair& pair, double beta,
                                              const TailV& tail, const ProfileOptions& opts) {
    double L = connected_length_of(pair, beta);
    return assemble_connected(pair, beta, L, tail, opts);
}

std::optional<GroundStateProfile> connected_ground_state(const ReactionPair& pair, double L,
                                                         const TailV* tail,
                                                         const ProfileOptions& opts) {
    if (!(L > 0)) throw std::domain_error("connected_ground_state: L must be positive");
    const double ts = pair.theta_star();

    // scan the peak parameter for brackets of connected_length_of(beta) = L;
    // geometric ladders toward both ends catch roots near 0 and theta*
    std::vector<double> betas;
    for (int k = 40; k >= 2; --k) betas.push_back(ts * std::ldexp(1.0, -k));
    for (int i = 1; i < opts.scan_points; ++i)
        betas.push_back(ts * double(i) / opts.scan_points);
    for (int k = 10; k <= 30; ++k) betas.push_back(ts * (1.0 - std::ldexp(1.0, -k)));
    std::sort(betas.begin(), betas.end());

    auto len = [&](double b) { return connected_length_of(pair, b); };
    double prev_beta = betas.front();
    double prev_val = len(prev_beta) - L;
    double root = -1.0;
    for (size_t i = 1; i < betas.size(); ++i) {
        double v = len(betas[i]) - L;
        if (prev_val == 0.0) {
            root = prev_beta;
            break;
        }
        if ((prev_val > 0) != (v > 0)) {
            root = bisect([&](double b) { return len(b) - L; }, prev_beta, betas[i],
                          opts.beta_tol);
            break;
        }
        prev_beta = betas[i];
        prev_val = v;
    }
    if (root < 0) return std::nullopt;

    std::optional<TailV> local;
    if (!tail) {
        local = TailV::build(pair, opts.table_dx);
        tail = &*local;
    }
    return assemble_connected(pair, root, L, *tail, opts);
}

double estimate_Lstar2(const ReactionPair& pair, int scan_points) {
    const double ts = pair.theta_star();
    auto len = [&](double b) { return connected_length_of(pair, b); };

    double best = 0.0;
    std::vector<double> betas;
    for (int k = 40; k >= 1; --k) betas.push_back(ts * std::ldexp(1.0, -k));
    for (int i = 1; i < scan_points; ++i) betas.push_back(ts * double(i) / scan_points);
    std::sort(betas.begin(), betas.end());
    size_t ibest = 0;
    for (size_t i = 0; i < betas.size(); ++i) {
        double v = len(betas[i]);
        if (v > best) {
            best = v;
            ibest = i;
        }
    }
    // golden refinement on the bracketing neighbours of the scan maximum
    double lo = ibest > 0 ? betas[ibest - 1] : betas[ibest] * 0.5;
    double hi = ibest + 1 < betas.size() ? betas[ibest + 1] : ts * (1 - 1e-12);
    double refined = golden_max(len, lo, hi, 1e-10);
    best = std::max(best, len(refined));

    // boundary limit beta -> 0 by linear extrapolation
    double b1 = ts * 1e-9, b2 = 2.0 * b1;
    double l1 = len(b1), l2 = len(b2);
    best = std::max(best, 2.0 * l1 - l2);
    return best;
}

ShootResult separate_shoot(const ReactionPair& pair, const ProtectionZone& zone, double gamma,
                           double record_dx) {
    if (!zone.is_separate())
        throw std::invalid_argument("separate_shoot: zone must be separate");
    const double ts = pair.theta_star();
    if (!(gamma > 0 && gamma < ts))
        throw std::domain_error("separate_shoot: gamma must lie in (0, theta*)");

    ShootResult res;
    double h = 1e-4 * zone.length();
    if (zone.L2 / h > 2e6) h = zone.L2 / 2e6;

    double q = gamma, p = 0.0, x = 0.0;
    res.xs.push_back(x);
    res.qs.push_back(q);
    res.ps.push_back(p);
    double next_record = record_dx;

    auto run_segment = [&](double x_end, bool monostable) {
        int n = std::max(1, static_cast<int>(std::ceil((x_end - x) / h)));
        double hh = (x_end - x) / n;
        auto field = [&](double u) { return monostable ? pair.f(u) : pair.g(u); };
        for (int i = 0; i < n; ++i) {
            double k1q = p, k1p = -field(q);
            double k2q = p + 0.5 * hh * k1p, k2p = -field(q + 0.5 * hh * k1q);
            double k3q = p + 0.5 * hh * k2p, k3p = -field(q + 0.5 * hh * k2q);
            double k4q = p + hh * k3p, k4p = -field(q + hh * k3q);
            q += hh / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
            p += hh / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
            x += hh;
            if (q < -0.05 || q > 1.2 || std::abs(p) > 5.0) {
                res.divergent = true;
                return false;
            }
            if (x >= next_record - 0.5 * hh) {
                res.xs.push_back(x);
                res.qs.push_back(q);
                res.ps.push_back(p);
                next_record += record_dx;
            }
        }
        return true;
    };

    auto push_state = [&]() {
        if (x - res.xs.back() > 1e-12) {
            res.xs.push_back(x);
            res.qs.push_back(q);
            res.ps.push_back(p);
        }
    };
    if (!run_segment(zone.L1, false)) return res;
    res.at_L1 = PhasePoint{q, p};
    push_state();
    if (!run_segment(zone.L2, true)) return res;
    res.at_L2 = PhasePoint{q, p};
    push_state();
    double Gq = gamma0_energy(pair, std::min(q, ts));
    res.residual = p + std::sqrt(std::max(0.0, Gq));
    return res;
}

std::vector<GroundStateProfile> separate_ground_states(const ReactionPair& pair,
                                                       const ProtectionZone& zone,
                                                       const TailV* tail, int scan_points) {
    const double ts = pair.theta_star();
    std::optional<TailV> local;
    if (!tail) {
        local = TailV::build(pair);
        tail = &*local;
    }

    auto residual = [&](double gamma) {
        auto r = separate_shoot(pair, zone, gamma, 1.0);
        return r.divergent ? std::numeric_limits<double>::quiet_NaN() : r.residual;
    };

    std::vector<double> gammas;
    for (int k = 30; k >= 1; --k) gammas.push_back(ts * std::ldexp(1.0, -k));
    for (int i = 1; i < scan_points; ++i) gammas.push_back(ts * double(i) / scan_points);
    std::sort(gammas.begin(), gammas.end());

    std::vector<GroundStateProfile> found;
    double prev_g = gammas.front(), prev_r = residual(prev_g);
    for (size_t i = 1; i < gammas.size(); ++i) {
        double r = residual(gammas[i]);
        if (std::isfinite(prev_r) && std::isfinite(r) && (prev_r > 0) != (r > 0)) {
            double root = bisect([&](double gm) { return residual(gm); }, prev_g, gammas[i],
                                 1e-13);
            auto shot = separate_shoot(pair, zone, root, 0.005);
            if (!shot.divergent && shot.at_L2.q > 0 && shot.at_L2.q < ts &&
                shot.at_L2.p <= 1e-8) {
                GroundStateProfile prof;
                prof.zone = zone;
                prof.residual_norm = std::abs(shot.residual);
                prof.value_at0 = root;
                prof.match_points = {MatchPoint{zone.L1, shot.at_L1.q, shot.at_L1.p},
                                     MatchPoint{zone.L2, shot.at_L2.q, shot.at_L2.p}};
                prof.tail_shift = zone.L2 - tail->x_of_value(shot.at_L2.q);
                prof.xs = shot.xs;
                prof.us = shot.qs;
                prof.ps = shot.ps;
                double dxp = 0.005;
                double x_end = prof.tail_shift + tail->x_cut();
                for (double x = zone.L2 + dxp; x < x_end; x += dxp) {
                    prof.xs.push_back(x);
                    prof.us.push_back(tail->value(x - prof.tail_shift));
                    prof.ps.push_back(tail->derivative(x - prof.tail_shift));
                }
                prof.x_cut = prof.xs.back();
                prof.peak = *std::max_element(prof.us.begin(), prof.us.end());
                // type index from the derivative sign pattern
                bool up_at_L1 = shot.at_L1.p > 1e-10;
                bool interior_max = false, interior_min = false;
                for (size_t j = 1; j + 1 < shot.xs.size(); ++j) {
                    if (shot.ps[j] > 0 && shot.ps[j + 1] <= 0 && shot.xs[j] > zone.L1)
                        interior_max = true;
                    if (shot.ps[j] < 0 && shot.ps[j + 1] >= 0 && shot.xs[j] < zone.L1)
                        interior_min = true;
                }
                int type = 1 + (up_at_L1 ? 1 : 0) + (interior_max ? 2 : 0) +
                           (interior_min ? 4 : 0);
                prof.kind = "separate-type-" + std::to_string(type);
                found.push_back(std::move(prof));
            }
        }
        prev_g = gammas[i];
        prev_r = r;
    }
    return found;
}

double estimate_Lstar2_tilde(const ReactionPair& pair, double L1, int scan_points) {
    if (!(L1 > 0)) throw std::domain_error("estimate_Lstar2_tilde: L1 must be positive");
    const double ts = pair.theta_star();

    // arc length of the monostable excursion started from the state reached
    // by the bistable flow at x = L1
    auto arc_len = [&](double gamma) {
        double h = std::min(1e-3, L1 / 1000.0);
        int n = std::max(1000, static_cast<int>(std::ceil(L1 / h)));
        double hh = L1 / n;
        double q = gamma, p = 0.0;
        for (int i = 0; i < n; ++i) {
            double k1q = p, k1p = -pair.g(q);
            double k2q = p + 0.5 * hh * k1p, k2p = -pair.g(q + 0.5 * hh * k1q);
            double k3q = p + 0.5 * hh * k2p, k3p = -pair.g(q + 0.5 * hh * k2q);
            double k4q = p + hh * k3p, k4p = -pair.g(q + hh * k3q);
            q += hh / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
            p += hh / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
        }
        // virtual turning level: p^2 = 2 int_{q}^{q_top} f
        double q_top = q;
        if (p * p > 0) {
            auto excess = [&](double c) { return 2.0 * pair.integral_f(q, c) - p * p; };
            q_top = bisect(excess, q, ts, 1e-14 * std::max(q, 1e-30));
        }
        double q_meet = meet_gamma0(pair, q_top);
        double x_down = f_arc_x_from_turn(pair, q_top, q_top - q_meet);
        double x_up = f_arc_x_from_turn(pair, q_top, q_top - q);
        return p > 0 ? x_down + x_up : x_down - x_up;
    };

    double best = 0.0;
    std::vector<double> gammas;
    for (int k = 30; k >= 1; --k) gammas.push_back(ts * std::ldexp(1.0, -k));
    for (int i = 1; i < scan_points; ++i) gammas.push_back(ts * double(i) / scan_points);
    std::sort(gammas.begin(), gammas.end());
    size_t ibest = 0;
    for (size_t i = 0; i < gammas.size(); ++i) {
        double v = arc_len(gammas[i]);
        if (v > best) {
            best = v;
            ibest = i;
        }
    }
    double lo = ibest > 0 ? gammas[ibest - 1] : gammas[ibest] * 0.5;
    double hi = ibest + 1 < gammas.size() ? gammas[ibest + 1] : ts * (1 - 1e-12);
    best = std::max(best, arc_len(golden_max(arc_len, lo, hi, 1e-10)));

    double g1 = ts * 1e-9;
    double l1v = arc_len(g1), l2v = arc_len(2.0 * g1);
    best = std::max(best, 2.0 * l1v - l2v);
    return best;
}

}  // namespace pzlab
