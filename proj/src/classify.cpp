#include "pzlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "pzlab/roots.hpp"

namespace pzlab {

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Vanishing: return "vanishing";
        case Outcome::Spreading: return "spreading";
        default: return "undetermined";
    }
}

double vanishing_delta(const ReactionPair& pair, double lambda) {
    if (!(lambda > 0)) throw std::domain_error("vanishing_delta: needs lambda > 0");
    if (pair.kind() == ReactionPair::Kind::cubic) {
        // f(s) <= (f'(0)+lambda/2)s reduces to -s <= lambda/2, free for s >= 0;
        // g(s) <= (g'(0)+lambda/2)s reduces to s(1+theta-s) <= lambda/2
        double th = pair.theta();
        double disc = (1 + th) * (1 + th) - 2.0 * lambda;
        double dg = disc > 0 ? 0.5 * ((1 + th) - std::sqrt(disc)) : 0.5 * (1 + th);
        return std::min(1.0, dg);
    }
    // guarded dense scan for tabulated pairs
    const int n = 100000;
    double limit = 1.0;
    for (int i = 1; i <= n; ++i) {
        double s = double(i) / n;
        bool ok_f = pair.f(s) <= (pair.fp0() + 0.5 * lambda) * s;
        bool ok_g = pair.g(s) <= (pair.gp0() + 0.5 * lambda) * s;
        if (!(ok_f && ok_g)) {
            limit = double(i - 1) / n;
            break;
        }
    }
    return 0.9 * limit;
}

bool vanishing_certificate(const SimulationState& state, const EigenResult& eigen,
                           double delta) {
    const auto& u = state.u();
    for (size_t i = 0; i < u.size(); ++i) {
        double x = std::abs(state.x_of(i));
        if (u[i] > delta * eigen.phi(x)) return false;
    }
    return true;
}

std::optional<double> spreading_certificate(const SimulationState& state, double alpha,
                                            double l_alpha_value) {
    const auto& u = state.u();
    const double h = state.h();
    const double anchor_min = state.effective_zone().outer_edge();
    const size_t w = static_cast<size_t>(std::ceil(2.0 * l_alpha_value / h)) + 1;
    size_t i0 = 0;
    while (i0 < u.size() && state.x_of(i0) < anchor_min - 1e-12) ++i0;
    if (i0 + w > u.size()) return std::nullopt;
    // sliding-window minimum over windows of w nodes
    std::deque<size_t> dq;
    for (size_t i = i0; i < u.size(); ++i) {
        while (!dq.empty() && u[dq.back()] >= u[i]) dq.pop_back();
        dq.push_back(i);
        if (i >= i0 + w - 1) {
            size_t left = i - (w - 1);
            while (dq.front() < left) dq.pop_front();
            if (u[dq.front()] >= alpha) return state.x_of(left);
        }
    }
    return std::nullopt;
}

namespace {

double distance_to_family(const ReactionPair& pair, const ProtectionZone& zone,
                          const SimulationState& state, const ClassifyParams& params) {
    const double window = zone.outer_edge() + params.distance_window_pad;
    auto dist_to = [&](const GroundStateProfile& prof) {
        double d = 0;
        for (size_t i = 0; i < state.u().size(); ++i) {
            double x = state.x_of(i);
            if (x < 0) continue;
            if (x > window) break;
            d = std::max(d, std::abs(state.u()[i] - prof.value(x)));
        }
        return d;
    };

    TailV tail = TailV::build(pair, 0.01);
    if (zone.is_separate()) {
        auto profiles = separate_ground_states(pair, zone, &tail, 128);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : profiles) best = std::min(best, dist_to(p));
        return best;
    }
    const double ts = pair.theta_star();
    ProfileOptions popts;
    popts.table_dx = 0.01;
    auto dist_at = [&](double beta) {
        return dist_to(connected_profile_for_peak(pair, beta, tail, popts));
    };
    double best = std::numeric_limits<double>::infinity(), best_beta = ts * 0.5;
    for (int k = 0; k < params.distance_scan; ++k) {
        double beta = ts * (k + 0.5) / params.distance_scan;
        double d = dist_at(beta);
        if (d < best) {
            best = d;
            best_beta = beta;
        }
    }
    double span = ts / params.distance_scan;
    double refined = golden_max(
        [&](double b) { return -dist_at(b); }, std::max(1e-6 * ts, best_beta - span),
        std::min(ts * (1 - 1e-9), best_beta + span), 1e-4);
    best = std::min(best, dist_at(refined));
    return best;
}

}  // namespace

ClassificationReport classify(const ReactionPair& pair, const ProtectionZone& zone,
                              const InitialData& init, const ClassifyParams& params) {
    ClassificationReport rep;
    SolverParams sp = params.solver;
    sp.snapshot_interval = 0;
    SimulationState state(pair, zone, init, sp);
    rep.effective_zone = state.effective_zone();

    const ProtectionZone& ez = state.effective_zone();
    EigenResult eigen = ez.is_separate() ? lambda1_separate(pair, ez)
                                         : lambda1_connected(pair, ez.L2);
    rep.lambda1 = eigen.lambda1;
    double delta = eigen.lambda1 > 0 ? vanishing_delta(pair, eigen.lambda1) : 0.0;

    const double ts = pair.theta_star();
    double alpha = params.alpha > 0 ? params.alpha : 0.5 * (ts + 1.0);
    double la = l_alpha(pair, alpha);

    double t_check = params.check_interval;
    while (t_check <= params.T_max + 1e-9) {
        state.advance_to(t_check);
        if (delta > 0 && vanishing_certificate(state, eigen, delta)) {
            rep.outcome = Outcome::Vanishing;
            rep.certificate.kind = "supersolution";
            rep.certificate.delta = delta;
            rep.certificate.t = state.t();
            rep.T_reached = state.t();
            return rep;
        }
        if (auto r = spreading_certificate(state, alpha, la)) {
            rep.outcome = Outcome::Spreading;
            rep.certificate.kind = "spreading-block";
            rep.certificate.alpha = alpha;
            rep.certificate.r = *r;
            rep.certificate.t = state.t();
            rep.T_reached = state.t();
            return rep;
        }
        t_check += params.check_interval;
    }
    rep.outcome = Outcome::Undetermined;
    rep.certificate.kind = "timeout";
    rep.T_reached = state.t();
    if (params.compute_distance)
        rep.distance_to_ground_state = distance_to_family(pair, ez, state, params);
    return rep;
}

ThresholdPair threshold_bisect(const ReactionPair& pair, const ProtectionZone& zone,
                               InitialData::Shape shape, double hbar, double sigma_lo,
                               double sigma_hi, double tol, const ClassifyParams& params) {
    if (!(tol > 0) || !(sigma_hi > sigma_lo) || !(sigma_lo > 0))
        throw std::invalid_argument("threshold_bisect: bad sigma range or tolerance");

    std::map<double, Outcome> cache;
    auto outcome_at = [&](double sigma) {
        auto it = cache.find(sigma);
        if (it != cache.end()) return it->second;
        ClassifyParams p = params;
        p.compute_distance = false;
        Outcome o = classify(pair, zone, make_initial(shape, sigma, hbar), p).outcome;
        cache.emplace(sigma, o);
        return o;
    };

    ThresholdPair result;

    // sigma_*: boundary of certified vanishing
    {
        ThresholdReport& r = result.vanishing;
        EigenResult eig;
        bool separate = zone.is_separate();
        eig = separate ? lambda1_separate(pair, zone) : lambda1_connected(pair, zone.L2);
        if (eig.lambda1 <= 0) {
            r.degenerate = true;
            r.note = "vanishing certificate inapplicable (lambda1 <= 0); sigma_* = 0";
        } else if (outcome_at(sigma_lo) != Outcome::Vanishing) {
            r.degenerate = true;
            r.sigma_low = 0;
            r.sigma_high = sigma_lo;
            r.note = "no vanishing observed at the lower end of the range";
        } else {
            double lo = sigma_lo, hi = sigma_hi;
            if (outcome_at(sigma_hi) == Outcome::Vanishing) {
                r.degenerate = true;
                r.sigma_low = sigma_hi;
                r.sigma_high = sigma_hi;
                r.note = "vanishing even at the upper end of the range";
            } else {
                while (hi - lo > tol) {
                    double mid = 0.5 * (lo + hi);
                    ++r.iterations;
                    (outcome_at(mid) == Outcome::Vanishing ? lo : hi) = mid;
                }
                r.sigma_low = lo;
                r.sigma_high = hi;
            }
        }
    }

    // sigma^*: boundary of certified spreading
    {
        ThresholdReport& r = result.spreading;
        if (outcome_at(sigma_hi) != Outcome::Spreading) {
            r.degenerate = true;
            r.sigma_low = sigma_hi;
            r.sigma_high = 0;
            r.note = "no spreading observed at the upper end of the range";
        } else if (outcome_at(sigma_lo) == Outcome::Spreading) {
            r.degenerate = true;
            r.sigma_low = sigma_lo;
            r.sigma_high = sigma_lo;
            r.note = "spreading even at the lower end of the range";
        } else {
            double lo = sigma_lo, hi = sigma_hi;
            while (hi - lo > tol) {
                double mid = 0.5 * (lo + hi);
                ++r.iterations;
                (outcome_at(mid) == Outcome::Spreading ? hi : lo) = mid;
            }
            r.sigma_low = lo;
            r.sigma_high = hi;
        }
    }

    for (const auto& [sigma, o] : cache) {
        result.vanishing.trace.emplace_back(sigma, o);
        result.spreading.trace.emplace_back(sigma, o);
    }
    // monotonicity: no vanishing strictly above any spreading outcome
    double lowest_spread = std::numeric_limits<double>::infinity();
    for (const auto& [sigma, o] : cache)
        if (o == Outcome::Spreading) lowest_spread = std::min(lowest_spread, sigma);
    for (const auto& [sigma, o] : cache)
        if (o == Outcome::Vanishing && sigma > lowest_spread) result.monotone_ok = false;
    return result;
}

}  // namespace pzlab
