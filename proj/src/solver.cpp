#include "pzlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pzlab {

double InitialData::value(double x) const {
    if (x < 0) x = -x;
    switch (shape) {
        case Shape::rectangle:
            return x <= hbar ? sigma : 0.0;
        case Shape::tent:
            return sigma * std::max(0.0, 1.0 - x / hbar);
        case Shape::table: {
            if (table.empty() || x >= table.back().first) return 0.0;
            if (x <= table.front().first) return sigma * table.front().second;
            for (size_t i = 1; i < table.size(); ++i) {
                if (x <= table[i].first) {
                    double t = (x - table[i - 1].first) /
                               (table[i].first - table[i - 1].first);
                    return sigma *
                           ((1 - t) * table[i - 1].second + t * table[i].second);
                }
            }
            return 0.0;
        }
    }
    return 0.0;
}

InitialData make_initial(InitialData::Shape shape, double sigma, double hbar) {
    if (sigma < 0) throw std::domain_error("make_initial: sigma must be nonnegative");
    if (!(hbar > 0)) throw std::domain_error("make_initial: hbar must be positive");
    InitialData d;
    d.shape = shape;
    d.sigma = sigma;
    d.hbar = hbar;
    return d;
}

SimulationState::SimulationState(const ReactionPair& pair, const ProtectionZone& zone,
                                 const InitialData& init, const SolverParams& params)
    : pair_(&pair), zone_(zone), params_(params) {
    lip_ = pair.lipschitz_bound();
    dt_ = params.dt > 0 ? params.dt : std::min(0.005, 0.9 / lip_);
    if (dt_ > 0.9 / lip_ + 1e-15)
        throw std::invalid_argument(
            "SimulationState: dt exceeds the monotone reaction-step limit 0.9/M");

    // snap the grid so the interfaces land on nodes exactly
    double h0 = params.h;
    if (!(h0 > 0)) throw std::invalid_argument("SimulationState: h must be positive");
    if (zone.is_separate()) {
        long m = std::max<long>(1, std::lround(zone.L1 / h0));
        h_ = zone.L1 / static_cast<double>(m);
        long n = std::max(m + 1, std::lround(zone.L2 / h_));
        zone_ = ProtectionZone::separate(zone.L1, static_cast<double>(n) * h_);
    } else {
        long n = std::max<long>(1, std::lround(zone.L2 / h0));
        h_ = zone.L2 / static_cast<double>(n);
        zone_ = zone;
    }

    double x_right = params.x_max > 0
                         ? params.x_max
                         : zone_.outer_edge() + init.hbar + 40.0;
    x_right = std::max(x_right, zone_.outer_edge() + 10.0 * h_);
    build_grid(x_right);

    const size_t n = u_.size();
    for (size_t i = 0; i < n; ++i) u_[i] = init.value(std::abs(x_of(i)));
    if (params_.right_bc == RightBoundary::dirichlet) u_.back() = 0.0;
    if (params_.domain == DomainKind::full_line) u_.front() = 0.0;
}

void SimulationState::build_grid(double x_right) {
    long n_right = static_cast<long>(std::ceil(x_right / h_ - 1e-9));
    n_right = std::max<long>(n_right, std::lround(zone_.outer_edge() / h_) + 10);
    size_t n;
    if (params_.domain == DomainKind::half_line) {
        x_left_ = 0.0;
        n = static_cast<size_t>(n_right) + 1;
    } else {
        x_left_ = -static_cast<double>(n_right) * h_;
        n = 2 * static_cast<size_t>(n_right) + 1;
    }
    std::vector<double> old_u = std::move(u_);
    u_.assign(n, 0.0);
    std::copy(old_u.begin(), old_u.end(), u_.begin());
    scratch_.assign(n, 0.0);

    // regions
    region_.assign(n, 0);
    long center = (params_.domain == DomainKind::half_line) ? 0 : n_right;
    long k2 = std::lround(zone_.L2 / h_);
    long k1 = zone_.is_separate() ? std::lround(zone_.L1 / h_) : 0;
    for (size_t i = 0; i < n; ++i) {
        long dist = std::labs(static_cast<long>(i) - center);
        unsigned char r;
        switch (params_.mode) {
            case ReactionMode::bistable_everywhere: r = 0; break;
            case ReactionMode::monostable_everywhere: r = 1; break;
            case ReactionMode::none: r = 3; break;
            case ReactionMode::zoned:
            default:
                if (dist == k2 || (zone_.is_separate() && dist == k1))
                    r = 2;
                else if (zone_.is_separate() ? (dist > k1 && dist < k2) : (dist < k2))
                    r = 1;
                else
                    r = 0;
        }
        region_[i] = r;
    }
    factor();
}

void SimulationState::factor() {
    const size_t n = u_.size();
    const double mu = dt_ / (h_ * h_);
    sub_.assign(n - 1, -mu);
    sup_.assign(n - 1, -mu);
    diag_.assign(n, 1.0 + 2.0 * mu);
    // left boundary
    if (params_.domain == DomainKind::half_line) {
        sup_[0] = -2.0 * mu;  // reflecting node
    } else {
        diag_[0] = 1.0;  // Dirichlet end holds its value
        sup_[0] = 0.0;
    }
    // right boundary
    if (params_.right_bc == RightBoundary::neumann) {
        sub_[n - 2] = -2.0 * mu;
    } else {
        diag_[n - 1] = 1.0;
        sub_[n - 2] = 0.0;
    }
    cstar_.assign(n - 1, 0.0);
    dinv_.assign(n, 0.0);
    double b = diag_[0];
    dinv_[0] = 1.0 / b;
    for (size_t i = 1; i < n; ++i) {
        cstar_[i - 1] = sup_[i - 1] * dinv_[i - 1];
        b = diag_[i] - sub_[i - 1] * cstar_[i - 1];
        dinv_[i] = 1.0 / b;
    }
}

double SimulationState::reaction_at(size_t i, double v) const {
    switch (region_[i]) {
        case 0: return pair_->g(v);
        case 1: return pair_->f(v);
        case 2: return 0.5 * (pair_->f(v) + pair_->g(v));
        default: return 0.0;
    }
}

void SimulationState::step() {
    const size_t n = u_.size();
    // implicit diffusion
    u_[0] *= dinv_[0];
    for (size_t i = 1; i < n; ++i) u_[i] = (u_[i] - sub_[i - 1] * u_[i - 1]) * dinv_[i];
    for (size_t i = n - 1; i-- > 0;) u_[i] -= cstar_[i] * u_[i + 1];
    // explicit reaction, monotone under dt <= 0.9/M; exact zeros stay zero
    for (size_t i = 0; i < n; ++i) {
        double v = u_[i];
        if (v != 0.0) u_[i] = std::max(0.0, v + dt_ * reaction_at(i, v));
    }
    if (params_.right_bc == RightBoundary::dirichlet) u_[n - 1] = 0.0;
    if (params_.domain == DomainKind::full_line) u_[0] = 0.0;
    t_ += dt_;

    if (params_.auto_extend && params_.domain == DomainKind::half_line &&
        params_.right_bc == RightBoundary::dirichlet && !capped_) {
        size_t probe = n > static_cast<size_t>(10.0 / h_) + 2
                           ? n - 1 - static_cast<size_t>(10.0 / h_)
                           : 0;
        if (u_[probe] > params_.extend_tail) extend_domain();
    }
}

void SimulationState::extend_domain() {
    size_t n = u_.size();
    size_t chunk = std::max<size_t>(static_cast<size_t>(40.0 / h_), n / 4);
    if (n + chunk > params_.max_nodes) {
        if (n >= params_.max_nodes) {
            capped_ = true;
            return;
        }
        chunk = params_.max_nodes - n;
        capped_ = true;
    }
    double x_right = x_of(n - 1) + static_cast<double>(chunk) * h_;
    build_grid(x_right);
}

void SimulationState::advance_to(double t_target) {
    while (t_ < t_target - 0.5 * dt_) step();
}

double SimulationState::sup_norm() const {
    double m = 0;
    for (double v : u_) m = std::max(m, v);
    return m;
}

double SimulationState::mass() const {
    double s = 0.5 * (u_.front() + u_.back());
    for (size_t i = 1; i + 1 < u_.size(); ++i) s += u_[i];
    return s * h_;
}

double SimulationState::front_position(double level) const {
    if (u_.back() > level) return x_of(u_.size() - 1);
    for (size_t i = u_.size(); i-- > 1;) {
        if (u_[i - 1] > level && u_[i] <= level) {
            double t = (u_[i - 1] - level) / (u_[i - 1] - u_[i]);
            return x_of(i - 1) + t * h_;
        }
    }
    return 0.0;
}

namespace {

Snapshot take_snapshot(const SimulationState& s) {
    Snapshot snap;
    snap.t = s.t();
    snap.x_left = s.x_left();
    snap.h = s.h();
    snap.u = s.u();
    return snap;
}

}  // namespace

TrajectoryRecord simulate(const ReactionPair& pair, const ProtectionZone& zone,
                          const InitialData& init, const SolverParams& params) {
    SimulationState state(pair, zone, init, params);
    TrajectoryRecord rec;
    rec.effective_zone = state.effective_zone();
    const double theta = pair.theta();

    auto record = [&]() {
        rec.times.push_back(state.t());
        rec.sup_norms.push_back(state.sup_norm());
        rec.front_positions.push_back(state.front_position(theta));
        if (params.snapshot_interval > 0) rec.snapshots.push_back(take_snapshot(state));
    };
    record();
    if (params.snapshot_interval > 0) {
        double next = params.snapshot_interval;
        while (state.t() < params.T - 0.5 * state.dt()) {
            state.advance_to(std::min(next, params.T));
            record();
            next += params.snapshot_interval;
        }
    } else {
        state.advance_to(params.T);
        record();
    }
    rec.final_state = take_snapshot(state);
    rec.resource_capped = state.resource_capped();
    return rec;
}

DecayBounds check_decay_bounds(const TrajectoryRecord& traj, const ReactionPair& pair,
                               const InitialData& init, std::optional<double> lambda1) {
    DecayBounds out;
    const double M = pair.lipschitz_bound();
    const double hbar = init.hbar;

    // Gaussian envelope: compare against the explicit constant
    // kappa2_ref = (integral of the reflected datum) / sqrt(4 pi)
    double datum_mass = 0;
    {
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            double x = -hbar + 2.0 * hbar * (i + 0.5) / n;
            datum_mass += init.value(std::abs(x)) * (2.0 * hbar / n);
        }
    }
    double kappa2_ref = datum_mass / std::sqrt(4.0 * M_PI);
    // values below the resolution floor are linear-algebra tail artifacts of
    // the implicit step, not the solution; they are excluded from the fits
    const double floor_u = 1e-14;
    double log_fit = -1e300;
    bool any = false;
    for (const auto& snap : traj.snapshots) {
        if (snap.t < 1.0) continue;
        for (size_t i = 0; i < snap.u.size(); ++i) {
            double x = snap.x_left + snap.h * static_cast<double>(i);
            if (x < hbar || snap.u[i] < floor_u) continue;
            double lg = std::log(snap.u[i]) - M * snap.t +
                        (x - hbar) * (x - hbar) / (4.0 * snap.t);
            log_fit = std::max(log_fit, lg);
            any = true;
        }
    }
    out.kappa2 = any ? std::exp(log_fit) : 0.0;
    out.gaussian_ok = any && out.kappa2 <= kappa2_ref * (1.0 + 1e-6);
    if (!any) out.note = "no snapshots with t >= 1";

    // spatial exponential bound for vanishing runs with a subcritical zone
    if (lambda1 && *lambda1 > 0) {
        double eps0 = 0.5 * std::min(-pair.gp0(), *lambda1);
        out.rate = std::sqrt(-pair.gp0() - eps0);
        double x1 = std::max(traj.effective_zone.outer_edge(), hbar) + 1.0;
        out.x1 = x1;
        auto fit_kappa = [&](double from_x) {
            double lg = -1e300;
            for (const auto& snap : traj.snapshots) {
                if (snap.t < 1.0) continue;
                for (size_t i = 0; i < snap.u.size(); ++i) {
                    double x = snap.x_left + snap.h * static_cast<double>(i);
                    if (x < from_x || snap.u[i] < floor_u) continue;
                    lg = std::max(lg, std::log(snap.u[i]) + out.rate * x);
                }
            }
            return lg > -1e300 ? std::exp(lg) : 0.0;
        };
        out.kappa1 = fit_kappa(x1);
        // the weighted tail must peak at the near edge, not at the far boundary
        double further = fit_kappa(x1 + 5.0);
        out.exponential_ok = out.kappa1 > 0 && further <= out.kappa1 * (1.0 + 1e-9);
    } else {
        out.note = "exponential bound needs lambda1 > 0";
    }
    return out;
}

}  // namespace pzlab
