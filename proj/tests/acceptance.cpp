// Acceptance suite for the protection-zone laboratory: every criterion runs
// at its stated tolerance and prints one PASS/FAIL line. Exit status is the
// number of failed criteria.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "pzlab/classify.hpp"
#include "pzlab/phaseplane.hpp"
#include "pzlab/reactions.hpp"
#include "pzlab/solver.hpp"
#include "pzlab/spectral.hpp"

using namespace pzlab;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& detail) {
    std::printf("CRITERION %d: %s — %s\n", idx, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

double relation_connected(const ReactionPair& p, double lam) {
    double t1 = std::sqrt(-(p.gp0() + lam)), t2 = std::sqrt(p.fp0() + lam);
    return std::atan(t1 / t2) / t2;
}

double relation_separate(const ReactionPair& p, double lam, double L1) {
    double t1 = std::sqrt(-(p.gp0() + lam)), t2 = std::sqrt(p.fp0() + lam);
    return (std::atan(t1 / t2 * std::tanh(t1 * L1)) + std::atan(t1 / t2)) / t2;
}

// ---------------------------------------------------------------- criterion 1
void criterion_eigen_exactness(const ReactionPair& pair) {
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        double L = 0.05 + (5.0 - 0.05) * i / 99.0;
        double lam = lambda1_connected(pair, L).lambda1;
        worst = std::max(worst, std::abs(relation_connected(pair, lam) - L));
    }
    double Lstar = std::atan(0.5);
    double lam_at_crit = std::abs(lambda1_connected(pair, Lstar).lambda1);

    double worst_sep = 0;
    for (int a = 0; a < 20; ++a) {
        double L1 = 0.1 * std::pow(50.0, a / 19.0);  // log grid on [0.1, 5]
        for (int b = 0; b < 20; ++b) {
            double L = 0.05 + (5.0 - 0.05) * b / 19.0;
            auto zone = ProtectionZone::separate(L1, L1 + L);
            double lam = lambda1_separate(pair, zone).lambda1;
            worst_sep = std::max(worst_sep, std::abs(relation_separate(pair, lam, L1) - L));
        }
    }
    bool ok = worst < 1e-9 && lam_at_crit < 1e-9 && worst_sep < 1e-9;
    report(1, ok,
           "relation residuals: connected " + num(worst) + ", separate " + num(worst_sep) +
               "; |lambda1(L*)| = " + num(lam_at_crit));
}

// ---------------------------------------------------------------- criterion 2
struct CriticalLengths {
    double Lstar, L0, Lss;
    std::vector<double> L1s, Lt, Ltt;
};

CriticalLengths criterion_orderings(const ReactionPair& pair) {
    CriticalLengths c;
    c.Lstar = critical_Lstar(pair);
    c.L0 = length_bound_L0(pair);
    c.Lss = estimate_Lstar2(pair);
    c.L1s = {0.2, 1.0, 5.0};
    const double slack = 1e-6;
    bool ok = c.Lstar <= c.Lss + slack && c.Lss <= c.L0 + slack;
    std::string detail = "L*=" + num(c.Lstar) + " <= L**=" + num(c.Lss) +
                         " <= L0=" + num(c.L0);
    for (double L1 : c.L1s) {
        double Lt = critical_Lstar_tilde(pair, L1);
        double Ltt = estimate_Lstar2_tilde(pair, L1);
        c.Lt.push_back(Lt);
        c.Ltt.push_back(Ltt);
        ok = ok && c.Lstar < Lt && Lt <= Ltt + slack && Ltt <= 2.0 * c.L0 + slack;
        detail += "; L1=" + num(L1) + ": " + num(Lt) + " <= " + num(Ltt);
    }
    report(2, ok, detail);
    return c;
}

// ---------------------------------------------------------------- criterion 3
void criterion_fd_cross_validation(const ReactionPair& pair) {
    bool ok = true;
    std::string detail;
    for (double L : {0.2, 0.4, 0.46, 1.0, 2.0}) {
        auto zone = ProtectionZone::connected(L);
        double prev = 1e9;
        bool decreasing = true;
        double lamR = 0;
        for (double R : {5.0, 10.0, 20.0, 40.0}) {
            lamR = lambda1_truncated(pair, zone, R, 0.01);
            // monotone within the eigensolver resolution: beyond R ~ 20 the
            // truncation effect drops under the bisection tolerance
            if (lamR > prev + 1e-12) decreasing = false;
            prev = lamR;
        }
        double closed = lambda1_connected(pair, L).lambda1;
        double err = std::abs(lamR - closed);
        ok = ok && decreasing && err < 1e-4;
        detail += "L=" + num(L) + ": |d|=" + num(err) + (decreasing ? " v " : " ^ ");
    }
    report(3, ok, detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion_ground_states(const ReactionPair& pair, double Lss) {
    TailV tail = TailV::build(pair, 0.002);
    const double ts = pair.theta_star();
    bool ok = true;
    double worst_jump = 0, worst_res = 0;
    for (int j = 1; j <= 10; ++j) {
        double L = Lss * j / 11.0;
        auto prof = connected_ground_state(pair, L, &tail);
        if (!prof) {
            ok = false;
            break;
        }
        if (!(prof->value_at0 < ts)) ok = false;
        for (size_t i = 1; i < prof->us.size(); ++i)
            if (!(prof->us[i] < prof->us[i - 1] + 1e-14)) ok = false;

        // interface jumps via the two independent representations
        const auto& mp = prof->match_points.front();
        double tail_x = L - prof->tail_shift;
        double jv = std::abs(mp.q - tail.value(tail_x));
        double jp = std::abs(mp.p - tail.derivative(tail_x));
        worst_jump = std::max({worst_jump, jv, jp});

        for (double h : {0.02, 0.01}) {
            double worst = 0;
            double x_hi = std::min(prof->x_cut - 1.0, L + 15.0);
            for (double x = h; x + h < x_hi; x += h) {
                if (std::abs(x - L) < 1.5 * h) continue;
                double lap =
                    (prof->value(x - h) - 2 * prof->value(x) + prof->value(x + h)) /
                    (h * h);
                double r = x < L ? pair.f(prof->value(x)) : pair.g(prof->value(x));
                worst = std::max(worst, std::abs(lap + r));
            }
            if (worst > 5 * h * h) ok = false;
            worst_res = std::max(worst_res, worst / (h * h));
        }
    }
    ok = ok && worst_jump < 1e-9;
    report(4, ok,
           "10 profiles on (0, L**): max interface jump " + num(worst_jump) +
               ", max residual/h^2 " + num(worst_res) + " (allowed 5)");
}

// ---------------------------------------------------------------- criterion 5
void criterion_solver_validation(const ReactionPair& pair) {
    // travelling-wave speed for the pure bistable reaction
    SolverParams sp;
    sp.mode = ReactionMode::bistable_everywhere;
    sp.h = 0.02;
    sp.dt = 0.002;
    sp.T = 150.0;
    sp.x_max = 80.0;
    sp.auto_extend = false;
    sp.snapshot_interval = 50.0;
    auto rec = simulate(pair, ProtectionZone::connected(0.4),
                        make_initial(InitialData::Shape::rectangle, 1.0, 5.0), sp);
    double speed = (rec.front_positions[3] - rec.front_positions[1]) / 100.0;
    double exact = (1.0 - 2.0 * pair.theta()) / std::sqrt(2.0);
    bool ok_speed = std::abs(speed - exact) <= 0.02 * exact;

    // grid refinement
    auto zone = ProtectionZone::connected(0.4);
    auto init = make_initial(InitialData::Shape::rectangle, 0.5, 2.0);
    auto run = [&](double h) {
        SolverParams s;
        s.h = h;
        s.dt = 0.125 * h;
        s.T = 4.0;
        s.x_max = 25.0;
        s.auto_extend = false;
        SimulationState st(pair, zone, init, s);
        st.advance_to(s.T);
        return st;
    };
    auto s1 = run(0.04), s2 = run(0.02), s3 = run(0.01);
    auto diff = [&](const SimulationState& a, const SimulationState& b) {
        double worst = 0;
        for (size_t i = 0; i < a.u().size(); ++i) {
            size_t j = i * 2;
            if (j >= b.u().size()) break;
            worst = std::max(worst, std::abs(a.u()[i] - b.u()[j]));
        }
        return worst;
    };
    double ratio = diff(s1, s2) / diff(s2, s3);
    bool ok_ratio = ratio >= 1.4;

    // discrete comparison in sigma
    SolverParams sc;
    sc.x_max = 30.0;
    sc.auto_extend = false;
    sc.T = 20.0;
    sc.snapshot_interval = 5.0;
    std::vector<TrajectoryRecord> recs;
    for (double sigma : {0.3, 0.6, 1.2})
        recs.push_back(
            simulate(pair, zone, make_initial(InitialData::Shape::rectangle, sigma, 2.0), sc));
    bool ok_cmp = true;
    for (size_t k = 0; k < recs[0].snapshots.size(); ++k)
        for (size_t i = 0; i < recs[0].snapshots[k].u.size(); ++i) {
            if (recs[0].snapshots[k].u[i] > recs[1].snapshots[k].u[i] + 1e-12) ok_cmp = false;
            if (recs[1].snapshots[k].u[i] > recs[2].snapshots[k].u[i] + 1e-12) ok_cmp = false;
        }

    report(5, ok_speed && ok_ratio && ok_cmp,
           "front speed " + num(speed) + " vs " + num(exact) + "; refinement ratio " +
               num(ratio) + "; comparison " + (ok_cmp ? "holds" : "violated"));
}

// ------------------------------------------------------------- criteria 6 & 7
struct RegimeRuns {
    ClassificationReport small_vanish, small_spread;
    std::vector<double> mid_sigmas;
    std::vector<Outcome> mid_outcomes;
    ClassificationReport mid_spread, large_spread;
    ThresholdPair thresholds;
};

ClassifyParams run_params() {
    ClassifyParams cp;
    cp.T_max = 400.0;
    cp.compute_distance = false;
    return cp;
}

RegimeRuns run_regimes(const ReactionPair& pair, double L_small, double L_mid,
                       double L_large, double L1 /* 0 for connected */) {
    auto zone_of = [&](double L) {
        return L1 > 0 ? ProtectionZone::separate(L1, L1 + L) : ProtectionZone::connected(L);
    };
    ClassifyParams cp = run_params();
    RegimeRuns rr;
    rr.small_vanish = classify(pair, zone_of(L_small),
                               make_initial(InitialData::Shape::rectangle, 0.02, 2.0), cp);
    rr.small_spread = classify(pair, zone_of(L_small),
                               make_initial(InitialData::Shape::rectangle, 3.0, 2.0), cp);
    rr.thresholds = threshold_bisect(pair, zone_of(L_small), InitialData::Shape::rectangle,
                                     2.0, 0.005, 4.0, 1e-3 * (4.0 - 0.005), cp);
    rr.mid_sigmas = {1e-3, 1e-2, 1e-1};
    for (double s : rr.mid_sigmas)
        rr.mid_outcomes.push_back(
            classify(pair, zone_of(L_mid), make_initial(InitialData::Shape::rectangle, s, 2.0),
                     cp)
                .outcome);
    rr.mid_spread = classify(pair, zone_of(L_mid),
                             make_initial(InitialData::Shape::rectangle, 3.0, 2.0), cp);
    rr.large_spread = classify(pair, zone_of(L_large),
                               make_initial(InitialData::Shape::rectangle, 0.01, 2.0), cp);
    return rr;
}

bool check_regimes(const RegimeRuns& rr, std::string& detail) {
    bool ok = rr.small_vanish.outcome == Outcome::Vanishing &&
              rr.small_spread.outcome == Outcome::Spreading;
    detail += "small zone: sigma=0.02 " + to_string(rr.small_vanish.outcome) +
              ", sigma=3 " + to_string(rr.small_spread.outcome);

    const auto& tv = rr.thresholds.vanishing;
    const auto& tsp = rr.thresholds.spreading;
    bool brackets_ok = rr.thresholds.monotone_ok && !tv.degenerate && !tsp.degenerate &&
                       tv.sigma_low <= tsp.sigma_low + 1e-12 &&
                       tv.sigma_high <= tsp.sigma_high + 1e-12;
    ok = ok && brackets_ok;
    detail += "; sigma_* in [" + num(tv.sigma_low) + "," + num(tv.sigma_high) +
              "], sigma^* in [" + num(tsp.sigma_low) + "," + num(tsp.sigma_high) + "]";

    bool mid_ok = true;
    for (auto o : rr.mid_outcomes) mid_ok = mid_ok && o != Outcome::Vanishing;
    mid_ok = mid_ok && rr.mid_spread.outcome == Outcome::Spreading;
    ok = ok && mid_ok;
    detail += "; mid zone non-vanishing " + std::string(mid_ok ? "yes" : "NO");

    bool large_ok = rr.large_spread.outcome == Outcome::Spreading;
    ok = ok && large_ok;
    detail += "; large zone sigma=0.01 " + to_string(rr.large_spread.outcome);
    return ok;
}

// ---------------------------------------------------------------- criterion 8
void criterion_connected_beats_separate(const ReactionPair& pair, double Lstar,
                                        double Lt1) {
    ClassifyParams cp = run_params();
    bool order_ok = Lstar < Lt1;

    // equal half-length above the separate critical value: the connected zone
    // cannot vanish
    double L_above = Lt1 + 0.05;
    auto rep_conn_above =
        classify(pair, ProtectionZone::connected(L_above),
                 make_initial(InitialData::Shape::rectangle, 1e-3, 2.0), cp);
    bool conn_nonvanish = rep_conn_above.outcome != Outcome::Vanishing;

    // one (L, sigma) cell classified spreading/undetermined for the connected
    // zone and vanishing for the separate one: pick L between L* and Ltilde*(1)
    double L_cell = 0.64;
    auto rep_conn = classify(pair, ProtectionZone::connected(L_cell),
                             make_initial(InitialData::Shape::rectangle, 1e-3, 2.0), cp);
    auto rep_sep = classify(pair, ProtectionZone::separate(1.0, 1.0 + L_cell),
                            make_initial(InitialData::Shape::rectangle, 1e-3, 2.0), cp);
    bool cell_ok = rep_conn.outcome != Outcome::Vanishing &&
                   rep_sep.outcome == Outcome::Vanishing;

    report(8, order_ok && conn_nonvanish && cell_ok,
           "L* " + num(Lstar) + " < Ltilde*(1) " + num(Lt1) + "; connected at L=" +
               num(L_above) + " sigma=1e-3: " + to_string(rep_conn_above.outcome) +
               "; cell L=" + num(L_cell) + ": connected " + to_string(rep_conn.outcome) +
               " / separate " + to_string(rep_sep.outcome));
}

// ---------------------------------------------------------------- criterion 9
void criterion_decay_diagnostics(const ReactionPair& pair,
                                 const std::vector<std::pair<ProtectionZone, double>>& runs) {
    bool ok = true;
    std::string detail;
    for (const auto& [zone, sigma] : runs) {
        auto init = make_initial(InitialData::Shape::rectangle, sigma, 2.0);
        SolverParams sp;
        sp.snapshot_interval = 1.0;
        sp.T = 25.0;
        sp.auto_extend = false;
        sp.x_max = zone.outer_edge() + init.hbar + 40.0;
        auto rec = simulate(pair, zone, init, sp);
        EigenResult eig = zone.is_separate() ? lambda1_separate(pair, zone)
                                             : lambda1_connected(pair, zone.L2);
        auto db = check_decay_bounds(rec, pair, init, eig.lambda1);
        ok = ok && db.gaussian_ok && db.exponential_ok;
        detail += std::string(zone.is_separate() ? "separate" : "connected") +
                  ": kappa2=" + num(db.kappa2) + " kappa1=" + num(db.kappa1) +
                  (db.gaussian_ok && db.exponential_ok ? " ok; " : " FAIL; ");
    }
    report(9, ok, detail);
}

}  // namespace

int main() {
    auto pair = ReactionPair::cubic(0.25);
    std::printf("default pair: theta=0.25, theta*=%.12f\n", pair.theta_star());

    criterion_eigen_exactness(pair);
    CriticalLengths cl = criterion_orderings(pair);
    criterion_fd_cross_validation(pair);
    criterion_ground_states(pair, cl.Lss);
    criterion_solver_validation(pair);

    // regime classification, connected zones
    double L_small_c = 0.5 * cl.Lstar;
    double L_mid_c = 0.5 * (cl.Lstar + cl.Lss);
    double L_large_c = 1.1 * cl.L0;
    RegimeRuns rc = run_regimes(pair, L_small_c, L_mid_c, L_large_c, 0.0);
    {
        std::string detail = "L=" + num(L_small_c) + "/" + num(L_mid_c) + "/" +
                             num(L_large_c) + "; ";
        bool ok = check_regimes(rc, detail);
        report(6, ok, detail);
    }

    // separate zones with L1 = 1; lengths aligned to the default grid so the
    // effective zone equals the nominal one
    double Lt1 = cl.Lt[1];
    double Ltt1 = cl.Ltt[1];
    double h = 0.02;
    double L_small_s = std::round(0.5 * Lt1 / h) * h;
    double L_mid_s = std::ceil((0.5 * (Lt1 + Ltt1) + 1e-3) / h) * h;
    double L_large_s = std::round(1.1 * 2.0 * cl.L0 / h) * h;
    RegimeRuns rs = run_regimes(pair, L_small_s, L_mid_s, L_large_s, 1.0);
    {
        std::string detail = "L1=1, L=" + num(L_small_s) + "/" + num(L_mid_s) + "/" +
                             num(L_large_s) + "; ";
        bool ok = check_regimes(rs, detail);
        report(7, ok, detail);
    }

    criterion_connected_beats_separate(pair, cl.Lstar, Lt1);

    criterion_decay_diagnostics(
        pair, {{ProtectionZone::connected(L_small_c), 0.02},
               {ProtectionZone::separate(1.0, 1.0 + L_small_s), 0.02}});

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED"
                                      : (std::to_string(failures) + " CRITERIA FAILED").c_str());
    return failures;
}
