#include <doctest.h>

#include <cmath>

#include "pzlab/classify.hpp"
#include "pzlab/phaseplane.hpp"
#include "pzlab/reactions.hpp"
#include "pzlab/solver.hpp"
#include "pzlab/spectral.hpp"

using namespace pzlab;

namespace {
ReactionPair tabulated_cubic(double theta, int n = 401) {
    std::vector<std::array<double, 3>> rows;
    for (int i = 0; i < n; ++i) {
        double u = 2.0 * i / (n - 1);
        rows.push_back({u, u * (1 - u), u * (u - theta) * (1 - u)});
    }
    return ReactionPair::tabulated(theta, rows);
}
}  // namespace

TEST_CASE("tabulated pair drives the whole pipeline") {
    auto tab = tabulated_cubic(0.3);
    REQUIRE(validate(tab).empty());

    double Ls = critical_Lstar(tab);
    CHECK(Ls == doctest::Approx(std::atan(std::sqrt(0.3))).epsilon(1e-3));

    // the supersolution level comes from the guarded scan for tabulated pairs
    double lam = lambda1_connected(tab, 0.5 * Ls).lambda1;
    CHECK(lam > 0);
    double delta = vanishing_delta(tab, lam);
    CHECK(delta > 0);
    for (int i = 1; i <= 100; ++i) {
        double s = delta * i / 100.0;
        CHECK(tab.g(s) <= (tab.gp0() + 0.5 * lam) * s + 1e-12);
    }

    ClassifyParams cp;
    cp.T_max = 40.0;
    cp.compute_distance = false;
    auto rep = classify(tab, ProtectionZone::connected(0.5 * Ls),
                        make_initial(InitialData::Shape::rectangle, 0.01, 2.0), cp);
    CHECK(rep.outcome == Outcome::Vanishing);
}

TEST_CASE("separate profiles report their type, bounded by theta*") {
    auto p = ReactionPair::cubic(0.25);
    double ts = p.theta_star();
    TailV tail = TailV::build(p);

    for (auto [L1, L2] : {std::pair{0.3, 0.75}, std::pair{2.0, 2.5}}) {
        auto profiles = separate_ground_states(p, ProtectionZone::separate(L1, L2), &tail,
                                               256);
        for (const auto& prof : profiles) {
            CHECK(prof.peak < ts);
            CHECK(prof.kind.rfind("separate-type-", 0) == 0);
            int type = std::stoi(prof.kind.substr(14));
            CHECK(type >= 1);
            CHECK(type <= 8);
            // value and derivative agree across both interfaces
            for (const auto& mp : prof.match_points) {
                double eps = 1e-6;
                CHECK(std::abs(prof.value(mp.x - eps) - prof.value(mp.x + eps)) < 1e-4);
            }
        }
    }
}

TEST_CASE("node cap flags the record and keeps partial results") {
    auto p = ReactionPair::cubic(0.25);
    SolverParams sp;
    sp.mode = ReactionMode::monostable_everywhere;
    sp.x_max = 20.0;
    sp.T = 60.0;
    sp.max_nodes = 1500;
    auto rec = simulate(p, ProtectionZone::connected(0.4),
                        make_initial(InitialData::Shape::rectangle, 0.5, 2.0), sp);
    CHECK(rec.resource_capped);
    CHECK(rec.final_state.t == doctest::Approx(60.0).epsilon(1e-6));
    CHECK(rec.sup_norms.back() > 0.9);  // still integrated to the end
}

TEST_CASE("tent and tabulated initial data") {
    auto tent = make_initial(InitialData::Shape::tent, 0.8, 2.0);
    CHECK(tent.value(0.0) == doctest::Approx(0.8));
    CHECK(tent.value(1.0) == doctest::Approx(0.4));
    CHECK(tent.value(2.0) == 0.0);

    InitialData tab;
    tab.shape = InitialData::Shape::table;
    tab.sigma = 2.0;
    tab.hbar = 3.0;
    tab.table = {{0.0, 1.0}, {1.0, 0.5}, {3.0, 0.0}};
    CHECK(tab.value(0.0) == doctest::Approx(2.0));
    CHECK(tab.value(0.5) == doctest::Approx(1.5));
    CHECK(tab.value(2.0) == doctest::Approx(0.5));
    CHECK(tab.value(3.5) == 0.0);

    // a tent datum in the solver respects the usual bounds
    auto p = ReactionPair::cubic(0.25);
    SolverParams sp;
    sp.x_max = 20.0;
    sp.auto_extend = false;
    sp.T = 5.0;
    SimulationState s(p, ProtectionZone::connected(0.4), tent, sp);
    s.advance_to(sp.T);
    CHECK(s.sup_norm() <= 1.0 + 1e-12);
}

TEST_CASE("full-line symmetry holds for separate zones too") {
    auto p = ReactionPair::cubic(0.25);
    auto zone = ProtectionZone::separate(1.0, 1.5);
    auto init = make_initial(InitialData::Shape::rectangle, 0.8, 2.0);

    SolverParams half;
    half.x_max = 25.0;
    half.auto_extend = false;
    half.T = 6.0;
    SolverParams full = half;
    full.domain = DomainKind::full_line;

    SimulationState sh(p, zone, init, half);
    SimulationState sf(p, zone, init, full);
    sh.advance_to(half.T);
    sf.advance_to(full.T);

    size_t offset = 0;
    while (sf.x_of(offset) < -1e-12) ++offset;
    for (size_t i = 0; i + offset < sf.u().size() && i < sh.u().size(); ++i)
        CHECK(std::abs(sf.u()[i + offset] - sh.u()[i]) < 1e-8);
}

TEST_CASE("broken sign patterns are reported") {
    // g positive near zero: not a bistable reaction
    std::vector<std::array<double, 3>> rows;
    for (int i = 0; i <= 200; ++i) {
        double u = 2.0 * i / 200;
        rows.push_back({u, u * (1 - u), u * (u + 0.25) * (1 - u)});
    }
    auto bad = validate(ReactionPair::tabulated(0.25, rows));
    bool sign_flag = false, deriv_flag = false;
    for (const auto& msg : bad) {
        if (msg.find("not negative on (0, theta)") != std::string::npos) sign_flag = true;
        if (msg.find("g'(0)") != std::string::npos) deriv_flag = true;
    }
    CHECK(sign_flag);
    CHECK(deriv_flag);
}
