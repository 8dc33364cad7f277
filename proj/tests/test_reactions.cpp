#include <doctest.h>

#include <cmath>
#include <vector>

#include "pzlab/reactions.hpp"

using namespace pzlab;

namespace {

// closed-form balance level of the cubic pair: the root of
// 3 b^2 - 4(1+theta) b + 6 theta in (theta, 1)
double cubic_theta_star(double theta) {
    double s = 2.0 * (1.0 + theta);
    return (s - std::sqrt(s * s - 18.0 * theta)) / 3.0;
}

// midpoint rule with the s = c - t^2 substitution, 1e6 panels: independent
// oracle for the singular integrals
template <class F>
double midpoint_substituted(const F& integrand_of_offset, double width, int panels = 1000000) {
    double tmax = std::sqrt(width), sum = 0;
    for (int i = 0; i < panels; ++i) {
        double t = tmax * (i + 0.5) / panels;
        sum += 2.0 * t * integrand_of_offset(t * t);
    }
    return sum * tmax / panels;
}

std::vector<std::array<double, 3>> tabulate_pair(double theta, int n = 201) {
    std::vector<std::array<double, 3>> rows;
    for (int i = 0; i < n; ++i) {
        double u = 2.0 * i / (n - 1);
        rows.push_back({u, u * (1 - u), u * (u - theta) * (1 - u)});
    }
    return rows;
}

}  // namespace

TEST_CASE("default cubic pair is valid") {
    auto pair = ReactionPair::cubic(0.25);
    CHECK(validate(pair).empty());
    CHECK(pair.fp0() == doctest::Approx(1.0));
    CHECK(pair.gp0() == doctest::Approx(-0.25));
    CHECK(pair.fp1() == doctest::Approx(-1.0));
    // unbalance integral has the closed form (1 - 2 theta)/12
    CHECK(pair.integral_g(0, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
}

TEST_CASE("unbalanced theta is flagged") {
    auto pair = ReactionPair::cubic(0.6);
    auto bad = validate(pair);
    bool found = false;
    for (const auto& msg : bad)
        if (msg.find("integral of g") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("pair with f equal to g violates the separation hypothesis") {
    // bistable reaction in the zone as well: g < f must fail
    std::vector<std::array<double, 3>> rows;
    for (int i = 0; i <= 200; ++i) {
        double u = 2.0 * i / 200;
        double gv = u * (u - 0.25) * (1 - u);
        rows.push_back({u, gv, gv});
    }
    auto pair = ReactionPair::tabulated(0.25, rows);
    auto bad = validate(pair);
    bool found = false;
    for (const auto& msg : bad)
        if (msg.find("g < f") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("theta_star matches the quadratic closed form") {
    auto p25 = ReactionPair::cubic(0.25);
    CHECK(p25.theta_star() == doctest::Approx((5.0 - std::sqrt(7.0)) / 6.0).epsilon(1e-12));
    CHECK(std::abs(p25.integral_g(0.0, p25.theta_star())) < 1e-10);

    auto p40 = ReactionPair::cubic(0.4);
    CHECK(p40.theta_star() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(p40.theta_star() == doctest::Approx(cubic_theta_star(0.4)).epsilon(1e-12));

    // theta -> 1/2 pushes the balance level toward 1
    double prev = 0;
    for (double th : {0.3, 0.4, 0.45, 0.49, 0.499}) {
        double ts = ReactionPair::cubic(th).theta_star();
        CHECK(ts > prev);
        prev = ts;
    }
    CHECK(prev > 0.97);
}

TEST_CASE("primitives") {
    auto pair = ReactionPair::cubic(0.25);
    CHECK(pair.primitive_F(0.0) == 0.0);
    CHECK(pair.primitive_F(1.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(std::abs(pair.primitive_G(pair.theta_star())) < 1e-12);

    // G increases strictly on (0, theta) and decreases on (theta, theta*)
    double ts = pair.theta_star();
    for (int i = 1; i < 40; ++i) {
        double a = 0.25 * (i - 1) / 40.0, b = 0.25 * i / 40.0;
        CHECK(pair.primitive_G(b) > pair.primitive_G(a));
    }
    for (int i = 1; i < 40; ++i) {
        double a = 0.25 + (ts - 0.25) * (i - 1) / 40.0;
        double b = 0.25 + (ts - 0.25) * i / 40.0;
        CHECK(pair.primitive_G(b) < pair.primitive_G(a));
    }
}

TEST_CASE("g stays below f on the unit interval") {
    auto pair = ReactionPair::cubic(0.25);
    for (int i = 1; i < 2000; ++i) {
        double u = i / 2000.0;
        CHECK(pair.g(u) < pair.f(u));
    }
}

TEST_CASE("l_alpha against the brute-force oracle") {
    auto pair = ReactionPair::cubic(0.25);
    double ts = pair.theta_star();
    CHECK_THROWS_AS(l_alpha(pair, ts * 0.5), std::domain_error);
    CHECK_THROWS_AS(l_alpha(pair, 1.1), std::domain_error);

    double alpha = 0.7;
    double brute = midpoint_substituted(
        [&](double off) { return 1.0 / std::sqrt(2.0 * pair.integral_g_below(alpha, off)); },
        alpha);
    double v = l_alpha(pair, alpha);
    CHECK(v > 0);
    CHECK(v == doctest::Approx(brute).epsilon(1e-6));

    // blow-up toward theta*: strictly larger for alpha closer to theta*
    CHECK(l_alpha(pair, ts + 1e-3) > l_alpha(pair, ts + 1e-2));
    CHECK(l_alpha(pair, ts + 1e-2) > l_alpha(pair, 0.7));
}

TEST_CASE("L0 bound against the brute-force oracle") {
    auto pair = ReactionPair::cubic(0.25);
    double ts = pair.theta_star();
    double brute = midpoint_substituted(
        [&](double off) { return 1.0 / std::sqrt(2.0 * pair.integral_f_below(ts, off)); },
        ts);
    double v = length_bound_L0(pair);
    CHECK(v > 0);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(brute).epsilon(1e-6));

    // a smaller balance level shrinks the bound
    auto p_small = ReactionPair::cubic(0.1);
    CHECK(length_bound_L0(p_small) < v);
}

TEST_CASE("tabulated pair approximates the cubic one") {
    auto tab = ReactionPair::tabulated(0.25, tabulate_pair(0.25, 401));
    CHECK(validate(tab).empty());
    CHECK(tab.theta_star() ==
          doctest::Approx((5.0 - std::sqrt(7.0)) / 6.0).epsilon(1e-6));
    CHECK(tab.fp0() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(tab.gp0() == doctest::Approx(-0.25).epsilon(1e-4));
}

TEST_CASE("lipschitz bound dominates the growth ratios") {
    auto pair = ReactionPair::cubic(0.25);
    double M = pair.lipschitz_bound();
    CHECK(M >= 1.0);
    for (int i = 1; i <= 1000; ++i) {
        double u = 5.0 * i / 1000.0;
        CHECK(pair.f(u) <= M * u + 1e-12);
        CHECK(pair.g(u) <= M * u + 1e-12);
        CHECK(pair.f(u) >= -M * u - 1e-12);
        CHECK(pair.g(u) >= -M * u - 1e-12);
    }
}
