#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pzlab/reactions.hpp"
#include "pzlab/zone.hpp"

namespace pzlab {

/// A phase-plane energy curve. Monostable trajectories satisfy
/// p^2 = F(q) - C, bistable ones p^2 = G(q) - C, with F, G the primitives
/// from ReactionPair.
struct Trajectory {
    enum class Family { monostable, bistable };
    Family family = Family::bistable;
    double C = 0.0;

    double p_squared(const ReactionPair& pair, double q) const {
        return (family == Family::monostable ? pair.primitive_F(q) : pair.primitive_G(q)) - C;
    }
};

struct PhasePoint {
    double q = 0, p = 0;
};

/// The decaying bistable profile V with V'' + g(V) = 0, V(0) = theta*,
/// V'(0) = 0, V(+inf) = 0, sampled on a uniform x-grid down to the cutoff
/// level. Built once per reaction pair and shared; keeps a reference to the
/// pair, which must outlive it.
class TailV {
public:
    static TailV build(const ReactionPair& pair, double dx = 0.005, double cutoff = 1e-10);

    double value(double x) const;       // V(x); exponential continuation past the table
    double derivative(double x) const;  // V'(x) = -sqrt(G(V))
    double x_cut() const { return x_cut_; }
    double x_of_value(double q) const;  // inverse map, accurate quadrature
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& qs() const { return qs_; }

private:
    const ReactionPair* pair_ = nullptr;
    std::vector<double> xs_, qs_, ps_;
    double dx_ = 0, x_cut_ = 0, decay_rate_ = 0;
};

/// Intersection points of the zero-energy bistable curve Gamma_0 with the
/// monostable curve through (beta, 0). For beta in (0, theta*) the two
/// points share one abscissa q_c and differ in the sign of p; the list is
/// ordered with the p < 0 point first. A single point (theta*, 0) at
/// beta = theta*, empty for beta in (theta*, 1).
std::vector<PhasePoint> gamma_intersections(const ReactionPair& pair, double beta);

enum class Branch { lower, upper };

/// Zone half-length of the stationary profile peaking at beta: the x-extent
/// of the monostable arc from (beta, 0) to the Gamma_0 intersection. The two
/// branches are mirror arcs of equal extent.
double connected_length_of(const ReactionPair& pair, double beta, Branch branch = Branch::lower);

struct MatchPoint {
    double x = 0, q = 0, p = 0;
};

/// A sampled stationary profile of the zoned problem, decaying at infinity.
struct GroundStateProfile {
    ProtectionZone zone = ProtectionZone::connected(1.0);
    double peak = 0;      // sup U
    double value_at0 = 0;  // U(0)
    std::vector<MatchPoint> match_points;
    double tail_shift = 0;  // z with U(x) = V(x - z) beyond the outer interface
    std::string kind = "connected";
    double x_cut = 0;
    double residual_norm = 0;  // shooting residual for separate profiles

    std::vector<double> xs, us, ps;

    double value(double x) const;
    double derivative(double x) const;
};

struct ProfileOptions {
    double table_dx = 0.005;
    int scan_points = 384;
    double beta_tol = 1e-12;
};

/// Constructs the decreasing ground state of the connected problem with zone
/// half-length L, or nullopt when L exceeds every achievable arc extent.
/// A prebuilt TailV may be supplied to amortise the tail construction.
std::optional<GroundStateProfile> connected_ground_state(const ReactionPair& pair, double L,
                                                         const TailV* tail = nullptr,
                                                         const ProfileOptions& opts = {});

/// The member of the connected stationary family peaking at beta, assembled
/// with its own zone half-length connected_length_of(beta).
GroundStateProfile connected_profile_for_peak(const ReactionPair& pair, double beta,
                                              const TailV& tail,
                                              const ProfileOptions& opts = {});

/// Supremum of connected_length_of over the peak parameter: the numeric
/// critical length above which no ground state exists. Scan plus golden
/// refinement plus a boundary extrapolation; absolute error about 1e-8.
double estimate_Lstar2(const ReactionPair& pair, int scan_points = 512);

/// One shot of the separate-zone stationary problem: the piecewise
/// Hamiltonian flow from (gamma, 0), bistable field on [0, L1], monostable
/// on [L1, L2]. residual is the signed p-distance of the endpoint state from
/// the lower branch of Gamma_0; a root in gamma is a ground state.
struct ShootResult {
    double residual = 0;
    bool divergent = false;
    PhasePoint at_L1, at_L2;
    std::vector<double> xs, qs, ps;  // recorded flow samples on [0, L2]
};

ShootResult separate_shoot(const ReactionPair& pair, const ProtectionZone& zone, double gamma,
                           double record_dx = 0.005);

/// All ground states of the separate problem found by a residual scan over
/// gamma in (0, theta*), assembled with their Gamma_0 tails.
std::vector<GroundStateProfile> separate_ground_states(const ReactionPair& pair,
                                                       const ProtectionZone& zone,
                                                       const TailV* tail = nullptr,
                                                       int scan_points = 512);

/// Supremum over gamma of the monostable arc length from the state reached
/// at L1 to its Gamma_0 crossing: the separate-zone analogue of
/// estimate_Lstar2.
double estimate_Lstar2_tilde(const ReactionPair& pair, double L1, int scan_points = 384);

}  // namespace pzlab
