#pragma once

#include "pzlab/reactions.hpp"
#include "pzlab/zone.hpp"

namespace pzlab {

/// Principal eigenpair of the half-line problem
///   -phi'' - f'(0) phi = lambda phi   inside the zone,
///   -phi'' - g'(0) phi = lambda phi   outside,
/// with phi'(0) = 0, phi(inf) = 0 and C^1 matching at the interfaces.
/// The eigenfunction is stored in closed form: a cosine piece inside the
/// zone (peaked at x = a), a cosh piece on [0, L1] for separate zones, and a
/// decaying exponential beyond the outer interface; sup-normalised to 1.
struct EigenResult {
    double lambda1 = 0;
    ProtectionZone zone = ProtectionZone::connected(1.0);
    double theta1 = 0;  // sqrt(-(g'(0) + lambda1))
    double theta2 = 0;  // sqrt(f'(0) + lambda1)
    double a = 0;       // peak location of the eigenfunction
    double amp_cosh = 0, amp_cos = 0, amp_exp = 0;

    double phi(double x) const;
    double phi_prime(double x) const;
    double phi_second(double x) const;
};

/// Connected-zone principal eigenvalue lambda1(L), solved from the
/// transcendental relation L = arctan(theta1/theta2)/theta2 by bisection on
/// (-f'(0), -g'(0)).
EigenResult lambda1_connected(const ReactionPair& pair, double L);

/// Separate-zone principal eigenvalue for the zone [L1, L2].
EigenResult lambda1_separate(const ReactionPair& pair, const ProtectionZone& zone);

/// Critical length where lambda1 crosses zero, from the derivative data alone.
double critical_length(double fp0, double gp0);
double critical_Lstar(const ReactionPair& pair);

/// Critical zone length for the separate geometry at inner radius L1;
/// exceeds the connected L* for every L1 > 0.
double critical_Lstar_tilde(const ReactionPair& pair, double L1);

/// Principal eigenvalue of the finite-domain Dirichlet discretisation on
/// (-R, R): second-order differences with the piecewise-constant potential
/// (-f'(0) in the zone reflected to |x|, -g'(0) outside), smallest eigenvalue
/// by Sturm bisection. zone.L2 == 0 is allowed and means "no zone".
double lambda1_truncated(const ReactionPair& pair, const ProtectionZone& zone, double R,
                         double h);
double lambda1_truncated_no_zone(const ReactionPair& pair, double R, double h);

}  // namespace pzlab
