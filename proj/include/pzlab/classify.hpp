#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pzlab/phaseplane.hpp"
#include "pzlab/reactions.hpp"
#include "pzlab/solver.hpp"
#include "pzlab/spectral.hpp"
#include "pzlab/zone.hpp"

namespace pzlab {

enum class Outcome { Vanishing, Spreading, Undetermined };

std::string to_string(Outcome o);

struct CertificateData {
    std::string kind = "timeout";  // "supersolution" | "spreading-block" | "timeout"
    double delta = 0;              // supersolution level
    double alpha = 0, r = 0;       // spreading block level and anchor
    double t = 0;                  // simulation time at which the check passed
};

struct ClassifyParams {
    double T_max = 400.0;
    double check_interval = 1.0;
    double alpha = 0.0;  // 0 -> (theta* + 1) / 2
    SolverParams solver;
    double distance_window_pad = 20.0;
    int distance_scan = 48;
    bool compute_distance = true;  // bisection loops switch this off
};

struct ClassificationReport {
    Outcome outcome = Outcome::Undetermined;
    CertificateData certificate;
    double T_reached = 0;
    double lambda1 = 0;
    double distance_to_ground_state = -1;  // filled for Undetermined outcomes
    ProtectionZone effective_zone = ProtectionZone::connected(1.0);
};

/// Largest delta <= 1 such that f(s) <= (f'(0) + lambda/2) s and
/// g(s) <= (g'(0) + lambda/2) s hold on [0, delta]. Closed form for the
/// cubic defaults, a guarded dense scan otherwise. Requires lambda > 0.
double vanishing_delta(const ReactionPair& pair, double lambda);

/// Nodewise test u <= delta * phi1 over the whole grid.
bool vanishing_certificate(const SimulationState& state, const EigenResult& eigen,
                           double delta);

/// Searches for an anchor r >= outer interface with u >= alpha on
/// [r, r + 2 l_alpha]; returns it when found.
std::optional<double> spreading_certificate(const SimulationState& state, double alpha,
                                            double l_alpha_value);

/// Runs the zoned problem with certificate checks every check_interval until
/// one passes or T_max is reached. Undetermined reports carry the sup-norm
/// distance to the nearest member of the stationary family on the window
/// [0, outer + pad].
ClassificationReport classify(const ReactionPair& pair, const ProtectionZone& zone,
                              const InitialData& init, const ClassifyParams& params = {});

struct ThresholdReport {
    double sigma_low = 0, sigma_high = 0;
    int iterations = 0;
    std::vector<std::pair<double, Outcome>> trace;
    bool degenerate = false;
    std::string note;
};

/// Brackets the two amplitude thresholds by bisection: the boundary of
/// certified vanishing (sigma_*) and of certified spreading (sigma^*).
/// Requires a monotone initial family; the recorded outcomes are checked for
/// monotonicity in sigma and the violation flag set otherwise.
struct ThresholdPair {
    ThresholdReport vanishing, spreading;
    bool monotone_ok = true;
};

ThresholdPair threshold_bisect(const ReactionPair& pair, const ProtectionZone& zone,
                               InitialData::Shape shape, double hbar, double sigma_lo,
                               double sigma_hi, double tol,
                               const ClassifyParams& params = {});

}  // namespace pzlab
