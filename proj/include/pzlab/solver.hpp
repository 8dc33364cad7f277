#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pzlab/reactions.hpp"
#include "pzlab/zone.hpp"

namespace pzlab {

/// Compactly supported nonnegative initial data, monotone in the amplitude
/// parameter sigma and vanishing uniformly as sigma -> 0.
struct InitialData {
    enum class Shape { rectangle, tent, table };
    Shape shape = Shape::rectangle;
    double sigma = 1.0;
    double hbar = 2.0;  // support radius
    std::vector<std::pair<double, double>> table;

    double value(double x) const;
};

InitialData make_initial(InitialData::Shape shape, double sigma, double hbar);

/// Which reaction acts where. `zoned` is the protection-zone problem;
/// the pure modes exist for oracle runs (travelling-wave speed, domination
/// and mass-conservation checks).
enum class ReactionMode { zoned, bistable_everywhere, monostable_everywhere, none };

enum class RightBoundary { dirichlet, neumann };
enum class DomainKind { half_line, full_line };

struct SolverParams {
    double h = 0.02;      // target grid step; adjusted so interfaces land on nodes
    double dt = 0.0;      // 0 -> min(0.005, 0.9 / lipschitz_bound)
    double T = 100.0;
    double x_max = 0.0;   // 0 -> outer interface + hbar + 40
    bool auto_extend = true;
    double extend_tail = 1e-8;   // extend when u exceeds this near the boundary
    std::size_t max_nodes = 4u << 20;
    double snapshot_interval = 0.0;  // 0 -> no snapshots, final state only
    ReactionMode mode = ReactionMode::zoned;
    RightBoundary right_bc = RightBoundary::dirichlet;
    DomainKind domain = DomainKind::half_line;
};

/// Grid state of the truncated problem. Interface points coincide with grid
/// nodes exactly; the zone stored here is the effective (snapped) one.
class SimulationState {
public:
    SimulationState(const ReactionPair& pair, const ProtectionZone& zone,
                    const InitialData& init, const SolverParams& params);

    void step();
    void advance_to(double t_target);  // whole steps until t >= t_target - dt/2

    double t() const { return t_; }
    double dt() const { return dt_; }
    double h() const { return h_; }
    double x_left() const { return x_left_; }
    double x_of(std::size_t i) const { return x_left_ + h_ * static_cast<double>(i); }
    const std::vector<double>& u() const { return u_; }
    const ProtectionZone& effective_zone() const { return zone_; }
    const ReactionPair& pair() const { return *pair_; }

    double sup_norm() const;
    double mass() const;  // trapezoid
    /// rightmost x where u crosses the given level (linear interpolation),
    /// or 0 if u stays below it
    double front_position(double level) const;
    bool resource_capped() const { return capped_; }

private:
    void build_grid(double x_right);
    void extend_domain();
    double reaction_at(std::size_t i, double v) const;

    const ReactionPair* pair_;
    ProtectionZone zone_;
    SolverParams params_;
    double h_ = 0, dt_ = 0, t_ = 0;
    double x_left_ = 0;
    double lip_ = 0;
    std::vector<double> u_;
    std::vector<double> scratch_;
    // reaction selector per node: 0 bistable, 1 monostable, 2 interface mean, 3 none
    std::vector<unsigned char> region_;
    // prefactored implicit-diffusion solve (rebuilt on extension)
    std::vector<double> sub_, diag_, sup_;
    std::vector<double> cstar_, dinv_;
    void factor();
    bool capped_ = false;
};

struct Snapshot {
    double t = 0;
    double x_left = 0, h = 0;
    std::vector<double> u;
};

struct TrajectoryRecord {
    std::vector<Snapshot> snapshots;
    std::vector<double> times, sup_norms, front_positions;
    Snapshot final_state;
    bool resource_capped = false;
    ProtectionZone effective_zone = ProtectionZone::connected(1.0);
};

/// Runs the zoned problem from the given data for params.T time units,
/// recording snapshots every params.snapshot_interval. The right boundary
/// extends automatically while the tail stays above params.extend_tail,
/// up to params.max_nodes (beyond which the record is flagged capped).
TrajectoryRecord simulate(const ReactionPair& pair, const ProtectionZone& zone,
                          const InitialData& init, const SolverParams& params);

/// Decay diagnostics fitted over the recorded snapshots with t >= 1:
///   kappa2: smallest constant making u <= kappa2 exp(M t - (x-hbar)^2/(4t))
///   kappa1, x1: spatial bound u <= kappa1 exp(-rate x) for x >= x1 with
///   rate = sqrt(-g'(0) - eps0), eps0 = min(-g'(0), lambda1)/2 (needs
///   lambda1 > 0, i.e. a subcritical zone).
struct DecayBounds {
    double kappa2 = 0;
    bool gaussian_ok = false;
    double kappa1 = 0;
    double x1 = 0;
    double rate = 0;
    bool exponential_ok = false;
    std::string note;
};

DecayBounds check_decay_bounds(const TrajectoryRecord& traj, const ReactionPair& pair,
                               const InitialData& init,
                               std::optional<double> lambda1 = std::nullopt);

}  // namespace pzlab
