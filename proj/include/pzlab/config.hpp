#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pzlab/classify.hpp"
#include "pzlab/reactions.hpp"
#include "pzlab/solver.hpp"
#include "pzlab/zone.hpp"

namespace pzlab {

/// Run configuration mirrored one-to-one by the JSON config document.
/// Every field has a default; configs round-trip losslessly.
struct ReactionConfig {
    std::string kind = "cubic";  // "cubic" | "tabulated"
    double theta = 0.25;
    std::vector<std::array<double, 3>> table;  // [u, f, g] rows for tabulated pairs
    bool operator==(const ReactionConfig&) const = default;
};

struct ZoneConfig {
    std::string type = "connected";  // "connected" | "separate"
    double L = 0.3;
    double L1 = 1.0, L2 = 1.5;
    bool operator==(const ZoneConfig&) const = default;
};

struct InitialConfig {
    std::string shape = "rectangle";  // "rectangle" | "tent" | "table"
    double sigma = 1.0;
    double hbar = 2.0;
    std::vector<std::pair<double, double>> table;
    bool operator==(const InitialConfig&) const = default;
};

struct SolverConfig {
    double h = 0.02;
    double dt = 0.0;
    double T = 100.0;
    double x_max = 0.0;
    bool auto_extend = true;
    double snapshot_interval = 1.0;
    std::uint64_t max_nodes = 4u << 20;
    bool operator==(const SolverConfig&) const = default;
};

struct ClassifyConfig {
    double t_max = 400.0;
    double check_interval = 1.0;
    double alpha = 0.0;
    bool operator==(const ClassifyConfig&) const = default;
};

struct ThresholdConfig {
    double sigma_min = 1e-3;
    double sigma_max = 4.0;
    double tol = 0.0;  // 0 -> 1e-3 * (sigma_max - sigma_min)
    bool operator==(const ThresholdConfig&) const = default;
};

struct SweepConfig {
    std::vector<double> L_values;
    std::vector<double> sigma_values;
    double L1 = 0.0;  // > 0 -> separate zones with this inner radius
    bool operator==(const SweepConfig&) const = default;
};

struct EigenConfig {
    std::vector<double> L_values;
    std::vector<double> L1_values;
    double R = 40.0;
    double fd_h = 0.01;
    bool operator==(const EigenConfig&) const = default;
};

struct OutputConfig {
    std::string dir = "out";
    std::string format = "csv";  // stdout summary format: "csv" | "json"
    bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
    ReactionConfig reaction;
    ZoneConfig zone;
    InitialConfig initial;
    SolverConfig solver;
    ClassifyConfig classify;
    ThresholdConfig threshold;
    SweepConfig sweep;
    EigenConfig eigen;
    OutputConfig output;
    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& cfg);

ReactionPair make_pair(const ReactionConfig& cfg);
ProtectionZone make_zone(const ZoneConfig& cfg);
InitialData make_initial_data(const InitialConfig& cfg);
SolverParams make_solver_params(const SolverConfig& cfg);
ClassifyParams make_classify_params(const ClassifyConfig& ccfg, const SolverConfig& scfg);

}  // namespace pzlab
