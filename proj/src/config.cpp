#include "pzlab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pzlab {

using nlohmann::json;

namespace {

json to_json(const RunConfig& c) {
    json j;
    j["reaction"] = {{"kind", c.reaction.kind}, {"theta", c.reaction.theta},
                     {"table", c.reaction.table}};
    j["zone"] = {{"type", c.zone.type}, {"L", c.zone.L}, {"L1", c.zone.L1},
                 {"L2", c.zone.L2}};
    j["initial"] = {{"shape", c.initial.shape}, {"sigma", c.initial.sigma},
                    {"hbar", c.initial.hbar}, {"table", c.initial.table}};
    j["solver"] = {{"h", c.solver.h},
                   {"dt", c.solver.dt},
                   {"T", c.solver.T},
                   {"x_max", c.solver.x_max},
                   {"auto_extend", c.solver.auto_extend},
                   {"snapshot_interval", c.solver.snapshot_interval},
                   {"max_nodes", c.solver.max_nodes}};
    j["classify"] = {{"t_max", c.classify.t_max},
                     {"check_interval", c.classify.check_interval},
                     {"alpha", c.classify.alpha}};
    j["threshold"] = {{"sigma_min", c.threshold.sigma_min},
                      {"sigma_max", c.threshold.sigma_max},
                      {"tol", c.threshold.tol}};
    j["sweep"] = {{"L_values", c.sweep.L_values}, {"sigma_values", c.sweep.sigma_values},
                  {"L1", c.sweep.L1}};
    j["eigen"] = {{"L_values", c.eigen.L_values}, {"L1_values", c.eigen.L1_values},
                  {"R", c.eigen.R}, {"fd_h", c.eigen.fd_h}};
    j["output"] = {{"dir", c.output.dir}, {"format", c.output.format}};
    return j;
}

template <class T>
void get_to_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) j.at(key).get_to(out);
}

RunConfig from_json(const json& j) {
    RunConfig c;
    if (j.contains("reaction")) {
        const auto& r = j.at("reaction");
        get_to_if(r, "kind", c.reaction.kind);
        get_to_if(r, "theta", c.reaction.theta);
        get_to_if(r, "table", c.reaction.table);
    }
    if (j.contains("zone")) {
        const auto& z = j.at("zone");
        get_to_if(z, "type", c.zone.type);
        get_to_if(z, "L", c.zone.L);
        get_to_if(z, "L1", c.zone.L1);
        get_to_if(z, "L2", c.zone.L2);
    }
    if (j.contains("initial")) {
        const auto& z = j.at("initial");
        get_to_if(z, "shape", c.initial.shape);
        get_to_if(z, "sigma", c.initial.sigma);
        get_to_if(z, "hbar", c.initial.hbar);
        get_to_if(z, "table", c.initial.table);
    }
    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        get_to_if(s, "h", c.solver.h);
        get_to_if(s, "dt", c.solver.dt);
        get_to_if(s, "T", c.solver.T);
        get_to_if(s, "x_max", c.solver.x_max);
        get_to_if(s, "auto_extend", c.solver.auto_extend);
        get_to_if(s, "snapshot_interval", c.solver.snapshot_interval);
        get_to_if(s, "max_nodes", c.solver.max_nodes);
    }
    if (j.contains("classify")) {
        const auto& s = j.at("classify");
        get_to_if(s, "t_max", c.classify.t_max);
        get_to_if(s, "check_interval", c.classify.check_interval);
        get_to_if(s, "alpha", c.classify.alpha);
    }
    if (j.contains("threshold")) {
        const auto& s = j.at("threshold");
        get_to_if(s, "sigma_min", c.threshold.sigma_min);
        get_to_if(s, "sigma_max", c.threshold.sigma_max);
        get_to_if(s, "tol", c.threshold.tol);
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        get_to_if(s, "L_values", c.sweep.L_values);
        get_to_if(s, "sigma_values", c.sweep.sigma_values);
        get_to_if(s, "L1", c.sweep.L1);
    }
    if (j.contains("eigen")) {
        const auto& s = j.at("eigen");
        get_to_if(s, "L_values", c.eigen.L_values);
        get_to_if(s, "L1_values", c.eigen.L1_values);
        get_to_if(s, "R", c.eigen.R);
        get_to_if(s, "fd_h", c.eigen.fd_h);
    }
    if (j.contains("output")) {
        const auto& s = j.at("output");
        get_to_if(s, "dir", c.output.dir);
        get_to_if(s, "format", c.output.format);
    }
    return c;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    return from_json(json::parse(json_text));
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const RunConfig& cfg) { return to_json(cfg).dump(2); }

ReactionPair make_pair(const ReactionConfig& cfg) {
    if (cfg.kind == "cubic") return ReactionPair::cubic(cfg.theta);
    if (cfg.kind == "tabulated") return ReactionPair::tabulated(cfg.theta, cfg.table);
    throw std::invalid_argument("reaction.kind must be \"cubic\" or \"tabulated\"");
}

ProtectionZone make_zone(const ZoneConfig& cfg) {
    if (cfg.type == "connected") return ProtectionZone::connected(cfg.L);
    if (cfg.type == "separate") return ProtectionZone::separate(cfg.L1, cfg.L2);
    throw std::invalid_argument("zone.type must be \"connected\" or \"separate\"");
}

InitialData make_initial_data(const InitialConfig& cfg) {
    InitialData d;
    if (cfg.shape == "rectangle")
        d.shape = InitialData::Shape::rectangle;
    else if (cfg.shape == "tent")
        d.shape = InitialData::Shape::tent;
    else if (cfg.shape == "table")
        d.shape = InitialData::Shape::table;
    else
        throw std::invalid_argument("initial.shape must be rectangle|tent|table");
    d.sigma = cfg.sigma;
    d.hbar = cfg.hbar;
    d.table = cfg.table;
    if (d.sigma < 0) throw std::domain_error("initial.sigma must be nonnegative");
    return d;
}

SolverParams make_solver_params(const SolverConfig& cfg) {
    SolverParams p;
    p.h = cfg.h;
    p.dt = cfg.dt;
    p.T = cfg.T;
    p.x_max = cfg.x_max;
    p.auto_extend = cfg.auto_extend;
    p.snapshot_interval = cfg.snapshot_interval;
    p.max_nodes = cfg.max_nodes;
    return p;
}

ClassifyParams make_classify_params(const ClassifyConfig& ccfg, const SolverConfig& scfg) {
    ClassifyParams p;
    p.T_max = ccfg.t_max;
    p.check_interval = ccfg.check_interval;
    p.alpha = ccfg.alpha;
    p.solver = make_solver_params(scfg);
    return p;
}

}  // namespace pzlab
