// pzlab: command-line experiments for the protection-zone reaction-diffusion
// model. Subcommands: critical, eigen, ground-state, simulate, classify,
// threshold, sweep. Exit codes: 0 ok, 2 invariant violation, 3 resource cap.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pzlab/classify.hpp"
#include "pzlab/config.hpp"
#include "pzlab/csv.hpp"
#include "pzlab/phaseplane.hpp"
#include "pzlab/reactions.hpp"
#include "pzlab/solver.hpp"
#include "pzlab/spectral.hpp"

using nlohmann::json;
using namespace pzlab;

namespace {

namespace fs = std::filesystem;

struct Cli {
    std::string config_path;
    std::string out_dir;
    int jobs = 1;
    std::string format;
};

RunConfig load(const Cli& cli) {
    RunConfig cfg = load_config(cli.config_path);
    if (!cli.out_dir.empty()) cfg.output.dir = cli.out_dir;
    if (!cli.format.empty()) cfg.output.format = cli.format;
    fs::create_directories(cfg.output.dir);
    return cfg;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

void echo(const RunConfig& cfg, const json& j, const std::string& csv) {
    if (cfg.output.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << csv;
}

std::vector<double> default_L_grid() {
    std::vector<double> v;
    for (int i = 0; i < 100; ++i) v.push_back(0.05 + (5.0 - 0.05) * i / 99.0);
    return v;
}

int cmd_critical(const Cli& cli) {
    RunConfig cfg = load(cli);
    ReactionPair pair = make_pair(cfg.reaction);
    double Ls = critical_Lstar(pair);
    double L0 = length_bound_L0(pair);
    double Lss = estimate_Lstar2(pair);
    std::vector<double> L1s = cfg.eigen.L1_values;
    if (L1s.empty()) L1s = {0.2, 1.0, 5.0};

    std::string csv = "quantity,L1,value\n";
    csv += "L_star,," + fmt(Ls) + "\n";
    csv += "L_star_star,," + fmt(Lss) + "\n";
    csv += "L0,," + fmt(L0) + "\n";
    json j = {{"L_star", Ls}, {"L_star_star", Lss}, {"L0", L0}};

    const double slack = 1e-6;
    bool ok = Ls <= Lss + slack && Lss <= L0 + slack;
    json tilde = json::array();
    for (double L1 : L1s) {
        double Lt = critical_Lstar_tilde(pair, L1);
        double Ltt = estimate_Lstar2_tilde(pair, L1);
        csv += "L_tilde_star," + fmt(L1) + "," + fmt(Lt) + "\n";
        csv += "L_tilde_star_star," + fmt(L1) + "," + fmt(Ltt) + "\n";
        tilde.push_back({{"L1", L1}, {"L_tilde_star", Lt}, {"L_tilde_star_star", Ltt}});
        ok = ok && Ls < Lt && Lt <= Ltt + slack && Ltt <= 2.0 * L0 + slack;
    }
    j["tilde"] = tilde;
    j["orderings_ok"] = ok;

    write_text(fs::path(cfg.output.dir) / "critical.csv", csv);
    write_text(fs::path(cfg.output.dir) / "critical.json", j.dump(2));
    echo(cfg, j, csv);
    if (!ok) {
        std::cerr << "critical: length orderings violated\n";
        return 2;
    }
    return 0;
}

int cmd_eigen(const Cli& cli) {
    RunConfig cfg = load(cli);
    ReactionPair pair = make_pair(cfg.reaction);

    std::vector<double> Ls = cfg.eigen.L_values;
    if (Ls.empty()) Ls = default_L_grid();

    std::string csv = "L,lambda1\n";
    for (double L : Ls) csv += fmt(L) + "," + fmt(lambda1_connected(pair, L).lambda1) + "\n";
    write_text(fs::path(cfg.output.dir) / "eigen_connected.csv", csv);

    if (!cfg.eigen.L1_values.empty()) {
        std::string scsv = "L1,L,lambda1_tilde\n";
        for (double L1 : cfg.eigen.L1_values)
            for (double L : Ls) {
                auto zone = ProtectionZone::separate(L1, L1 + L);
                scsv += fmt(L1) + "," + fmt(L) + "," +
                        fmt(lambda1_separate(pair, zone).lambda1) + "\n";
            }
        write_text(fs::path(cfg.output.dir) / "eigen_separate.csv", scsv);
    }

    ProtectionZone zone = make_zone(cfg.zone);
    EigenResult er = zone.is_separate() ? lambda1_separate(pair, zone)
                                        : lambda1_connected(pair, zone.L2);
    json j = {{"lambda1", er.lambda1}, {"theta1", er.theta1}, {"theta2", er.theta2},
              {"a", er.a},             {"L", zone.length()},  {"type", cfg.zone.type}};
    if (cfg.eigen.R > 0)
        j["lambda1_fd"] = lambda1_truncated(pair, zone, cfg.eigen.R, cfg.eigen.fd_h);
    write_text(fs::path(cfg.output.dir) / "eigen.json", j.dump(2));
    echo(cfg, j, csv);
    return 0;
}

json profile_summary(const GroundStateProfile& p) {
    json mp = json::array();
    for (const auto& m : p.match_points) mp.push_back({{"x", m.x}, {"q", m.q}, {"p", m.p}});
    return {{"kind", p.kind},
            {"peak", p.peak},
            {"value_at_origin", p.value_at0},
            {"tail_shift", p.tail_shift},
            {"x_cut", p.x_cut},
            {"residual_norm", p.residual_norm},
            {"match_points", mp}};
}

std::string profile_csv(const GroundStateProfile& p) {
    std::string csv = "x,U,piece\n";
    for (size_t i = 0; i < p.xs.size(); ++i) {
        const char* piece = "tail";
        if (p.zone.is_separate() && p.xs[i] <= p.zone.L1)
            piece = "core";
        else if (p.xs[i] <= p.zone.L2)
            piece = "zone";
        csv += fmt(p.xs[i]) + "," + fmt(p.us[i]) + "," + piece + "\n";
    }
    return csv;
}

int cmd_ground_state(const Cli& cli) {
    RunConfig cfg = load(cli);
    ReactionPair pair = make_pair(cfg.reaction);
    ProtectionZone zone = make_zone(cfg.zone);
    TailV tail = TailV::build(pair);

    json j;
    if (zone.is_separate()) {
        auto profiles = separate_ground_states(pair, zone, &tail);
        j["found"] = !profiles.empty();
        json arr = json::array();
        for (size_t i = 0; i < profiles.size(); ++i) {
            arr.push_back(profile_summary(profiles[i]));
            write_text(fs::path(cfg.output.dir) /
                           ("profile_" + std::to_string(i + 1) + ".csv"),
                       profile_csv(profiles[i]));
        }
        j["profiles"] = arr;
    } else {
        auto prof = connected_ground_state(pair, zone.L2, &tail);
        j["found"] = prof.has_value();
        if (prof) {
            j["profile"] = profile_summary(*prof);
            write_text(fs::path(cfg.output.dir) / "profile.csv", profile_csv(*prof));
        }
    }
    write_text(fs::path(cfg.output.dir) / "ground_state.json", j.dump(2));
    echo(cfg, j, j.dump(2) + "\n");
    return 0;
}

int cmd_simulate(const Cli& cli) {
    RunConfig cfg = load(cli);
    ReactionPair pair = make_pair(cfg.reaction);
    ProtectionZone zone = make_zone(cfg.zone);
    InitialData init = make_initial_data(cfg.initial);
    SolverParams sp = make_solver_params(cfg.solver);

    TrajectoryRecord rec = simulate(pair, zone, init, sp);

    std::string snaps = "t,x,u\n";
    for (const auto& s : rec.snapshots)
        for (size_t i = 0; i < s.u.size(); ++i)
            snaps += fmt(s.t) + "," + fmt(s.x_left + s.h * double(i)) + "," + fmt(s.u[i]) +
                     "\n";
    write_text(fs::path(cfg.output.dir) / "snapshots.csv", snaps);

    std::string ts = "t,sup_norm,front_position\n";
    for (size_t i = 0; i < rec.times.size(); ++i)
        ts += fmt(rec.times[i]) + "," + fmt(rec.sup_norms[i]) + "," +
              fmt(rec.front_positions[i]) + "\n";
    write_text(fs::path(cfg.output.dir) / "timeseries.csv", ts);

    json j = {{"final_time", rec.final_state.t},
              {"final_sup_norm", rec.sup_norms.back()},
              {"resource_capped", rec.resource_capped},
              {"effective_L1", rec.effective_zone.L1},
              {"effective_L2", rec.effective_zone.L2},
              {"config", json::parse(emit_config(cfg))}};
    write_text(fs::path(cfg.output.dir) / "summary.json", j.dump(2));
    echo(cfg, j, ts);
    return rec.resource_capped ? 3 : 0;
}

json report_to_json(const ClassificationReport& rep) {
    return {{"outcome", to_string(rep.outcome)},
            {"certificate",
             {{"kind", rep.certificate.kind},
              {"delta", rep.certificate.delta},
              {"alpha", rep.certificate.alpha},
              {"r", rep.certificate.r},
              {"t", rep.certificate.t}}},
            {"T_reached", rep.T_reached},
            {"lambda1", rep.lambda1},
            {"distance_to_ground_state", rep.distance_to_ground_state},
            {"effective_L1", rep.effective_zone.L1},
            {"effective_L2", rep.effective_zone.L2}};
}

int cmd_classify(const Cli& cli) {
    RunConfig cfg = load(cli);
    ReactionPair pair = make_pair(cfg.reaction);
    ProtectionZone zone = make_zone(cfg.zone);
    InitialData init = make_initial_data(cfg.initial);
    ClassifyParams cp = make_classify_params(cfg.classify, cfg.solver);

    ClassificationReport rep = classify(pair, zone, init, cp);
    json j = report_to_json(rep);
    write_text(fs::path(cfg.output.dir) / "classification.json", j.dump(2));
    echo(cfg, j, j.dump(2) + "\n");
    return 0;
}

json threshold_to_json(const ThresholdReport& r) {
    json trace = json::array();
    for (const auto& [sigma, o] : r.trace)
        trace.push_back({{"sigma", sigma}, {"outcome", to_string(o)}});
    return {{"sigma_low", r.sigma_low},   {"sigma_high", r.sigma_high},
            {"iterations", r.iterations}, {"degenerate", r.degenerate},
            {"note", r.note},             {"trace", trace}};
}

int cmd_threshold(const Cli& cli) {
    RunConfig cfg = load(cli);
    ReactionPair pair = make_pair(cfg.reaction);
    ProtectionZone zone = make_zone(cfg.zone);
    InitialData init = make_initial_data(cfg.initial);
    ClassifyParams cp = make_classify_params(cfg.classify, cfg.solver);
    double tol = cfg.threshold.tol > 0
                     ? cfg.threshold.tol
                     : 1e-3 * (cfg.threshold.sigma_max - cfg.threshold.sigma_min);

    ThresholdPair tp = threshold_bisect(pair, zone, init.shape, init.hbar,
                                        cfg.threshold.sigma_min, cfg.threshold.sigma_max,
                                        tol, cp);
    json j = {{"sigma_star", threshold_to_json(tp.vanishing)},
              {"sigma_star_star", threshold_to_json(tp.spreading)},
              {"monotone_ok", tp.monotone_ok}};
    write_text(fs::path(cfg.output.dir) / "threshold.json", j.dump(2));
    echo(cfg, j, j.dump(2) + "\n");
    if (!tp.monotone_ok) {
        std::cerr << "threshold: outcomes are not monotone in sigma\n";
        return 2;
    }
    return 0;
}

int cmd_sweep(const Cli& cli) {
    RunConfig cfg = load(cli);
    ReactionPair pair = make_pair(cfg.reaction);
    InitialData init = make_initial_data(cfg.initial);
    ClassifyParams cp = make_classify_params(cfg.classify, cfg.solver);

    std::vector<double> Ls = cfg.sweep.L_values;
    std::vector<double> sigmas = cfg.sweep.sigma_values;
    if (Ls.empty() || sigmas.empty()) {
        std::cerr << "sweep: sweep.L_values and sweep.sigma_values are required\n";
        return 1;
    }
    struct Cell {
        double L, sigma;
        ClassificationReport rep;
    };
    std::vector<Cell> cells;
    for (double L : Ls)
        for (double s : sigmas) cells.push_back({L, s, {}});

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            ProtectionZone zone =
                cfg.sweep.L1 > 0
                    ? ProtectionZone::separate(cfg.sweep.L1, cfg.sweep.L1 + cells[i].L)
                    : ProtectionZone::connected(cells[i].L);
            InitialData d = init;
            d.sigma = cells[i].sigma;
            cells[i].rep = classify(pair, zone, d, cp);
        }
    };
    int jobs = std::max(1, cli.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::string csv = cfg.sweep.L1 > 0 ? "L1,L2,sigma,outcome,certificate,T_exit\n"
                                       : "L,sigma,outcome,certificate,T_exit\n";
    bool monotone_ok = true;
    for (double L : Ls) {
        double lowest_spread = std::numeric_limits<double>::infinity();
        double highest_vanish = 0;
        for (const auto& c : cells) {
            if (c.L != L) continue;
            if (c.rep.outcome == Outcome::Spreading)
                lowest_spread = std::min(lowest_spread, c.sigma);
            if (c.rep.outcome == Outcome::Vanishing)
                highest_vanish = std::max(highest_vanish, c.sigma);
        }
        if (highest_vanish > lowest_spread) monotone_ok = false;
    }
    for (const auto& c : cells) {
        if (cfg.sweep.L1 > 0)
            csv += fmt(cfg.sweep.L1) + "," + fmt(cfg.sweep.L1 + c.L);
        else
            csv += fmt(c.L);
        csv += "," + fmt(c.sigma) + "," + to_string(c.rep.outcome) + "," +
               c.rep.certificate.kind + "," + fmt(c.rep.T_reached) + "\n";
    }
    write_text(fs::path(cfg.output.dir) / "sweep.csv", csv);
    json j = {{"cells", cells.size()}, {"monotone_ok", monotone_ok}};
    write_text(fs::path(cfg.output.dir) / "sweep.json", j.dump(2));
    echo(cfg, j, csv);
    if (!monotone_ok) {
        std::cerr << "sweep: outcomes are not monotone in sigma at fixed L\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"protection-zone reaction-diffusion laboratory"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("--config", cli.config_path, "JSON config path")->required();
    app.add_option("--out", cli.out_dir, "output directory (overrides config)");
    app.add_option("--jobs", cli.jobs, "worker threads for sweeps");
    app.add_option("--format", cli.format, "stdout format: csv|json");

    auto* critical = app.add_subcommand("critical", "critical lengths and bounds");
    auto* eigen = app.add_subcommand("eigen", "principal eigenvalue tables");
    auto* ground = app.add_subcommand("ground-state", "stationary profile construction");
    auto* simulate = app.add_subcommand("simulate", "time integration");
    auto* classify = app.add_subcommand("classify", "single-run outcome classification");
    auto* threshold = app.add_subcommand("threshold", "amplitude threshold bisection");
    auto* sweep = app.add_subcommand("sweep", "phase-diagram sweep over (L, sigma)");
    for (auto* sub : {critical, eigen, ground, simulate, classify, threshold, sweep})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (critical->parsed()) return cmd_critical(cli);
        if (eigen->parsed()) return cmd_eigen(cli);
        if (ground->parsed()) return cmd_ground_state(cli);
        if (simulate->parsed()) return cmd_simulate(cli);
        if (classify->parsed()) return cmd_classify(cli);
        if (threshold->parsed()) return cmd_threshold(cli);
        if (sweep->parsed()) return cmd_sweep(cli);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
