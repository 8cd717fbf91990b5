#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "excnn/analytics.hpp"
#include "excnn/calibrate.hpp"
#include "excnn/config.hpp"
#include "excnn/errors.hpp"
#include "excnn/pathsolver.hpp"
#include "excnn/pgm.hpp"
#include "excnn/wavesim.hpp"

namespace fs = std::filesystem;
using namespace excnn;

namespace {

// Exit codes shared with the acceptance scripts.
constexpr int kOk = 0;
constexpr int kNoPath = 2;
constexpr int kBudgetExceeded = 3;
constexpr int kConfigError = 4;
constexpr int kNumericalFailure = 5;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;

    void attach(CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "config file (key = value with sections)");
        cmd->add_option("--set", overrides, "override, e.g. --set grid.i_b=22")
            ->take_all();
    }
    RunConfig load() const { return RunConfig::from_file(config_path, overrides); }
};

int run_calibrate(const CommonOpts& common, double target_tp, std::string out_path) {
    RunConfig cfg = common.load();
    CalibrationResult res = calibrate_slope(target_tp, cfg.params, cfg.v_w,
                                            cfg.curve.anchor_low(), cfg.curve.anchor_mid(),
                                            cfg.curve.anchor_high());
    if (out_path.empty()) out_path = (fs::path(cfg.output_dir) / "curve.txt").string();
    fs::create_directories(fs::path(out_path).parent_path().empty()
                               ? "."
                               : fs::path(out_path).parent_path().string());
    save_curve_file(res.curve, out_path);
    std::cout << "calibrated slope a = " << res.curve.slope() << " uA/V^3\n"
              << "achieved t_p = " << res.achieved_tp_ns << " ns (target " << target_tp
              << " ns)\n"
              << "curve written to " << out_path << "\n";
    return kOk;
}

int run_speed(const CommonOpts& common, std::vector<double> biases, const std::string& out_path) {
    RunConfig cfg = common.load();
    if (biases.empty()) biases = {18, 19, 20, 21, 22, 23};
    auto rows = sweep_bias(biases, cfg.params, cfg.curve, cfg.v_w);
    std::string csv = sweep_csv(rows);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << csv;
    }
    std::cout << csv;

    bool monotone = true;
    const SpeedMeasurement* prev = nullptr;
    for (const auto& r : rows) {
        if (!r.measurement) continue;
        if (prev && !(r.measurement->t_p < prev->t_p)) monotone = false;
        prev = &*r.measurement;
    }
    std::cout << "# t_p monotone decreasing: " << (monotone ? "yes" : "NO") << "\n";
    return kOk;
}

int run_solve(const CommonOpts& common) {
    RunConfig cfg = common.load();
    TemplateImage img = cfg.obstacle_image();
    if (img.rows != cfg.params.rows || img.cols != cfg.params.cols) {
        // Template decides the grid dimensions when they disagree.
        cfg.params.rows = img.rows;
        cfg.params.cols = img.cols;
    }

    PathProblem problem = PathProblem::from_image(img, cfg.rc, cfg.tc, cfg.params, cfg.curve);
    problem.coupling_mode = cfg.coupling_mode;
    problem.v_w = cfg.v_w;

    fs::create_directories(cfg.output_dir);
    PathSolution sol = solve_path(problem);

    std::ofstream(fs::path(cfg.output_dir) / "solution.json") << solution_json(sol) << "\n";
    save_pgm(render_overlay(img, sol), (fs::path(cfg.output_dir) / "overlay.pgm").string());

    if (cfg.frame_interval_ns > 0.0) {
        // Re-run the final wave with frame dumps for visualization.
        StableStates st = stable_states(cfg.curve, cfg.params.i_b);
        GridState state = uniform_init(cfg.params, st);
        excite(state, cfg.tc, st);
        CouplingMap map = build_coupling(img, cfg.params, cfg.coupling_mode);
        EpisodeOptions opt;
        opt.time_budget_ns = timeout_bound(cfg.params, 17.0, map);
        opt.quiescence_window_ns = 100.0;
        opt.frame_interval_ns = cfg.frame_interval_ns;
        int frame = 0;
        opt.frame_sink = [&](const GridState& s) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%04d.pgm", frame++);
            save_pgm(render_state(s), (fs::path(cfg.output_dir) / name).string());
        };
        run_wave(std::move(state), map, cfg.params, cfg.curve, cfg.v_w, opt);
    }

    switch (sol.outcome) {
        case Outcome::Reached:
            std::cout << "reached in P = " << sol.steps << " steps, total simulated time "
                      << sol.total_time_ns << " ns\n";
            return kOk;
        case Outcome::NoPath:
            std::cout << "no path\n";
            return kNoPath;
        case Outcome::BudgetExceeded:
            std::cout << "budget exceeded\n";
            return kBudgetExceeded;
    }
    return kNumericalFailure;
}

int run_predict(int steps, int rows, int cols, double tp) {
    if (steps >= 0) {
        double ts = predict_solution_time(steps, tp);
        std::cout << "T_s = " << ts << " ns = " << ts / 1000.0 << " us\n";
    }
    if (rows > 0 && cols > 0) {
        double ts = worst_case_time(rows, cols, tp);
        std::cout << "T_s,max = " << ts << " ns = " << ts / 1e6 << " ms\n";
    }
    return kOk;
}

int run_fixture(const std::string& kind, int rows, int cols, std::uint32_t seed,
                const std::string& out_path) {
    FixtureKind k;
    if (kind == "room") k = FixtureKind::Room;
    else if (kind == "maze") k = FixtureKind::Maze;
    else if (kind == "corridor") k = FixtureKind::Corridor;
    else if (kind == "sealed") k = FixtureKind::Sealed;
    else throw ConfigError("unknown fixture kind: " + kind);
    save_pgm(make_fixture(k, rows, cols, seed), out_path);
    std::cout << "wrote " << out_path << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Excitable-CNN trigger-wave path solver"};
    app.require_subcommand(1);

    CommonOpts common;

    auto* cal = app.add_subcommand("calibrate", "calibrate the cubic slope to a target t_p");
    common.attach(cal);
    double target_tp = 16.92;
    std::string cal_out;
    cal->add_option("--target", target_tp, "target t_p in ns");
    cal->add_option("-o,--out", cal_out, "output curve file");

    auto* speed = app.add_subcommand("speed", "bias sweep CSV");
    common.attach(speed);
    std::vector<double> biases;
    std::string speed_out;
    speed->add_option("--bias", biases, "bias current(s), uA")->take_all();
    speed->add_option("-o,--out", speed_out, "output CSV path");

    auto* solve = app.add_subcommand("solve", "iterative trigger-wave path solve");
    common.attach(solve);

    auto* predict = app.add_subcommand("predict", "closed-form solution-time predictions");
    int p_steps = -1, p_rows = 0, p_cols = 0;
    double p_tp = 16.92;
    predict->add_option("--steps", p_steps, "path length P");
    predict->add_option("--rows", p_rows, "array rows N");
    predict->add_option("--cols", p_cols, "array cols M");
    predict->add_option("--tp", p_tp, "t_p in ns");

    auto* fixture = app.add_subcommand("fixture", "write a procedural obstacle PGM");
    std::string f_kind = "maze", f_out = "fixture.pgm";
    int f_rows = 41, f_cols = 41;
    std::uint32_t f_seed = 0;
    fixture->add_option("--kind", f_kind, "room|maze|corridor|sealed");
    fixture->add_option("--rows", f_rows);
    fixture->add_option("--cols", f_cols);
    fixture->add_option("--seed", f_seed);
    fixture->add_option("-o,--out", f_out, "output PGM path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cal->parsed()) return run_calibrate(common, target_tp, cal_out);
        if (speed->parsed()) return run_speed(common, biases, speed_out);
        if (solve->parsed()) return run_solve(common);
        if (predict->parsed()) {
            if (p_steps < 0 && (p_rows <= 0 || p_cols <= 0))
                throw ConfigError("predict needs --steps or --rows/--cols");
            if (p_tp < 0.0) throw ConfigError("t_p must be non-negative");
            return run_predict(p_steps, p_rows, p_cols, p_tp);
        }
        if (fixture->parsed()) return run_fixture(f_kind, f_rows, f_cols, f_seed, f_out);
    } catch (const CalibrationError& e) {
        std::cerr << "calibration failed: " << e.what() << "\n";
        for (const auto& [a, tp] : e.trace)
            std::cerr << "  a = " << a << " -> t_p = " << tp << " ns\n";
        return kNumericalFailure;
    } catch (const MeasurementError& e) {
        std::cerr << "measurement failed: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const DivergenceError& e) {
        std::cerr << "integrator diverged: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kConfigError;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    return kOk;
}
