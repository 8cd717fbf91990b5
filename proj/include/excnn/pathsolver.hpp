#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "excnn/grid.hpp"
#include "excnn/obstacles.hpp"
#include "excnn/reaction_curve.hpp"
#include "excnn/wavesim.hpp"

namespace excnn {

struct TimeoutPolicy {
    std::optional<double> t_p_estimate_ns;   // measured at solve start when absent
    double safety = 1.5;
    double quiescence_factor = 5.0;
};

/// One path-planning instance: obstacle template (static image or a
/// per-iteration provider for dynamic obstacles), start RC, target TC.
struct PathProblem {
    std::function<TemplateImage(int iteration)> map_provider;
    Cell start;    // RC
    Cell target;   // TC
    GridParams params;
    ReactionCurve curve = ReactionCurve::calibrated_default();
    CouplingMode coupling_mode = ThresholdMode{};
    double v_w = 1.2;
    TimeoutPolicy timeout;
    double tie_eps_factor = 0.01;   // eps_tie = factor * t_p estimate
    bool active_set = true;

    static PathProblem from_image(TemplateImage img, Cell start, Cell target,
                                  GridParams params, ReactionCurve curve);
};

struct IterationResult {
    Cell winner;
    double crossing_time_ns = 0.0;   // interpolated winner crossing
    double episode_ns = 0.0;         // simulated episode duration
    bool tie = false;                // another neighbor within eps_tie
};

enum class Outcome { Reached, NoPath, BudgetExceeded };

struct PathSolution {
    Outcome outcome = Outcome::NoPath;
    Cell start;
    Cell target;
    std::vector<Cell> path;                    // winner cells, start side first
    std::vector<IterationResult> iterations;
    int steps = 0;                             // P
    double total_time_ns = 0.0;                // sum of winner crossing times
};

/// Upper bound on a single front traversal:
///   min(connected cells, N M) * t_p * safety.
double timeout_bound(const GridParams& params, double t_p_est_ns, const CouplingMap& map,
                     double safety = 1.5);

/// Picks the watched neighbor with the smallest interpolated crossing
/// time; within eps_tie the fixed North, East, South, West order decides
/// and the tie flag is set. Returns nullopt when nothing crossed.
std::optional<IterationResult> detect_winner(const CrossingLog& log, Cell rc, double eps_tie_ns);

/// The iterative trigger-wave planner: excite the target, propagate,
/// take the reference cell's first-crossing neighbor as the next step,
/// reset, repeat until the target is reached or an episode times out.
PathSolution solve_path(const PathProblem& problem);

/// JSON rendering of a solution (outcome, path, per-iteration times).
std::string solution_json(const PathSolution& solution);

/// Template image with the path trail highlighted.
TemplateImage render_overlay(const TemplateImage& base, const PathSolution& solution);

}  // namespace excnn
