#include "excnn/pathsolver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "excnn/analytics.hpp"
#include "excnn/lattice.hpp"

#include "json.hpp"

namespace excnn {

PathProblem PathProblem::from_image(TemplateImage img, Cell start, Cell target,
                                    GridParams params, ReactionCurve curve) {
    PathProblem p;
    auto shared = std::make_shared<TemplateImage>(std::move(img));
    p.map_provider = [shared](int) { return *shared; };
    p.start = start;
    p.target = target;
    p.params = std::move(params);
    p.curve = std::move(curve);
    return p;
}

double timeout_bound(const GridParams& params, double t_p_est_ns, const CouplingMap& map,
                     double safety) {
    if (!(t_p_est_ns > 0.0)) throw ConfigError("t_p estimate must be positive");
    const int total = params.rows * params.cols;
    const int connected = ObstacleGraph(map).connected_cell_count();
    return std::min(connected, total) * t_p_est_ns * safety;
}

namespace {

// Fixed North, East, South, West probe order; doubles as the tie-break.
constexpr int kNeighborDr[4] = {-1, 0, 1, 0};
constexpr int kNeighborDc[4] = {0, 1, 0, -1};

}  // namespace

std::optional<IterationResult> detect_winner(const CrossingLog& log, Cell rc, double eps_tie_ns) {
    std::vector<std::pair<Cell, double>> crossed;
    for (int k = 0; k < 4; ++k) {
        int i = rc.row + kNeighborDr[k], j = rc.col + kNeighborDc[k];
        if (i < 0 || i >= log.rows || j < 0 || j >= log.cols) continue;
        if (!log.crossed(i, j)) continue;
        crossed.emplace_back(Cell{i, j}, log.time(i, j));
    }
    if (crossed.empty()) return std::nullopt;

    double t_min = crossed.front().second;
    for (const auto& [c, t] : crossed) t_min = std::min(t_min, t);

    // Within the tie window the N-E-S-W probe order decides.
    IterationResult res;
    int within = 0;
    for (const auto& [c, t] : crossed) {
        if (t <= t_min + eps_tie_ns) {
            if (within == 0) {
                res.winner = c;
                res.crossing_time_ns = t;
            }
            ++within;
        }
    }
    res.tie = within > 1;
    return res;
}

PathSolution solve_path(const PathProblem& problem) {
    const GridParams& params = problem.params;
    params.validate();

    StableStates st = stable_states(problem.curve, params.i_b);
    if (!st.excitable)
        throw ConfigError("network is not excitable at I_B = " + std::to_string(params.i_b));
    if (!(problem.v_w > st.v_low && problem.v_w < st.v_high))
        throw ConfigError("V_w must lie strictly between V_L and V_H");

    auto in_range = [&](Cell c) {
        return c.row >= 0 && c.row < params.rows && c.col >= 0 && c.col < params.cols;
    };
    if (!in_range(problem.start) || !in_range(problem.target))
        throw StructuralError("start/target cell out of range");

    double t_p = problem.timeout.t_p_estimate_ns.value_or(0.0);
    if (!(t_p > 0.0)) t_p = measure_tp(params, problem.curve, problem.v_w).t_p;
    const double eps_tie = problem.tie_eps_factor * t_p;

    PathSolution sol;
    sol.start = problem.start;
    sol.target = problem.target;
    sol.outcome = Outcome::BudgetExceeded;

    Cell rc = problem.start;
    const int iteration_cap = params.rows * params.cols;

    for (int iter = 0; iter < iteration_cap; ++iter) {
        if (rc == problem.target) {
            sol.outcome = Outcome::Reached;
            break;
        }

        TemplateImage img = problem.map_provider(iter);
        CouplingMap map = build_coupling(img, params, problem.coupling_mode);

        GridState state = uniform_init(params, st);
        excite(state, problem.target, st);

        EpisodeOptions opt;
        opt.clamped = {problem.target};
        for (int k = 0; k < 4; ++k) {
            Cell nb{rc.row + kNeighborDr[k], rc.col + kNeighborDc[k]};
            if (in_range(nb)) opt.watched.push_back(nb);
        }
        opt.time_budget_ns = timeout_bound(params, t_p, map, problem.timeout.safety);
        opt.quiescence_window_ns = problem.timeout.quiescence_factor * t_p;
        opt.linger_ns = eps_tie;
        opt.active_set = problem.active_set;
        opt.active_rest_v = st.v_low;

        EpisodeResult res = run_wave(std::move(state), map, params, problem.curve,
                                     problem.v_w, opt);

        auto winner = detect_winner(res.log, rc, eps_tie);
        if (!winner) {
            sol.outcome = Outcome::NoPath;
            break;
        }
        winner->episode_ns = res.duration_ns;
        sol.total_time_ns += winner->crossing_time_ns;
        sol.iterations.push_back(*winner);
        sol.path.push_back(winner->winner);
        rc = winner->winner;   // reset happens via uniform_init next iteration
    }

    if (!sol.path.empty() && sol.path.back() == problem.target) sol.outcome = Outcome::Reached;
    sol.steps = static_cast<int>(sol.path.size());
    return sol;
}

std::string solution_json(const PathSolution& solution) {
    nlohmann::json j;
    switch (solution.outcome) {
        case Outcome::Reached: j["outcome"] = "reached"; break;
        case Outcome::NoPath: j["outcome"] = "no-path"; break;
        case Outcome::BudgetExceeded: j["outcome"] = "budget-exceeded"; break;
    }
    j["start"] = {solution.start.row, solution.start.col};
    j["target"] = {solution.target.row, solution.target.col};
    j["steps"] = solution.steps;
    j["total_time_ns"] = solution.total_time_ns;
    j["path"] = nlohmann::json::array();
    for (const Cell& c : solution.path) j["path"].push_back({c.row, c.col});
    j["iterations"] = nlohmann::json::array();
    for (const IterationResult& it : solution.iterations) {
        j["iterations"].push_back({{"winner", {it.winner.row, it.winner.col}},
                                   {"crossing_time_ns", it.crossing_time_ns},
                                   {"episode_ns", it.episode_ns},
                                   {"tie", it.tie}});
    }
    return j.dump(2);
}

TemplateImage render_overlay(const TemplateImage& base, const PathSolution& solution) {
    TemplateImage img = base;
    auto mark = [&](Cell c, std::uint8_t val) {
        if (c.row >= 0 && c.row < img.rows && c.col >= 0 && c.col < img.cols)
            img.at(c.row, c.col) = val;
    };
    for (const Cell& c : solution.path) mark(c, 128);
    mark(solution.start, 64);
    mark(solution.target, 192);
    return img;
}

}  // namespace excnn
