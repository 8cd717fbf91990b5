#include "excnn/analytics.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

#include "excnn/pathsolver.hpp"

namespace excnn {

ObstacleGraph::ObstacleGraph(const CouplingMap& map) : rows_(map.rows()), cols_(map.cols()) {
    h_.resize(static_cast<std::size_t>(rows_) * std::max(cols_ - 1, 0));
    v_.resize(static_cast<std::size_t>(std::max(rows_ - 1, 0)) * cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j + 1 < cols_; ++j)
            h_[static_cast<std::size_t>(i) * (cols_ - 1) + j] = map.horizontal(i, j) > 0.0;
    for (int i = 0; i + 1 < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            v_[static_cast<std::size_t>(i) * cols_ + j] = map.vertical(i, j) > 0.0;
}

bool ObstacleGraph::edge(Cell a, Cell b) const {
    if (a.row == b.row && std::abs(a.col - b.col) == 1)
        return h_[static_cast<std::size_t>(a.row) * (cols_ - 1) + std::min(a.col, b.col)];
    if (a.col == b.col && std::abs(a.row - b.row) == 1)
        return v_[static_cast<std::size_t>(std::min(a.row, b.row)) * cols_ + a.col];
    return false;
}

std::optional<int> ObstacleGraph::bfs_shortest(Cell from, Cell to) const {
    auto ok = [&](Cell c) { return c.row >= 0 && c.row < rows_ && c.col >= 0 && c.col < cols_; };
    if (!ok(from) || !ok(to)) throw StructuralError("bfs: cell out of range");
    if (from == to) return 0;

    std::vector<int> dist(static_cast<std::size_t>(rows_) * cols_, -1);
    auto id = [&](Cell c) { return static_cast<std::size_t>(c.row) * cols_ + c.col; };
    std::deque<Cell> queue{from};
    dist[id(from)] = 0;
    const int dr[4] = {-1, 0, 1, 0}, dc[4] = {0, 1, 0, -1};
    while (!queue.empty()) {
        Cell c = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k) {
            Cell n{c.row + dr[k], c.col + dc[k]};
            if (!ok(n) || dist[id(n)] >= 0 || !edge(c, n)) continue;
            dist[id(n)] = dist[id(c)] + 1;
            if (n == to) return dist[id(n)];
            queue.push_back(n);
        }
    }
    return std::nullopt;
}

int ObstacleGraph::connected_cell_count() const {
    int count = 0;
    const int dr[4] = {-1, 0, 1, 0}, dc[4] = {0, 1, 0, -1};
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            for (int k = 0; k < 4; ++k) {
                Cell n{i + dr[k], j + dc[k]};
                if (n.row < 0 || n.row >= rows_ || n.col < 0 || n.col >= cols_) continue;
                if (edge({i, j}, n)) {
                    ++count;
                    break;
                }
            }
        }
    }
    return count;
}

double predict_solution_time(int path_steps, double t_p_ns) {
    if (path_steps < 0) throw ConfigError("path length must be non-negative");
    return static_cast<double>(path_steps) * (path_steps - 1) * t_p_ns / 2.0;
}

double worst_case_time(int rows, int cols, double t_p_ns) {
    if (rows < 1 || cols < 1) throw ConfigError("array dimensions must be >= 1");
    const double nm = static_cast<double>(rows) * cols;
    return nm * (nm / 2.0 - 1.0) * t_p_ns / 4.0;
}

PathReport compare_path(const PathSolution& solution, const ObstacleGraph& graph) {
    PathReport rep;
    rep.solver_steps = solution.steps;
    rep.oracle_distance = graph.bfs_shortest(solution.start, solution.target);

    const bool solver_found = solution.outcome == Outcome::Reached;
    rep.no_path_agreement = solver_found == rep.oracle_distance.has_value();
    rep.lengths_equal =
        solver_found && rep.oracle_distance && *rep.oracle_distance == solution.steps;

    rep.legal = true;
    rep.progress_ok = true;
    Cell prev = solution.start;
    for (const Cell& c : solution.path) {
        if (!graph.edge(prev, c)) rep.legal = false;
        prev = c;
    }
    if (solver_found && rep.oracle_distance) {
        // Each winner must cut the remaining BFS distance by exactly 1.
        int expect = *rep.oracle_distance;
        for (const Cell& c : solution.path) {
            --expect;
            auto d = graph.bfs_shortest(c, solution.target);
            if (!d || *d != expect) {
                rep.progress_ok = false;
                break;
            }
        }
    } else {
        rep.progress_ok = solution.path.empty();
    }
    return rep;
}

std::string PathReport::summary() const {
    std::ostringstream os;
    os << "solver P = " << solver_steps << ", oracle = "
       << (oracle_distance ? std::to_string(*oracle_distance) : std::string("unreachable"))
       << ", lengths " << (lengths_equal ? "equal" : "differ") << ", path "
       << (legal ? "legal" : "ILLEGAL") << ", progress "
       << (progress_ok ? "ok" : "BROKEN") << ", no-path agreement "
       << (no_path_agreement ? "ok" : "MISMATCH");
    return os.str();
}

std::string PathReport::csv_row() const {
    std::ostringstream os;
    os << solver_steps << ","
       << (oracle_distance ? std::to_string(*oracle_distance) : std::string()) << ","
       << lengths_equal << "," << legal << "," << progress_ok << "," << no_path_agreement;
    return os.str();
}

}  // namespace excnn
