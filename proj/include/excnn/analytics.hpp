#pragma once

#include <optional>
#include <string>
#include <vector>

#include "excnn/grid.hpp"

namespace excnn {

struct PathSolution;

/// 4-neighborhood adjacency derived from a CouplingMap: an edge is
/// present iff its conductance is nonzero. Verification oracle for the
/// wave solver, kept independent of the simulation path.
class ObstacleGraph {
public:
    explicit ObstacleGraph(const CouplingMap& map);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool edge(Cell a, Cell b) const;

    /// BFS distance in steps; nullopt when unreachable.
    std::optional<int> bfs_shortest(Cell from, Cell to) const;

    /// Cells with at least one incident edge (able to carry a front).
    int connected_cell_count() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<bool> h_;   // edge (i,j)-(i,j+1)
    std::vector<bool> v_;   // edge (i,j)-(i+1,j)
};

/// Predicted total solution time for a P-step path: P (P-1) t_p / 2, ns.
double predict_solution_time(int path_steps, double t_p_ns);

/// Worst-case bound (N M)((N M)/2 - 1) t_p / 4, ns, from the maximum
/// path length P_max = (N M)/2.
double worst_case_time(int rows, int cols, double t_p_ns);

struct PathReport {
    int solver_steps = 0;
    std::optional<int> oracle_distance;
    bool lengths_equal = false;
    bool legal = false;                 // every consecutive pair shares a live edge
    bool progress_ok = false;           // BFS distance to target drops by 1 per step
    bool no_path_agreement = false;     // solver no-path iff oracle unreachable
    std::string summary() const;
    std::string csv_row() const;
};

PathReport compare_path(const PathSolution& solution, const ObstacleGraph& graph);

}  // namespace excnn
