#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "excnn/errors.hpp"

namespace excnn {

/// Physical lattice constants. Units: uS, fF, uA, ns. Under this system
/// I/C and G*v/C both come out in V/ns, so the clock is natively ns.
struct GridParams {
    int rows = 80;
    int cols = 80;
    double g_nominal = 25.0;   // uS
    double c_i = 500.0;        // fF
    double i_b = 21.0;         // uA
    double dt = 0.05;          // ns

    void validate() const {
        if (rows < 1 || cols < 1) throw ConfigError("grid dimensions must be >= 1");
        if (g_nominal <= 0.0) throw ConfigError("G must be positive");
        if (c_i <= 0.0) throw ConfigError("C_I must be positive");
        if (dt <= 0.0) throw ConfigError("dt must be positive");
    }
};

/// One conductance per undirected lattice edge, uS. Horizontal edges sit
/// between (i,j) and (i,j+1), vertical between (i,j) and (i+1,j).
class CouplingMap {
public:
    CouplingMap() = default;
    CouplingMap(int rows, int cols, double g)
        : rows_(rows), cols_(cols),
          h_(static_cast<std::size_t>(rows) * std::max(cols - 1, 0), g),
          v_(static_cast<std::size_t>(std::max(rows - 1, 0)) * cols, g) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double horizontal(int i, int j) const { return h_[static_cast<std::size_t>(i) * (cols_ - 1) + j]; }
    double vertical(int i, int j) const { return v_[static_cast<std::size_t>(i) * cols_ + j]; }
    void set_horizontal(int i, int j, double g) { h_[static_cast<std::size_t>(i) * (cols_ - 1) + j] = g; }
    void set_vertical(int i, int j, double g) { v_[static_cast<std::size_t>(i) * cols_ + j] = g; }

    bool matches(const GridParams& p) const { return rows_ == p.rows && cols_ == p.cols; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> h_;
    std::vector<double> v_;
};

/// The v_ij voltage field plus simulation clock.
struct GridState {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;   // row-major, volts
    double t = 0.0;          // ns

    GridState() = default;
    GridState(int r, int c, double fill) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, fill) {}

    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * cols + j]; }
    bool in_range(int i, int j) const { return i >= 0 && i < rows && j >= 0 && j < cols; }
};

struct Cell {
    int row = 0;
    int col = 0;
    bool operator==(const Cell&) const = default;
};

}  // namespace excnn
