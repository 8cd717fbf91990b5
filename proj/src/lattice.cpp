#include "excnn/lattice.hpp"

#include <cmath>

namespace excnn {

void rhs(const GridState& state, const CouplingMap& coupling, const GridParams& params,
         const ReactionCurve& curve, std::vector<double>& out,
         const std::optional<Stimulus>& stim) {
    const int n = state.rows, m = state.cols;
    if (!coupling.matches(params) || n != params.rows || m != params.cols)
        throw StructuralError("rhs: state/coupling/params dimensions disagree");
    out.assign(static_cast<std::size_t>(n) * m, 0.0);

    const double inv_c = 1.0 / params.c_i;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double v = state.at(i, j);
            // Fixed neighbor order (N, E, S, W) keeps runs bit-identical.
            double sum = 0.0;
            if (i > 0) sum += coupling.vertical(i - 1, j) * (state.at(i - 1, j) - v);
            if (j < m - 1) sum += coupling.horizontal(i, j) * (state.at(i, j + 1) - v);
            if (i < n - 1) sum += coupling.vertical(i, j) * (state.at(i + 1, j) - v);
            if (j > 0) sum += coupling.horizontal(i, j - 1) * (state.at(i, j - 1) - v);
            out[static_cast<std::size_t>(i) * m + j] =
                (sum + params.i_b - curve.current(v)) * inv_c;
        }
    }
    if (stim && state.t < stim->until_ns) {
        if (!state.in_range(stim->cell.row, stim->cell.col))
            throw StructuralError("stimulus cell out of range");
        out[static_cast<std::size_t>(stim->cell.row) * m + stim->cell.col] +=
            stim->current_ua * inv_c;
    }
}

void step(GridState& state, const CouplingMap& coupling, const GridParams& params,
          const ReactionCurve& curve, const std::optional<Stimulus>& stim) {
    const std::size_t cells = state.v.size();
    const double dt = params.dt;

    static thread_local std::vector<double> k1, k2, k3, k4;
    static thread_local GridState tmp;
    tmp = state;

    rhs(state, coupling, params, curve, k1, stim);
    for (std::size_t c = 0; c < cells; ++c) tmp.v[c] = state.v[c] + 0.5 * dt * k1[c];
    rhs(tmp, coupling, params, curve, k2, stim);
    for (std::size_t c = 0; c < cells; ++c) tmp.v[c] = state.v[c] + 0.5 * dt * k2[c];
    rhs(tmp, coupling, params, curve, k3, stim);
    for (std::size_t c = 0; c < cells; ++c) tmp.v[c] = state.v[c] + dt * k3[c];
    rhs(tmp, coupling, params, curve, k4, stim);

    for (std::size_t c = 0; c < cells; ++c)
        state.v[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    state.t += dt;

    for (std::size_t c = 0; c < cells; ++c) {
        if (!std::isfinite(state.v[c])) {
            int i = static_cast<int>(c) / state.cols;
            int j = static_cast<int>(c) % state.cols;
            throw DivergenceError(i, j, state.t);
        }
    }
}

GridState uniform_init(const GridParams& params, const StableStates& stable) {
    params.validate();
    return GridState(params.rows, params.cols, stable.v_low);
}

void excite(GridState& state, Cell cell, const StableStates& stable) {
    if (!state.in_range(cell.row, cell.col))
        throw StructuralError("excite: cell (" + std::to_string(cell.row) + "," +
                              std::to_string(cell.col) + ") out of range");
    state.at(cell.row, cell.col) = stable.v_high;
}

}  // namespace excnn
