#pragma once

#include <optional>
#include <vector>

#include "excnn/grid.hpp"
#include "excnn/reaction_curve.hpp"

namespace excnn {

/// Extra current injected into one cell while t < until_ns; the optional
/// excitation mechanism (default excitation programs the state instead).
struct Stimulus {
    Cell cell;
    double current_ua = 30.0;
    double until_ns = 5.0;
};

/// Evaluates dv/dt for every cell:
///   dv_ij/dt = [ sum_nb G_edge (v_nb - v_ij) + I_B - J(v_ij) ] / C_I
/// Border cells sum only over existing edges (zero-flux boundary).
void rhs(const GridState& state, const CouplingMap& coupling, const GridParams& params,
         const ReactionCurve& curve, std::vector<double>& out,
         const std::optional<Stimulus>& stim = std::nullopt);

/// Classical RK4 advance by params.dt. Deterministic: fixed per-cell
/// summation order, single-threaded. Throws DivergenceError naming the
/// first non-finite cell.
void step(GridState& state, const CouplingMap& coupling, const GridParams& params,
          const ReactionCurve& curve, const std::optional<Stimulus>& stim = std::nullopt);

/// All cells at V_L, t = 0.
GridState uniform_init(const GridParams& params, const StableStates& stable);

/// Default excitation: programs v[cell] := V_H.
void excite(GridState& state, Cell cell, const StableStates& stable);

}  // namespace excnn
