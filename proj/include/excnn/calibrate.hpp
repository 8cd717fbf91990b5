#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "excnn/grid.hpp"
#include "excnn/reaction_curve.hpp"

namespace excnn {

class CalibrationError : public std::runtime_error {
public:
    CalibrationError(const std::string& what, std::vector<std::pair<double, double>> trace)
        : std::runtime_error(what), trace(std::move(trace)) {}
    /// (slope a, measured t_p) pairs visited before giving up.
    std::vector<std::pair<double, double>> trace;
};

struct CalibrationResult {
    ReactionCurve curve = ReactionCurve::calibrated_default();
    double achieved_tp_ns = 0.0;
    std::vector<std::pair<double, double>> trace;   // (a, t_p) visited
};

/// Picks the cubic slope a so that the corridor measurement returns
/// target_tp within rel_tol. Bracket search doubles/halves a from the
/// initial guess; t_p decreases with a on the usable branch. Anchors stay
/// at (v_low0, v_mid0, v_high0) with bias anchor params.i_b.
CalibrationResult calibrate_slope(double target_tp_ns, const GridParams& params,
                                  double v_w = 1.2,
                                  double v_low0 = 0.97, double v_mid0 = 1.15,
                                  double v_high0 = 1.75,
                                  double rel_tol = 0.02,
                                  double initial_guess = 100.0);

}  // namespace excnn
