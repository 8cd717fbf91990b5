#include "excnn/calibrate.hpp"

#include <cmath>
#include <limits>

#include "excnn/wavesim.hpp"

namespace excnn {

namespace {

constexpr double kSlopeMin = 1.0;
constexpr double kSlopeMax = 1e5;

}  // namespace

CalibrationResult calibrate_slope(double target_tp_ns, const GridParams& params, double v_w,
                                  double v_low0, double v_mid0, double v_high0, double rel_tol,
                                  double initial_guess) {
    if (!(target_tp_ns > 0.0)) throw ConfigError("calibration target t_p must be positive");
    params.validate();

    std::vector<std::pair<double, double>> trace;
    auto tp_at = [&](double a) {
        ReactionCurve c = ReactionCurve::cubic(a, v_low0, v_mid0, v_high0, params.i_b);
        double tp;
        try {
            tp = measure_tp(params, c, v_w).t_p;
        } catch (const MeasurementError&) {
            // No traveling front: the reaction is too weak (dies out) or
            // too strong (pinned). Treat as arbitrarily slow.
            tp = std::numeric_limits<double>::infinity();
        }
        trace.emplace_back(a, tp);
        return tp;
    };

    // t_p falls as the slope grows on the usable branch; bracket the
    // target by doubling/halving from the initial guess.
    double lo = initial_guess, hi = initial_guess;   // lo: t_p above target, hi: below
    double tp0 = tp_at(initial_guess);
    if (tp0 > target_tp_ns) {
        while (true) {
            hi *= 2.0;
            if (hi > kSlopeMax)
                throw CalibrationError("no slope bracket found up to a = 1e5", trace);
            if (tp_at(hi) <= target_tp_ns) break;
            lo = hi;
        }
    } else {
        while (true) {
            lo *= 0.5;
            if (lo < kSlopeMin)
                throw CalibrationError("no slope bracket found down to a = 1", trace);
            if (tp_at(lo) >= target_tp_ns) break;
            hi = lo;
        }
    }

    double best_a = 0.5 * (lo + hi);
    double best_tp = tp_at(best_a);
    for (int it = 0; it < 60 && std::abs(best_tp - target_tp_ns) > rel_tol * target_tp_ns * 0.5;
         ++it) {
        if (best_tp > target_tp_ns)
            lo = best_a;
        else
            hi = best_a;
        best_a = 0.5 * (lo + hi);
        best_tp = tp_at(best_a);
    }
    if (std::abs(best_tp - target_tp_ns) > rel_tol * target_tp_ns)
        throw CalibrationError("bisection failed to reach the target t_p", trace);

    CalibrationResult res;
    res.curve = ReactionCurve::cubic(best_a, v_low0, v_mid0, v_high0, params.i_b);
    res.achieved_tp_ns = best_tp;
    res.trace = std::move(trace);
    return res;
}

}  // namespace excnn
