#pragma once

#include <optional>
#include <string>
#include <vector>

namespace excnn {

/// Nonlinear cell current response J(v).
///
/// Two flavors share one interface: the cubic surrogate
///     J(v) = I_B0 + a (v - V_L0)(v - V_m0)(v - V_H0)
/// anchored at measured equilibria, and a piecewise-linear curve loaded
/// from a two-column (v, J) breakpoint file. Both are N-shaped: rise,
/// fall, rise, with a single local maximum J_p between the first two
/// anchor roots.
class ReactionCurve {
public:
    enum class Kind { Cubic, Piecewise };

    struct Breakpoint {
        double v;   // V
        double j;   // uA
    };

    static ReactionCurve cubic(double slope_a, double v_low0, double v_mid0,
                               double v_high0, double bias_anchor);

    /// Parses a plain-text breakpoint file: two columns (v volts, J uA),
    /// one per line, '#' comments allowed. Validates the N shape.
    static ReactionCurve load_piecewise(const std::string& path);
    static ReactionCurve piecewise(std::vector<Breakpoint> points);

    /// The default surrogate: anchors (0.97, 1.15, 1.75) V at 21 uA with
    /// the slope calibrated so a nominal corridor gives t_p = 16.92 ns.
    static ReactionCurve calibrated_default();

    /// J(v) in uA. Total in v; piecewise curves extrapolate with the
    /// terminal segment (see extrapolates()).
    double current(double v) const;

    /// True when v falls outside the piecewise breakpoint range.
    bool extrapolates(double v) const;

    /// Peak current J_p (the single local maximum), uA.
    double peak_current() const;
    /// Location of the peak, V.
    double peak_voltage() const;

    /// Voltage window guaranteed to contain every root of J(v) = I_B for
    /// any bias of interest; used by the equilibrium scan.
    double scan_low() const;
    double scan_high() const;

    Kind kind() const { return kind_; }
    double slope() const { return slope_a_; }
    double anchor_low() const { return v_low0_; }
    double anchor_mid() const { return v_mid0_; }
    double anchor_high() const { return v_high0_; }
    double anchor_bias() const { return bias_anchor_; }
    const std::vector<Breakpoint>& breakpoints() const { return points_; }

private:
    ReactionCurve() = default;

    Kind kind_ = Kind::Cubic;
    double slope_a_ = 0.0;      // uA/V^3
    double v_low0_ = 0.0;       // V
    double v_mid0_ = 0.0;       // V
    double v_high0_ = 0.0;      // V
    double bias_anchor_ = 0.0;  // uA
    std::vector<Breakpoint> points_;

    mutable double peak_v_ = 0.0;
    mutable double peak_j_ = 0.0;
    mutable bool peak_cached_ = false;
    void find_peak() const;
};

/// Equilibria of J(v) = I_B classified by the slope of J.
struct StableStates {
    double v_low = 0.0;            // V, lowest rising-branch root
    std::optional<double> v_mid;   // V, falling-branch root; absent when monostable
    double v_high = 0.0;           // V, highest rising-branch root
    bool excitable = false;        // three equilibria and I_B < J_p
    double margin = 0.0;           // J_p - I_B, uA
};

/// Solves J(v) = I_B by bracketed bisection on a 1e-3 V scan, refined to
/// |J(v) - I_B| < 1e-6 uA. An N-shaped curve yields one or three roots;
/// the tangency case is reported as excitable = false with v_mid = v_low.
StableStates stable_states(const ReactionCurve& curve, double bias_ua);

}  // namespace excnn
