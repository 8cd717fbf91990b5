#include "excnn/reaction_curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "excnn/errors.hpp"

namespace excnn {

namespace {

// Slope calibrated so the nominal corridor (I_B = 21 uA, G = 25 uS,
// C_I = 500 fF, dt = 0.05 ns, V_w = 1.2 V) measures t_p = 16.92 ns.
constexpr double kCalibratedSlope = 598.7284463268224;   // uA/V^3
constexpr double kAnchorLow = 0.97;
constexpr double kAnchorMid = 1.15;
constexpr double kAnchorHigh = 1.75;
constexpr double kAnchorBias = 21.0;

}  // namespace

ReactionCurve ReactionCurve::cubic(double slope_a, double v_low0, double v_mid0,
                                   double v_high0, double bias_anchor) {
    if (!(slope_a > 0.0)) throw ConfigError("cubic slope must be positive");
    if (!(v_low0 < v_mid0 && v_mid0 < v_high0))
        throw ConfigError("cubic anchors must satisfy V_L0 < V_m0 < V_H0");
    ReactionCurve c;
    c.kind_ = Kind::Cubic;
    c.slope_a_ = slope_a;
    c.v_low0_ = v_low0;
    c.v_mid0_ = v_mid0;
    c.v_high0_ = v_high0;
    c.bias_anchor_ = bias_anchor;
    return c;
}

ReactionCurve ReactionCurve::calibrated_default() {
    return cubic(kCalibratedSlope, kAnchorLow, kAnchorMid, kAnchorHigh, kAnchorBias);
}

ReactionCurve ReactionCurve::piecewise(std::vector<Breakpoint> points) {
    if (points.size() < 4) throw ConfigError("piecewise curve needs at least 4 breakpoints");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i].v > points[i - 1].v))
            throw ConfigError("piecewise breakpoints must be strictly increasing in v");

    // N shape: rise, fall, rise. Collapse the segment slope signs and
    // check the pattern.
    std::vector<int> signs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        double dj = points[i].j - points[i - 1].j;
        int s = dj > 0 ? 1 : (dj < 0 ? -1 : 0);
        if (s != 0 && (signs.empty() || signs.back() != s)) signs.push_back(s);
    }
    if (signs != std::vector<int>{1, -1, 1})
        throw ConfigError("piecewise curve is not N-shaped (rise, fall, rise)");

    ReactionCurve c;
    c.kind_ = Kind::Piecewise;
    c.points_ = std::move(points);
    return c;
}

ReactionCurve ReactionCurve::load_piecewise(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open curve file: " + path);
    std::vector<Breakpoint> pts;
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        std::size_t line_start = offset;
        offset += line.size() + 1;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        double v, j;
        if (ls >> v) {
            if (!(ls >> j)) throw ParseError("breakpoint line needs two columns", line_start);
            pts.push_back({v, j});
        }
    }
    return piecewise(std::move(pts));
}

double ReactionCurve::current(double v) const {
    if (kind_ == Kind::Cubic)
        return bias_anchor_ + slope_a_ * (v - v_low0_) * (v - v_mid0_) * (v - v_high0_);

    const auto& p = points_;
    // Terminal-segment extrapolation outside the breakpoint range.
    std::size_t i;
    if (v <= p.front().v) {
        i = 0;
    } else if (v >= p.back().v) {
        i = p.size() - 2;
    } else {
        i = static_cast<std::size_t>(
                std::upper_bound(p.begin(), p.end(), v,
                                 [](double x, const Breakpoint& b) { return x < b.v; }) -
                p.begin()) - 1;
    }
    double t = (v - p[i].v) / (p[i + 1].v - p[i].v);
    return p[i].j + t * (p[i + 1].j - p[i].j);
}

bool ReactionCurve::extrapolates(double v) const {
    if (kind_ == Kind::Cubic) return false;
    return v < points_.front().v || v > points_.back().v;
}

void ReactionCurve::find_peak() const {
    if (peak_cached_) return;
    if (kind_ == Kind::Cubic) {
        // Stationary points of (v-r1)(v-r2)(v-r3); the local max is the
        // smaller root of the derivative quadratic.
        double r1 = v_low0_, r2 = v_mid0_, r3 = v_high0_;
        double b = r1 + r2 + r3;
        double c = r1 * r2 + r1 * r3 + r2 * r3;
        double disc = std::sqrt(b * b - 3.0 * c);
        peak_v_ = (b - disc) / 3.0;
    } else {
        // Piecewise linear: the local maximum sits on a breakpoint.
        peak_v_ = points_.front().v;
        double best = points_.front().j;
        for (std::size_t i = 1; i + 1 < points_.size(); ++i) {
            if (points_[i].j >= points_[i - 1].j && points_[i].j > points_[i + 1].j &&
                points_[i].j > best) {
                best = points_[i].j;
                peak_v_ = points_[i].v;
            }
        }
    }
    peak_j_ = current(peak_v_);
    peak_cached_ = true;
}

double ReactionCurve::peak_current() const {
    find_peak();
    return peak_j_;
}

double ReactionCurve::peak_voltage() const {
    find_peak();
    return peak_v_;
}

double ReactionCurve::scan_low() const {
    return (kind_ == Kind::Cubic ? v_low0_ : points_.front().v) - 2.0;
}

double ReactionCurve::scan_high() const {
    return (kind_ == Kind::Cubic ? v_high0_ : points_.back().v) + 2.0;
}

namespace {

double bisect_root(const ReactionCurve& curve, double bias, double lo, double hi) {
    double flo = curve.current(lo) - bias;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = curve.current(mid) - bias;
        // Far below the spec tolerance; uniform equilibrium fields must
        // hold as integrator fixed points to 1e-12 V per step.
        if (std::abs(fm) < 1e-6 && hi - lo < 1e-13) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double slope_fd(const ReactionCurve& curve, double v) {
    const double h = 1e-6;
    return (curve.current(v + h) - curve.current(v - h)) / (2.0 * h);
}

}  // namespace

StableStates stable_states(const ReactionCurve& curve, double bias_ua) {
    if (!(bias_ua > 0.0)) throw ConfigError("bias current must be positive");

    const double scan_step = 1e-3;
    double lo = curve.scan_low();
    double hi = curve.scan_high();

    std::vector<double> roots;
    double prev_v = lo;
    double prev_f = curve.current(lo) - bias_ua;
    for (double v = lo + scan_step; v <= hi + 0.5 * scan_step; v += scan_step) {
        double f = curve.current(v) - bias_ua;
        if (prev_f == 0.0) {
            roots.push_back(prev_v);
        } else if ((f < 0.0) != (prev_f < 0.0)) {
            roots.push_back(bisect_root(curve, bias_ua, prev_v, v));
        }
        prev_v = v;
        prev_f = f;
    }
    if (prev_f == 0.0) roots.push_back(prev_v);

    StableStates out;
    out.margin = curve.peak_current() - bias_ua;

    if (roots.size() >= 3) {
        out.v_low = roots[0];
        out.v_mid = roots[1];
        out.v_high = roots[2];
        // Rising, falling, rising branches expected in that order.
        out.excitable = slope_fd(curve, roots[0]) > 0.0 && slope_fd(curve, roots[1]) < 0.0 &&
                        slope_fd(curve, roots[2]) > 0.0 && bias_ua < curve.peak_current();
    } else if (roots.size() == 2) {
        // Tangency: the lower pair has merged (or is about to).
        out.v_low = roots[0];
        out.v_mid = roots[0];
        out.v_high = roots[1];
        out.excitable = false;
    } else if (roots.size() == 1) {
        out.v_low = roots[0];
        out.v_high = roots[0];
        out.excitable = false;
    } else {
        throw MeasurementError("no equilibrium found in scan range");
    }
    return out;
}

}  // namespace excnn
