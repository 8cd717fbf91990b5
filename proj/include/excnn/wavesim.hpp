#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "excnn/grid.hpp"
#include "excnn/lattice.hpp"
#include "excnn/reaction_curve.hpp"

namespace excnn {

/// Per-cell first crossing of the winner threshold V_w, linearly
/// interpolated between the two integrator steps that bracket it.
struct CrossingLog {
    double threshold = 1.2;   // V
    int rows = 0;
    int cols = 0;
    std::vector<double> first_crossing;   // ns; NaN when never crossed

    CrossingLog() = default;
    CrossingLog(int r, int c, double v_w);

    bool crossed(int i, int j) const;
    double time(int i, int j) const { return first_crossing[static_cast<std::size_t>(i) * cols + j]; }
    void record(int i, int j, double t_ns) { first_crossing[static_cast<std::size_t>(i) * cols + j] = t_ns; }
    std::size_t count() const;
};

enum class StopReason { WatchedCrossed, TimeBudget, Quiescence };

/// Episode stop conditions; whichever fires first ends the run. After a
/// watched cell crosses, integration continues for linger_ns so near-ties
/// at other watched cells still enter the log.
struct EpisodeOptions {
    std::vector<Cell> watched;
    std::optional<double> time_budget_ns;
    std::optional<double> quiescence_window_ns;
    double linger_ns = 0.0;
    std::optional<Stimulus> stimulus;

    /// Programmed cells held at their entry voltage for the whole episode
    /// (zero net current, as if driven by the programming circuitry). A
    /// free-running interior source collapses under the load of four
    /// resting neighbors before it can ignite them; holding it reproduces
    /// the set-cell excitation.
    std::vector<Cell> clamped;

    /// Skips cells whose own and neighbor voltages all rest at v_rest;
    /// output stays within 1e-6 V of the full update.
    bool active_set = false;
    double active_rest_v = 0.0;
    double active_eps_v = 1e-9;

    /// Frame dump hook, called every frame_interval_ns of simulated time.
    std::optional<double> frame_interval_ns;
    std::function<void(const GridState&)> frame_sink;
};

struct EpisodeResult {
    GridState state;
    CrossingLog log;
    StopReason reason = StopReason::TimeBudget;
    double duration_ns = 0.0;
};

/// Integrates until a stop condition fires, logging first V_w crossings.
/// Cells already above V_w at entry (the programmed source) log at the
/// episode start time.
EpisodeResult run_wave(GridState state, const CouplingMap& coupling, const GridParams& params,
                       const ReactionCurve& curve, double v_w, const EpisodeOptions& options);

struct SpeedMeasurement {
    double i_b = 0.0;    // uA
    double t_p = 0.0;    // ns
    double c_p = 0.0;    // cells/us, = 1000 / t_p
};

/// Front speed off a 1-D corridor: source at cell 0, t_p = mean spacing
/// of consecutive V_w crossings over the centered 20-cell window.
SpeedMeasurement measure_tp(const GridParams& params, const ReactionCurve& curve, double v_w,
                            int corridor_len = 60);

struct SweepRow {
    double i_b = 0.0;
    std::optional<SpeedMeasurement> measurement;   // absent when not excitable
    std::string note;
};

std::vector<SweepRow> sweep_bias(const std::vector<double>& biases, GridParams params,
                                 const ReactionCurve& curve, double v_w);

/// CSV with header "I_B,t_p,c_p"; non-excitable rows carry the note in
/// place of numbers.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace excnn
