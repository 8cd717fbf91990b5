#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "excnn/wavesim.hpp"

using namespace excnn;

namespace {

GridParams nominal(int rows, int cols) {
    GridParams p;
    p.rows = rows;
    p.cols = cols;
    return p;
}

}  // namespace

TEST_CASE("no excitation, no crossings") {
    GridParams p = nominal(10, 10);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    StableStates st = stable_states(curve, p.i_b);
    CouplingMap map(10, 10, p.g_nominal);
    GridState s = uniform_init(p, st);

    EpisodeOptions opt;
    opt.time_budget_ns = 1000.0;
    EpisodeResult res = run_wave(std::move(s), map, p, curve, 1.2, opt);
    CHECK(res.reason == StopReason::TimeBudget);
    CHECK(res.log.count() == 0);
}

TEST_CASE("corridor crossing times increase strictly along the lane") {
    GridParams p = nominal(1, 20);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    StableStates st = stable_states(curve, p.i_b);
    CouplingMap map(1, 20, p.g_nominal);
    GridState s = uniform_init(p, st);
    excite(s, {0, 0}, st);

    EpisodeOptions opt;
    opt.watched = {{0, 19}};
    opt.time_budget_ns = 5000.0;
    EpisodeResult res = run_wave(std::move(s), map, p, curve, 1.2, opt);
    REQUIRE(res.reason == StopReason::WatchedCrossed);
    for (int j = 1; j < 20; ++j) {
        REQUIRE(res.log.crossed(0, j));
        CHECK(res.log.time(0, j) > res.log.time(0, j - 1));
    }
    // The programmed source logs at the episode start.
    CHECK(res.log.time(0, 0) == 0.0);
}

TEST_CASE("nominal corridor measurement hits the calibration anchor") {
    GridParams p = nominal(1, 60);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    SpeedMeasurement m = measure_tp(p, curve, 1.2);
    CHECK(m.t_p == doctest::Approx(16.92).epsilon(0.02));
    CHECK(m.c_p == doctest::Approx(59.1).epsilon(0.02));
}

TEST_CASE("t_p falls as the bias current rises") {
    GridParams p = nominal(1, 60);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    p.i_b = 18.0;
    double slow = measure_tp(p, curve, 1.2).t_p;
    p.i_b = 23.0;
    double fast = measure_tp(p, curve, 1.2).t_p;
    CHECK(slow > fast);
}

TEST_CASE("c_p is the pure unit inverse of t_p") {
    // Unit arithmetic: t_p = 36.06 ns -> c_p = 27.73 cells/us.
    SpeedMeasurement m;
    m.t_p = 36.06;
    m.c_p = 1000.0 / m.t_p;
    CHECK(m.c_p == doctest::Approx(27.73).epsilon(1e-3));

    GridParams p = nominal(1, 60);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    SpeedMeasurement n = measure_tp(p, curve, 1.2);
    CHECK(n.c_p * n.t_p == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("non-excitable bias fails the measurement cleanly") {
    GridParams p = nominal(1, 60);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    p.i_b = curve.peak_current() + 1.0;
    CHECK_THROWS_AS(measure_tp(p, curve, 1.2), MeasurementError);
}

TEST_CASE("sweep: full 18-23 uA bias list is monotone") {
    GridParams p = nominal(1, 60);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    auto rows = sweep_bias({18, 19, 20, 21, 22, 23}, p, curve, 1.2);
    REQUIRE(rows.size() == 6);
    double prev = 1e9;
    for (const auto& r : rows) {
        REQUIRE(r.measurement.has_value());
        CHECK(r.measurement->t_p < prev);
        prev = r.measurement->t_p;
    }
}

TEST_CASE("sweep: singleton row matches measure_tp exactly") {
    GridParams p = nominal(1, 60);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    auto rows = sweep_bias({21}, p, curve, 1.2);
    SpeedMeasurement direct = measure_tp(p, curve, 1.2);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].measurement->t_p == direct.t_p);
    CHECK(rows[0].measurement->c_p == direct.c_p);
}

TEST_CASE("sweep: bias above the peak is flagged, not run") {
    GridParams p = nominal(1, 60);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    double hot = curve.peak_current() + 0.5;
    auto rows = sweep_bias({21.0, hot}, p, curve, 1.2);
    CHECK(rows[0].measurement.has_value());
    CHECK_FALSE(rows[1].measurement.has_value());
    CHECK(rows[1].note == "not excitable");

    std::string csv = sweep_csv(rows);
    CHECK(csv.find("I_B,t_p,c_p") == 0);
    CHECK(csv.find("not excitable") != std::string::npos);
}

TEST_CASE("crossing times shift under 1% when dt is halved") {
    GridParams p = nominal(1, 60);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    double full = measure_tp(p, curve, 1.2).t_p;
    p.dt /= 2.0;
    double half = measure_tp(p, curve, 1.2).t_p;
    CHECK(std::abs(full - half) / half < 0.01);
}

TEST_CASE("t_p is corridor-length independent within 1%") {
    GridParams p = nominal(1, 60);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    double ref = measure_tp(p, curve, 1.2, 60).t_p;
    for (int len : {40, 80}) {
        double tp = measure_tp(p, curve, 1.2, len).t_p;
        CHECK(std::abs(tp - ref) / ref < 0.01);
    }
}

TEST_CASE("active-set episodes match the full update within 1e-6 V") {
    GridParams p = nominal(15, 15);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    StableStates st = stable_states(curve, p.i_b);
    CouplingMap map(15, 15, p.g_nominal);

    auto run = [&](bool active) {
        GridState s = uniform_init(p, st);
        excite(s, {7, 7}, st);
        EpisodeOptions opt;
        opt.clamped = {{7, 7}};
        opt.time_budget_ns = 150.0;
        opt.active_set = active;
        opt.active_rest_v = st.v_low;
        return run_wave(std::move(s), map, p, curve, 1.2, opt);
    };
    EpisodeResult full = run(false);
    EpisodeResult fast = run(true);
    for (std::size_t c = 0; c < full.state.v.size(); ++c)
        CHECK(std::abs(full.state.v[c] - fast.state.v[c]) < 1e-6);
    CHECK(full.log.count() == fast.log.count());
}

TEST_CASE("quiescence stop fires when the wave is boxed in") {
    GridParams p = nominal(9, 9);
    ReactionCurve curve = ReactionCurve::calibrated_default();
    StableStates st = stable_states(curve, p.i_b);
    CouplingMap map(9, 9, p.g_nominal);
    // Wall off the center 3x3 block.
    for (int j = 2; j <= 5; ++j) {
        map.set_vertical(2, j, 0.0);
        map.set_vertical(5, j, 0.0);
    }
    for (int i = 2; i <= 5; ++i) {
        map.set_horizontal(i, 2, 0.0);
        map.set_horizontal(i, 5, 0.0);
    }

    GridState s = uniform_init(p, st);
    excite(s, {4, 4}, st);
    EpisodeOptions opt;
    opt.clamped = {{4, 4}};
    opt.quiescence_window_ns = 100.0;
    opt.time_budget_ns = 100000.0;
    EpisodeResult res = run_wave(std::move(s), map, p, curve, 1.2, opt);
    CHECK(res.reason == StopReason::Quiescence);
    CHECK(res.duration_ns < 1000.0);
    // Only the enclosed 3x3 block fires.
    CHECK(res.log.count() == 9);
}
