"""Smoke tests for the _excnn extension module."""

import math

import pytest

import _excnn as x


def nominal(rows, cols):
    p = x.GridParams()
    p.rows = rows
    p.cols = cols
    return p


def test_stable_states_anchors():
    curve = x.ReactionCurve.calibrated_default()
    st = x.stable_states(curve, 21.0)
    assert st.excitable
    assert st.v_low == pytest.approx(0.97, abs=1e-3)
    assert st.v_high == pytest.approx(1.75, abs=1e-3)


def test_speed_measurement_anchor():
    m = x.measure_tp(nominal(1, 60), x.ReactionCurve.calibrated_default())
    assert m.t_p == pytest.approx(16.92, rel=0.02)
    assert m.c_p == pytest.approx(59.1, rel=0.02)


def test_sweep_is_monotone():
    rows = x.sweep_bias([18, 20, 22], nominal(1, 60),
                        x.ReactionCurve.calibrated_default())
    tps = [r.measurement.t_p for r in rows]
    assert tps == sorted(tps, reverse=True)
    assert "I_B,t_p,c_p" in x.sweep_csv(rows)


def test_fixture_and_pgm_roundtrip(tmp_path):
    img = x.make_fixture(x.FixtureKind.maze, 21, 21, 5)
    path = str(tmp_path / "maze.pgm")
    x.save_pgm(img, path)
    back = x.load_pgm(path)
    assert back.rows == 21 and back.cols == 21
    assert list(back.intensity) == list(img.intensity)


def test_parse_error_is_python_exception():
    with pytest.raises(ValueError):
        x.parse_pgm("P9 garbage")


def test_solve_matches_bfs_oracle():
    img = x.make_fixture(x.FixtureKind.corridor, 3, 12)
    p = nominal(3, 12)
    sol = x.solve_path(img, (1, 1), (1, 10), p,
                       x.ReactionCurve.calibrated_default(),
                       tp_estimate_ns=16.92)
    assert sol.outcome == x.Outcome.reached
    graph = x.ObstacleGraph(x.build_coupling(img, p))
    assert sol.steps == graph.bfs_shortest((1, 1), (1, 10))
    report = x.compare_path(sol, graph)
    assert report.lengths_equal and report.legal and report.progress_ok


def test_analytics_anchors():
    assert x.predict_solution_time(140, 16.92) == pytest.approx(164631.6)
    assert x.worst_case_time(80, 80, 16.92) == pytest.approx(86603328.0)
    assert math.isclose(x.predict_solution_time(20, 16.92), 20 * 19 * 16.92 / 2)
