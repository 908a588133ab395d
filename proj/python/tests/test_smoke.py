import math

import numpy as np
import pytest

import proxregret as pr


def test_projection_and_prox():
    simplex = pr.ConvexSet.simplex(3)
    np.testing.assert_allclose(simplex.project([1.0, 0.0, 0.0]), [1.0, 0.0, 0.0])
    box = pr.ConvexSet.cube(2, -1.0, 1.0)
    np.testing.assert_allclose(box.project([3.0, -0.5]), [1.0, -0.5])
    f = pr.Comparator.quadratic(np.eye(2), np.zeros(2))
    np.testing.assert_allclose(pr.prox(f, box, [1.0, -1.0]), [0.5, -0.5])


def test_kl_divergence():
    assert pr.kl_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(math.log(2.0))


def test_gd_run_and_bound():
    box = pr.ConvexSet.cube(2, -1.0, 1.0)
    oracle = pr.adversary("iid-linear", 2, seed=5)
    trace = pr.run("gd", box, oracle, 500)
    assert trace.length == 500
    f = pr.Comparator.indicator_point([1.0, 1.0])
    report = pr.proximal_regret(trace, f)
    assert report.regret <= pr.gd_full_bound(trace, report) + 1e-9


def test_python_oracle():
    ball = pr.ConvexSet.ball(np.zeros(2), 1.0)
    trace = pr.run("og", ball, lambda t, x: np.array([1.0, 0.0]), 50,
                   schedule="constant", step=0.1)
    assert trace.points[-1][0] < 0.0
    external = pr.external_regret(trace)
    assert external > 0.0


def test_self_play_pce():
    game = pr.Game.bilinear_zero_sum(np.array([[0.0, 1.0], [1.0, 0.0]]))
    traces = pr.self_play(game, "og", eta=0.1, rounds=200, seed=1)
    assert len(traces) == 2
    assert all(pr.gradient_equilibrium_norm(t) < 1.0 for t in traces)


def test_errors_surface_as_exceptions():
    with pytest.raises(pr.Error):
        pr.ConvexSet.ball(np.zeros(2), -1.0)
