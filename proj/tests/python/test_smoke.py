import math

import numpy as np
import pytest

import qnls


def test_dual_map_round_trip():
    m = qnls.DualMap(1.0)
    t = np.logspace(-3, 3, 50)
    assert np.allclose(m.G_inv(m.G(t)), t, rtol=1e-12)
    assert m.g(0.0) == 1.0
    assert m.t0 == pytest.approx(math.sqrt(1.0 / 3.0))


def test_semilinear_cubic_ground_state():
    gs = qnls.solve(lambda_=1.0, p=4, semilinear=True)
    assert gs["center_value"] == pytest.approx(4.33738767992687, rel=1e-10)
    assert gs["rho"] == pytest.approx(18.8972513026965, rel=1e-9)
    assert gs["pohozaev_residual"] <= 1e-6
    assert np.all(np.diff(gs["v"]) < 0)


def test_branch_and_normalized():
    curve = qnls.branch(p=2.5, lambda_points=21)
    assert curve["case"] == "SubcriticalBoth"
    assert np.all(np.diff(curve["lambda"]) > 0)
    roots = qnls.normalized(1.0, p=2.5, lambda_points=21)
    assert len(roots) == 1
    assert roots[0]["rho"] == pytest.approx(1.0, rel=1e-8)


def test_case_and_threshold():
    assert qnls.classify_case(2.5, 4.0)[0] == "Mixed-1"
    assert qnls.kappa_threshold(1.0) == pytest.approx(1.0 / 18.0)
    assert qnls.kappa_bound_crossing(2.0) == pytest.approx(1.0 / 72.0, rel=1e-12)


def test_limit_profiles():
    lp = qnls.limit_profiles(p="10/3")
    assert lp["mass_U"] == lp["mass_V"]
    assert lp["c_star"] == pytest.approx(6 ** -1.5 * lp["mass_U"])


def test_bad_input_raises():
    with pytest.raises(ValueError):
        qnls.solve(p=7)
    with pytest.raises(ValueError):
        qnls.solve(lamda=1.0)


def test_verify_dual_suite():
    rows = qnls.verify("dual")
    assert rows and all(r[2] for r in rows)
