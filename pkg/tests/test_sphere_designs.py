import random
from fractions import Fraction

import numpy as np
import pytest

from fusionframes.certificate import Certificate
from fusionframes.grassmann import Subspace
from fusionframes.sphere_designs import (
    WeightedPointSet,
    check_spherical_design_pairwise,
    check_weighted_design_moments,
    default_probes,
    gegenbauer_eval,
    gegenbauer_sequence,
    regular_polygon,
    sphere_moment,
)
from oracles import gegenbauer_direct


def circle(n, phase=0.0):
    ang = 2 * np.pi * np.arange(n) / n + phase
    return WeightedPointSet(np.column_stack([np.cos(ang), np.sin(ang)]))


def test_gegenbauer_examples():
    for d in range(2, 9):
        for ell in range(8):
            assert gegenbauer_eval(d, ell, Fraction(1)) == 1
        assert gegenbauer_eval(d, 1, Fraction(2, 7)) == Fraction(2, 7)
    D0 = 9
    x = Fraction(3, 5)
    assert gegenbauer_eval(D0, 2, x) == (D0 * x * x - 1) / (D0 - 1)


def test_gegenbauer_recurrence_exact():
    rng = random.Random(11)
    for d in range(2, 12):
        for _ in range(200):
            x = Fraction(rng.randint(-60, 60), 60)
            q = gegenbauer_sequence(d, 12, x)
            for ell in range(1, 12):
                res = (ell + d - 2) * q[ell + 1] - (2 * ell + d - 2) * x * q[ell] + ell * q[ell - 1]
                assert res == 0


def test_gegenbauer_matches_explicit_sum():
    for d in (3, 4, 7):
        for ell in range(7):
            for x in (Fraction(-1, 2), Fraction(1, 5), Fraction(9, 10)):
                assert gegenbauer_eval(d, ell, x) == gegenbauer_direct(d, ell, x)


def test_gegenbauer_d2_is_chebyshev():
    x = np.linspace(-1, 1, 11)
    for ell in range(6):
        assert np.allclose(gegenbauer_eval(2, ell, x), np.cos(ell * np.arccos(x)))


def test_point_set_validation():
    with pytest.raises(ValueError):
        WeightedPointSet(np.array([[1.0, 1.0]]))
    with pytest.raises(ValueError):
        WeightedPointSet(np.array([[1.0, 0.0]]), [-1.0])
    with pytest.raises(ValueError):
        WeightedPointSet(np.zeros((0, 3)))
    X = WeightedPointSet([[Fraction(3, 5), Fraction(4, 5)], [1, 0]])
    assert X.mode == "exact" and X.total_weight == 2


def test_point_set_json_round_trip():
    X = WeightedPointSet([[Fraction(3, 5), Fraction(4, 5)], [1, 0]], [Fraction(1, 3), 2])
    Y = WeightedPointSet.from_json(X.to_json())
    assert (Y.points == X.points).all() and (Y.weights == X.weights).all()
    Z = circle(5)
    W = WeightedPointSet.from_json(Z.to_json())
    assert np.array_equal(W.points, Z.points)


def test_antipodal_pair_one_design():
    X = WeightedPointSet([[1, 0, 0], [-1, 0, 0]])
    assert check_spherical_design_pairwise(X, 1).passed
    assert not check_spherical_design_pairwise(X, 2).passed


def test_hexagon_pairwise():
    assert check_spherical_design_pairwise(circle(6, 0.3), 5).passed
    cert = check_spherical_design_pairwise(circle(6, 0.3), 6)
    assert not cert.passed and cert.failing() == [6]


@pytest.mark.parametrize("n", range(2, 13))
def test_polygon_strength_is_n_minus_1(n):
    assert check_spherical_design_pairwise(circle(n, 0.1), n - 1).passed
    assert not check_spherical_design_pairwise(circle(n, 0.1), n).passed


def test_square_exact_moments():
    X = WeightedPointSet([[1, 0], [-1, 0], [0, 1], [0, -1]])
    cert = check_weighted_design_moments(X, 3, probes=[[1, 0]])
    assert cert.mode == "exact" and cert.passed
    assert sphere_moment(2, 2) == Fraction(1, 2)


def test_single_point_fails_moments():
    X = WeightedPointSet([[1, 0]])
    assert not check_weighted_design_moments(X, 1, probes=[[1, 0]]).passed


def test_zero_probe_rejected():
    with pytest.raises(ValueError):
        check_weighted_design_moments(circle(4), 2, probes=[[0.0, 0.0]])


def test_pairwise_and_moments_agree():
    sets = [circle(n, 0.2) for n in (3, 5, 6, 8)]
    sets.append(WeightedPointSet(np.eye(3)))
    sets.append(WeightedPointSet(np.vstack([np.eye(4), -np.eye(4)])))
    for X in sets:
        for t in range(1, 7):
            a = check_spherical_design_pairwise(X, t).passed
            b = check_weighted_design_moments(X, t).passed
            assert a == b, (X.n, X.d, t)


def test_weighted_design():
    X = WeightedPointSet(np.array([[1.0, 0], [-1, 0], [0, 1], [0, -1]]), [2.0, 2.0, 2.0, 2.0])
    assert check_weighted_design_moments(X, 3).passed
    Y = WeightedPointSet(np.array([[1.0, 0], [-1, 0], [0, 1], [0, -1]]), [1.0, 1.0, 3.0, 3.0])
    assert not check_weighted_design_moments(Y, 2).passed
    with pytest.raises(ValueError):
        check_spherical_design_pairwise(Y, 1)


def test_rotation_preserves_pairwise_residuals():
    rng = np.random.default_rng(5)
    X = WeightedPointSet(_random_unit(rng, 7, 4))
    Q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    Y = WeightedPointSet(X.points @ Q.T)
    a = check_spherical_design_pairwise(X, 4).residuals
    b = check_spherical_design_pairwise(Y, 4).residuals
    for ell in a:
        assert abs(a[ell] - b[ell]) < 1e-10


def _random_unit(rng, n, d):
    v = rng.standard_normal((n, d))
    return v / np.linalg.norm(v, axis=1)[:, None]


def test_default_probes():
    P = default_probes(3, seed=1)
    assert len(P) == 3 + 3 + 8
    assert all(abs(np.linalg.norm(p) - 1) < 1e-12 for p in P)
    Q = default_probes(3, seed=1)
    assert all(np.array_equal(p, q) for p, q in zip(P, Q))


def test_regular_polygon_examples():
    V = Subspace.from_vectors([[1, 0, 0], [0, 1, 0]])
    X = regular_polygon(V, 2)
    assert np.allclose(X.points, [[1, 0, 0], [-1, 0, 0]])
    X = regular_polygon(V, 4)
    assert np.allclose(X.points, [[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]], atol=1e-15)
    W = Subspace.from_vectors([[1, 1, 0, 1], [1, -1, 0, 0]])
    Y = regular_polygon(W, 6, phase=1.1, certify=True)
    assert np.abs(Y.points @ np.asarray(W.projector, dtype=float) - Y.points).max() < 1e-12
    with pytest.raises(ValueError):
        regular_polygon(V, 1)


def test_certificate_round_trip_and_verdict():
    cert = check_spherical_design_pairwise(WeightedPointSet([[1, 0], [-1, 0]]), 2)
    js = cert.to_json()
    assert js["verdict"] == "fail" and js["residuals"]["2"] == "4"
    back = Certificate.from_json(js)
    assert back.to_json() == js
    js["verdict"] = "pass"
    with pytest.raises(ValueError):
        Certificate.from_json(js)
