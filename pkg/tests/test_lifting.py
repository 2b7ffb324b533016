from fractions import Fraction

import numpy as np
import pytest

from fusionframes.bounds import qubit_sic, sic_to_eitff
from fusionframes.grassmann import FrameConfig, Subspace, check_tff
from fusionframes.lifting import (
    FrameCheckError,
    LiftSpec,
    certify_lift,
    find_collisions,
    lift,
    lift_designs,
    repair_disjointness,
)
from fusionframes.orbits import OrbitParams, enumerate_orbit, orbit_frame
from fusionframes.sphere_designs import WeightedPointSet, check_spherical_design_pairwise, regular_polygon


def plane(d, i, j):
    a = [0] * d
    b = [0] * d
    a[i] = b[j] = 1
    return Subspace.from_vectors([a, b])


def tff1_frames():
    yield FrameConfig([plane(4, 0, 1), plane(4, 2, 3)])
    yield FrameConfig([plane(6, 0, 1), plane(6, 2, 3), plane(6, 4, 5)])


def tff2_frames():
    yield orbit_frame(OrbitParams(4, 1, 3))
    yield FrameConfig(sic_to_eitff(qubit_sic()))


def weighted_tff2():
    # weighted union on G(2,4): N*Delta is 1, 1, -1 for (1,1), (1,2), (2,2)
    subs, weights = [], []
    for (a, b), w in (((1, 1), 1), ((1, 2), 2), ((2, 2), 3)):
        D = enumerate_orbit(OrbitParams(4, a, b))
        subs += D
        weights += [Fraction(w)] * len(D)
    return FrameConfig(subs, weights)


@pytest.fixture(scope="module")
def hexagon_lift():
    return lift(LiftSpec(orbit_frame(OrbitParams(4, 1, 3)), t=2, s=5, seed=7))


def test_hexagon_lift(hexagon_lift):
    D = hexagon_lift
    assert D.result.n == 96 and D.result.d == 4 and D.strength == 5
    cert = certify_lift(D)
    assert cert.passed
    diag = cert.extra["diagnostic"]
    assert diag["degree"] == 6 and not diag["passes"]
    assert abs(diag["pairwise_residual"]) > 1.0


def test_certify_above_strength_fails(hexagon_lift):
    assert not certify_lift(hexagon_lift, 6).passed


def test_provenance_partition(hexagon_lift):
    prov = hexagon_lift.provenance
    assert len({tuple(p) for p in prov}) == 96
    counts = np.bincount(prov[:, 0])
    assert (counts == 6).all() and len(counts) == 16


def test_weight_bookkeeping(hexagon_lift):
    # Omega = 16 planes, Lambda = 6 vertices
    assert hexagon_lift.total_weight == pytest.approx(16 * 6)


def test_lift_is_deterministic():
    F = orbit_frame(OrbitParams(4, 1, 3))
    a = lift(LiftSpec(F, 2, 5, seed=3)).result.points
    b = lift(LiftSpec(F, 2, 5, seed=3)).result.points
    c = lift(LiftSpec(F, 2, 5, seed=4)).result.points
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_tff1_hexagon_lift_is_3_design():
    F = FrameConfig([plane(4, 0, 1), plane(4, 2, 3)])
    D = lift(LiftSpec(F, t=1, s=5, seed=1))
    assert D.strength == 3
    assert certify_lift(D).passed
    assert not certify_lift(D, 4).passed


def test_square_lift_is_3_design():
    D = lift(LiftSpec(orbit_frame(OrbitParams(4, 1, 3)), t=2, s=3, seed=2))
    assert D.strength == 3 and certify_lift(D).passed


@pytest.mark.parametrize("t", [1, 2])
@pytest.mark.parametrize("s", range(2, 8))
def test_strength_law(t, s):
    frames = tff1_frames() if t == 1 else tff2_frames()
    for F in frames:
        D = lift(LiftSpec(F, t, s, seed=s))
        assert D.strength == min(s, 2 * t + 1)
        assert certify_lift(D).passed


def test_uniform_weight_scaling_keeps_verdict():
    F = orbit_frame(OrbitParams(4, 1, 3))
    G = FrameConfig(F.subspaces, [Fraction(2)] * len(F))
    a = certify_lift(lift(LiftSpec(F, 2, 5, seed=5)))
    b = certify_lift(lift(LiftSpec(G, 2, 5, seed=5)))
    assert a.passed == b.passed
    assert a.extra["diagnostic"]["passes"] == b.extra["diagnostic"]["passes"]


def test_weighted_frame_lift():
    F = weighted_tff2()
    assert check_tff(F, 2).passed
    D = lift(LiftSpec(F, 2, 5, seed=0))
    assert not D.result.equal_weights
    cert = certify_lift(D)
    assert cert.passed and all(k.startswith("moment") for k in cert.residuals)
    assert D.total_weight == pytest.approx(float(F.total_weight) * 6)


def test_lift_rejects_non_tff():
    F = FrameConfig(enumerate_orbit(OrbitParams(5, 1, 1)))
    with pytest.raises(FrameCheckError):
        lift(LiftSpec(F, 2, 5))


def test_lift_spec_validation():
    F = orbit_frame(OrbitParams(4, 1, 3))
    with pytest.raises(ValueError):
        LiftSpec(F, 3, 5)
    with pytest.raises(ValueError):
        LiftSpec(F, 2, 6, n=6)
    with pytest.raises(ValueError):
        LiftSpec(F, 2, 5, phase="other")


def test_lift_designs_lambda_mismatch():
    F = FrameConfig([plane(4, 0, 1), plane(4, 2, 3)])
    Y1 = regular_polygon(F.subspaces[0], 6)
    Y2 = regular_polygon(F.subspaces[1], 5)
    with pytest.raises(ValueError):
        lift_designs(F, [Y1, Y2], t=1, s=4)


def test_lift_designs_rejects_off_plane_design():
    F = FrameConfig([plane(4, 0, 1), plane(4, 2, 3)])
    Y = regular_polygon(F.subspaces[0], 6)
    with pytest.raises(ValueError):
        lift_designs(F, [Y, Y], t=1, s=5)


def test_repair_fixed_phase_collisions():
    F = orbit_frame(OrbitParams(4, 1, 3))
    D = lift(LiftSpec(F, 2, 5, phase="fixed"))
    assert find_collisions(D.result.points)
    R = repair_disjointness(D, seed=1)
    assert not find_collisions(R.result.points)
    assert certify_lift(R).passed == certify_lift(D).passed
    # every plane still carries a regular hexagon inside that plane
    for i, B in enumerate(R.plane_bases):
        pts = R.result.points[R.provenance[:, 0] == i]
        assert np.abs(pts @ B @ B.T - pts).max() < 1e-12
        X = WeightedPointSet(pts @ B)
        assert check_spherical_design_pairwise(X, 5).passed


def test_repair_leaves_disjoint_input_alone(hexagon_lift):
    assert repair_disjointness(hexagon_lift) is hexagon_lift


def test_lifted_json(hexagon_lift):
    js = hexagon_lift.to_json()
    assert len(js["provenance"]) == 96 and js["strength"] == 5
    X = WeightedPointSet.from_json(js)
    assert np.array_equal(X.points, hexagon_lift.result.points)
