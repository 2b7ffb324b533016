"""Lift a tight t-fusion frame of planes to a spherical design on S^{d-1}.

Each plane of the frame receives a circle design (a regular polygon by
default); the union of all of them, with weights ``w_V * lambda``, is a
weighted spherical ``min(s, 2t+1)``-design when every circle design is an
s-design of common total weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .certificate import Certificate
from .grassmann import FrameConfig, check_tff
from .sphere_designs import (
    WeightedPointSet,
    check_spherical_design_pairwise,
    check_weighted_design_moments,
    float_tolerance,
    regular_polygon,
)

__all__ = [
    "LiftSpec",
    "LiftedDesign",
    "FrameCheckError",
    "lift",
    "lift_designs",
    "repair_disjointness",
    "certify_lift",
    "find_collisions",
]

COLLISION_RADIUS = 1e-9


class FrameCheckError(ValueError):
    """The input frame failed its declared tight-fusion-frame check."""


@dataclass
class LiftSpec:
    """Inputs of a polygon lift.

    ``s`` is the design strength of the per-plane polygons; the polygon has
    ``n = s + 1`` vertices unless ``n`` is given (then ``s <= n - 1``).
    """

    frame: FrameConfig
    t: int
    s: int
    n: int | None = None
    phase: str = "random"
    seed: int = 0
    verify_frame: bool = True

    def __post_init__(self):
        if self.t not in (1, 2):
            raise ValueError("lifts are supported for t in {1, 2}")
        if self.n is None:
            self.n = self.s + 1
        if self.s < 1 or self.n < 2 or self.s > self.n - 1:
            raise ValueError(f"a regular {self.n}-gon is not a {self.s}-design")
        if self.phase not in ("random", "fixed"):
            raise ValueError("phase policy must be 'random' or 'fixed'")
        if self.frame.k != 2:
            raise ValueError("polygon lifts need a frame of planes")


@dataclass
class LiftedDesign:
    result: WeightedPointSet
    strength: int
    provenance: np.ndarray  # (n_points, 2): plane index, vertex index
    plane_bases: np.ndarray  # (n_planes, d, 2)
    meta: dict = field(default_factory=dict)

    @property
    def total_weight(self):
        return self.result.total_weight

    def to_json(self) -> dict:
        out = self.result.to_json()
        out["strength"] = self.strength
        out["provenance"] = [[int(p), int(v)] for p, v in self.provenance]
        out["meta"] = self.meta
        return out


def _plane_phase(seed: int, index: int) -> float:
    return float(np.random.default_rng([seed, index]).uniform(0.0, 2 * np.pi))


def lift_designs(frame: FrameConfig, designs, t: int, s: int,
                 verify_frame: bool = True) -> LiftedDesign:
    """General lift: ``designs[i]`` is a weighted s-design on the unit circle of plane ``i``.

    Every design must have the same total weight. The union is returned as
    a multiset; coincident points are kept separately.
    """
    if len(designs) != len(frame):
        raise ValueError("need one circle design per plane")
    if verify_frame:
        cert = check_tff(frame, t)
        if not cert:
            raise FrameCheckError(cert.summary())
    totals = [float(Y.total_weight) for Y in designs]
    if max(totals) - min(totals) > 1e-12 * max(totals):
        raise ValueError("per-plane designs must share one total weight")
    pts, wts, prov = [], [], []
    for i, (Y, w) in enumerate(zip(designs, frame.weights)):
        P = frame.subspaces[i].projector
        P = np.asarray(P, dtype=float)
        if np.abs(Y.points @ P - Y.points).max() > 1e-10:
            raise ValueError(f"design {i} does not lie in its plane")
        pts.append(np.asarray(Y.points, dtype=float))
        wts.append(float(w) * np.asarray(Y.weights, dtype=float))
        prov.extend((i, j) for j in range(Y.n))
    result = WeightedPointSet(np.vstack(pts), np.concatenate(wts), mode="float")
    bases = np.stack([V.basis for V in frame.subspaces])
    return LiftedDesign(result, min(s, 2 * t + 1), np.array(prov, dtype=np.int64), bases,
                        meta={"t": t, "s": s, "planes": len(frame)})


def lift(spec: LiftSpec) -> LiftedDesign:
    """Place a regular polygon on every plane of the frame and take the union."""
    designs = []
    for i, V in enumerate(spec.frame.subspaces):
        phase = 0.0 if spec.phase == "fixed" else _plane_phase(spec.seed, i)
        designs.append(regular_polygon(V, spec.n, phase))
    out = lift_designs(spec.frame, designs, spec.t, spec.s, verify_frame=spec.verify_frame)
    out.meta.update({"polygon": spec.n, "phase": spec.phase, "seed": spec.seed})
    return out


def find_collisions(points: np.ndarray, radius: float = COLLISION_RADIUS) -> set:
    """Index pairs of points closer than ``radius``."""
    return cKDTree(points).query_pairs(radius)


def repair_disjointness(design: LiftedDesign, seed: int = 0, budget: int = 64) -> LiftedDesign:
    """Rotate colliding planes' circle designs inside their planes until all points differ.

    A rotation within a plane keeps its circle design a design of the same
    strength, so the lift property is untouched. Returns the input object
    when nothing collides.
    """
    pts = design.result.points
    pairs = find_collisions(pts)
    if not pairs:
        return design
    pts = pts.copy()
    prov = design.provenance
    rng = np.random.default_rng(seed)
    rotated = {}
    for _ in range(budget):
        planes = sorted({max(prov[i, 0], prov[j, 0]) for i, j in pairs})
        for plane in planes:
            idx = np.nonzero(prov[:, 0] == plane)[0]
            B = design.plane_bases[plane]
            phi = rng.uniform(0.0, 2 * np.pi)
            c, s = np.cos(phi), np.sin(phi)
            coords = pts[idx] @ B
            rot = coords @ np.array([[c, s], [-s, c]])
            pts[idx] = rot @ B.T
            rotated[int(plane)] = rotated.get(int(plane), 0.0) + phi
        pairs = find_collisions(pts)
        if not pairs:
            result = WeightedPointSet(pts, design.result.weights.copy(), mode="float")
            meta = dict(design.meta, repaired_planes=len(rotated), repair_seed=seed)
            return LiftedDesign(result, design.strength, prov.copy(), design.plane_bases, meta)
    raise RuntimeError(f"points still collide after {budget} repair rounds")


def certify_lift(design: LiftedDesign, r: int | None = None, seed: int = 0) -> Certificate:
    """Run both design criteria at strength ``r`` (default: the declared strength).

    The pairwise criterion is included only for equal weights. Degree
    ``r + 1`` is evaluated as an informational diagnostic in ``extra``.
    """
    r = design.strength if r is None else r
    X = design.result
    residuals = {}
    parts = []
    if X.equal_weights:
        pw = check_spherical_design_pairwise(X, r + 1)
        parts.append(pw)
        for ell in range(1, r + 1):
            residuals[f"pairwise:{ell}"] = pw.residuals[ell]
    mom = check_weighted_design_moments(X, r + 1, seed=seed)
    for (m, probe), v in mom.residuals.items():
        if m <= r:
            residuals[f"moment:{m}:{probe}"] = v
    diag_vals = [abs(v) for (m, _), v in mom.residuals.items() if m == r + 1]
    diagnostic = {"degree": r + 1, "max_moment_residual": max(diag_vals)}
    if X.equal_weights:
        diagnostic["pairwise_residual"] = pw.residuals[r + 1]
    tol = float_tolerance(X.n)
    diagnostic["passes"] = all(abs(v) <= tol for v in diag_vals) and \
        (not X.equal_weights or abs(pw.residuals[r + 1]) <= tol)
    return Certificate("lifted-design", list(range(1, r + 1)), residuals, "float", tol,
                       extra={"n": X.n, "d": X.d, "strength": r, "diagnostic": diagnostic})
