"""Spherical t-designs: Gegenbauer kernels, the two design criteria, circle designs.

A point set is checked either through the pairwise Gegenbauer sums
``sum_{i,j} Q_l(<x_i, x_j>)`` (equal weights only) or through the moment
identities ``sum_j w_j <x_j, y>^m = W (1/2)_{m/2} / (d/2)_{m/2} |y|^m`` on a
finite set of probe directions ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .certificate import Certificate
from .numerics import (
    exact_array,
    is_exact,
    matrix_from_json,
    matrix_to_json,
    parse_scalar,
    pochhammer,
    scalar_to_json,
)

__all__ = [
    "UNIT_TOL",
    "WeightedPointSet",
    "gegenbauer_eval",
    "gegenbauer_sequence",
    "float_tolerance",
    "check_spherical_design_pairwise",
    "check_weighted_design_moments",
    "default_probes",
    "sphere_moment",
    "regular_polygon",
]

UNIT_TOL = 1e-12


def float_tolerance(n: int) -> float:
    """Residual bound for float-mode checks; double sums carry ``n**2`` unit terms."""
    return 1e-9 * n * n


@dataclass
class WeightedPointSet:
    """Multiset of unit vectors in R^d with positive weights.

    ``points`` has shape ``(n, d)``; it is an object array of Fractions in
    exact mode and a float array otherwise.
    """

    points: np.ndarray
    weights: np.ndarray = None
    mode: str = field(default=None)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=object if self.mode == "exact" else None)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("point set must be a non-empty (n, d) array")
        if self.mode is None:
            # integer input is rational, so it defaults to exact like Fractions
            rational = pts.dtype.kind in "iu" or is_exact(pts)
            self.mode = "exact" if rational else "float"
        if self.mode == "exact":
            pts = exact_array(pts)
            nsq = [p @ p for p in pts]
            if any(q != 1 for q in nsq):
                raise ValueError("exact point set contains a non-unit vector")
        else:
            pts = np.asarray(pts, dtype=float)
            err = np.abs(np.einsum("ij,ij->i", pts, pts) - 1.0)
            if err.max() > UNIT_TOL * 10:
                raise ValueError(f"point off the unit sphere by {err.max():.2e}")
        self.points = pts

        if self.weights is None:
            w = [Fraction(1)] * len(pts) if self.mode == "exact" else np.ones(len(pts))
        else:
            w = self.weights
        if self.mode == "exact" and is_exact(np.asarray(w, dtype=object)):
            w = exact_array(w)
        else:
            w = np.asarray(w, dtype=float)
        if len(w) != len(pts):
            raise ValueError("weights and points differ in length")
        if any(x <= 0 for x in w):
            raise ValueError("weights must be positive")
        self.weights = w

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def total_weight(self):
        return sum(self.weights[1:], self.weights[0])

    @property
    def equal_weights(self) -> bool:
        w0 = self.weights[0]
        if self.mode == "exact" and self.weights.dtype == object:
            return all(w == w0 for w in self.weights)
        return bool(np.allclose(self.weights, w0, rtol=1e-12, atol=0))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "mode": self.mode,
            "points": matrix_to_json(self.points),
            "weights": [scalar_to_json(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WeightedPointSet":
        pts = matrix_from_json(obj["points"])
        if obj.get("mode") == "float":
            pts = np.asarray(pts, dtype=float)
        weights = [parse_scalar(w) for w in obj["weights"]]
        out = cls(pts, weights, mode=obj.get("mode"))
        if out.d != obj["d"]:
            raise ValueError("declared dimension disagrees with points")
        return out


def gegenbauer_sequence(d: int, t: int, x):
    """``[Q_0(x), ..., Q_t(x)]`` for the scaled Gegenbauer family with ``Q_l(1) = 1``.

    ``x`` may be a float, a Fraction, or an array of either; Fraction input
    gives exact output.
    """
    if d < 2:
        raise ValueError("Gegenbauer kernels need d >= 2")
    exact = isinstance(x, (Fraction, int)) or (isinstance(x, np.ndarray) and x.dtype == object)
    one = Fraction(1) if exact else 1.0
    if isinstance(x, int):
        x = Fraction(x)
    qs = [x * 0 + one]
    if t >= 1:
        qs.append(x)
    for ell in range(1, t):
        a = Fraction(2 * ell + d - 2, ell + d - 2)
        b = Fraction(ell, ell + d - 2)
        if not exact:
            a, b = float(a), float(b)
        qs.append(a * x * qs[ell] - b * qs[ell - 1])
    return qs


def gegenbauer_eval(d: int, ell: int, x):
    """Scaled Gegenbauer polynomial ``Q_ell^{(d)}(x)``."""
    if ell < 0:
        raise ValueError("degree must be non-negative")
    return gegenbauer_sequence(d, ell, x)[ell]


def _gram(points: np.ndarray) -> np.ndarray:
    if points.dtype == object:
        return points @ points.T
    G = points @ points.T
    return np.clip(G, -1.0, 1.0)


def check_spherical_design_pairwise(X: WeightedPointSet, t: int) -> Certificate:
    """Pairwise Gegenbauer criterion for an equal-weight point set.

    Residual at degree ``l`` is ``sum_{i,j} Q_l(<x_i, x_j>)``; the set is a
    t-design iff every residual for ``1 <= l <= t`` vanishes.
    """
    if not X.equal_weights:
        raise ValueError("pairwise criterion needs equal weights; use the moment check")
    if X.d < 2:
        raise ValueError("need d >= 2")
    G = _gram(X.points)
    qs = gegenbauer_sequence(X.d, t, G)
    residuals = {}
    for ell in range(1, t + 1):
        total = qs[ell].sum()
        residuals[ell] = total if X.mode == "exact" else float(total)
    tol = Fraction(0) if X.mode == "exact" else float_tolerance(X.n)
    return Certificate("pairwise-gegenbauer", list(range(1, t + 1)), residuals,
                       X.mode, tol, extra={"n": X.n, "d": X.d})


def sphere_moment(d: int, m: int):
    """Average of ``<x, y>^m`` over the unit sphere S^{d-1} for a unit vector ``y``."""
    if m % 2:
        return Fraction(0)
    return pochhammer(Fraction(1, 2), m // 2) / pochhammer(Fraction(d, 2), m // 2)


def default_probes(d: int, exact: bool = False, seed: int = 0, n_random: int = 8) -> list:
    """Standard basis, all ``e_i + e_j`` (normalized in float mode), plus seeded random vectors.

    Exact probes are left unnormalized; the moment identity is homogeneous
    in ``|y|`` so only even powers of the norm are ever needed.
    """
    rng = np.random.default_rng(seed)
    probes = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        probes.append(e)
    for i in range(d):
        for j in range(i + 1, d):
            e = [0] * d
            e[i] = e[j] = 1
            probes.append(e)
    if exact:
        probes = [exact_array(p) for p in probes]
        for _ in range(n_random):
            v = rng.integers(-5, 6, size=d)
            while not v.any():
                v = rng.integers(-5, 6, size=d)
            probes.append(exact_array([int(c) for c in v]))
        return probes
    probes = [np.asarray(p, dtype=float) / np.linalg.norm(p) for p in probes]
    for _ in range(n_random):
        v = rng.standard_normal(d)
        probes.append(v / np.linalg.norm(v))
    return probes


def check_weighted_design_moments(X: WeightedPointSet, t: int, probes=None,
                                  seed: int = 0) -> Certificate:
    """Moment criterion for a weighted point set, on a finite probe set.

    Residuals are rescaled by ``n / W`` (``W`` the total weight) so the
    float tolerance matches the equal-weight pairwise check.
    """
    exact = X.mode == "exact" and X.weights.dtype == object
    if probes is None:
        probes = default_probes(X.d, exact=exact, seed=seed)
    if len(probes) == 0:
        raise ValueError("need at least one probe")
    W = X.total_weight
    scale = X.n / W
    residuals = {}
    for pi, y in enumerate(probes):
        y = exact_array(y) if exact else np.asarray(y, dtype=float)
        ysq = y @ y
        if ysq == 0:
            raise ValueError("zero probe vector")
        ip = X.points @ y
        power = ip * 0 + (Fraction(1) if exact else 1.0)
        for m in range(t + 1):
            lhs = (X.weights * power).sum() * scale
            if m % 2:
                rhs = 0
            else:
                rhs = X.n * sphere_moment(X.d, m) * ysq ** (m // 2)
                if not exact:
                    rhs = float(rhs)
            residuals[(m, pi)] = lhs - rhs if exact else float(lhs - rhs)
            power = power * ip
    tol = Fraction(0) if exact else float_tolerance(X.n)
    return Certificate("weighted-moments", list(range(t + 1)), residuals,
                       "exact" if exact else "float", tol,
                       extra={"n": X.n, "d": X.d, "probes": len(probes)})


def regular_polygon(V, n: int, phase: float = 0.0, certify: bool = False) -> WeightedPointSet:
    """Regular ``n``-gon on the unit circle of a plane, an equal-weight (n-1)-design.

    ``V`` is a Subspace or a ``(d, 2)`` matrix with orthonormal columns
    ``(u, v)``; vertex ``j`` is ``cos(2 pi j / n + phase) u + sin(...) v``.
    """
    if n < 2:
        raise ValueError("polygon needs n >= 2")
    basis = np.asarray(getattr(V, "basis", V), dtype=float)
    if basis.ndim != 2 or basis.shape[1] != 2:
        raise ValueError("regular_polygon needs a two-dimensional subspace")
    ang = 2 * np.pi * np.arange(n) / n + phase
    pts = np.outer(np.cos(ang), basis[:, 0]) + np.outer(np.sin(ang), basis[:, 1])
    out = WeightedPointSet(pts, np.ones(n), mode="float")
    if certify:
        flat = WeightedPointSet(np.column_stack([np.cos(ang), np.sin(ang)]), mode="float")
        if not check_spherical_design_pairwise(flat, n - 1):
            raise RuntimeError("polygon failed its own design check")
    return out
