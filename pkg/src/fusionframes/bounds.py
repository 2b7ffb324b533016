"""Cardinality constraints for equi-chordal tight 2-fusion frames on G(2,d).

For an equi-chordal TFF_2 of ``N`` planes the two one-row zonal identities
pin down the common value of ``e1 = y1 + y2`` and the mean of ``e2 = y1 y2``
over distinct pairs; AM-GM then forces ``d^2/4 <= N`` and the simplex bound
gives ``N <= d(d+1)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .certificate import Certificate
from .grassmann import (
    FrameConfig,
    Subspace,
    check_grassmann_design_4,
    check_tff,
    chs_embed,
    pairwise_invariants,
    weighted_invariant_sums,
    zonal_P2_e,
    _affine_coefficients,
)
from .numerics import binom, scalar_to_json
from .sphere_designs import WeightedPointSet, check_spherical_design_pairwise

__all__ = [
    "EctffReport",
    "SicSystem",
    "ectff2_moments",
    "check_ectff2",
    "qubit_sic",
    "sic_to_eitff",
    "design_to_sphere_map_check",
    "eitff2_possible",
]

FLOAT_TOL = 1e-9


@dataclass
class EctffReport:
    d: int
    N: int
    e10: Fraction
    e2_mean: Fraction
    gap: Fraction
    p22_sum: Fraction
    lower_ok: bool
    upper_ok: bool
    classification: str

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "N": self.N,
            "e10": scalar_to_json(self.e10),
            "e2_mean": scalar_to_json(self.e2_mean),
            "gap": scalar_to_json(self.gap),
            "p22_sum": scalar_to_json(self.p22_sum),
            "lower_bound": scalar_to_json(Fraction(self.d * self.d, 4)),
            "upper_bound": binom(self.d + 1, 2),
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
            "classification": self.classification,
        }
        if self.classification == "tight-4-design":
            out["note"] = "equality would make the frame a tight Grassmann 4-design; existence is not asserted"
        return out


def ectff2_moments(d: int, N: int) -> EctffReport:
    """Forced pair statistics of a hypothetical ECTFF_2 of ``N`` planes in R^d.

    ``classification`` is ``"EITFF2"`` at ``N = d^2/4``, ``"tight-4-design"``
    at ``N = d(d+1)/2``, ``"interior"`` strictly between, and ``"infeasible"``
    outside the bounds. No classification carries an existence claim.
    """
    if d < 4 or N < 2:
        raise ValueError("need d >= 4 and N >= 2")
    e10 = Fraction(2 * (2 * N - d), d * (N - 1))
    e2_mean = Fraction(d * d * (d + 2) + 2 * d * (d * d - 4 * d - 4) * N - 4 * (d - 6) * N * N,
                       d * d * (d + 2) * (N - 1) ** 2)
    gap = Fraction(-2 * N * (d - 2) * (d * d - 4 * N), d * d * (d + 2) * (N - 1) ** 2)
    p22 = Fraction(3 * N * N * (d - 2) ** 2 * (d * (d + 1) - 2 * N),
                   d * d * (N - 1) * (d - 3) * (d + 2))
    lower_ok = 4 * N >= d * d
    upper_ok = N <= binom(d + 1, 2)
    if not (lower_ok and upper_ok):
        cls = "infeasible"
    elif 4 * N == d * d:
        cls = "EITFF2"
    elif N == binom(d + 1, 2):
        cls = "tight-4-design"
    else:
        cls = "interior"
    return EctffReport(d, N, e10, e2_mean, gap, p22, lower_ok, upper_ok, cls)


def eitff2_possible(d: int) -> bool:
    """An EITFF_2 on G(2,d) needs ``N = d^2/4`` planes, so ``d`` must be even."""
    return d % 2 == 0


def check_ectff2(D: Sequence[Subspace]):
    """Test a plane configuration against the ECTFF_2 necessary conditions.

    Returns ``(certificate, report)``. The certificate passes iff the set is
    equi-chordal, a TFF_2, and its measured ``e1`` and mean ``e2`` match the
    forced values; equi-isoclinic inputs also have every ``e2`` checked
    against ``e1^2/4``.
    """
    D = list(D)
    if D[0].k != 2:
        raise ValueError("ECTFF_2 checks are for planes")
    N, d = len(D), D[0].d
    report = ectff2_moments(d, N)
    E1, E2 = pairwise_invariants(D)
    iu = np.triu_indices(N, 1)
    e1s, e2s = list(E1[iu]), list(E2[iu])
    exact = E1.dtype == object
    npairs = len(e1s)
    e1_mean = sum(e1s, Fraction(0) if exact else 0.0) / npairs
    e2_mean = sum(e2s, Fraction(0) if exact else 0.0) / npairs
    spread = max(e1s) - min(e1s)
    tff = check_tff(FrameConfig(D), 2)
    residuals = {
        "equichordal_spread": spread,
        "e10": e1_mean - report.e10,
        "e2_mean": e2_mean - report.e2_mean,
        "tff:1": tff.residuals[1] / (N * N),
        "tff:2": tff.residuals[2] / (N * N),
    }
    tol = Fraction(0) if exact else FLOAT_TOL
    ei = all(abs(a * a - 4 * b) <= tol for a, b in zip(e1s, e2s))
    if ei:
        residuals["eitff_pairs"] = max(abs(b - a * a / 4) for a, b in zip(e1s, e2s))
    mode = "exact" if exact else "float"
    cert = Certificate("ectff2", list(residuals), residuals, mode, tol, extra={
        "N": N, "d": d,
        "equiisoclinic": ei,
        "tff2": tff.passed,
        "classification": report.classification,
        "eitff_possible_in_d": eitff2_possible(d),
    })
    if ei and not eitff2_possible(d):
        # no EITFF_2 exists in odd dimension; a passing certificate would be a bug
        cert.extra["note"] = "odd d: no EITFF_2 exists"
    return cert, report


@dataclass
class SicSystem:
    """``n^2`` unit vectors in C^n with pairwise ``|<z_i, z_j>|^2 = 1/(n+1)``."""

    n: int
    vectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        Z = np.asarray(self.vectors, dtype=complex)
        if Z.shape != (self.n * self.n, self.n):
            raise ValueError(f"need {self.n ** 2} vectors in C^{self.n}")
        G = np.abs(Z.conj() @ Z.T) ** 2
        target = np.full_like(G, 1.0 / (self.n + 1))
        np.fill_diagonal(target, 1.0)
        err = np.abs(G - target).max()
        if err > 1e-10:
            raise ValueError(f"SIC overlap condition violated by {err:.2e}")
        self.vectors = Z


def qubit_sic() -> SicSystem:
    """Tetrahedral SIC in C^2: ``(1, 0)`` and ``(1/sqrt3, sqrt(2/3) w^j)``, ``w = exp(2 pi i/3)``."""
    w = np.exp(2j * np.pi / 3)
    vecs = [[1.0, 0.0]] + [[1 / np.sqrt(3), np.sqrt(2 / 3) * w ** j] for j in range(3)]
    return SicSystem(2, np.array(vecs))


def _realify(z: np.ndarray) -> np.ndarray:
    out = np.empty(2 * len(z))
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def sic_to_eitff(S: SicSystem) -> list[Subspace]:
    """Real planes ``span_R{z, iz}`` in R^{2n}, one per SIC vector."""
    planes = []
    for z in S.vectors:
        z = z / np.linalg.norm(z)
        planes.append(Subspace.from_basis(np.column_stack([_realify(z), _realify(1j * z)])))
    return planes


def design_to_sphere_map_check(D: Sequence[Subspace]) -> Certificate:
    """Check the projector embedding against Grassmann 4-design status.

    Passes iff (a) every image is a unit vector of R^{D0}, (b) the P_(2)
    double sum equals the degree-1 Gegenbauer double sum of the images, and
    (c) the implication "Grassmann 4-design => image is a spherical
    2-design" is not violated.
    """
    D = list(D)
    N, d, k = len(D), D[0].d, D[0].k
    Y = np.stack([chs_embed(V) for V in D])
    D0 = binom(d + 1, 2) - 1
    unit_err = float(np.abs(np.einsum("ij,ij->i", Y, Y) - 1).max())
    image = WeightedPointSet(Y / np.linalg.norm(Y, axis=1)[:, None], mode="float")
    sphere2 = check_spherical_design_pairwise(image, 2)
    residuals = {"unit_norm": unit_err}
    extra = {"N": N, "d": d, "k": k, "D0": D0, "image_sphere2": sphere2.to_json()}
    if k == 2:
        design4 = check_grassmann_design_4(D)
        sums = weighted_invariant_sums(D)
        c = _affine_coefficients(lambda e1, e2: zonal_P2_e(e1, d))
        p2_sum = float(c[0] * sums["S0"] + c[1] * sums["S1"])
        residuals["p2_vs_gegenbauer1"] = (p2_sum - sphere2.residuals[1]) / (N * N)
        residuals["implication"] = 0.0 if (not design4.passed or sphere2.passed) else 1.0
        extra["grassmann4"] = design4.to_json()
    return Certificate("chs-embedding", list(residuals), residuals, "float", FLOAT_TOL, extra=extra)


def simplex_equality(D: Sequence[Subspace]) -> tuple:
    """``(min d_C^2, simplex bound)`` for the configuration."""
    from .grassmann import min_chordal_sq, simplex_bound
    return min_chordal_sq(D), simplex_bound(D[0].d, D[0].k, len(D))
