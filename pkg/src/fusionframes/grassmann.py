"""Subspaces of R^d, principal angles, zonal polynomials and frame checks.

Exact subspaces are stored through pairwise-orthogonal *integer* spanning
vectors; the projector ``sum_i s_i s_i^T / |s_i|^2`` is then rational even
when the orthonormal basis is not. All pair quantities used by the checks
(``e1 = tr(P_V P_W) = y_1 + y_2`` and ``e2 = y_1 y_2``) come out as integer
numerators over known denominators, which keeps large configurations exact
without building a Fraction per pair.
"""

from __future__ import annotations

import numbers

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, sqrt
from typing import Callable, Sequence

import numpy as np

from .certificate import Certificate
from .numerics import (
    RankDeficiencyError,
    as_fraction,
    exact_array,
    gram_schmidt,
    is_exact,
    matrix_from_json,
    matrix_to_json,
    parse_scalar,
    scalar_to_json,
    svd_singular_values,
)

__all__ = [
    "Subspace",
    "AnglePair",
    "FrameConfig",
    "EqualityReport",
    "principal_angles",
    "pair_invariants",
    "pairwise_invariants",
    "weighted_invariant_sums",
    "chordal_distance",
    "chordal_distance_sq",
    "is_equichordal",
    "is_equiisoclinic",
    "zonal_P2",
    "zonal_P4",
    "zonal_P22",
    "zonal_P2_e",
    "zonal_P4_e",
    "zonal_P22_e",
    "check_tff",
    "check_grassmann_design_4",
    "chs_matrix",
    "chs_embed",
    "chs_inner",
    "simplex_bound",
    "min_chordal_sq",
    "UnsupportedError",
]

EC_TOL = 1e-9


class UnsupportedError(ValueError):
    """Raised for (k, t) combinations with no explicit zonal data."""


def _primitive_int(v) -> list[int]:
    q = [as_fraction(x) for x in v]
    den = lcm(*(x.denominator for x in q)) if q else 1
    ints = [int(x * den) for x in q]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise RankDeficiencyError("zero spanning vector")
    return [x // g for x in ints]


class Subspace:
    """A k-dimensional subspace of R^d.

    Parameters
    ----------
    span : array-like, shape (k, d)
        Pairwise-orthogonal spanning vectors. Integer rows give an exact
        subspace; float rows must be orthonormal.
    """

    __slots__ = ("span", "norms2", "exact", "__dict__")

    def __init__(self, span, exact: bool | None = None):
        arr = np.asarray(span)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise ValueError("span must be a non-empty (k, d) array")
        if exact is None:
            exact = arr.dtype.kind in "iu" or is_exact(arr)
        self.exact = bool(exact)
        if self.exact:
            rows = [[int(x) for x in r] for r in arr]
            big = max(abs(x) for r in rows for x in r)
            dtype = np.int64 if big < 2**20 else object
            self.span = np.array(rows, dtype=dtype)
            self.norms2 = np.array([sum(x * x for x in r) for r in rows], dtype=dtype)
            gram = self.span @ self.span.T
            if np.any(gram[~np.eye(len(rows), dtype=bool)] != 0):
                raise ValueError("exact spanning vectors must be pairwise orthogonal")
            if np.any(self.norms2 == 0):
                raise RankDeficiencyError("zero spanning vector")
        else:
            self.span = np.asarray(arr, dtype=float)
            self.norms2 = np.ones(arr.shape[0])
            err = np.abs(self.span @ self.span.T - np.eye(arr.shape[0])).max()
            if err > 1e-12:
                raise ValueError(f"float basis not orthonormal (error {err:.2e})")

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], exact: bool | None = None) -> "Subspace":
        """Subspace spanned by ``vectors`` (linearly independent, any mutual angles)."""
        vecs = [list(v) for v in vectors]
        rational = all(not isinstance(x, float) and not isinstance(x, np.floating)
                       for v in vecs for x in v)
        if exact is None:
            exact = rational
        if exact:
            if not rational:
                raise ValueError("exact subspace needs rational spanning vectors")
            orth = []
            for v in vecs:
                w = exact_array(v)
                for q in orth:
                    w = w - (q @ w) / (q @ q) * q
                if all(x == 0 for x in w):
                    raise RankDeficiencyError("vectors are linearly dependent")
                orth.append(exact_array(_primitive_int(w)))
            return cls(np.array([[int(x) for x in o] for o in orth]), exact=True)
        Q = gram_schmidt([np.asarray(v, dtype=float) for v in vecs])
        return cls(Q.T, exact=False)

    @classmethod
    def from_basis(cls, Q) -> "Subspace":
        """Float subspace from a ``(d, k)`` matrix with orthonormal columns."""
        return cls(np.asarray(Q, dtype=float).T, exact=False)

    @property
    def d(self) -> int:
        return self.span.shape[1]

    @property
    def k(self) -> int:
        return self.span.shape[0]

    @cached_property
    def basis(self) -> np.ndarray:
        """Orthonormal basis as the columns of a ``(d, k)`` float matrix."""
        S = np.asarray(self.span, dtype=float)
        return (S / np.sqrt(np.asarray(self.norms2, dtype=float))[:, None]).T

    @cached_property
    def projector(self) -> np.ndarray:
        """Orthogonal projector: exact Fractions for exact subspaces, floats otherwise."""
        if not self.exact:
            return self.basis @ self.basis.T
        num, den = self.projector_int
        P = np.empty(num.shape, dtype=object)
        for idx, x in np.ndenumerate(num):
            P[idx] = Fraction(int(x), den)
        return P

    @cached_property
    def projector_int(self) -> tuple[np.ndarray, int]:
        """``(N, L)`` with ``P = N / L`` and ``gcd(entries of N, L) == 1``."""
        if not self.exact:
            raise ValueError("float subspace has no exact projector")
        L = 1
        for n in self.norms2:
            L *= int(n)
        num = sum((L // int(n)) * np.outer(s, s) for s, n in zip(self.span, self.norms2))
        g = int(np.gcd.reduce(np.abs(num).reshape(-1).astype(object))) if num.size else 1
        g = gcd(g, L)
        return num // g, L // g

    def key(self):
        """Hashable identity: equal keys iff equal subspaces (exact mode only)."""
        num, den = self.projector_int
        return (self.d, den, tuple(int(x) for x in num.reshape(-1)))

    def transformed(self, perm: Sequence[int], signs: Sequence[int]) -> "Subspace":
        """Image under the signed permutation ``x -> (signs[i] * x[perm^{-1}(i)])``.

        Coordinate ``j`` of the input is sent to coordinate ``perm[j]``.
        """
        perm = np.asarray(perm)
        signs = np.asarray(signs)
        new = np.empty_like(self.span)
        new[:, perm] = self.span
        new = new * signs
        return Subspace(new, exact=self.exact)

    def validate(self) -> None:
        """Check the orthonormality and (exact) projector invariants; raise on failure."""
        Q = self.basis
        if np.abs(Q.T @ Q - np.eye(self.k)).max() > 1e-12:
            raise ValueError("basis not orthonormal")
        if self.exact:
            P = self.projector
            if np.any(P != P.T):
                raise ValueError("projector not symmetric")
            if np.any(P @ P != P):
                raise ValueError("projector not idempotent")
            if np.trace(P) != self.k:
                raise ValueError("projector trace differs from k")
            if np.abs(np.asarray(P, dtype=float) - Q @ Q.T).max() > 1e-10:
                raise ValueError("projector disagrees with basis")

    def __eq__(self, other):
        if not isinstance(other, Subspace) or (self.d, self.k) != (other.d, other.k):
            return NotImplemented
        if self.exact and other.exact:
            return self.key() == other.key()
        return bool(np.allclose(self.basis @ self.basis.T, other.basis @ other.basis.T,
                                atol=1e-10))

    __hash__ = None

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"Subspace(d={self.d}, k={self.k}, {mode})"

    def to_json(self) -> dict:
        out = {"d": self.d, "k": self.k, "basis": matrix_to_json(self.basis)}
        if self.exact:
            out["projector"] = matrix_to_json(self.projector)
            out["span"] = [[int(x) for x in r] for r in self.span]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        if "span" in obj:
            V = cls(np.array(obj["span"], dtype=object), exact=True)
        else:
            V = cls.from_basis(np.asarray(matrix_from_json(obj["basis"]), dtype=float))
        if (V.d, V.k) != (obj["d"], obj["k"]):
            raise ValueError("declared (d, k) disagrees with data")
        if "projector" in obj and V.exact:
            if np.any(matrix_from_json(obj["projector"]) != V.projector):
                raise ValueError("stored projector disagrees with spanning vectors")
        V.validate()
        return V


@dataclass(frozen=True)
class AnglePair:
    """Squared cosines of the principal angles, non-increasing, plus e1 and e2."""

    y: tuple
    e1: float | Fraction
    e2: float | Fraction | None

    @property
    def y1(self):
        return self.y[0]

    @property
    def y2(self):
        return self.y[1]

    @property
    def angles(self) -> tuple:
        return tuple(float(np.arccos(np.sqrt(v))) for v in self.y)


def _check_same(V: Subspace, W: Subspace):
    if (V.d, V.k) != (W.d, W.k):
        raise ValueError(f"mismatched subspaces {V!r} and {W!r}")


def principal_angles(V: Subspace, W: Subspace) -> AnglePair:
    """Principal angles via the singular values of ``Q_V^T Q_W``."""
    _check_same(V, W)
    s = svd_singular_values(V.basis.T @ W.basis, clamp=True)
    y = tuple(float(x * x) for x in s)
    e1, e2 = pair_invariants(V, W)
    return AnglePair(y, e1, e2)


# --- vectorized pair kernel -------------------------------------------------

def _stack(subspaces: Sequence[Subspace]):
    V0 = subspaces[0]
    for V in subspaces:
        _check_same(V0, V)
    exact = all(V.exact for V in subspaces)
    if exact:
        spans = np.stack([np.asarray(V.span, dtype=object) for V in subspaces])
        norms = np.stack([np.asarray(V.norms2, dtype=object) for V in subspaces])
        if max(abs(int(x)) for x in spans.reshape(-1)) < 2**20:
            spans = spans.astype(np.int64)
            norms = norms.astype(np.int64)
    else:
        spans = np.stack([V.basis.T for V in subspaces])
        norms = np.ones((len(subspaces), V0.k))
    return exact, spans, norms


def _cross(spans_a, spans_b):
    """Cross-Gram blocks ``C[a, b, i, j] = <s_{a,i}, s_{b,j}>``."""
    na, k, d = spans_a.shape
    nb = spans_b.shape[0]
    A = spans_a.reshape(na * k, d)
    B = spans_b.reshape(nb * k, d)
    if A.dtype == np.int64:
        # float64 BLAS is exact while |entries| stay far below 2**53
        bound = int(np.abs(A).max()) * int(np.abs(B).max()) * d
        if bound < 2**52:
            C = np.rint(A.astype(float) @ B.astype(float).T).astype(np.int64)
        else:
            C = A.astype(object) @ B.astype(object).T
    else:
        C = A @ B.T
    return C.reshape(na, k, nb, k).transpose(0, 2, 1, 3)


def _pair_numerators(C, norms_a, norms_b):
    """Integer (or float) numerators of e1 and e2 over the denominator ``L_a L_b``.

    ``L`` is the product of the squared norms of a subspace's spanning vectors.
    """
    k = C.shape[-1]
    if k == 1:
        e1 = C[..., 0, 0] ** 2
        return e1, np.zeros_like(e1)
    if k != 2:
        # general k: e1 only
        ra = np.prod(norms_a, axis=1)[:, None] // norms_a if C.dtype != float else \
            np.ones_like(norms_a)
        rb = np.prod(norms_b, axis=1)[:, None] // norms_b if C.dtype != float else \
            np.ones_like(norms_b)
        e1 = np.einsum("abij,ai,bj->ab", C * C, ra, rb)
        return e1, None
    # r_a = (L_a / n_{a,0}, L_a / n_{a,1}) = (n_{a,1}, n_{a,0})
    ra0, ra1 = norms_a[:, 1][:, None], norms_a[:, 0][:, None]
    rb0, rb1 = norms_b[:, 1][None, :], norms_b[:, 0][None, :]
    c00, c01, c10, c11 = C[..., 0, 0], C[..., 0, 1], C[..., 1, 0], C[..., 1, 1]
    e1 = c00 * c00 * ra0 * rb0 + c01 * c01 * ra0 * rb1 + c10 * c10 * ra1 * rb0 + c11 * c11 * ra1 * rb1
    det = c00 * c11 - c01 * c10
    return e1, det * det


def pair_invariants(V: Subspace, W: Subspace):
    """``(e1, e2)`` = (sum, product) of squared principal cosines; e2 is None for k > 2.

    Exact Fractions when both subspaces are exact.
    """
    _check_same(V, W)
    exact, spans, norms = _stack([V, W])
    C = _cross(spans[:1], spans[1:])
    e1n, e2n = _pair_numerators(C, norms[:1], norms[1:])
    if exact:
        L = int(np.prod(norms[0].astype(object))) * int(np.prod(norms[1].astype(object)))
        e1 = Fraction(int(e1n[0, 0]), L)
        e2 = None if e2n is None else Fraction(int(e2n[0, 0]), L)
        if V.k == 1:
            e2 = Fraction(0)
        return e1, e2
    e1 = float(e1n[0, 0])
    e2 = None if e2n is None else float(e2n[0, 0])
    return e1, e2


def pairwise_invariants(subspaces: Sequence[Subspace]):
    """Matrices ``(E1, E2)`` of pair invariants (object Fractions when exact)."""
    exact, spans, norms = _stack(subspaces)
    C = _cross(spans, spans)
    e1n, e2n = _pair_numerators(C, norms, norms)
    if not exact:
        return np.asarray(e1n, dtype=float), (None if e2n is None else np.asarray(e2n, dtype=float))
    L = [int(np.prod(n.astype(object))) for n in norms]
    n = len(subspaces)
    E1 = np.empty((n, n), dtype=object)
    E2 = np.empty((n, n), dtype=object) if e2n is not None else None
    for a in range(n):
        for b in range(n):
            E1[a, b] = Fraction(int(e1n[a, b]), L[a] * L[b])
            if E2 is not None:
                E2[a, b] = Fraction(int(e2n[a, b]), L[a] * L[b])
    return E1, E2


def _safe_sum(x, square=False):
    if x.dtype == np.int64:
        m = int(np.abs(x).max()) if x.size else 0
        if square:
            if m * m * x.size < 2**62:
                return int(np.sum(x * x))
            x = x.astype(object)
            return int(np.sum(x * x))
        if m * x.size < 2**62:
            return int(np.sum(x))
        return int(np.sum(x.astype(object)))
    if x.dtype == object:
        return sum((v * v for v in x.reshape(-1)), 0) if square else sum(x.reshape(-1), 0)
    return float(np.sum(x * x)) if square else float(np.sum(x))


def weighted_invariant_sums(subspaces: Sequence[Subspace], weights=None,
                            chunk: int = 2_000_000) -> dict:
    """Weighted sums over ordered pairs ``(V, W)`` (diagonal included).

    Returns ``{"S0": sum w_V w_W, "S1": ... * e1, "S11": ... * e1**2, "S2": ... * e2}``,
    exact whenever every subspace and weight is exact. Any zonal polynomial of
    degree <= 2 in the squared cosines is affine in ``(e1, e1**2, e2)``, so
    these four numbers determine every zonal double sum this package uses.
    """
    n = len(subspaces)
    if n == 0:
        raise ValueError("empty configuration")
    if weights is None:
        weights = [Fraction(1)] * n
    if len(weights) != n:
        raise ValueError("weights and subspaces differ in length")
    exact, spans, norms = _stack(subspaces)
    wexact = all(isinstance(w, numbers.Rational) and not isinstance(w, bool) for w in weights)
    exact = exact and wexact
    if not exact:
        spans = np.stack([V.basis.T for V in subspaces])
        norms = np.ones((n, subspaces[0].k))
        weights = [float(w) for w in weights]
    if exact:
        Ls = [int(np.prod(np.asarray(nv, dtype=object))) for nv in norms]
        groups: dict = {}
        for i, (w, L) in enumerate(zip(weights, Ls)):
            groups.setdefault((as_fraction(w), L), []).append(i)
        totals = {"S0": Fraction(0), "S1": Fraction(0), "S11": Fraction(0), "S2": Fraction(0)}
        keys = list(groups)
        for ga in keys:
            ia = np.array(groups[ga])
            for gb in keys:
                ib = np.array(groups[gb])
                step = max(1, chunk // max(1, len(ib)))
                s1 = s11 = s2 = 0
                for start in range(0, len(ia), step):
                    rows = ia[start:start + step]
                    C = _cross(spans[rows], spans[ib])
                    e1n, e2n = _pair_numerators(C, norms[rows], norms[ib])
                    s1 += _safe_sum(e1n)
                    s11 += _safe_sum(e1n, square=True)
                    if e2n is not None:
                        s2 += _safe_sum(e2n)
                wa, La = ga
                wb, Lb = gb
                ww = wa * wb
                den = La * Lb
                totals["S0"] += ww * len(ia) * len(ib)
                totals["S1"] += ww * Fraction(s1, den)
                totals["S11"] += ww * Fraction(s11, den * den)
                totals["S2"] += ww * Fraction(s2, den)
        return totals

    w = np.asarray(weights, dtype=float)
    totals = {"S0": float(w.sum() ** 2), "S1": 0.0, "S11": 0.0, "S2": 0.0}
    step = max(1, chunk // n)
    for start in range(0, n, step):
        rows = slice(start, start + step)
        C = _cross(spans[rows], spans)
        e1, e2 = _pair_numerators(C, norms[rows], norms)
        ww = np.outer(w[rows], w)
        totals["S1"] += float(np.sum(ww * e1))
        totals["S11"] += float(np.sum(ww * e1 * e1))
        if e2 is not None:
            totals["S2"] += float(np.sum(ww * e2))
    return totals


# --- distances ----------------------------------------------------------------

def chordal_distance_sq(V: Subspace, W: Subspace):
    """``sum_l sin^2(theta_l) = k - tr(P_V P_W)``; exact for exact subspaces."""
    e1, _ = pair_invariants(V, W)
    return V.k - e1


def chordal_distance(V: Subspace, W: Subspace) -> float:
    return sqrt(max(0.0, float(chordal_distance_sq(V, W))))


@dataclass
class EqualityReport:
    """Verdict of an all-pairs-equal predicate, with the common value when it holds."""

    passed: bool
    value: float | Fraction | None
    spread: float
    mode: str

    def __bool__(self):
        return self.passed


def _spread(vals, exact):
    if exact:
        return float(max(vals) - min(vals))
    return float(np.max(vals) - np.min(vals))


def is_equichordal(D: Sequence[Subspace], tol: float | None = None) -> EqualityReport:
    """All pairwise chordal distances equal; ``value`` is the common ``d_C^2``."""
    if len(D) < 2:
        raise ValueError("need at least two subspaces")
    E1, _ = pairwise_invariants(D)
    exact = E1.dtype == object
    iu = np.triu_indices(len(D), 1)
    dist = [D[0].k - x for x in E1[iu]] if exact else D[0].k - E1[iu]
    if exact and tol is None:
        ok = all(x == dist[0] for x in dist)
        return EqualityReport(ok, dist[0] if ok else None, _spread(dist, True), "exact")
    tol = EC_TOL if tol is None else tol
    dist = np.asarray([float(x) for x in dist])
    spread = float(dist.max() - dist.min())
    ok = spread <= tol
    return EqualityReport(ok, float(dist.mean()) if ok else None, spread, "float")


def is_equiisoclinic(D: Sequence[Subspace], tol: float | None = None) -> EqualityReport:
    """All principal angles of all distinct pairs equal; value is the common cos^2."""
    if len(D) < 2:
        raise ValueError("need at least two subspaces")
    k = D[0].k
    exact = all(V.exact for V in D) and tol is None and k <= 2
    if exact:
        E1, E2 = pairwise_invariants(D)
        iu = np.triu_indices(len(D), 1)
        vals = []
        for e1, e2 in zip(E1[iu], (E2[iu] if E2 is not None else E1[iu] * 0)):
            if k == 2 and e1 * e1 != 4 * e2:
                return EqualityReport(False, None, float("nan"), "exact")
            vals.append(e1 / k)
        ok = all(v == vals[0] for v in vals)
        return EqualityReport(ok, vals[0] if ok else None, _spread(vals, True), "exact")
    tol = EC_TOL if tol is None else tol
    ys = []
    for i in range(len(D)):
        for j in range(i + 1, len(D)):
            s = svd_singular_values(D[i].basis.T @ D[j].basis, clamp=True)
            ys.extend(s * s)
    ys = np.asarray(ys)
    spread = float(ys.max() - ys.min())
    ok = spread <= tol
    return EqualityReport(ok, float(ys.mean()) if ok else None, spread, "float")


# --- zonal polynomials ----------------------------------------------------------

def _num(x):
    return x if isinstance(x, float) else as_fraction(x)


def _ones_like(y):
    return [Fraction(1)] * len(y)


def _c2(y):
    return sum(y[1:], y[0]) / len(y)


def _c4(y):
    k = len(y)
    sq = sum(v * v for v in y)
    cross = sum(y[i] * y[j] for i in range(k) for j in range(i + 1, k))
    return Fraction(3, k * (k + 2)) * (sq + Fraction(2, 3) * cross)


def _c22(y):
    k = len(y)
    cross = sum(y[i] * y[j] for i in range(k) for j in range(i + 1, k))
    return Fraction(2, k * (k - 1)) * cross


def _prepare(y, d, k):
    y = [_num(v) for v in y]
    if k is None:
        k = len(y)
    if len(y) != k:
        raise ValueError(f"expected {k} squared cosines, got {len(y)}")
    if not 1 <= k < d:
        raise ValueError("need 1 <= k < d")
    return y, d, k


def zonal_P2(y, d: int, k: int | None = None):
    """Zonal polynomial of type (2), normalized to 1 at ``y = (1, ..., 1)``."""
    y, d, k = _prepare(y, d, k)
    return Fraction(k, k - d) - Fraction(d, k - d) * _c2(y)


def _p4_raw(y, d, k):
    return 1 - Fraction(2 * (d + 2), k) * _c2(y) + Fraction((d + 2) * (d + 4), k * (k + 2)) * _c4(y)


def zonal_P4(y, d: int, k: int | None = None):
    """Zonal polynomial of type (4), normalized to 1 at ``y = (1, ..., 1)``."""
    y, d, k = _prepare(y, d, k)
    norm = _p4_raw(_ones_like(y), d, k)
    if norm == 0:
        raise ValueError("degenerate normalization for P_(4)")
    return _p4_raw(y, d, k) / norm


def _p22_raw(y, d, k):
    return 1 - Fraction(2 * (d - 1), k) * _c2(y) + Fraction((d - 1) * (d - 2), k * (k - 1)) * _c22(y)


def zonal_P22(y, d: int, k: int | None = None):
    """Zonal polynomial of type (2,2); needs ``k >= 2``."""
    y, d, k = _prepare(y, d, k)
    if k < 2:
        raise ValueError("P_(2,2) needs k >= 2")
    norm = _p22_raw(_ones_like(y), d, k)
    if norm == 0:
        raise ValueError("degenerate normalization for P_(2,2)")
    return _p22_raw(y, d, k) / norm


def _check_k2_domain(d):
    if d < 4:
        raise ValueError("closed forms on G(2,d) need d >= 4")


def zonal_P2_e(e1, d: int):
    """P_(2) on G(2,d) in terms of ``e1 = y1 + y2``."""
    _check_k2_domain(d)
    e1 = _num(e1)
    return (4 - d * e1) / Fraction(2 * (2 - d))


def zonal_P4_e(e1, e2, d: int):
    """P_(4) on G(2,d) in terms of ``e1 = y1 + y2`` and ``e2 = y1 y2``."""
    _check_k2_domain(d)
    e1, e2 = _num(e1), _num(e2)
    raw = (1 - Fraction(d + 2, 2) * e1 + Fraction(3 * (d + 2) * (d + 4), 64) * e1 * e1
           - Fraction((d + 2) * (d + 4), 16) * e2)
    return Fraction(8, d * (d - 2)) * raw


def zonal_P22_e(e1, e2, d: int):
    """P_(2,2) on G(2,d) in terms of ``e1`` and ``e2``."""
    _check_k2_domain(d)
    e1, e2 = _num(e1), _num(e2)
    raw = 1 - Fraction(d - 1, 2) * e1 + Fraction((d - 2) * (d - 1), 2) * e2
    return Fraction(2, (d - 2) * (d - 3)) * raw


def _affine_coefficients(f: Callable):
    """Coefficients ``(c0, c1, c11, c2)`` with ``f(e1, e2) = c0 + c1 e1 + c11 e1^2 + c2 e2``."""
    F = lambda a, b: as_fraction(f(Fraction(a), Fraction(b)))
    c0 = F(0, 0)
    c2 = F(0, 1) - c0
    f1, f2 = F(1, 0), F(2, 0)
    c11 = (f2 - 2 * f1 + c0) / 2
    c1 = f1 - c0 - c11
    return c0, c1, c11, c2


def _zonal_double_sum(f: Callable, sums: dict):
    c0, c1, c11, c2 = _affine_coefficients(f)
    if isinstance(sums["S1"], float):
        c0, c1, c11, c2 = map(float, (c0, c1, c11, c2))
    return c0 * sums["S0"] + c1 * sums["S1"] + c11 * sums["S11"] + c2 * sums["S2"]


def _zonal_callables(d: int, k: int) -> dict:
    if k == 2:
        return {
            "(2)": lambda e1, e2: zonal_P2_e(e1, d),
            "(4)": lambda e1, e2: zonal_P4_e(e1, e2, d),
            "(2,2)": lambda e1, e2: zonal_P22_e(e1, e2, d),
        }
    if k == 1:
        return {
            "(2)": lambda e1, e2: zonal_P2([e1], d, 1),
            "(4)": lambda e1, e2: zonal_P4([e1], d, 1),
        }
    raise UnsupportedError(f"no explicit zonal polynomials for k = {k}")


@dataclass
class FrameConfig:
    """Weighted family of subspaces sharing ``(d, k)``."""

    subspaces: list
    weights: list = field(default=None)

    def __post_init__(self):
        if not self.subspaces:
            raise ValueError("frame must be non-empty")
        V0 = self.subspaces[0]
        for V in self.subspaces:
            _check_same(V0, V)
        if self.weights is None:
            self.weights = [Fraction(1)] * len(self.subspaces)
        self.weights = [w if isinstance(w, float) else as_fraction(w) for w in self.weights]
        if len(self.weights) != len(self.subspaces):
            raise ValueError("weights and subspaces differ in length")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")

    @property
    def d(self) -> int:
        return self.subspaces[0].d

    @property
    def k(self) -> int:
        return self.subspaces[0].k

    @property
    def total_weight(self):
        return sum(self.weights[1:], self.weights[0])

    def __len__(self):
        return len(self.subspaces)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "subspaces": [V.to_json() for V in self.subspaces],
            "weights": [scalar_to_json(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FrameConfig":
        subs = [Subspace.from_json(s) for s in obj["subspaces"]]
        weights = [parse_scalar(w) for w in obj["weights"]] if "weights" in obj else None
        F = cls(subs, weights)
        if (F.d, F.k) != (obj["d"], obj["k"]):
            raise ValueError("declared (d, k) disagrees with subspaces")
        return F


def _tolerance(n):
    return 1e-9 * n * n


def check_tff(F: FrameConfig, t: int) -> Certificate:
    """Tight t-fusion frame test through the one-row zonal double sums.

    Residual at degree ``l`` is ``sum_{V,W} w_V w_W P_(2l)(V, W)`` with the
    weights rescaled to mean 1; TFF_t iff all residuals ``l = 1..t`` vanish.
    """
    if t not in (1, 2):
        raise UnsupportedError("tight t-fusion frame checks are available for t in {1, 2}")
    if F.k not in (1, 2):
        raise UnsupportedError(f"no explicit zonal polynomials for k = {F.k}")
    if F.k == 2 and F.d < 4:
        raise UnsupportedError("G(2,d) checks need d >= 4")
    n = len(F)
    W = F.total_weight
    weights = [w * n / W for w in F.weights]
    sums = weighted_invariant_sums(F.subspaces, weights)
    exact = not isinstance(sums["S1"], float)
    fs = _zonal_callables(F.d, F.k)
    residuals = {}
    for ell, name in ((1, "(2)"), (2, "(4)"))[:t]:
        residuals[ell] = _zonal_double_sum(fs[name], sums)
    mode = "exact" if exact else "float"
    return Certificate(f"tight-{t}-fusion-frame", list(range(1, t + 1)), residuals, mode,
                       Fraction(0) if exact else _tolerance(n),
                       extra={"N": n, "d": F.d, "k": F.k})


def check_grassmann_design_4(D: Sequence[Subspace]) -> Certificate:
    """Grassmann 4-design test on G(2,d): the P_(2), P_(4), P_(2,2) double sums all vanish."""
    D = list(D)
    if D[0].k != 2:
        raise UnsupportedError("Grassmann 4-design check is implemented for k = 2")
    d = D[0].d
    if d < 4:
        raise UnsupportedError("G(2,d) checks need d >= 4")
    sums = weighted_invariant_sums(D)
    exact = not isinstance(sums["S1"], float)
    fs = _zonal_callables(d, 2)
    residuals = {name: _zonal_double_sum(f, sums) for name, f in fs.items()}
    mode = "exact" if exact else "float"
    return Certificate("grassmann-4-design", ["(2)", "(4)", "(2,2)"], residuals, mode,
                       Fraction(0) if exact else _tolerance(len(D)),
                       extra={"N": len(D), "d": d})


# --- Conway-Hardin-Sloane embedding -----------------------------------------------

def chs_matrix(V: Subspace) -> np.ndarray:
    """``R_V = sqrt(d / (k (d-k))) (P_V - (k/d) I)``, a unit-norm traceless symmetric matrix."""
    d, k = V.d, V.k
    if k >= d:
        raise ValueError("embedding needs k < d")
    P = np.asarray(V.projector, dtype=float)
    return sqrt(d / (k * (d - k))) * (P - (k / d) * np.eye(d))


def _traceless_basis(d: int) -> np.ndarray:
    # Helmert rows: orthonormal basis of the sum-zero hyperplane
    H = np.zeros((d - 1, d))
    for m in range(1, d):
        H[m - 1, :m] = 1.0
        H[m - 1, m] = -m
        H[m - 1] /= sqrt(m * (m + 1))
    return H


def chs_embed(V: Subspace) -> np.ndarray:
    """Coordinates of ``R_V`` in an orthonormal basis of traceless symmetric matrices.

    The result lies on the unit sphere of R^{D0}, ``D0 = d(d+1)/2 - 1``, and
    Euclidean inner products equal Frobenius inner products of the ``R_V``.
    """
    R = chs_matrix(V)
    d = V.d
    iu = np.triu_indices(d, 1)
    off = sqrt(2.0) * R[iu]
    diag = _traceless_basis(d) @ np.diag(R)
    return np.concatenate([diag, off])


def chs_inner(V: Subspace, W: Subspace):
    """``<R_V, R_W>_F = d / (k (d-k)) (tr(P_V P_W) - k^2/d)``; exact for exact input."""
    d, k = V.d, V.k
    e1, _ = pair_invariants(V, W)
    if isinstance(e1, float):
        return d / (k * (d - k)) * (e1 - k * k / d)
    return Fraction(d, k * (d - k)) * (e1 - Fraction(k * k, d))


def simplex_bound(d: int, k: int, N: int) -> Fraction:
    """Upper bound ``k(d-k)/d * N/(N-1)`` on the minimal squared chordal distance."""
    if N < 2:
        raise ValueError("simplex bound needs N >= 2")
    return Fraction(k * (d - k), d) * Fraction(N, N - 1)


def min_chordal_sq(D: Sequence[Subspace]):
    """Smallest squared chordal distance over distinct pairs."""
    E1, _ = pairwise_invariants(D)
    iu = np.triu_indices(len(D), 1)
    k = D[0].k
    vals = [k - x for x in E1[iu]]
    return min(vals)
