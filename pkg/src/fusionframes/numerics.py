"""Exact and floating-point numerical helpers.

Exact scalars are :class:`fractions.Fraction`; exact matrices are numpy
arrays of ``dtype=object`` holding Fractions, so the usual ``@``, ``.T``
and ``np.trace`` work unchanged in both modes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Fraction",
    "CLAMP_SLACK",
    "RankDeficiencyError",
    "as_fraction",
    "fraction_to_str",
    "parse_scalar",
    "scalar_to_json",
    "pochhammer",
    "binom",
    "exact_array",
    "is_exact",
    "to_float",
    "svd_singular_values",
    "gram_schmidt",
    "orthogonal_projector",
    "matrix_to_json",
    "matrix_from_json",
]

# singular values of Q_V^T Q_W may exceed 1 by rounding; more than this is a bug
CLAMP_SLACK = 1e-9


class RankDeficiencyError(ValueError):
    """Raised when a set of spanning vectors is linearly dependent."""


def as_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, Fraction) and type(x.numerator) is int and type(x.denominator) is int:
        return x
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"refusing to convert float {x!r} to an exact scalar")
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def fraction_to_str(q: Fraction) -> str:
    """Canonical ``"p/q"`` form, or ``"p"`` when the denominator is 1."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_scalar(x):
    """Inverse of :func:`scalar_to_json`: strings become Fractions, numbers floats."""
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    return float(x)


def scalar_to_json(x):
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return fraction_to_str(x)
    return float(x)


def pochhammer(a, m: int):
    """Rising factorial ``a (a+1) ... (a+m-1)``; equals 1 for ``m == 0``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if not isinstance(a, float):
        a = as_fraction(a)
    out = Fraction(1) if isinstance(a, Fraction) else 1.0
    for i in range(m):
        out *= a + i
    return out


@lru_cache(maxsize=None)
def binom(n: int, k: int) -> int:
    """Binomial coefficient with ``binom(n, k) == 0`` whenever ``k < 0`` or ``k > n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    k = min(k, n - k)
    return binom(n - 1, k - 1) * n // k


def exact_array(rows) -> np.ndarray:
    """Build an object array of Fractions from nested sequences."""
    arr = np.array(rows, dtype=object)
    flat = arr.reshape(-1)
    for i, x in enumerate(flat):
        flat[i] = as_fraction(x)
    return flat.reshape(arr.shape)


def is_exact(arr) -> bool:
    arr = np.asarray(arr)
    if arr.dtype != object:
        return False
    return all(isinstance(x, (Fraction, int)) and not isinstance(x, bool)
               for x in arr.reshape(-1))


def to_float(arr) -> np.ndarray:
    return np.asarray(arr, dtype=float)


def svd_singular_values(M, clamp: bool = False) -> np.ndarray:
    """Singular values of a small matrix, in non-increasing order.

    With ``clamp=True`` the input is taken to be a cross-Gram matrix
    ``Q_V^T Q_W`` of two orthonormal bases, whose singular values lie in
    ``[0, 1]``; values are clipped into that interval and anything further
    than ``CLAMP_SLACK`` outside it raises ``ValueError``.
    """
    M = to_float(M)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    s = np.linalg.svd(M, compute_uv=False)
    s = np.sort(s)[::-1]
    if clamp:
        if s.size and (s[0] > 1 + CLAMP_SLACK):
            raise ValueError(f"singular value {s[0]!r} exceeds 1 beyond rounding")
        s = np.clip(s, 0.0, 1.0)
    return s


def gram_schmidt(vectors: Sequence[Sequence], exact: bool = False,
                 tol: float = 1e-12) -> np.ndarray:
    """Orthonormalize ``vectors`` and return them as the columns of a matrix.

    In exact mode the vectors must be rational and every orthogonalized
    vector must have a rational norm, otherwise ``ValueError`` is raised
    (use :func:`orthogonal_projector` when only the projector is needed).
    """
    if exact:
        vecs = [exact_array(v) for v in vectors]
        basis = []
        for v in vecs:
            w = v.copy()
            for q in basis:
                w = w - (q @ w) * q
            nsq = w @ w
            if nsq == 0:
                raise RankDeficiencyError("vectors are linearly dependent")
            root = _rational_sqrt(nsq)
            if root is None:
                raise ValueError(f"norm^2 {nsq} has no rational square root")
            basis.append(w / root)
        return np.array(basis, dtype=object).T

    vecs = [np.asarray(v, dtype=float) for v in vectors]
    basis = []
    for v in vecs:
        w = v.copy()
        # two passes keep orthogonality at machine precision
        for _ in range(2):
            for q in basis:
                w -= (q @ w) * q
        n = np.linalg.norm(w)
        if n <= tol * max(1.0, np.linalg.norm(v)):
            raise RankDeficiencyError("vectors are linearly dependent")
        basis.append(w / n)
    return np.array(basis).T


def _rational_sqrt(q: Fraction):
    from math import isqrt
    p, r = q.numerator, q.denominator
    if p < 0:
        return None
    sp, sr = isqrt(p), isqrt(r)
    if sp * sp == p and sr * sr == r:
        return Fraction(sp, sr)
    return None


def orthogonal_projector(vectors: Iterable[Sequence]) -> np.ndarray:
    """Projector ``sum u u^T / |u|^2`` onto the span of pairwise-orthogonal vectors.

    Exact whenever the vectors are rational, even if their normalized forms
    are not (e.g. ``(1, 1, 0) / sqrt(2)``).
    """
    vecs = list(vectors)
    exact = all(is_exact(np.asarray(v, dtype=object)) for v in vecs)
    conv = exact_array if exact else (lambda v: np.asarray(v, dtype=float))
    vecs = [conv(v) for v in vecs]
    for i in range(len(vecs)):
        for j in range(i):
            dot = vecs[i] @ vecs[j]
            if (dot != 0) if exact else abs(dot) > 1e-12:
                raise ValueError("spanning vectors must be pairwise orthogonal")
    d = len(vecs[0])
    P = np.zeros((d, d), dtype=object) if exact else np.zeros((d, d))
    if exact:
        P[:] = Fraction(0)
    for u in vecs:
        nsq = u @ u
        if nsq == 0:
            raise RankDeficiencyError("zero spanning vector")
        P = P + np.outer(u, u) / nsq
    return P


def matrix_to_json(M) -> list:
    """Row-major nested lists; exact entries become ``"p/q"`` strings."""
    M = np.asarray(M)
    return [[scalar_to_json(x) for x in row] for row in np.atleast_2d(M)]


def matrix_from_json(rows) -> np.ndarray:
    vals = [[parse_scalar(x) for x in row] for row in rows]
    if all(isinstance(x, Fraction) for row in vals for x in row):
        return exact_array(vals)
    return np.array([[float(x) for x in row] for row in vals])
