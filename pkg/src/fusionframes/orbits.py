"""Hyperoctahedral orbits of planes in G(2,d) and their tight 2-fusion-frame test.

The orbit ``O_{a,b}^{(d)}`` consists of the planes spanned by the (scaled)
signed indicator vectors of two disjoint index sets ``A``, ``B`` with
``|A| = a``, ``|B| = b``. A union of whole orbits is invariant under signed
coordinate permutations, so it is a TFF_2 iff the averaged quartic
``F_X(x) = mean_W |P_W x|^4`` agrees at ``e_1`` and ``(e_1 + e_2)/sqrt 2``.

Index sets are 0-based throughout.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .certificate import Certificate
from .grassmann import FrameConfig, Subspace
from .numerics import binom, scalar_to_json

__all__ = [
    "DEFAULT_CAP",
    "OrbitParams",
    "OrbitTag",
    "OrbitUnion",
    "UnionCondition",
    "TwoOrbitSolution",
    "CapExceededError",
    "orbit_size",
    "canonical_tags",
    "all_tags",
    "enumerate_orbit",
    "enumerate_union",
    "orbit_frame",
    "f_value",
    "f_value_bruteforce",
    "delta",
    "is_bd_invariant",
    "two_point_test",
    "union_condition",
    "solve_single_orbit",
    "scaling_family",
    "search_two_orbit",
    "PROBES",
]

DEFAULT_CAP = 10**6

# probe directions as integer vectors y; the unit probe is y / |y|
PROBES = {"e1": (1,), "e12": (1, 1)}


class CapExceededError(RuntimeError):
    """Enumeration would produce more subspaces than the configured cap."""


@dataclass(frozen=True)
class OrbitParams:
    d: int
    a: int
    b: int

    def __post_init__(self):
        if not (1 <= self.a <= self.b and self.a + self.b <= self.d):
            raise ValueError(f"invalid orbit parameters (d, a, b) = ({self.d}, {self.a}, {self.b})")

    def __iter__(self):
        return iter((self.d, self.a, self.b))


@dataclass(frozen=True)
class OrbitTag:
    """Support sets and signs ``(A, B, eps, delta)`` of one spanning pair.

    ``eps[i]`` is the sign on ``A[i]`` and ``delta[j]`` the sign on ``B[j]``;
    ``A`` and ``B`` are sorted tuples.
    """

    A: tuple
    B: tuple
    eps: tuple
    delta: tuple

    def vectors(self, d: int) -> tuple[np.ndarray, np.ndarray]:
        u = np.zeros(d, dtype=np.int64)
        v = np.zeros(d, dtype=np.int64)
        u[list(self.A)] = self.eps
        v[list(self.B)] = self.delta
        return u, v

    def subspace(self, d: int) -> Subspace:
        u, v = self.vectors(d)
        return Subspace(np.stack([u, v]), exact=True)

    def canonical(self) -> "OrbitTag":
        """Representative of the fiber: leading signs +1, and min(A) < min(B) when a = b."""
        A, B, eps, delta = self.A, self.B, self.eps, self.delta
        if len(A) == len(B) and B[0] < A[0]:
            A, B, eps, delta = B, A, delta, eps
        if eps[0] < 0:
            eps = tuple(-e for e in eps)
        if delta[0] < 0:
            delta = tuple(-e for e in delta)
        return OrbitTag(A, B, eps, delta)

    def act(self, perm: Sequence[int], signs: Sequence[int]) -> "OrbitTag":
        """Apply the signed permutation sending coordinate ``j`` to ``perm[j]`` then flipping by ``signs``."""
        def move(S, s):
            pairs = sorted((perm[i], e * signs[perm[i]]) for i, e in zip(S, s))
            return tuple(p for p, _ in pairs), tuple(e for _, e in pairs)

        A, eps = move(self.A, self.eps)
        B, delta = move(self.B, self.delta)
        return OrbitTag(A, B, eps, delta)

    def to_json(self) -> dict:
        return {"A": list(self.A), "B": list(self.B), "eps": list(self.eps), "delta": list(self.delta)}


def orbit_size(p: OrbitParams) -> int:
    """``|O_{a,b}^{(d)}| = C(d,a) C(d-a,b) 2^{a+b-2}``, halved when ``a = b``."""
    d, a, b = p
    n = binom(d, a) * binom(d - a, b) * 2 ** (a + b - 2)
    return n if a < b else n // 2


def _signs(n: int) -> Iterator[tuple]:
    return itertools.product((1, -1), repeat=n)


def all_tags(p: OrbitParams) -> Iterator[OrbitTag]:
    """Every element of the parameter set, ``C(d,a) C(d-a,b) 2^{a+b}`` tags."""
    d, a, b = p
    for A in itertools.combinations(range(d), a):
        rest = [i for i in range(d) if i not in A]
        for B in itertools.combinations(rest, b):
            for eps in _signs(a):
                for delta in _signs(b):
                    yield OrbitTag(A, B, eps, delta)


def canonical_tags(p: OrbitParams) -> Iterator[OrbitTag]:
    """One tag per orbit element, in a fixed lexicographic order."""
    d, a, b = p
    for A in itertools.combinations(range(d), a):
        rest = [i for i in range(d) if i not in A]
        for B in itertools.combinations(rest, b):
            if a == b and B[0] < A[0]:
                continue
            for eps in _signs(a - 1):
                for delta in _signs(b - 1):
                    yield OrbitTag(A, B, (1,) + eps, (1,) + delta)


def enumerate_orbit(p: OrbitParams, cap: int = DEFAULT_CAP) -> list[Subspace]:
    """All planes of the orbit as exact subspaces."""
    n = orbit_size(p)
    if n > cap:
        raise CapExceededError(f"orbit {tuple(p)} has {n} elements (cap {cap})")
    d = p.d
    out = []
    for tag in canonical_tags(p):
        out.append(tag.subspace(d))
    return out


@dataclass(frozen=True)
class OrbitUnion:
    d: int
    parts: tuple

    def __post_init__(self):
        parts = tuple(tuple(sorted(map(int, ab))) for ab in self.parts)
        if not parts:
            raise ValueError("union needs at least one orbit")
        if len(set(parts)) != len(parts):
            raise ValueError("orbit union parts must be distinct")
        for a, b in parts:
            OrbitParams(self.d, a, b)
        object.__setattr__(self, "parts", parts)

    def params(self) -> list[OrbitParams]:
        return [OrbitParams(self.d, a, b) for a, b in self.parts]

    def size(self) -> int:
        return sum(orbit_size(p) for p in self.params())

    def to_json(self) -> dict:
        return {"d": self.d, "parts": [list(ab) for ab in self.parts]}

    @classmethod
    def from_json(cls, obj: dict) -> "OrbitUnion":
        return cls(int(obj["d"]), tuple(tuple(ab) for ab in obj["parts"]))


def _as_union(X) -> OrbitUnion:
    if isinstance(X, OrbitUnion):
        return X
    if isinstance(X, OrbitParams):
        return OrbitUnion(X.d, ((X.a, X.b),))
    raise TypeError(f"expected OrbitParams or OrbitUnion, got {type(X).__name__}")


def enumerate_union(X, cap: int = DEFAULT_CAP) -> list[Subspace]:
    u = _as_union(X)
    if u.size() > cap:
        raise CapExceededError(f"union has {u.size()} elements (cap {cap})")
    out = []
    for p in u.params():
        out.extend(enumerate_orbit(p, cap))
    return out


def orbit_frame(X, cap: int = DEFAULT_CAP) -> FrameConfig:
    """Equal-weight frame on an orbit or a union of orbits."""
    return FrameConfig(enumerate_union(X, cap))


def f_value(p: OrbitParams, probe: str) -> Fraction:
    """Closed form of ``F_O(x)`` at ``x = e_1`` (``"e1"``) or ``(e_1 + e_2)/sqrt 2`` (``"e12"``)."""
    d, a, b = p
    if probe == "e1":
        return Fraction(a + b, a * b * d)
    if probe == "e12":
        return Fraction(8 * a * b + (d - 4) * (a + b), 2 * a * b * d * (d - 1))
    raise ValueError(f"unknown probe {probe!r}")


def delta(p: OrbitParams) -> Fraction:
    """``F_O(e_1) - F_O((e_1 + e_2)/sqrt 2) = ((d+2)(a+b) - 8ab) / (2ab d(d-1))``."""
    d, a, b = p
    return Fraction((d + 2) * (a + b) - 8 * a * b, 2 * a * b * d * (d - 1))


def _probe_vector(probe, d: int) -> np.ndarray:
    if isinstance(probe, str):
        probe = PROBES[probe]
    y = np.zeros(d, dtype=np.int64)
    y[: len(probe)] = probe
    return y


def f_value_bruteforce(subspaces: Sequence[Subspace], probe) -> Fraction:
    """Exact average of ``|P_W x|^4`` over the given exact subspaces.

    ``probe`` is a key of :data:`PROBES` or an integer vector ``y``; the unit
    probe is ``x = y/|y|``, and ``|P_W x|^2 = y^T P_W y / |y|^2`` is rational.
    """
    subs = list(subspaces)
    if not subs or not all(V.exact for V in subs):
        raise ValueError("brute-force F needs a non-empty list of exact subspaces")
    d = subs[0].d
    y = _probe_vector(probe, d)
    ysq = int(y @ y)
    groups = defaultdict(list)
    for V in subs:
        groups[tuple(int(n) for n in V.norms2)].append(V)
    total = Fraction(0)
    for norms, members in groups.items():
        L = 1
        for n in norms:
            L *= n
        r = np.array([L // n for n in norms], dtype=object)
        spans = np.stack([V.span for V in members]).astype(object)
        dots = spans @ y.astype(object)  # (m, k)
        quad = (dots * dots) @ r  # y^T P y * L
        total += Fraction(int(sum(q * q for q in quad)), L * L)
    return total / (len(subs) * ysq * ysq)


def _bd_generators(d: int):
    ident = list(range(d))
    swap = [1, 0] + list(range(2, d))
    cycle = [(i + 1) % d for i in range(d)]
    flip = [-1] + [1] * (d - 1)
    ones = [1] * d
    return [(swap, ones), (cycle, ones), (ident, flip)]


def is_bd_invariant(subspaces: Sequence[Subspace]) -> bool:
    """True iff the set of exact subspaces is closed under all signed permutations."""
    subs = list(subspaces)
    keys = {V.key() for V in subs}
    d = subs[0].d
    for perm, signs in _bd_generators(d):
        for V in subs:
            if V.transformed(perm, signs).key() not in keys:
                return False
    return True


def two_point_test(X, check_invariance: bool = True, cap: int = DEFAULT_CAP) -> Certificate:
    """Compare ``F_X(e_1)`` with ``F_X((e_1 + e_2)/sqrt 2)`` exactly.

    ``X`` is an :class:`OrbitUnion`, :class:`OrbitParams` or a list of exact
    subspaces. A subspace list must be invariant under signed permutations
    (i.e. a union of whole orbits); otherwise ``ValueError`` is raised since
    the two-point reduction does not apply.
    """
    if isinstance(X, (OrbitUnion, OrbitParams)):
        subs = enumerate_union(X, cap)
    else:
        subs = list(X)
        if check_invariance and not is_bd_invariant(subs):
            raise ValueError("input is not a union of whole orbits (not invariant under signed permutations)")
    if subs[0].k != 2:
        raise ValueError("two-point test is for planes")
    f1 = f_value_bruteforce(subs, "e1")
    f12 = f_value_bruteforce(subs, "e12")
    return Certificate("two-point", ["F(e1)-F(e12)"], {"F(e1)-F(e12)": f1 - f12}, "exact",
                       Fraction(0), extra={"N": len(subs), "F(e1)": f1, "F(e12)": f12})


@dataclass
class UnionCondition:
    value: Fraction
    passed: bool
    terms: list

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"value": scalar_to_json(self.value), "verdict": "pass" if self.passed else "fail",
                "terms": [{"a": a, "b": b, "N": n, "delta": scalar_to_json(dl)}
                          for a, b, n, dl in self.terms]}


def union_condition(X) -> UnionCondition:
    """``sum_t N_d(a_t, b_t) Delta(O_{a_t, b_t})``; a TFF_2 iff zero."""
    u = _as_union(X)
    terms = []
    total = Fraction(0)
    for p in u.params():
        n, dl = orbit_size(p), delta(p)
        terms.append((p.a, p.b, n, dl))
        total += n * dl
    return UnionCondition(total, total == 0, terms)


def _pairs(d: int) -> Iterator[tuple[int, int]]:
    for a in range(1, d // 2 + 1):
        for b in range(a, d - a + 1):
            yield a, b


def solve_single_orbit(d: int) -> list[tuple[int, int]]:
    """All ``(a, b)`` with ``(d+2)(a+b) = 8ab``, ``1 <= a <= b``, ``a + b <= d``."""
    if d < 2:
        raise ValueError("need d >= 2")
    return [(a, b) for a, b in _pairs(d) if (d + 2) * (a + b) == 8 * a * b]


def scaling_family(d0: int, a0: int, b0: int, s: int) -> OrbitParams:
    """``(d, a, b) = ((d0 + 2)s - 2, a0 s, b0 s)`` from a single-orbit solution ``(d0; a0, b0)``."""
    if s < 1:
        raise ValueError("scale s must be >= 1")
    if not (1 <= a0 <= b0 and a0 + b0 <= d0) or (d0 + 2) * (a0 + b0) != 8 * a0 * b0:
        raise ValueError(f"({d0}; {a0}, {b0}) is not a single-orbit solution")
    return OrbitParams((d0 + 2) * s - 2, a0 * s, b0 * s)


@dataclass(frozen=True)
class TwoOrbitSolution:
    d: int
    parts: tuple
    pure: bool

    def to_json(self) -> dict:
        return {"d": self.d, "parts": [list(p) for p in self.parts], "pure": self.pure}


def search_two_orbit(d: int, include_degenerate: bool = True) -> list[TwoOrbitSolution]:
    """Unordered pairs of distinct orbits whose union is a TFF_2.

    A solution is *pure* when neither orbit is a TFF_2 on its own. The only
    other way ``N_1 Delta_1 + N_2 Delta_2 = 0`` can hold is with both deltas
    zero; those are reported with ``pure=False``.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    by_value = defaultdict(list)
    for a, b in _pairs(d):
        p = OrbitParams(d, a, b)
        by_value[orbit_size(p) * delta(p)].append((a, b))
    out = []
    for v, members in by_value.items():
        if v < 0:
            continue
        if v == 0:
            if include_degenerate:
                for p, q in itertools.combinations(members, 2):
                    out.append(TwoOrbitSolution(d, (p, q), False))
            continue
        for p in members:
            for q in by_value.get(-v, ()):
                out.append(TwoOrbitSolution(d, tuple(sorted((p, q))), True))
    return sorted(out, key=lambda s: (not s.pure, s.parts))


def search_range(ds: Iterable[int], include_degenerate: bool = True, workers: int = 1) -> dict:
    """Run :func:`search_two_orbit` for each ``d``; results keyed by ``d`` in ascending order."""
    ds = sorted(set(ds))
    if workers > 1 and len(ds) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            res = list(ex.map(search_two_orbit, ds, [include_degenerate] * len(ds)))
    else:
        res = [search_two_orbit(d, include_degenerate) for d in ds]
    return dict(zip(ds, res))
