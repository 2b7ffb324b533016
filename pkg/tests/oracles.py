"""Reference values computed without the library.

Everything here is written from the defining formulas with plain Python
integers and Fractions, so that library results can be cross-checked
against an independent route.
"""

from fractions import Fraction
from itertools import combinations, product
from math import comb

import numpy as np


# --- orbit closed forms ----------------------------------------------------------

def orbit_count(d, a, b):
    n = comb(d, a) * comb(d - a, b) * Fraction(2) ** (a + b - 2)
    return int(n / 2) if a == b else int(n)


def F_e1(d, a, b):
    return Fraction(a + b, a * b * d)


def F_e12(d, a, b):
    return Fraction(8 * a * b + (d - 4) * (a + b), 2 * a * b * d * (d - 1))


def Delta(d, a, b):
    return Fraction((d + 2) * (a + b) - 8 * a * b, 2 * a * b * d * (d - 1))


def grid(dmin=4, dmax=8):
    for d in range(dmin, dmax + 1):
        for a in range(1, d):
            for b in range(a, d - a + 1):
                yield d, a, b


# --- brute-force orbit by raw tags -----------------------------------------------

def orbit_projectors(d, a, b):
    """Distinct scaled projectors ``ab * P`` over every raw tag (A, B, eps, delta).

    No canonical form is used; duplicates are removed by hashing the
    integer matrix.
    """
    seen = {}
    idx = range(d)
    for A in combinations(idx, a):
        rest = [i for i in idx if i not in A]
        for B in combinations(rest, b):
            for eps in product((1, -1), repeat=a):
                for dl in product((1, -1), repeat=b):
                    u = np.zeros(d, dtype=np.int64)
                    v = np.zeros(d, dtype=np.int64)
                    u[list(A)] = eps
                    v[list(B)] = dl
                    M = b * np.outer(u, u) + a * np.outer(v, v)
                    seen.setdefault(M.tobytes(), M)
    return list(seen.values())


def raw_tag_count(d, a, b):
    return comb(d, a) * comb(d - a, b) * 2 ** (a + b)


def F_bruteforce(mats, a, b, probe):
    """Orbit average of ``|P x|^4`` from scaled projectors; ``probe`` is 'e1' or 'e12'."""
    scale = a * b
    total = Fraction(0)
    for M in mats:
        if probe == "e1":
            q = Fraction(int(M[0, 0]), scale)
        else:
            q = Fraction(int(M[0, 0] + M[1, 1] + 2 * M[0, 1]), 2 * scale)
        total += q * q
    return total / len(mats)


# --- ECTFF_2 statistics by solving the zonal equations directly ----------------

def P2_e(e1, d):
    return Fraction(4 - d * e1) / (2 * (2 - d))


def P4_e(e1, e2, d):
    raw = (1 - Fraction(d + 2, 2) * e1 + Fraction(3 * (d + 2) * (d + 4), 64) * e1 ** 2
           - Fraction((d + 2) * (d + 4), 16) * e2)
    return Fraction(8, d * (d - 2)) * raw


def P22_e(e1, e2, d):
    raw = 1 - Fraction(d - 1, 2) * e1 + Fraction((d - 2) * (d - 1), 2) * e2
    return Fraction(2, (d - 2) * (d - 3)) * raw


def ectff_solution(d, N):
    """``(e1, mean e2, P22 sum)`` forced by the vanishing of the P_(2) and P_(4) double sums.

    Diagonal terms contribute ``N`` (zonals equal 1 at coincidence); the
    ``N(N-1)`` off-diagonal terms share ``e1`` and average ``e2``. Both
    zonals are affine in the unknown, so each equation is solved by a
    two-point secant.
    """
    m = N * (N - 1)
    f = lambda e1: N + m * P2_e(e1, d)
    z0, z1 = f(Fraction(0)), f(Fraction(1))
    e1 = -z0 / (z1 - z0)
    g = lambda e2: N + m * P4_e(e1, e2, d)
    w0, w1 = g(Fraction(0)), g(Fraction(1))
    e2 = -w0 / (w1 - w0)
    return e1, e2, N + m * P22_e(e1, e2, d)


# --- Gegenbauer by the explicit hypergeometric sum -------------------------------

def gegenbauer_direct(d, ell, x):
    """``C_ell^{(d-2)/2}(x) / C_ell^{(d-2)/2}(1)`` from the explicit coefficient sum (d >= 3)."""
    lam = Fraction(d - 2, 2)

    def poch(a, m):
        out = Fraction(1)
        for i in range(m):
            out *= a + i
        return out

    def C(t):
        s = Fraction(0)
        for k in range(ell // 2 + 1):
            s += ((-1) ** k * poch(lam, ell - k) / (_fact(k) * _fact(ell - 2 * k))
                  * (2 * t) ** (ell - 2 * k))
        return s

    return C(Fraction(x)) / C(Fraction(1))


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out
