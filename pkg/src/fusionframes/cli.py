"""Command-line front end.

Every subcommand prints a short human summary and, with ``--out``, writes a
JSON artifact that records the tool version, the full flag set and the seed.
Exit codes: 0 all requested checks pass, 1 a certificate failed, 2 bad
flags or input, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .bounds import check_ectff2, design_to_sphere_map_check, ectff2_moments, qubit_sic, sic_to_eitff
from .certificate import Certificate
from .grassmann import FrameConfig, Subspace, UnsupportedError, check_tff, chs_embed, is_equiisoclinic
from .lifting import LiftSpec, certify_lift, lift, repair_disjointness
from .numerics import binom, scalar_to_json
from .orbits import (
    CapExceededError,
    DEFAULT_CAP,
    OrbitParams,
    OrbitUnion,
    delta,
    enumerate_union,
    orbit_frame,
    orbit_size,
    scaling_family,
    search_range,
    solve_single_orbit,
    two_point_test,
    union_condition,
)
from .sphere_designs import WeightedPointSet, check_spherical_design_pairwise, check_weighted_design_moments

THREADS_ENV = "FUSIONFRAMES_THREADS"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _flags(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _artifact(args, **payload) -> dict:
    out = {"tool": "fusionframes", "version": __version__, "command": args.command,
           "flags": _flags(args), "seed": getattr(args, "seed", None)}
    out.update(payload)
    return out


def _write_json(path, obj):
    text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_frame(path, mode="exact") -> FrameConfig:
    obj = _read_json(path)
    if "subspaces" not in obj and "frame" in obj:
        obj = obj["frame"]
    F = FrameConfig.from_json(obj)
    if mode == "float":
        F = FrameConfig([Subspace.from_basis(V.basis) for V in F.subspaces],
                        [float(w) for w in F.weights])
    return F


def _load_points(path) -> WeightedPointSet:
    obj = _read_json(path)
    if "points" not in obj and "design" in obj:
        obj = obj["design"]
    return WeightedPointSet.from_json(obj)


def _threads(args) -> int:
    n = args.threads if args.threads is not None else int(os.environ.get(THREADS_ENV, "1"))
    if n < 1:
        raise UsageError("--threads must be >= 1")
    return n


def _csv_ints(text, n=None):
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc
    if n is not None and len(vals) != n:
        raise UsageError(f"expected {n} integers, got {text!r}")
    return vals


def _status(passed: bool) -> str:
    return "pass" if passed else "fail"


def _finish(args, passed: bool, **payload) -> int:
    if args.out:
        _write_json(args.out, _artifact(args, verdict=_status(passed), **payload))
    return EXIT_OK if passed else EXIT_FAIL


def _union_from_args(args) -> OrbitUnion:
    if args.parts:
        parts = [tuple(_csv_ints(p, 2)) for p in args.parts]
    elif args.a is not None and args.b is not None:
        parts = [(args.a, args.b)]
    else:
        raise UsageError("give --a and --b, or --parts a,b [a,b ...]")
    return OrbitUnion(args.d, parts)


# ---------------------------------------------------------------- commands

def cmd_orbit(args) -> int:
    U = _union_from_args(args)
    cond = union_condition(U)
    N = U.size()
    if len(U.parts) == 1:
        dl = delta(U.params()[0])
        print(f"N={N}, Δ={dl}", end="")
    else:
        print(f"N={N}, Σ NΔ={cond.value}", end="")
    payload = {"orbit": U.to_json(), "N": N, "union_condition": cond.to_json()}
    passed = True
    if args.check_tff2:
        tp = two_point_test(U, cap=args.cap)
        F = orbit_frame(U, cap=args.cap)
        if args.mode == "float":
            F = FrameConfig([Subspace.from_basis(V.basis) for V in F.subspaces])
        tff = check_tff(F, 2)
        if tp.passed != tff.passed or tp.passed != cond.passed:
            raise RuntimeError("two-point test, union condition and TFF check disagree")
        passed = tff.passed
        print(f", TFF₂: {_status(passed)}")
        payload["certificates"] = {"two_point": tp.to_json(), "tff2": tff.to_json()}
    else:
        print()
    if args.out and args.export_frame:
        payload["frame"] = orbit_frame(U, cap=args.cap).to_json()
    return _finish(args, passed, **payload)


def cmd_check_tff(args) -> int:
    F = _load_frame(args.input, args.mode)
    cert = check_tff(F, args.t)
    print(f"N={len(F)} in G({F.k},{F.d}); {cert.summary()}")
    return _finish(args, cert.passed, certificate=cert.to_json())


def cmd_search(args) -> int:
    if args.orbits != 2:
        raise UsageError("only the two-orbit search is implemented (--orbits 2)")
    if args.min_d > args.max_d or args.min_d < 4:
        raise UsageError("need 4 <= --min-d <= --max-d")
    ds = [d for d in range(args.min_d, args.max_d + 1) if not args.odd or d % 2]
    res = search_range(ds, include_degenerate=not args.pure_only, workers=_threads(args))
    rows = []
    for d, sols in res.items():
        for s in sols:
            (a1, b1), (a2, b2) = s.parts
            rows.append((d, a1, b1, a2, b2, "pure" if s.pure else "degenerate"))
    print(f"{'d':>4} {'orbit 1':>9} {'orbit 2':>9}  kind")
    for d, a1, b1, a2, b2, kind in rows:
        print(f"{d:>4} {f'({a1},{b1})':>9} {f'({a2},{b2})':>9}  {kind}")
    found = sorted({r[0] for r in rows})
    print(f"solutions for d in {found}" if found else "no solutions")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["d", "a1", "b1", "a2", "b2", "kind"])
            w.writerows(rows)
    return _finish(args, True, solutions=[s.to_json() for sols in res.values() for s in sols],
                   dimensions=found)


def cmd_solve_single(args) -> int:
    hi = args.max_d if args.max_d is not None else args.d
    out = {}
    for d in range(args.d, hi + 1):
        sols = solve_single_orbit(d)
        if sols or args.d == hi:
            out[d] = sols
            print(f"d={d}: {sols if sols else 'none'}")
    return _finish(args, True, solutions={str(d): [list(p) for p in s] for d, s in out.items()})


def cmd_scale(args) -> int:
    rows = []
    ok = True
    for s in range(1, args.s + 1):
        p = scaling_family(args.d0, args.a0, args.b0, s)
        dl = delta(p)
        ok &= dl == 0
        rows.append({"s": s, "d": p.d, "a": p.a, "b": p.b, "N": orbit_size(p),
                     "delta": scalar_to_json(dl)})
        print(f"s={s}: d={p.d}, (a,b)=({p.a},{p.b}), N={orbit_size(p)}, Δ={dl}")
    if args.verify:
        for r in rows:
            if r["N"] > args.cap:
                continue
            cert = two_point_test(OrbitParams(r["d"], r["a"], r["b"]), cap=args.cap)
            r["two_point"] = cert.verdict
            ok &= cert.passed
            print(f"s={r['s']}: two-point {cert.verdict}")
    return _finish(args, ok, family=rows)


def cmd_lift(args) -> int:
    if args.orbit:
        d, a, b = _csv_ints(args.orbit, 3)
        F = orbit_frame(OrbitParams(d, a, b), cap=args.cap)
        t = 2
    elif args.input:
        F = _load_frame(args.input)
        t = args.t
    else:
        raise UsageError("give --orbit d,a,b or --in frame.json")
    s = args.s if args.s is not None else args.polygon - 1
    spec = LiftSpec(F, t, s, n=args.polygon, phase=args.phase, seed=args.seed)
    D = lift(spec)
    if args.repair:
        D = repair_disjointness(D, seed=args.seed)
    D.meta["mode"] = "float"
    D.meta["mode_note"] = "polygon lifts are computed in floating point"
    print(f"{D.result.n} points on S^{D.result.d - 1}, predicted strength {D.strength}")
    payload = {"design": D.to_json()}
    passed = True
    if args.verify is not None:
        cert = certify_lift(D, args.verify, seed=args.seed)
        passed = cert.passed
        print(cert.summary())
        payload["certificate"] = cert.to_json()
    return _finish(args, passed, **payload)


def cmd_verify_design(args) -> int:
    X = _load_points(args.input)
    method = args.method
    if method == "auto":
        method = "pairwise" if X.equal_weights else "moments"
    if method == "pairwise":
        cert = check_spherical_design_pairwise(X, args.t)
    else:
        cert = check_weighted_design_moments(X, args.t, seed=args.seed)
    print(f"n={X.n}, d={X.d}; {cert.summary()}")
    return _finish(args, cert.passed, certificate=cert.to_json())


def cmd_bounds(args) -> int:
    rep = ectff2_moments(args.d, args.N)
    js = rep.to_json()
    print(f"d={args.d}, N={args.N}: bounds [{js['lower_bound']}, {js['upper_bound']}], "
          f"{rep.classification}; e1,0={rep.e10}, mean e2={rep.e2_mean}, gap={rep.gap}")
    if not args.out:
        _write_json("-", js)
    return _finish(args, True, report=js)


def cmd_check_ectff2(args) -> int:
    F = _load_frame(args.input, args.mode)
    cert, rep = check_ectff2(F.subspaces)
    print(cert.summary())
    print(f"classification at (d,N)=({rep.d},{rep.N}): {rep.classification}")
    return _finish(args, cert.passed, certificate=cert.to_json(), report=rep.to_json())


def cmd_sic_lift(args) -> int:
    if args.n != 2:
        raise UsageError("only the built-in n = 2 SIC is available")
    planes = sic_to_eitff(qubit_sic())
    F = FrameConfig(planes)
    ei = is_equiisoclinic(planes)
    tff = check_tff(F, 2)
    target = 1.0 / (args.n + 1)
    cos_ok = ei.passed and abs(float(ei.value) - target) <= 1e-10
    passed = cos_ok and tff.passed and 4 * len(planes) == (2 * args.n) ** 2
    print(f"{len(planes)} planes in G(2,{2 * args.n}); cos^2 = {float(ei.value):.12f}; "
          f"{tff.summary()}")
    return _finish(args, passed, frame=F.to_json(), certificate=tff.to_json(),
                   equiisoclinic={"passed": ei.passed, "cos2": float(ei.value)})


def cmd_embed(args) -> int:
    F = _load_frame(args.input, "exact")
    Y = np.stack([chs_embed(V) for V in F.subspaces])
    cert = design_to_sphere_map_check(F.subspaces)
    print(f"{len(F)} points in R^{binom(F.d + 1, 2) - 1}; {cert.summary()}")
    return _finish(args, cert.passed, points=[[float(x) for x in row] for row in Y],
                   certificate=cert.to_json())


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fusionframes", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write a JSON artifact here ('-' for stdout)")
        p.add_argument("--threads", type=int, default=None,
                       help=f"worker cap (default ${THREADS_ENV} or 1)")
        return p

    p = add("orbit", cmd_orbit, "enumerate an orbit (or union) and report N and Delta")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--parts", nargs="+", metavar="A,B")
    p.add_argument("--check-tff2", action="store_true")
    p.add_argument("--export-frame", action="store_true", help="include the planes in --out")
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = add("check-tff", cmd_check_tff, "tight t-fusion frame check of a frame file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--mode", choices=["exact", "float"], default="exact")

    p = add("search", cmd_search, "two-orbit TFF_2 search over a range of d")
    p.add_argument("--min-d", type=int, required=True)
    p.add_argument("--max-d", type=int, required=True)
    p.add_argument("--odd", action="store_true")
    p.add_argument("--orbits", type=int, default=2)
    p.add_argument("--pure-only", action="store_true")
    p.add_argument("--csv")

    p = add("solve-single", cmd_solve_single, "single-orbit TFF_2 parameters")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-d", type=int)

    p = add("scale", cmd_scale, "scaling family from a single-orbit solution")
    p.add_argument("--d0", type=int, required=True)
    p.add_argument("--a0", type=int, required=True)
    p.add_argument("--b0", type=int, required=True)
    p.add_argument("--s", type=int, default=5, help="largest scale factor")
    p.add_argument("--verify", action="store_true", help="two-point test members up to --cap")
    p.add_argument("--cap", type=int, default=20_000)

    p = add("lift", cmd_lift, "lift a frame to a spherical design with regular polygons")
    p.add_argument("--orbit", metavar="D,A,B")
    p.add_argument("--in", dest="input")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--polygon", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--phase", choices=["random", "fixed"], default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repair", action="store_true")
    p.add_argument("--verify", type=int, metavar="R")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = add("verify-design", cmd_verify_design, "spherical design check of a point file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--method", choices=["auto", "pairwise", "moments"], default="auto")
    p.add_argument("--seed", type=int, default=0)

    p = add("bounds", cmd_bounds, "forced statistics of an ECTFF_2 with N planes in R^d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)

    p = add("check-ectff2", cmd_check_ectff2, "ECTFF_2 necessary conditions for a frame file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", choices=["exact", "float"], default="exact")

    p = add("sic-lift", cmd_sic_lift, "planes of a SIC as an EITFF_2")
    p.add_argument("--n", type=int, default=2)

    p = add("embed", cmd_embed, "projector embedding of a frame into a sphere")
    p.add_argument("--in", dest="input", required=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnsupportedError, CapExceededError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - last resort
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
