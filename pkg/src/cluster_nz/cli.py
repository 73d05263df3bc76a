"""Command-line interface.

Exit codes: 0 success, 1 identity failure, 2 unreadable or invalid input,
3 invariant violation (including sequences that are not fully mutated),
4 search exhausted without a verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cluster import is_mutation_loop, mutation_sequence, run_sequence
from .errors import (
    BadIncidence,
    ClusterNZError,
    IllegalQuiver,
    IndexOutOfRange,
    LengthMismatch,
    NotDynkinShape,
    NotSkewSymmetrizable,
    SelfFoldedEdge,
)
from .geometry.dynkin import dilog_identity_check, dynkin_spec
from .geometry.gluing import (
    angle_windings,
    gluing_system,
    phi_inverse,
    solve_gluing_complex,
    volume,
)
from .geometry.surfaces import Triangulation, b_from_triangulation
from .jacobian import verify_all_signs, verify_det_formula, verify_f_det, verify_tropical_limit
from .network import build_network, nz_matrices, require_fully_mutated, to_dot
from .tropical import c_matrix_run, is_maximal_green, is_reddening, reddening_search

SCHEMA = 1
MODULAR_THRESHOLD = 12

OK, IDENTITY_FAILED, BAD_INPUT, INVARIANT, EXHAUSTED = range(5)

_INPUT_ERRORS = (
    NotSkewSymmetrizable,
    IllegalQuiver,
    IndexOutOfRange,
    LengthMismatch,
    SelfFoldedEdge,
    BadIncidence,
    NotDynkinShape,
)


class InputError(Exception):
    pass


# ----------------------------------------------------------------------
# input


def _read_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def _exchange_input(data: dict):
    if "triangles" in data:
        return b_from_triangulation(Triangulation(int(data["edges"]), tuple(tuple(t) for t in data["triangles"])))
    if "B" not in data:
        raise InputError("input needs a 'B' matrix or a triangulation")
    return data["B"]


def load_sequence(path: str):
    data = _read_json(path)
    if "m" not in data:
        raise InputError("sequence file needs an 'm' list")
    try:
        return mutation_sequence(_exchange_input(data), data["m"], data.get("sigma"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ClusterNZError) and not isinstance(exc, _INPUT_ERRORS):
            raise
        raise InputError(str(exc)) from exc


# ----------------------------------------------------------------------
# output


def _plain(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (int, float, bool, str)) or v is None:
        return v
    if hasattr(v, "tolist"):
        return v.tolist()
    return str(v)


def _emit(args, command: str, payload: dict):
    doc = {"schema": SCHEMA, "command": command}
    doc.update(_plain(payload))
    if args.output == "text":
        for k, v in doc.items():
            print(f"{k}: {json.dumps(v)}")
    else:
        print(json.dumps(doc, indent=2))


# ----------------------------------------------------------------------
# commands


def cmd_run(args) -> int:
    gamma = load_sequence(args.input)
    traj = run_sequence(gamma, symbolic=not args.matrices_only)
    out = {"n": gamma.n, "T": gamma.T, "B": [b.tolist() for b in traj.B], "mutation_loop": is_mutation_loop(gamma)}
    if traj.Y is not None:
        out["Y"] = [[str(v) for v in y] for y in traj.Y]
    _emit(args, "run", out)
    return OK


def cmd_network(args) -> int:
    gamma = load_sequence(args.input)
    net = build_network(gamma)
    if args.output == "dot":
        print(to_dot(net))
        return OK
    out = {
        "classes": [[list(v) for v in c.members] for c in net.classes],
        "N0": net.N0,
        "Nplus": net.Nplus,
        "Nminus": net.Nminus,
        "fully_mutated": net.fully_mutated,
    }
    if net.fully_mutated:
        nz = nz_matrices(net)
        out["Aplus"], out["Aminus"] = nz.Aplus, nz.Aminus
    _emit(args, "network", out)
    return OK


def cmd_verify(args) -> int:
    gamma = load_sequence(args.input)
    require_fully_mutated(gamma)
    reports = []
    if args.check == "det":
        mode = args.mode or ("modular" if gamma.n * gamma.T > MODULAR_THRESHOLD else "exact")
        reports.append(verify_det_formula(gamma, mode, args.trials, args.seed))
    elif args.check == "f-det":
        if args.all_signs:
            reports.extend(verify_all_signs(gamma))
        else:
            reports.append(verify_f_det(gamma, args.eps or "+" * gamma.T))
    else:
        reports.append(verify_tropical_limit(gamma))
    ok = all(r.equal for r in reports)
    _emit(args, "verify", {"check": args.check, "equal": ok, "reports": [r.to_json() for r in reports]})
    return OK if ok else IDENTITY_FAILED


def cmd_tropical(args) -> int:
    gamma = load_sequence(args.input)
    trace = c_matrix_run(gamma)
    out = {"C": trace.C, "eps_trop": "".join(trace.eps_trop)}
    if gamma.B.is_skew_symmetric:
        out["reddening"] = is_reddening(gamma)
        out["maximal_green"] = is_maximal_green(gamma)
    _emit(args, "tropical", out)
    return OK


def cmd_reddening(args) -> int:
    data = _read_json(args.input)
    try:
        b = _exchange_input(data)
        res = reddening_search(b, args.depth, green_only=args.green_only)
    except _INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc
    if res.found is not None:
        _emit(
            args,
            "reddening",
            {"found": True, "depth": res.depth, "m": res.found.m, "maximal_green": is_maximal_green(res.found), "explored": res.explored},
        )
        return OK
    cert = dict(res.certificate or {})
    if cert.get("balanced"):
        cert["note"] = "all A_eps column sums 0"
    _emit(
        args,
        "reddening",
        {"found": False, "message": "no reddening sequence found", "depth": res.depth, "explored": res.explored, "certificate": cert},
    )
    return EXHAUSTED


def _parse_init(text: str, size: int) -> list[complex]:
    try:
        pts = [complex(*(float(x) for x in part.split(","))) for part in text.replace(" ", "").split(";") if part]
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad --init {text!r}; expected 're,im;re,im;...'") from exc
    if len(pts) == 1:
        pts = pts * size
    if len(pts) != size:
        raise InputError(f"--init gives {len(pts)} values, expected {size}")
    return pts


def cmd_gluing(args) -> int:
    gamma = load_sequence(args.input)
    sys_ = gluing_system(gamma)
    sol = solve_gluing_complex(sys_, _parse_init(args.init, sys_.T), args.tol, args.max_iter)
    out = {
        "zminus": list(sol.zminus),
        "zplus": list(sol.zplus),
        "residual": sol.residual,
        "iterations": sol.iterations,
        "volume": volume(sol),
        "angle_windings": angle_windings(sys_, sol),
        "eta": list(phi_inverse(sol, gamma)),
    }
    _emit(args, "gluing", out)
    return OK


def cmd_dynkin(args) -> int:
    try:
        spec = dynkin_spec(args.type, args.rank)
    except NotDynkinShape as exc:
        raise InputError(str(exc)) from exc
    rep = dilog_identity_check(spec, args.tol)
    _emit(args, "dynkin", rep.to_json())
    return OK if rep.holds else IDENTITY_FAILED


def cmd_triangulate(args) -> int:
    data = _read_json(args.input)
    if "triangles" not in data:
        raise InputError("triangulation file needs 'edges' and 'triangles'")
    try:
        b = _exchange_input(data)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    _emit(args, "triangulate", {"B": b.tolist()})
    return OK


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text", "dot"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-12)

    p = argparse.ArgumentParser(prog="cluster-nz", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("run", parents=[common], help="run the Y-seed dynamics")
    s.add_argument("input")
    s.add_argument("--matrices-only", action="store_true")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("network", parents=[common], help="mutation network and NZ matrices")
    s.add_argument("input")
    s.set_defaults(func=cmd_network)

    s = sub.add_parser("verify", parents=[common], help="check determinant identities")
    s.add_argument("input")
    s.add_argument("--check", choices=("det", "f-det", "tropical"), default="det")
    s.add_argument("--mode", choices=("exact", "modular"))
    s.add_argument("--trials", type=int, default=8)
    s.add_argument("--eps", help="sign string such as '+-0' for --check f-det")
    s.add_argument("--all-signs", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("tropical", parents=[common], help="C-matrices and tropical signs")
    s.add_argument("input")
    s.set_defaults(func=cmd_tropical)

    s = sub.add_parser("reddening", parents=[common], help="search for a reddening sequence")
    s.add_argument("input", help="file with 'B' or a triangulation")
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--green-only", action="store_true")
    s.set_defaults(func=cmd_reddening)

    s = sub.add_parser("gluing", parents=[common], help="solve the gluing equations")
    s.add_argument("input")
    s.add_argument("--init", default="0.5,0.8", help="'re,im;re,im;...' or a single pair for all")
    s.add_argument("--max-iter", type=int, default=100)
    s.set_defaults(func=cmd_gluing)

    s = sub.add_parser("dynkin", parents=[common], help="dilogarithm identity for an ADE loop")
    s.add_argument("--type", default="A")
    s.add_argument("--rank", type=int, default=2)
    s.set_defaults(func=cmd_dynkin)

    s = sub.add_parser("triangulate", parents=[common], help="exchange matrix of a triangulation")
    s.add_argument("input")
    s.set_defaults(func=cmd_triangulate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except _INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return BAD_INPUT
    except ClusterNZError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INVARIANT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
