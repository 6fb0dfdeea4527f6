"""
Command-line interface.

Exit codes: ``member`` 0 member / 1 non-member / 2 unknown; ``witness`` 0
found / 2 none found; ``check-cert`` and ``check-witness`` 0 valid /
1 invalid; 64 for any usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .exactla import DimensionError, RatMatrix, as_rat
from .fock import creation_matrix, fock_basis
from .freealg import AlphabetError, MatTuple, NcPoly
from .invariant import krylov_closure
from .membership import Member, NonMember, NotHomogeneousError, decide, verify_certificate
from .polytext import PolySyntaxError, format_poly, format_word, parse_poly
from .witness import SearchConfig, Witness, search_witness, verify_witness

EXIT_MEMBER = 0
EXIT_NONMEMBER = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- JSON helpers ------------------------------------------------------------

def rat_str(c: Fraction) -> str:
    return str(c)


def matrix_to_json(A: RatMatrix) -> list:
    return [[rat_str(e) for e in A.row(i)] for i in range(A.rows)]


def _parse_entry(e):
    if isinstance(e, bool) or not isinstance(e, (int, str)):
        raise UsageError(f"matrix entries must be integers or 'p/q' strings, got {e!r}")
    try:
        return as_rat(e)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {e!r}") from exc


def matrix_from_json(data, rows: Optional[int] = None, cols: Optional[int] = None) -> RatMatrix:
    """A matrix given as a list of rows, or flat row-major when the shape is known."""
    if not isinstance(data, list):
        raise UsageError("a matrix must be a JSON array")
    if data and all(isinstance(r, list) for r in data):
        if cols is None and data:
            cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise UsageError("ragged matrix rows")
        return RatMatrix.from_rows([[_parse_entry(e) for e in r] for r in data], cols=cols)
    if rows is None or cols is None or len(data) != rows * cols:
        raise UsageError("flat matrix data needs a matching shape")
    return RatMatrix(rows, cols, tuple(_parse_entry(e) for e in data))


def vector_from_json(data) -> tuple:
    if not isinstance(data, list):
        raise UsageError("a vector must be a JSON array")
    if data and all(isinstance(r, list) for r in data):
        if any(len(r) != 1 for r in data):
            raise UsageError("a vector file must hold a flat array or a single column")
        data = [r[0] for r in data]
    return tuple(_parse_entry(e) for e in data)


def witness_to_json(w: Witness, seed: Optional[int] = None) -> dict:
    out = {
        "n": w.n,
        "r": w.r,
        "X": [matrix_to_json(X) for X in w.X.mats],
        "V": matrix_to_json(w.V),
        "verified": w.checked,
    }
    if seed is not None:
        out["seed"] = seed
    return out


def witness_from_json(data) -> tuple[MatTuple, RatMatrix]:
    if not isinstance(data, dict):
        raise UsageError("a witness must be a JSON object")
    try:
        n, r, Xs, V = data["n"], data["r"], data["X"], data["V"]
    except KeyError as exc:
        raise UsageError(f"witness is missing {exc.args[0]!r}") from exc
    if not all(isinstance(k, int) and not isinstance(k, bool) for k in (n, r)) or n < 1 or r < 0:
        raise UsageError("witness n and r must be nonnegative integers, n >= 1")
    if not isinstance(Xs, list):
        raise UsageError("witness X must be an array of matrices")
    mats = tuple(matrix_from_json(X, n, n) for X in Xs)
    Vm = matrix_from_json(V, n, r)
    for X in mats:
        if X.shape != (n, n):
            raise UsageError(f"witness matrix of shape {X.shape}, expected {n}x{n}")
    if Vm.shape != (n, r):
        raise UsageError(f"witness V of shape {Vm.shape}, expected {n}x{r}")
    return MatTuple(n, mats), Vm


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


# -- commands ----------------------------------------------------------------

def _parse_problem(args) -> tuple[NcPoly, list[NcPoly]]:
    g = parse_poly(args.g, letter="x")
    f = [parse_poly(t, letter="x") for t in args.f]
    d = max([g.nvars] + [p.nvars for p in f])
    return g.lift(d), [p.lift(d) for p in f]


def verdict_json(v) -> dict:
    out = {"verdict": v.kind, "route": v.route}
    if isinstance(v, Member):
        c = v.certificate
        out["h"] = format_poly(c.h, "y")
        if c.m is not None:
            out["m"] = c.m
        if c.level is not None:
            out["n"] = c.level
    else:
        out["h"] = None
        if isinstance(v, NonMember):
            if v.m is not None:
                out["m"] = v.m
        else:
            out["cap"] = v.cap
    return out


def cmd_member(args) -> int:
    g, f = _parse_problem(args)
    if args.cap < 0:
        raise UsageError("--cap must be nonnegative")
    try:
        v = decide(g, f, mode=args.mode, cap=args.cap)
    except NotHomogeneousError as exc:
        raise UsageError(f"{exc}; use --mode semi") from exc
    if args.json:
        print(json.dumps(verdict_json(v)))
    else:
        info = verdict_json(v)
        print(info["verdict"])
        if info["h"] is not None:
            print(f"h = {info['h']}")
        extras = " ".join(f"{k}={info[k]}" for k in ("m", "n", "cap") if k in info)
        print(f"route: {info['route']}" + (f" {extras}" if extras else ""))
    if isinstance(v, Member):
        return EXIT_MEMBER
    if isinstance(v, NonMember):
        return EXIT_NONMEMBER
    return EXIT_UNKNOWN


def cmd_witness(args) -> int:
    g, f = _parse_problem(args)
    try:
        cfg = SearchConfig(max_n=args.max_n, max_trials_per_size=args.trials, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    w = search_witness(g, f, cfg)
    if w is None:
        if args.json:
            print(json.dumps({"found": False, "seed": args.seed, "max_n": args.max_n}))
        print(f"no witness found (seed {args.seed}, max-n {args.max_n})", file=sys.stderr)
        return EXIT_UNKNOWN
    print(json.dumps(witness_to_json(w, seed=args.seed)))
    print(f"witness found: n={w.n}, r={w.r} (seed {args.seed})", file=sys.stderr)
    return 0


def cmd_check_cert(args) -> int:
    g, f = _parse_problem(args)
    h = parse_poly(args.h, nvars=len(f), letter="y")
    if h.nvars != len(f):
        print(f"invalid: certificate uses y{h.nvars} but there are {len(f)} generators")
        return 1
    ok = verify_certificate(g, f, h)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_check_witness(args) -> int:
    g, f = _parse_problem(args)
    X, V = witness_from_json(_load_json(args.witness))
    if len(X.mats) < g.nvars:
        print(f"invalid: {len(X.mats)} matrices for {g.nvars} variables")
        return 1
    d = len(X.mats)
    g, f = g.lift(d), [p.lift(d) for p in f]
    ok = V.cols >= 1 and verify_witness(g, f, X, V)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_closure(args) -> int:
    ops = [matrix_from_json(_load_json(p)) for p in args.ops]
    v = vector_from_json(_load_json(args.vec))
    for T in ops:
        if T.shape != (len(v), len(v)):
            raise UsageError(f"operator of shape {T.shape} for a vector of length {len(v)}")
    C = krylov_closure(ops, v)
    labels = [{"word": format_word(u, "y"), "vector": [rat_str(e) for e in w]} for u, w in C.labels]
    if args.json:
        print(json.dumps({
            "ambient_dim": C.ambient_dim,
            "rank": C.rank,
            "basis": matrix_to_json(C.basis),
            "labels": labels,
            "stabilized_at": C.stabilized_at,
        }))
    else:
        print(f"ambient dimension {C.ambient_dim}, rank {C.rank}, stabilized at {C.stabilized_at}")
        for lab in labels:
            print(f"{lab['word']}: [{', '.join(lab['vector'])}]")
    return 0


def cmd_fock(args) -> int:
    if args.d < 1 or args.m < 0:
        raise UsageError("need -d >= 1 and -m >= 0")
    space = fock_basis(args.d, args.m)
    print(f"# truncated Fock space d={args.d} m={args.m}, dim {space.dim}")
    for w in space.basis:
        print(format_word(w, "x"))
    if args.matrices:
        for k in range(1, args.d + 1):
            L = creation_matrix(space, k)
            print(f"# L_x{k}")
            for i in range(L.rows):
                print(" ".join(rat_str(e) for e in L.row(i)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ncmember", description="Subalgebra membership in free algebras.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def problem(p, need_f=True):
        p.add_argument("-g", required=True, help="target polynomial")
        p.add_argument("-f", action="append", required=need_f, default=[], help="generator (repeatable)")

    p = sub.add_parser("member", help="decide or semidecide membership")
    problem(p)
    p.add_argument("--mode", choices=["auto", "homog", "single", "semi"], default="auto")
    p.add_argument("--cap", type=int, default=6, help="y-degree cap for the semidecider")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("witness", help="search for a non-membership witness")
    problem(p)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200, help="random trials per matrix size")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check-cert", help="verify h(f) == g")
    problem(p)
    p.add_argument("--h", required=True, help="certificate in y1..yl")
    p.set_defaults(func=cmd_check_cert)

    p = sub.add_parser("check-witness", help="verify a witness file")
    problem(p)
    p.add_argument("--witness", required=True, help="witness JSON file")
    p.set_defaults(func=cmd_check_witness)

    p = sub.add_parser("closure", help="smallest joint invariant subspace containing a vector")
    p.add_argument("--ops", nargs="+", required=True, help="matrix JSON files")
    p.add_argument("--vec", required=True, help="vector JSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("fock", help="truncated Fock space basis and creation matrices")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--matrices", action="store_true")
    p.set_defaults(func=cmd_fock)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, PolySyntaxError, AlphabetError, DimensionError) as exc:
        print(f"ncmember {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
