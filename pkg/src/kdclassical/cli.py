"""Command-line front door.

Thin client over the same handlers the HTTP service uses: parse arguments
and files, dispatch, emit a deterministic JSON report on stdout or --out.

Exit codes: 0 success, 64 usage error, 65 invalid data, 70 internal
consistency failure, 73 unwritable output path.
"""

from __future__ import annotations

import argparse
import sys

from . import handlers, jsonio
from .core import DEFAULT_TOL, Tolerances, as_unitary
from .dft import dft_matrix
from .errors import InternalConsistencyError

EX_OK = 0
EX_USAGE = 64
EX_DATAERR = 65
EX_INTERNAL = 70
EX_CANTCREAT = 73


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we want exit 64
        raise UsageError(message)


def _add_matrix_flags(p: _Parser) -> None:
    p.add_argument("--matrix", metavar="PATH", help="transition matrix JSON file")
    p.add_argument("--dft", type=int, metavar="N", help="use the N-dimensional DFT matrix")


def _add_tol_flags(p: _Parser) -> None:
    p.add_argument("--tol-zero", type=float, metavar="F", dest="tol_zero")
    p.add_argument("--tol-angle", type=float, metavar="F", dest="tol_angle")
    p.add_argument("--tol-unitary", type=float, metavar="F", dest="tol_unitary")
    p.add_argument("--tol-eig", type=float, metavar="F", dest="tol_eig")


def _add_out_flag(p: _Parser) -> None:
    p.add_argument("--out", metavar="PATH", help="write the JSON report to PATH")


def build_parser() -> _Parser:
    parser = _Parser(prog="kdclassical", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("table", help="KD quasiprobability table of a state")
    _add_matrix_flags(p)
    p.add_argument("--state", metavar="PATH", required=True)
    _add_tol_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("classify", help="decide KD classicality of a state")
    _add_matrix_flags(p)
    p.add_argument("--state", metavar="PATH", required=True)
    _add_tol_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("blocks", help="direct-sum block structure of a matrix")
    _add_matrix_flags(p)
    p.add_argument("--state", metavar="PATH", help="analyze this state's support window")
    p.add_argument("--rows", metavar="LIST", help="comma-separated row window")
    p.add_argument("--cols", metavar="LIST", help="comma-separated column window")
    _add_tol_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("cluster", help="orthogonal clusters of an obtuse vector family")
    p.add_argument("--vectors", metavar="PATH", required=True)
    _add_tol_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("witness", help="zero-count nonclassicality witnesses")
    _add_matrix_flags(p)
    p.add_argument("--state", metavar="PATH", required=True)
    _add_tol_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("oracle", help="brute-force classical-support catalog")
    _add_matrix_flags(p)
    p.add_argument("--max-d", type=int, default=8, dest="max_d", metavar="N")
    p.add_argument("--sweep", type=int, metavar="TRIALS",
                   help="run the witness soundness sweep instead of the catalog")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    _add_tol_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("verify", help="feasibility of a prescribed support pair")
    _add_matrix_flags(p)
    p.add_argument("--sa", metavar="LIST", required=True, help="comma-separated A support")
    p.add_argument("--sb", metavar="LIST", required=True, help="comma-separated B support")
    _add_tol_flags(p)
    _add_out_flag(p)

    p = sub.add_parser("dft-enum", help="catalog of all KD classical DFT states")
    p.add_argument("--d", type=int, required=True, metavar="N")
    _add_tol_flags(p)
    _add_out_flag(p)

    return parser


def _tolerances(args) -> Tolerances:
    overrides = {}
    for field, attr in (
        ("eps_zero", "tol_zero"),
        ("eps_angle", "tol_angle"),
        ("eps_unitary", "tol_unitary"),
        ("eps_eig", "tol_eig"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            overrides[field] = value
    return Tolerances(**overrides) if overrides else DEFAULT_TOL


def _matrix(args, tol: Tolerances):
    if getattr(args, "dft", None) is not None and getattr(args, "matrix", None) is not None:
        raise UsageError("--matrix and --dft are mutually exclusive")
    if getattr(args, "dft", None) is not None:
        if args.dft < 1:
            raise UsageError("--dft needs a positive dimension")
        return dft_matrix(args.dft)
    if getattr(args, "matrix", None) is not None:
        return as_unitary(jsonio.parse_matrix(jsonio.load_json(args.matrix)), tol)
    raise UsageError("one of --matrix or --dft is required")


def _state(args):
    return jsonio.parse_state(jsonio.load_json(args.state))


def _index_list(text: str, flag: str) -> list[int]:
    try:
        items = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from exc
    if not items:
        raise UsageError(f"{flag} must name at least one index")
    return items


def run_command(args) -> object:
    tol = _tolerances(args)
    cmd = args.command
    if cmd == "table":
        return handlers.table_report(_matrix(args, tol), _state(args), tol)
    if cmd == "classify":
        return handlers.classify_report(_matrix(args, tol), _state(args), tol)
    if cmd == "blocks":
        U = _matrix(args, tol)
        psi = jsonio.parse_state(jsonio.load_json(args.state)) if args.state else None
        rows = _index_list(args.rows, "--rows") if args.rows else None
        cols = _index_list(args.cols, "--cols") if args.cols else None
        return handlers.blocks_report(U, psi=psi, rows=rows, cols=cols, tol=tol)
    if cmd == "cluster":
        vectors = jsonio.parse_vectors(jsonio.load_json(args.vectors))
        return handlers.cluster_report(vectors, tol)
    if cmd == "witness":
        return handlers.witness_report(_matrix(args, tol), _state(args), tol)
    if cmd == "oracle":
        U = _matrix(args, tol)
        if args.sweep is not None:
            return handlers.sweep_report(U, args.sweep, args.seed, tol)
        return handlers.oracle_report(U, max_d=args.max_d, tol=tol)
    if cmd == "verify":
        U = _matrix(args, tol)
        sa = _index_list(args.sa, "--sa")
        sb = _index_list(args.sb, "--sb")
        return handlers.verify_report(U, sa, sb, tol)
    if cmd == "dft-enum":
        if args.d < 1:
            raise UsageError("--d needs a positive dimension")
        return handlers.dft_enum_records(args.d, tol)
    raise UsageError("a subcommand is required (see --help)")


def _emit(text: str, out_path: str | None) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return EX_OK
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return EX_CANTCREAT
    return EX_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except SystemExit as exc:  # --help
        return EX_OK if exc.code in (0, None) else EX_USAGE

    try:
        payload = run_command(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EX_INTERNAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR
    return _emit(jsonio.dumps(payload) + "\n", args.out)


if __name__ == "__main__":
    sys.exit(main())
