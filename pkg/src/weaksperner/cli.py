"""
Command line front end.

Exit codes: 0 verified, 1 a mathematical claim failed, 2 input error,
3 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from pathlib import Path

from . import __version__
from .coxeter import (
    BudgetExceeded,
    UnsupportedCoxeterType,
    conjecture_check,
    coxeter_type,
    parse_coxeter,
    parse_coxeter_matrix,
)
from .exactlinalg import Verdict, determinant_exact, nonsingular_certificate, write_triplets
from .poset import build_weak_order, export_dot
from .sl2 import build_D, build_triple, build_U, raising_power_block, verify_sl2
from .sperner import certify

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

# weak orders larger than this need --large
DEFAULT_MAX_N = 6


class InputError(ValueError):
    pass


def _write_atomic(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc}") from exc


def _emit_json(payload: dict, out: str | None) -> None:
    _write_atomic(json.dumps(payload, indent=2) + "\n", out)


def _check_weak_n(n: int, large: bool, hard_max: int = 7) -> None:
    if n < 1 or n > hard_max:
        raise InputError(f"--n must be between 1 and {hard_max}")
    if n > DEFAULT_MAX_N and not large:
        raise BudgetExceeded(f"n={n} is over the default budget; pass --large")


def cmd_verify_sl2(args) -> int:
    _check_weak_n(args.n, args.large)
    t0 = time.perf_counter()
    report = verify_sl2(build_triple(args.n))
    payload = {
        "schema": 1,
        "command": "verify-sl2",
        "symmetric_group_n": args.n,
        **report.to_dict(),
        "seconds": round(time.perf_counter() - t0, 3),
        "seed": args.seed,
        "versions": {"weaksperner": __version__},
    }
    _emit_json(payload, args.out)
    if not report.ok:
        bad = next(r for r in report.residuals if not r.holds)
        print(f"relation {bad.relation} fails at entry {bad.first_offending}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_certify(args) -> int:
    t0 = time.perf_counter()
    if args.coxeter or args.coxeter_file:
        if args.coxeter_file:
            spec = parse_coxeter_matrix(Path(args.coxeter_file).read_text(),
                                        label=Path(args.coxeter_file).stem)
        else:
            spec = parse_coxeter(args.coxeter)
        cert = conjecture_check(spec, allow_large=args.opt_in_h4, with_oracle=args.with_oracle,
                                seed=args.seed, workers=args.workers)
        target = {"coxeter": spec.label, "coxeter_rank": spec.rank}
    elif args.n is not None:
        if args.type:
            # --type A --n R is the Coxeter group A_R, i.e. S_(R+1)
            if args.type.upper() != "A":
                spec = coxeter_type(args.type, args.n)
                cert = conjecture_check(spec, allow_large=args.opt_in_h4,
                                        with_oracle=args.with_oracle, seed=args.seed,
                                        workers=args.workers)
                target = {"coxeter": spec.label, "coxeter_rank": spec.rank}
                return _finish_certify(cert, target, args, t0)
            n = args.n + 1
        else:
            n = args.n
        _check_weak_n(n, args.large)
        P = build_weak_order(n)
        cert = certify(P, with_oracle=args.with_oracle, seed=args.seed, workers=args.workers)
        target = {"symmetric_group_n": n, "coxeter": f"A{n - 1}", "coxeter_rank": n - 1}
    else:
        raise InputError("give --n, --type with --n, --coxeter or --coxeter-file")
    return _finish_certify(cert, target, args, t0)


def _finish_certify(cert, target: dict, args, t0: float) -> int:
    payload = cert.to_dict()
    payload.update({"command": "certify", "target": target,
                    "seconds": round(time.perf_counter() - t0, 3)})
    _emit_json(payload, args.out)
    return EXIT_OK if cert.strongly_sperner and cert.peck else EXIT_FAILED


def cmd_invertibility(args) -> int:
    if not 1 <= args.n <= 6:
        raise InputError("--n must be between 1 and 6")
    mode = args.mode or ("exact" if args.n <= 5 else "modular")
    T = build_triple(args.n)
    rows = []
    ok = True
    for k in range((T.r + 1) // 2):
        block = raising_power_block(T, k)
        cert = nonsingular_certificate(block, seed=args.seed + k, exact=(mode == "exact"))
        row = {"k": k, "power": T.r - 2 * k, "dimension": block.rows, **cert.to_dict()}
        if mode == "exact" and cert.determinant is None:
            row["determinant"] = str(determinant_exact(block))
        rows.append(row)
        ok = ok and cert.verdict is Verdict.NONSINGULAR
    payload = {
        "schema": 1,
        "command": "invertibility",
        "symmetric_group_n": args.n,
        "mode": mode,
        "blocks": rows,
        "all_nonsingular": ok,
        "seed": args.seed,
        "versions": {"weaksperner": __version__},
    }
    _emit_json(payload, args.out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_export(args) -> int:
    limit = 6 if args.format == "dot" else 7
    if not 1 <= args.n <= limit:
        raise InputError(f"--n must be between 1 and {limit} for {args.format} output")
    P = build_weak_order(args.n)
    if args.which == "hasse":
        M = None
    else:
        M = build_U(P) if args.which == "U" else build_D(P)
    if args.format == "triplet":
        if M is None:
            from .exactlinalg import IntMatrix
            M = IntMatrix(len(P), len(P), {(y, x): 1 for x, y in P.cover_edges()})
        import io
        buf = io.StringIO()
        write_triplets(M, buf, basis=f"weak_order({args.n})", order="lex")
        text = buf.getvalue()
    else:
        if M is None:
            text = export_dot(P)
        else:
            # matrix entry [target, source] becomes the edge source -> target
            labels = {(c, r): v for r, c, v in M.entries()}
            text = export_dot(P, labels, edges=labels.keys(),
                              graph_name=f"{args.which}_weak_order({args.n})")
    _write_atomic(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weaksperner",
        description="sl2-action on the weak order and strong Sperner certificates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="seed for prime selection (default 0)")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("verify-sl2", help="check [H,U]=2U, [H,D]=-2D, [U,D]=H exactly")
    p.add_argument("--n", type=int, required=True, help="symmetric group S_n")
    p.add_argument("--large", action="store_true", help="allow n = 7")
    common(p)
    p.set_defaults(func=cmd_verify_sl2)

    p = sub.add_parser("certify", help="strong Sperner / Peck certificate")
    p.add_argument("--n", type=int, help="S_n without --type; the rank with --type")
    p.add_argument("--type", help="Coxeter family letter, combined with --n as the rank")
    p.add_argument("--coxeter", help="type string such as A3, B3, H3, F4, I2:7")
    p.add_argument("--coxeter-file", help="Coxeter matrix file: rank, then the upper triangle")
    p.add_argument("--with-oracle", action="store_true", help="also run the exhaustive oracle")
    p.add_argument("--opt-in-h4", action="store_true", help="allow groups as large as H4")
    p.add_argument("--large", action="store_true", help="allow the weak order of S_7")
    p.add_argument("--workers", type=int, default=1, help="processes for the per-k flows")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("invertibility", help="nonsingularity of the U^(r-2k) blocks")
    p.add_argument("--n", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--modular", dest="mode", action="store_const", const="modular")
    common(p)
    p.set_defaults(func=cmd_invertibility)

    p = sub.add_parser("export", help="Hasse diagram or operator as DOT or triplets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--which", choices=["hasse", "U", "D"], default="hasse")
    p.add_argument("--format", choices=["dot", "triplet"], default="dot")
    common(p)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, UnsupportedCoxeterType, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
