"""Command-line interface: ``qmf <subcommand> ...``.

Results go to stdout as canonical JSON (or CSV for tables), diagnostics to
stderr.  Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from . import acceptance, bounds, primes, rankcert, sturm, zbasis
from .eisenstein import dim_quasimodular
from .errors import DomainError, QMFError
from .jsonio import RunManifest, dumps
from .series import QSeries


def _even_weight(text: str) -> int:
    try:
        w = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"weight must be an integer, got {text!r}")
    if w < 0 or w % 2:
        raise argparse.ArgumentTypeError("weight must be even and non-negative")
    return w


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _modulus(text: str) -> int:
    v = _positive(text)
    if v < 2:
        raise argparse.ArgumentTypeError("modulus must be >= 2")
    return v


def _load_series(path: str) -> QSeries:
    try:
        obj = json.loads(Path(path).read_text())
        return QSeries.from_json(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise DomainError(f"cannot read series from {path}: {exc}")


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([str(x) for x in r])
    return buf.getvalue().rstrip("\n")


# -- subcommands: each returns (output text, exit code) ----------------------

def cmd_basis(args) -> tuple[str, int]:
    zb = zbasis.saturate(args.weight, prec=args.prec, check_prec=args.check_prec)
    if args.csv:
        header = ["n"] + [f"f{j}" for j in range(len(zb.elements))]
        rows = [[n] + [int(e[n]) for e in zb.elements] for n in range(zb.elements[0].prec)]
        return _csv(header, rows), 0
    return dumps(zb), 0


def cmd_certify(args) -> tuple[str, int]:
    mat = zbasis.build_matrix(args.weight, args.rows)
    cert = rankcert.certify(mat, entry_bound=args.entry_bound, prime_floor=args.prime_floor)
    return dumps(cert), 0


def cmd_bound(args) -> tuple[str, int]:
    if args.weight < 2:
        raise DomainError("weight must be >= 2")
    k = args.weight // 2
    mode = bounds.Mode.parse(args.mode)
    theorem = bounds.theorem_bound(k, mode)
    if k < 10:
        # the descent inequalities are only established for k >= 10
        out = {"k": k, "mode": mode.name, "final_bound": theorem, "theorem_bound": theorem, "steps": []}
        return dumps(out), 0
    tr = bounds.descent(k, mode, bounds.DescentConfig(exact_primes=args.exact_primes))
    if args.trace:
        for i, st in enumerate(tr.steps):
            print(f"step {i}: m_in={st.m_in} N={st.N} p_N<={st.p_N_upper} m_out={st.m_out}", file=sys.stderr)
    out = tr.to_json()
    out["theorem_bound"] = theorem
    if args.csv:
        rows = [[s["m_in"], s["N"], s["p_N_upper"], s["m_out"]] for s in out["steps"]]
        return _csv(["m_in", "N", "p_N_upper", "m_out"], rows), 0
    return dumps(out), 0


def cmd_primes(args) -> tuple[str, int]:
    n = args.nth
    p = primes.nth_prime(n)
    out = {"n": n, "p": p}
    if n >= 3:
        out.update({
            "rosser_lower": primes.rosser_lower(n),
            "bertrand_upper": primes.bertrand_upper(n),
            "rosser_holds": primes.rosser_holds(n, p),
            "bertrand_holds": primes.bertrand_holds(n, p),
        })
    return dumps(out), 0


def _mod_bound(weight: int, modulus: int, max_rows: int) -> int | None:
    zb = zbasis.saturate(weight)
    full = zb.matrix(max_rows)
    for r in range(dim_quasimodular(weight), max_rows + 1):
        if zbasis.determines_mod(full.truncate(r), modulus):
            return r
    return None


def cmd_sturm(args) -> tuple[str, int]:
    w = args.weight
    d = dim_quasimodular(w)
    out = {"weight": w, "dim": d,
           "optimal_bound": sturm.optimal_sturm_bound(w, args.max_rows),
           "required_prec": sturm.required_prec(w, args.conjectural),
           "conjectural": args.conjectural}
    if args.modulus is not None:
        out["modulus"] = args.modulus
        out["mod_bound"] = _mod_bound(w, args.modulus, args.max_rows or 2 * d + 10)
    return dumps(out), 0


def cmd_conjecture(args) -> tuple[str, int]:
    rows = sturm.conjecture_scan(args.max_k, min_k=args.min_k)
    ok = all(r.match for r in rows)
    if args.csv:
        return _csv(["k", "dim", "bound", "match"],
                    [[r.k, r.dim, r.bound, str(r.match).lower()] for r in rows]), 0 if ok else 1
    return dumps({"rows": rows, "all_match": ok}), 0 if ok else 1


def cmd_congruence(args) -> tuple[str, int]:
    f, g = _load_series(args.a), _load_series(args.b)
    v = sturm.congruent_mod(f, g, args.modulus, args.weight, conjectural=args.conjectural)
    return dumps(v), 0


def cmd_decompose(args) -> tuple[str, int]:
    f = _load_series(args.f)
    return dumps(sturm.decompose(f, args.weight)), 0


def cmd_repro(args) -> tuple[str, int]:
    results = acceptance.run_all(args.only)
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    if args.csv:
        return _csv(["criterion", "passed", "seconds", "detail"],
                    [[r.number, str(r.passed).lower(), f"{r.seconds:.3f}", r.detail] for r in results]), \
            0 if ok else 1
    return dumps({"results": results, "all_passed": ok}), 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output for tables")
    common.add_argument("--manifest", metavar="PATH", help="write a run manifest to PATH")

    p = argparse.ArgumentParser(prog="qmf", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"qmf {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("basis", parents=[common], help="saturated Z-basis of a weight")
    s.add_argument("--weight", type=_even_weight, required=True)
    s.add_argument("--prec", type=_positive, default=None)
    s.add_argument("--check-prec", type=_positive, default=None)
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("certify", parents=[common], help="rank certificate for the monomial matrix")
    s.add_argument("--weight", type=_even_weight, required=True)
    s.add_argument("--rows", type=_positive, required=True)
    s.add_argument("--prime-floor", type=_positive, default=11)
    s.add_argument("--entry-bound", type=_positive, default=None)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("bound", parents=[common], help="theorem bound and descent trace")
    s.add_argument("--weight", type=_even_weight, required=True)
    s.add_argument("--mode", choices=["z", "q"], default="z")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--exact-primes", action="store_true")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("primes", parents=[common], help="n-th prime and its bounds")
    s.add_argument("--nth", type=_positive, required=True)
    s.set_defaults(func=cmd_primes)

    s = sub.add_parser("sturm", parents=[common], help="determination bounds for a weight")
    s.add_argument("--weight", type=_even_weight, required=True)
    s.add_argument("--modulus", type=_modulus, default=None)
    s.add_argument("--conjectural", action="store_true")
    s.add_argument("--max-rows", type=_positive, default=None)
    s.set_defaults(func=cmd_sturm)

    s = sub.add_parser("conjecture", parents=[common], help="optimal bound vs dimension table")
    s.add_argument("--max-k", type=_positive, required=True)
    s.add_argument("--min-k", type=_positive, default=1)
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("congruence", parents=[common], help="compare two series mod m")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--modulus", type=_modulus, required=True)
    s.add_argument("--weight", type=_even_weight, required=True)
    s.add_argument("--conjectural", action="store_true")
    s.set_defaults(func=cmd_congruence)

    s = sub.add_parser("decompose", parents=[common], help="monomial coordinates of a series")
    s.add_argument("f")
    s.add_argument("--weight", type=_even_weight, required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("repro", parents=[common], help="run the acceptance criteria")
    s.add_argument("--only", type=_positive, nargs="+", default=None)
    s.set_defaults(func=cmd_repro)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest", "command")}
    manifest = RunManifest(args.command, params)
    try:
        text, code = args.func(args)
    except QMFError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(text)
    if args.manifest:
        manifest.finish(text)
        Path(args.manifest).write_text(dumps(manifest) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
