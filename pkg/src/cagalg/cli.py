"""Command-line front end.

Subcommands: ``verify``, ``convert``, ``coproduct``, ``fock``, ``identity``,
``probe-21d``, ``selftest``.  JSON (``--format json``) is the stable machine
interface; text output may evolve.  Exit status is 0 when every checked
outcome is zero/ok, 1 when any outcome is nonzero, 2 for usage errors and
refusals.  ``CAG_NUM_THREADS`` caps verification concurrency.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .fock import fock_dump, fock_matrix_rep, fock_module
from .freealg import GenKind, GenSymbol
from .matrep import (
    MatrixRep, defining_rep_classical, merge_reps, pullback_rep,
    tensor_square_rep, vector_rep_quantum,
)
from .morphisms import (
    NoClosedFormError, apply_genmap, cag_from_chevalley_classical,
    cag_from_chevalley_quantum, chevalley_from_cag_classical,
    chevalley_from_cag_quantum, coproduct_chevalley,
    coproduct_on_cag, coproduct_on_cag_closed_form,
)
from .parser import ParseError, parse_to_poly, scan_max_index, tokenize
from .presentations import (
    classical_cag, classical_cag_algebra, classical_chevalley,
    classical_chevalley_algebra, quantum_cag, quantum_cag_algebra,
    quantum_chevalley, quantum_chevalley_algebra,
)
from .selftest import run_selftest
from .verify import (
    VerificationReport, check_identity, corrupt_sign_21c, probe_21d_range,
    verify_classical_limit, verify_named_consequences, verify_presentation,
)

#: symbolic-q size guardrails; larger ranks must use an exact numeric q
MAX_SYMBOLIC_N = 4
MAX_SYMBOLIC_TENSOR_N = 3
MAX_NUMERIC_N = 12
MAX_FOCK_DIM = 3000


class CliError(Exception):
    """Usage error or refusal; exits with status 2 and guidance."""


def _parse_q(text: str) -> Optional[Fraction]:
    if text == "symbolic":
        return None
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"--q must be 'symbolic' or an exact rational, got {text!r}")
    if value in (0, 1, -1):
        raise CliError("numeric q must differ from 0 and +/-1")
    return value


def _emit(args, payload: dict, text_lines) -> None:
    if args.format == "json":
        out = json.dumps(payload, sort_keys=True, indent=2)
    else:
        out = "\n".join(text_lines)
    out += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(out)
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _quantum_base_rep(n: int, q_value: Optional[Fraction], rep_name: str) -> MatrixRep:
    if rep_name == "tensor-square":
        if q_value is None and n > MAX_SYMBOLIC_TENSOR_N:
            raise CliError(
                f"symbolic q with the tensor-square representation is supported "
                f"for n <= {MAX_SYMBOLIC_TENSOR_N}; pass --q 3/2 (or another "
                f"exact rational) for larger ranks")
        base = vector_rep_quantum(n, "symbolic" if q_value is None else q_value)
        return tensor_square_rep(base, coproduct_chevalley(n))
    if q_value is None and n > MAX_SYMBOLIC_N:
        raise CliError(
            f"symbolic q with the vector representation is supported for "
            f"n <= {MAX_SYMBOLIC_N}; pass --q 3/2 (or another exact rational) "
            f"for larger ranks")
    if q_value is not None and n > MAX_NUMERIC_N:
        raise CliError(f"rank n={n} exceeds the supported bound {MAX_NUMERIC_N}")
    return vector_rep_quantum(n, "symbolic" if q_value is None else q_value)


def _fock_rep(n: int, rep_name: str) -> MatrixRep:
    try:
        p = int(rep_name.split(":", 1)[1])
    except (IndexError, ValueError):
        raise CliError("fock representation must be written fock:P, e.g. fock:4")
    mod = fock_module(n, p)
    if mod.dim > MAX_FOCK_DIM:
        raise CliError(
            f"fock module dimension {mod.dim} exceeds {MAX_FOCK_DIM}; "
            f"reduce --n or the order P")
    return fock_matrix_rep(mod)


def _cmd_verify(args) -> int:
    n = args.n
    if n < 1:
        raise CliError("--n must be at least 1")
    q_value = _parse_q(args.q)
    algebra = args.algebra
    rep_name = args.rep
    classical = algebra.startswith("classical")
    if rep_name is None:
        rep_name = "defining" if classical else "vector"

    if algebra in ("classical-chevalley", "classical-cag", "classical-cag-extended"):
        if rep_name == "defining":
            rep = defining_rep_classical(n)
        elif rep_name.startswith("fock"):
            rep = _fock_rep(n, rep_name)
        else:
            raise CliError(
                f"{algebra} is checked in the 'defining' or 'fock:P' representations")
        if algebra == "classical-chevalley":
            pres = classical_chevalley(n)
        else:
            pres = classical_cag(n, extended=algebra.endswith("extended"))
        report = verify_presentation(pres, rep, full_residuals=args.full_residuals)
    elif algebra in ("quantum-chevalley", "quantum-cag"):
        if rep_name not in ("vector", "tensor-square"):
            raise CliError(
                f"{algebra} is checked in the 'vector' or 'tensor-square' representations")
        base = _quantum_base_rep(n, q_value, rep_name)
        if algebra == "quantum-chevalley":
            pres = quantum_chevalley(n)
            rep = base
        else:
            pres = quantum_cag(n)
            rep = pullback_rep(cag_from_chevalley_quantum(n), base)
        if args.corrupt_21c:
            if algebra != "quantum-cag":
                raise CliError("--corrupt-21c applies to --algebra quantum-cag")
            pres = corrupt_sign_21c(pres)
        report = verify_presentation(pres, rep, full_residuals=args.full_residuals)
    elif algebra == "consequences":
        base = _quantum_base_rep(n, q_value, "vector")
        rep = merge_reps(base, pullback_rep(cag_from_chevalley_quantum(n), base))
        report = verify_named_consequences(n, rep, full_residuals=args.full_residuals)
    elif algebra == "classical-limit":
        if rep_name.startswith("fock"):
            rep = _fock_rep(n, rep_name)
        else:
            rep = defining_rep_classical(n)
        report = verify_classical_limit(n, rep, full_residuals=args.full_residuals)
    else:
        raise CliError(f"unknown --algebra {algebra!r}")

    _emit(args, report.to_dict(include_timing=not args.no_timing),
          report.text_lines())
    return 0 if report.all_zero else 1


# ---------------------------------------------------------------------------
# convert
# ---------------------------------------------------------------------------

_ALGEBRA_BUILDERS = {
    "cl-chevalley": classical_chevalley_algebra,
    "cl-cag": classical_cag_algebra,
    "q-chevalley": quantum_chevalley_algebra,
    "q-cag": quantum_cag_algebra,
}

_CONVERT_MAPS = {
    ("cl-cag", "cl-chevalley"): cag_from_chevalley_classical,
    ("cl-chevalley", "cl-cag"): chevalley_from_cag_classical,
    ("q-cag", "q-chevalley"): cag_from_chevalley_quantum,
    ("q-chevalley", "q-cag"): chevalley_from_cag_quantum,
}


def _cmd_convert(args) -> int:
    key = (args.source, args.target)
    if key not in _CONVERT_MAPS:
        supported = ", ".join(f"{a}->{b}" for a, b in _CONVERT_MAPS)
        raise CliError(f"unsupported direction {args.source} -> {args.target}; "
                       f"supported: {supported}")
    n = args.n if args.n else max(scan_max_index(args.expr), 1)
    genmap = _CONVERT_MAPS[key](n)
    poly = parse_to_poly(args.expr, _ALGEBRA_BUILDERS[args.source](n))
    image = apply_genmap(genmap, poly)
    payload = {"direction": f"{args.source}->{args.target}", "n": n,
               "source": args.expr, "image": str(image)}
    _emit(args, payload, [str(image)])
    return 0


# ---------------------------------------------------------------------------
# coproduct
# ---------------------------------------------------------------------------


def _parse_gen(text: str) -> GenSymbol:
    tokens = tokenize(text.strip())
    if len(tokens) != 2 or tokens[0].kind != "gen":
        raise CliError(f"--gen must be a single generator, got {text!r}")
    return tokens[0].symbol


def _cmd_coproduct(args) -> int:
    n = args.n
    if n < 1:
        raise CliError("--n must be at least 1")
    sym = _parse_gen(args.gen)
    sep = "(x)" if args.ascii else "⊗"
    mode = args.mode
    if sym.kind in (GenKind.E, GenKind.F, GenKind.K, GenKind.KBAR):
        if not 1 <= sym.index <= n:
            raise CliError(f"index of {sym.text()} out of range for n={n}")
        image = coproduct_chevalley(n).image(sym)
        payload = {"gen": sym.text(), "n": n, "mode": "chevalley",
                   "expansion": image.text(sep)}
        _emit(args, payload, [image.text(sep)])
        return 0
    if sym.kind not in (GenKind.APLUS, GenKind.AMINUS):
        raise CliError(f"{sym.text()} has no coproduct here (use e/f/k/kb or a…+/-)")
    if not 1 <= sym.index <= n:
        raise CliError(f"index of {sym.text()} out of range for n={n}")
    sign = +1 if sym.kind is GenKind.APLUS else -1
    if mode in ("auto", "cag"):
        try:
            closed = coproduct_on_cag_closed_form(n, sym.index, sign)
            display = closed.display if not args.ascii else \
                closed.display.replace("⊗", "(x)")
            payload = {"gen": sym.text(), "n": n, "mode": "cag",
                       "expansion": closed.tensor.text(sep),
                       "display": display}
            _emit(args, payload, [display])
            return 0
        except NoClosedFormError as exc:
            if mode == "cag":
                raise CliError(str(exc))
    raw = coproduct_on_cag(n, sym.index, sign)
    payload = {"gen": sym.text(), "n": n, "mode": "raw",
               "expansion": raw.text(sep)}
    _emit(args, payload, [raw.text(sep)])
    return 0


# ---------------------------------------------------------------------------
# fock
# ---------------------------------------------------------------------------


def _cmd_fock(args) -> int:
    if args.n < 1 or args.p < 0:
        raise CliError("need --n >= 1 and --p >= 0")
    mod = fock_module(args.n, args.p)
    if mod.dim > MAX_FOCK_DIM:
        raise CliError(f"fock module dimension {mod.dim} exceeds {MAX_FOCK_DIM}")
    payload = fock_dump(mod, include_matrices=args.dump)
    lines = [f"n={mod.n} p={mod.p} dimension={mod.dim} vacuum={mod.vacuum}",
             f"family: {payload['family']}"]
    if args.dump:
        for name, triples in payload["matrices"].items():
            lines.append(f"{name}: " + "; ".join(
                f"({r},{c})={v}" for r, c, v in triples))
    _emit(args, payload, lines)
    return 0


# ---------------------------------------------------------------------------
# identity / probe / selftest
# ---------------------------------------------------------------------------


def _cmd_identity(args) -> int:
    result = check_identity(args.id, corrupt_condition=args.corrupt_condition)
    status = "ok" if result.ok else "nonzero"
    payload = {"identity": result.identity, "status": status,
               "corrupt_condition": args.corrupt_condition,
               "residual": result.residual_text if not result.ok else ""}
    lines = [f"identity {result.identity}: {status}"]
    if not result.ok:
        lines.append(f"residual: {result.residual_text}")
    _emit(args, payload, lines)
    return 0 if result.ok else 1


def _cmd_probe_21d(args) -> int:
    n = args.n
    if n < 1:
        raise CliError("--n must be at least 1")
    q_value = _parse_q(args.q)
    base = _quantum_base_rep(n, q_value, "vector")
    rep = pullback_rep(cag_from_chevalley_quantum(n), base)
    table = probe_21d_range(n, rep)
    lines = [f"triple-relation index probe, n={n}, rep={table['rep']}"]
    for row in table["rows"]:
        lines.append(f"  i={row['i']} xi={row['xi']:+d} eta={row['eta']:+d} "
                     f"j={row['j']}: {row['status']}")
    lines.append(f"verified j range: {table['verified_j_range']}")
    _emit(args, table, lines)
    return 0 if table["summary"]["nonzero"] == 0 else 1


def _cmd_selftest(args) -> int:
    result = run_selftest(args.seed)
    lines = [f"selftest seed={result['seed']}"]
    for check in result["checks"]:
        lines.append(f"  [{check['status']}] {check['name']}")
    _emit(args, result, lines)
    return 0 if result["ok"] else 1


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, default_format: str = "text") -> None:
    p.add_argument("--format", choices=("json", "text"), default=default_format)
    p.add_argument("--out", metavar="FILE", help="write output to FILE")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cagalg",
        description="exact verification toolkit for Chevalley and "
                    "creation/annihilation presentations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a relation set in a representation")
    p.add_argument("--algebra", required=True,
                   choices=("classical-chevalley", "classical-cag",
                            "classical-cag-extended", "quantum-chevalley",
                            "quantum-cag", "consequences", "classical-limit"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", default=None,
                   help="defining | vector | tensor-square | fock:P")
    p.add_argument("--q", default="symbolic",
                   help="'symbolic' or an exact rational such as 3/2")
    p.add_argument("--full-residuals", action="store_true")
    p.add_argument("--corrupt-21c", action="store_true",
                   help="negative control: flip the sign of the Cartan side "
                        "of the pairing relation; the run must FAIL")
    p.add_argument("--no-timing", action="store_true",
                   help="omit timing fields (byte-stable output)")
    _add_common(p, default_format="json")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("convert", help="rewrite an expression in the other generator set")
    p.add_argument("--from", dest="source", required=True,
                   choices=tuple(_ALGEBRA_BUILDERS))
    p.add_argument("--to", dest="target", required=True,
                   choices=tuple(_ALGEBRA_BUILDERS))
    p.add_argument("--expr", required=True)
    p.add_argument("--n", type=int, default=0,
                   help="session rank (default: inferred from the expression)")
    _add_common(p)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("coproduct", help="tensor expansion of a generator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gen", required=True)
    p.add_argument("--mode", choices=("auto", "raw", "cag"), default="auto")
    p.add_argument("--ascii", action="store_true",
                   help="use '(x)' instead of the tensor sign")
    _add_common(p)
    p.set_defaults(func=_cmd_coproduct)

    p = sub.add_parser("fock", help="occupation-number module summary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--dump", action="store_true",
                   help="include sparse matrices in the output")
    _add_common(p)
    p.set_defaults(func=_cmd_fock)

    p = sub.add_parser("identity", help="free-algebra bracket identity check")
    p.add_argument("--id", required=True, choices=("16a", "16b", "23"))
    p.add_argument("--corrupt-condition", action="store_true",
                   help="negative control with a wrong side condition; must FAIL")
    _add_common(p)
    p.set_defaults(func=_cmd_identity)

    p = sub.add_parser("probe-21d",
                       help="exhaustive index table for the triple relations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", default="symbolic")
    _add_common(p, default_format="json")
    p.set_defaults(func=_cmd_probe_21d)

    p = sub.add_parser("selftest", help="seeded randomized property checks")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"cagalg: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"cagalg: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
