"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 entry cap exceeded,
4 failed selftest.  JSON is the canonical output format.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from .acceptance import run_selftest, selftest_report
from .algebra import algebra_to_spec, load_algebra, psi, validate_algebra
from .bar import tor_via_bar
from .bimodule import LeftModule, phi_twist, psi_module, quotient_module, regular_module, residue_module
from .fq import FieldError, field_make
from .hochschild import ENTRY_CAP_ENV, CapExceeded, hh_cohomology, hh_homology, kunneth_check, step1_poly
from .maclane import hml_gamma, hml_hh_crosscheck, hml_phi, hml_vanishing
from .polyfunctor import functor_apply, functor_dim, functor_value, gamma_sym_duality_check, pairing_matrix
from .simplicial import moore_homotopy, sample_lemma21, simplicial_from_spec, simplicial_validate
from .zoo import zoo_algebra

MIN_ENTRY_CAP = 1000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


# ---------------------------------------------------------------------------
# Input resolution
# ---------------------------------------------------------------------------


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ValueError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc})") from None


def resolve_algebra(arg: str):
    """A JSON spec file or ``zoo:<name>``."""
    if arg.startswith("zoo:"):
        try:
            return zoo_algebra(arg[4:])
        except KeyError as exc:
            raise ValueError(str(exc.args[0])) from None
    if not Path(arg).exists():
        raise ValueError(f"{arg}: no such file")
    return load_algebra(arg)


def resolve_module(arg: str | None, a) -> LeftModule:
    """``regular``, ``residue``, ``psi:<n>`` or a JSON file.

    File forms: ``{"kind": "regular"|"residue"}``, ``{"kind": "psi", "n": 2}``,
    ``{"kind": "quotient", "ideal": [[...], ...]}`` or
    ``{"kind": "explicit", "dim": m, "act": [matrix per basis element]}``.
    """
    if arg is None or arg == "regular":
        return regular_module(a)
    if arg == "residue":
        return residue_module(a)
    if arg.startswith("psi:"):
        return psi_module(a, int(arg[4:]))
    spec = _read_json(arg)
    kind = spec.get("kind")
    if kind == "regular":
        return regular_module(a)
    if kind == "residue":
        return residue_module(a)
    if kind == "psi":
        return psi_module(a, int(spec["n"]))
    if kind == "quotient":
        return quotient_module(a, np.asarray(spec["ideal"], dtype=np.uint8).reshape(-1, a.dim))
    if kind == "explicit":
        acts = tuple(np.asarray(m, dtype=np.uint8) for m in spec["act"])
        return LeftModule(a, int(spec["dim"]), acts)
    raise ValueError(f"unknown module kind {kind!r}")


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _csv_rows(payload):
    if isinstance(payload, dict) and isinstance(payload.get("degrees"), list):
        rows = []
        for row in payload["degrees"]:
            if "dim" in row:
                rows.append((row["i"], row["dim"]))
            else:
                rows.append((row["i"], row.get("tensor")))
        return ["degree", "dim"], rows
    if isinstance(payload, dict) and isinstance(payload.get("pi"), list):
        return ["degree", "dim"], [(r["n"], r["dim"]) for r in payload["pi"]]
    if isinstance(payload, dict):
        flat = [(k, v) for k, v in sorted(payload.items()) if not isinstance(v, (dict, list))]
        return ["key", "value"], flat
    return ["value"], [(payload,)]


def _pretty(payload, indent=0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                        (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        lines = []
        for x in payload:
            if isinstance(x, dict) and not any(isinstance(v, (dict, list)) for v in x.values()):
                lines.append(pad + "- " + ", ".join(f"{k}={v}" for k, v in x.items()))
            elif isinstance(x, (dict, list)):
                lines.append(_pretty(x, indent))
            else:
                lines.append(f"{pad}- {x}")
        return "\n".join(lines)
    return f"{pad}{payload}"


def emit(payload, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif fmt == "csv":
        header, rows = _csv_rows(payload)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(_pretty(payload) + "\n")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_algebra_validate(args):
    a = resolve_algebra(args.spec)
    validate_algebra(a)
    spec = algebra_to_spec(a)
    return {"valid": True, "name": a.name, "p": spec["p"], "k": spec["k"], "dim": a.dim,
            "dim_over_fp": a.restrict().dim}


def cmd_psi(args):
    a = resolve_algebra(args.spec)
    q = psi(a, args.n)
    return {"algebra": a.name, "n": args.n, "source_dim": q.source.dim, "quotient_dim": q.quotient_dim}


def cmd_hh(args):
    a = resolve_algebra(args.spec)
    m = resolve_module(args.module, a)
    b = phi_twist(a, m, args.n)
    fn = hh_cohomology if args.cohomology else hh_homology
    rep = fn(a, b, args.N, cap=args.entry_cap, n=args.n, normalized=not args.full)
    return rep.as_dict(stable=args.stable_output)


def cmd_tor(args):
    a = resolve_algebra(args.spec)
    m = resolve_module(args.module, a)
    dims = tor_via_bar(a, m, args.n, args.smax, cap=args.entry_cap)
    return {"algebra": a.name, "n": args.n, "smax": args.smax,
            "degrees": [{"i": i, "dim": d} for i, d in enumerate(dims)]}


def cmd_kunneth(args):
    return kunneth_check(resolve_algebra(args.spec_a), resolve_algebra(args.spec_b), args.n,
                         args.N, cap=args.entry_cap)


def cmd_step1(args):
    h0, h1 = step1_poly(args.p, args.n, args.window)
    return {"p": args.p, "n": args.n, "window": args.window, "degrees": [{"i": 0, "dim": h0}, {"i": 1, "dim": h1}]}


def cmd_simplicial_pi(args):
    s = simplicial_from_spec(_read_json(args.spec))
    violations = simplicial_validate(s)
    if violations:
        raise ValueError("simplicial identities fail: " + "; ".join(violations[:5]))
    out = moore_homotopy(s, args.up_to).as_dict()
    out["ring"] = s.name
    return out


def cmd_simplicial_lemma21(args):
    s = simplicial_from_spec(_read_json(args.spec))
    violations = simplicial_validate(s)
    if violations:
        raise ValueError("simplicial identities fail: " + "; ".join(violations[:5]))
    rng = np.random.default_rng(args.seed)
    return sample_lemma21(s, args.level, args.trials, rng)


def _field(args):
    return field_make(args.p, args.k)


def cmd_functor_dim(args):
    return {"kind": args.kind, "d": args.d, "m": args.m, "dim": functor_dim(args.kind, args.d, args.m),
            "labels": [list(t) for t in functor_value(args.kind, args.d, args.m).labels]}


def cmd_functor_apply(args):
    f = _field(args)
    try:
        mat = json.loads(args.matrix) if not Path(args.matrix).exists() else _read_json(args.matrix)
    except json.JSONDecodeError as exc:
        raise ValueError(f"matrix is not a JSON array ({exc})") from None
    out = functor_apply(args.kind, args.d, np.asarray(mat, dtype=np.int64), f)
    return {"kind": args.kind, "d": args.d, "field": f.card, "matrix": out.tolist()}


def cmd_functor_duality(args):
    f = _field(args)
    return {"d": args.d, "m": args.m, "field": f.card, "pairing": pairing_matrix(args.d, args.m, f).tolist(),
            "perfect": gamma_sym_duality_check(args.d, args.m, f)}


def cmd_hml_phi(args):
    a = resolve_algebra(args.spec)
    return dict(hml_phi(a, args.n, args.i).as_dict(), algebra=a.name, n=args.n, i=args.i)


def cmd_hml_gamma(args):
    a = resolve_algebra(args.spec)
    return dict(hml_gamma(a, args.d, args.i).as_dict(), algebra=a.name, d=args.d, i=args.i)


def cmd_hml_vanishing(args):
    f = _field(args)
    return {"field": f.card, "d": args.d, "vanishes": hml_vanishing(f, args.d)}


def cmd_hml_crosscheck(args):
    return hml_hh_crosscheck(resolve_algebra(args.spec), args.n, cap=args.entry_cap)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _entry_cap(text: str) -> int:
    try:
        value = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text}") from None
    if value < MIN_ENTRY_CAP:
        raise argparse.ArgumentTypeError(f"entry cap must be >= {MIN_ENTRY_CAP}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--entry-cap", type=_entry_cap, default=None,
                        help=f"max dense entries of one boundary matrix (env {ENTRY_CAP_ENV})")

    parser = _Parser(prog="frobhh", description="Hochschild homology with Frobenius-twisted coefficients.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    alg = sub.add_parser("algebra", help="algebra specs").add_subparsers(dest="action", parser_class=_Parser)
    p = alg.add_parser("validate", parents=[common])
    p.add_argument("spec")
    p.set_defaults(func=cmd_algebra_validate)

    p = sub.add_parser("psi", parents=[common], help="dim of A/(a - a^(p^n))")
    p.add_argument("spec")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("hh", parents=[common], help="H_*(A, Phi^n(M)) or H^*")
    p.add_argument("spec")
    p.add_argument("--n", type=int, default=0, help="twist exponent; 0 is the untwisted bimodule")
    p.add_argument("--N", type=int, default=None, help="truncation: report degrees 0..N-1")
    p.add_argument("--cohomology", action="store_true")
    p.add_argument("--module", default=None, help="regular, residue, psi:<n> or a JSON module spec")
    p.add_argument("--full", action="store_true", help="use the unnormalized complex")
    p.add_argument("--stable-output", action="store_true", help="omit timings")
    p.set_defaults(func=cmd_hh)

    p = sub.add_parser("tor", parents=[common], help="Tor^A(psi^n(A), M) by the bar complex")
    p.add_argument("spec")
    p.add_argument("--module", default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--smax", type=int, default=5)
    p.set_defaults(func=cmd_tor)

    p = sub.add_parser("kunneth", parents=[common], help="compare H_*(A (x) B) with the tensor of H_*(A), H_*(B)")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=cmd_kunneth)

    p = sub.add_parser("step1", parents=[common], help="F_p[x] with twisted coefficients on a window")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=int, default=64)
    p.set_defaults(func=cmd_step1)

    simp = sub.add_parser("simplicial", help="homotopy of simplicial rings and the power identity").add_subparsers(dest="action", parser_class=_Parser)
    p = simp.add_parser("pi", parents=[common])
    p.add_argument("spec")
    p.add_argument("--up-to", type=int, default=None)
    p.set_defaults(func=cmd_simplicial_pi)
    p = simp.add_parser("lemma21", parents=[common])
    p.add_argument("spec")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simplicial_lemma21)

    fun = sub.add_parser("functor", help="divided, symmetric and tensor powers").add_subparsers(dest="action", parser_class=_Parser)
    field_opts = argparse.ArgumentParser(add_help=False)
    field_opts.add_argument("--p", type=int, default=2)
    field_opts.add_argument("--k", type=int, default=1)
    p = fun.add_parser("dim", parents=[common])
    p.add_argument("--kind", choices=("gamma", "sym", "tensor"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_functor_dim)
    p = fun.add_parser("apply", parents=[common, field_opts])
    p.add_argument("--kind", choices=("gamma", "sym", "tensor"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--matrix", required=True, help="JSON array or a file holding one")
    p.set_defaults(func=cmd_functor_apply)
    p = fun.add_parser("duality", parents=[common, field_opts])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_functor_duality)

    hml = sub.add_parser("hml", help="closed-form MacLane homology").add_subparsers(dest="action", parser_class=_Parser)
    p = hml.add_parser("phi", parents=[common])
    p.add_argument("spec")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_hml_phi)
    p = hml.add_parser("gamma", parents=[common])
    p.add_argument("spec")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_hml_gamma)
    p = hml.add_parser("vanishing", parents=[common, field_opts])
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_hml_vanishing)
    p = hml.add_parser("crosscheck", parents=[common])
    p.add_argument("spec")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_hml_crosscheck)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--stable-output", action="store_true", help="omit timings")
    p.set_defaults(func=None)
    return parser


def _selftest(args) -> int:
    results = run_selftest(args.seed)
    report = selftest_report(results, args.seed, stable=args.stable_output)
    if args.format == "pretty":
        for r in results:
            print(r.line())
    else:
        emit(report, args.format)
    return 0 if report["pass"] else 4


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    if args.command is None or not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return 1
    if args.entry_cap is None and os.environ.get(ENTRY_CAP_ENV):
        try:
            args.entry_cap = _entry_cap(os.environ[ENTRY_CAP_ENV])
        except argparse.ArgumentTypeError as exc:
            print(f"frobhh: error: {ENTRY_CAP_ENV}: {exc}", file=sys.stderr)
            return 1
    try:
        if args.command == "selftest":
            return _selftest(args)
        payload = args.func(args)
    except CapExceeded as exc:
        print(f"frobhh: cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, TypeError, FieldError) as exc:
        print(f"frobhh: invalid input: {exc}", file=sys.stderr)
        return 2
    emit(payload, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
