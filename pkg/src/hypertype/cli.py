"""``hypertype`` command-line front end.

Subcommands
-----------
poly      monic polynomial coefficients ``Phi_0 .. Phi_lmax``
assoc     associated functions ``Phi_{l,m} = kappa^m d^m Phi_l`` with their norms
coherent  coefficients of a coherent state ``|z, gamma>``
verify    invariant suites over the default parameter grid

Exit status is 0 on success, 1 when ``verify`` finds a failing check and 2
for invalid parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import assocfun as af
from . import coherent as co
from . import verify as vf
from .cases import CaseKind, CaseSpec, max_degree, validate
from .errors import ConstraintViolation, HypertypeError
from .polyengine import phi

SCHEMA_VERSION = 1
CASE_CHOICES = [k.value for k in CaseKind]


def parse_complex(text: str) -> complex:
    """Parse ``"a+bi"`` (also ``"a+bj"``, ``"2i"``, ``"-1.5"``)."""
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_override(text: str) -> tuple[str, float]:
    key, sep, val = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VAL, got {text!r}")
    try:
        return key.strip(), float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance for {key!r} is not a number: {val!r}") from None


def _fmt(x) -> str:
    # repr keeps round-trip precision and never depends on locale
    return repr(float(x))


def _spec_from(args) -> CaseSpec:
    return validate(args.case, args.alpha, args.beta)


def _lmax(spec: CaseSpec, requested: int | None) -> int:
    L = max_degree(spec)
    if requested is None:
        return 5 if L is None else min(5, L)
    return requested


def _header(spec: CaseSpec) -> dict:
    return {"schema_version": SCHEMA_VERSION, "case": spec.kind.value,
            "alpha": float(spec.alpha), "beta": float(spec.beta)}


def _write_csv(rows: list[list], out) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    out.write(buf.getvalue())


# ---------------------------------------------------------------------------
# subcommands


def cmd_poly(args, out) -> int:
    spec = _spec_from(args)
    top = _lmax(spec, args.lmax)
    polys = [[float(c) + 0.0 for c in phi(spec, l).coeffs] for l in range(top + 1)]
    if args.format == "json":
        json.dump({**_header(spec), "polys": polys}, out, indent=2)
        out.write("\n")
    else:
        width = top + 1
        rows = [["schema_version", SCHEMA_VERSION]]
        rows.append(["l"] + [f"c{k}" for k in range(width)])
        for l, cs in enumerate(polys):
            rows.append([l] + [_fmt(c) for c in cs] + [""] * (width - len(cs)))
        _write_csv(rows, out)
    return 0


def cmd_assoc(args, out) -> int:
    spec = _spec_from(args)
    m = args.m
    top = _lmax(spec, args.lmax)
    items = []
    for l in range(m, top + 1):
        f = af.assoc(spec, l, m)
        items.append({"l": l, "m": m, "coeffs": [float(c) + 0.0 for c in f.poly.coeffs],
                      "norm": af.norm(spec, l, m)})
    if args.format == "json":
        json.dump({**_header(spec), "m": m, "functions": items}, out, indent=2)
        out.write("\n")
    else:
        width = max((len(it["coeffs"]) for it in items), default=0)
        rows = [["schema_version", SCHEMA_VERSION]]
        rows.append(["l", "m", "norm"] + [f"c{k}" for k in range(width)])
        for it in items:
            cs = [_fmt(c) for c in it["coeffs"]]
            rows.append([it["l"], it["m"], _fmt(it["norm"])] + cs + [""] * (width - len(cs)))
        _write_csv(rows, out)
    return 0


def cmd_coherent(args, out) -> int:
    spec = _spec_from(args)
    z = args.z
    if abs(z) > args.zmax:
        raise HypertypeError(f"|z|={abs(z):g} exceeds --zmax {args.zmax:g}")
    st = co.coherent_state(spec, args.m, z, args.gamma)
    data = {
        **_header(spec), "m": args.m, "z": [z.real, z.imag], "gamma": args.gamma,
        "overlap": co.overlap(st), "tail_bound": st.tail_bound,
        "coeffs": [[c.real, c.imag] for c in st.coeffs.tolist()],
    }
    if args.format == "json":
        json.dump(data, out, indent=2)
        out.write("\n")
    else:
        rows = [["schema_version", SCHEMA_VERSION], ["n", "re", "im", "abs2"]]
        for n, c in enumerate(st.coeffs.tolist()):
            rows.append([n, _fmt(c.real), _fmt(c.imag), _fmt(abs(c) ** 2)])
        _write_csv(rows, out)
    return 0


def cmd_verify(args, out) -> int:
    overrides = dict(args.tol_override or [])
    ctx = vf.Context(zmax=args.zmax, seed=args.seed)
    report = vf.run_suite(args.suite, ctx, overrides)
    if args.format == "json":
        json.dump(report.as_dict(), out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        rows = [["schema_version", SCHEMA_VERSION], ["id", "status", "error", "tolerance", "worst"]]
        for r in report.results:
            rows.append([r.id, "pass" if r.passed else "fail", _fmt(r.error), _fmt(r.tolerance), r.worst])
        _write_csv(rows, out)
    else:
        for r in report.results:
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{status}  {r.id:<28} err={r.error:.3e}  tol={r.tolerance:.1e}  [{r.worst}]\n")
        out.write(f"{len(report.results)} checks, suite={report.suite}, "
                  f"{report.wall_time:.1f} s\n")
    worst = report.worst_offender()
    if worst is not None:
        sys.stderr.write(f"verify failed; worst offender {worst.id}: error {worst.error:.3e} "
                         f"> tolerance {worst.tolerance:.1e} at {worst.worst}\n")
        return 1
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_case_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--case", required=True, choices=CASE_CHOICES, help="normal form of sigma")
    p.add_argument("--alpha", required=True, type=float)
    p.add_argument("--beta", required=True, type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypertype", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = dict(choices=["csv", "json"], default="csv")

    p = sub.add_parser("poly", help="monic polynomial coefficients")
    _add_case_args(p)
    p.add_argument("--lmax", type=int, default=None, help="highest degree (default min(5, L))")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("assoc", help="associated functions and norms")
    _add_case_args(p)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--lmax", type=int, default=None)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_assoc)

    p = sub.add_parser("coherent", help="coherent-state coefficients")
    _add_case_args(p)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--z", type=parse_complex, default=complex(1.0), help='complex, e.g. "1+0.5i"')
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--zmax", type=float, default=10.0)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_coherent)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=list(vf.SUITES) + ["all"], default="all")
    p.add_argument("--zmax", type=float, default=3.0)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol-override", type=parse_override, action="append", metavar="KEY=VAL")
    p.add_argument("--format", choices=["csv", "json"], default=None,
                   help="machine-readable report (default: text)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except ConstraintViolation as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (HypertypeError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
