"""Command-line interface: ``seshpack <subcommand> ...``.

Exit codes: 0 on success, 1 on a domain error (error class name on stderr), 2 on
usage errors. JSON numbers are exact integer strings; floats appear only under
``--approx`` and in phi diagnostics.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .dynamics import DEFAULT_PRECISION, curve_c, sequences, spectral_data, xi
from .errors import DomainError, InvalidSetup
from .exact import Surd, parse_rational
from .lattice import AmpleBundle, SymClass, canonical


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _frac_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _approx(x: Optional[Surd], digits: int = 30) -> Optional[str]:
    if x is None:
        return None
    import mpmath

    ctx = mpmath.MPContext()
    ctx.dps = digits + 10
    return ctx.nstr(x.to_mpf(ctx), digits)


# ---------------------------------------------------------------- subcommands


def cmd_seshadri(args) -> int:
    from .seshadri import epsilon, find_n_phi, is_inner

    L = AmpleBundle(args.e1, args.e2)
    val = epsilon(args.r, L, use_hull=args.hull, window=args.window)
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["r", "e1", "e2", "kind", "value", "lower", "upper", "witness"])
        w.writerow([args.r, args.e1, args.e2, val.kind,
                    "" if val.value is None else str(val.value),
                    "" if val.lower is None else str(val.lower),
                    "" if val.upper is None else str(val.upper),
                    "" if val.witness is None else val.witness.triple()])
        return 0
    out = val.to_json()
    if args.approx:
        out["approx"] = {k: _approx(getattr(val, k)) for k in ("value", "lower", "upper")}
        if args.r % 2 == 0 and args.r >= 10 and not is_inner(args.r, L):
            out["approx"]["phi_n"] = find_n_phi(args.r, L, args.precision)
    if args.json or not args.csv:
        print(_dump(out))
    return 0


def cmd_packing(args) -> int:
    from .packing import nu

    print(_dump(nu(args.r, AmpleBundle(args.e1, args.e2)).to_json()))
    return 0


def cmd_fullpack(args) -> int:
    from .packing import full_packing, nu

    if args.rmin < 1 or args.rmax < args.rmin:
        raise DomainError("need 1 <= rmin <= rmax")
    L = AmpleBundle(args.e1, args.e2)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["r", "full", "nu", "reason"])
    for r in range(args.rmin, args.rmax + 1):
        full, reason = full_packing(r, L)
        v = nu(r, L).value
        w.writerow([r, "true" if full else "false", str(v), reason])
    return 0


def cmd_unusual_r(args) -> int:
    from .packing import unusual_r

    hit = unusual_r(AmpleBundle(args.e1, args.e2))
    print(_dump(None if hit is None else {"r": hit[0], "n": hit[1]}))
    return 0


def cmd_sequences(args) -> int:
    seq = sequences(args.r)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "p", "m", "q", "slope"])
    for n in range(-args.nmax, args.nmax + 1):
        sl = seq.slope(n)
        w.writerow([n, seq.p(n), seq.m(n), seq.q(n), "" if sl is None else str(sl)])
    return 0


def cone_generators(r: int, window: int) -> dict:
    """Effective and nef generators of the symmetric slice known to the library."""
    from .seshadri import SMALL_R_TABLES, odd_c_curves

    out: dict = {"r": r, "curves": [], "nef": [], "limits": []}
    if r <= 7:
        out["curves"] = [{"label": f"C{i}", "class": SymClass(r, *c).to_json()}
                         for i, (_, c) in enumerate(SMALL_R_TABLES[r], 1)]
        return out
    if r % 2:
        out["curves"] = [{"label": f"C{i}", "class": c.to_json()} for i, c in enumerate(odd_c_curves(r), 1)]
        return out
    for n in range(-window, window + 1):
        if n:
            out["curves"].append({"label": f"C_{n}", "class": curve_c(r, n).to_json()})
        out["nef"].append({"label": f"xi_{n}", "class": xi(r, n).to_json()})
    sd = spectral_data(r)
    out["limits"] = [{"label": "v_alpha", "class": sd.v_alpha.to_json()},
                     {"label": "v_beta", "class": sd.v_beta.to_json()}]
    return out


def _pt(c: SymClass) -> Optional[tuple[float, float]]:
    s = c.d1 + c.d2
    if s.sign() <= 0:
        return None
    return float(c.d2 / s), float(-c.e / s)


def cone_svg(r: int, window: int) -> str:
    """Deterministic SVG of the slice d1 + d2 = 1: square-zero arc, K-perp line, generators."""
    gens = cone_generators(r, window)
    W, H, M = 640, 400, 40
    pts = []
    for kind in ("curves", "nef", "limits"):
        for g in gens[kind]:
            p = _pt(SymClass.from_json(g["class"]))
            if p is not None:
                pts.append((kind, g["label"], p))
    ymax = max([(1 / (2 * r)) ** 0.5, 2 / r] + [p[1] for _, _, p in pts]) * 1.1

    def X(x: float) -> str:
        return f"{M + x * (W - 2 * M):.3f}"

    def Y(y: float) -> str:
        return f"{H - M - y / ymax * (H - 2 * M):.3f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<title>symmetric slice r={r}</title>',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{X(0)}" y1="{Y(0)}" x2="{X(1)}" y2="{Y(0)}" stroke="black" stroke-width="1"/>',
    ]
    steps = 200
    arc = " ".join(f"{X(i / steps)},{Y((2 * (i / steps) * (1 - i / steps) / r) ** 0.5)}" for i in range(steps + 1))
    lines.append(f'<polyline points="{arc}" fill="none" stroke="black" stroke-width="1.5"/>')
    # K.v = 0 on the slice is the horizontal line -e = 2/r
    lines.append(f'<line x1="{X(0)}" y1="{Y(2 / r)}" x2="{X(1)}" y2="{Y(2 / r)}" stroke="black" '
                 f'stroke-dasharray="4,3" stroke-width="1"/>')
    lines.append(f'<text x="{X(1)}" y="{Y(2 / r)}" font-size="10" text-anchor="end" dy="-3">K-perp</text>')
    style = {
        "curves": 'fill="black" stroke="black"',
        "nef": 'fill="white" stroke="black"',
        "limits": 'fill="gray" stroke="gray"',
    }
    for kind, label, (x, y) in pts:
        if y > ymax:
            continue
        lines.append(f'<circle cx="{X(x)}" cy="{Y(y)}" r="3" {style[kind]} stroke-width="1">'
                     f'<title>{label}</title></circle>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_cone(args) -> int:
    gens = cone_generators(args.r, args.window)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(cone_svg(args.r, args.window))
    print(_dump(gens))
    return 0


def cmd_nefgen(args) -> int:
    from . import nefgen as ng

    r = args.r
    if args.e is not None:
        c = ng.xi_e_r(args.e, r)
        certs = [c, c.mirrored()]
    elif args.reflect is not None:
        setup = ng.ReflectionSetup(r, *args.reflect)
        certs = [ng.reflect_fibre(setup, 1), ng.reflect_fibre(setup, 2)]
    elif args.pullback is not None:
        a, b = args.pullback
        if a < 1 or b < 1 or r % (a * b) or r // (a * b) < 8:
            raise InvalidSetup(f"need a*b | r with r/(a*b) >= 8; got a={a}, b={b}, r={r}")
        certs = [ng.nef_preserving_pullback(a, b, base) for base in ng.base_classes(r // (a * b), args.window)]
    else:
        certs = list(ng.certified_classes(r, args.window))
    print(_dump([c.to_json() for c in certs]))
    return 0


def cmd_verify(args) -> int:
    from .oracle import run_all

    ok = True
    for rep in run_all(fast=args.fast):
        print(rep.to_json())
        ok &= rep.ok
    return 0 if ok else 1


# ---------------------------------------------------------------- parser


def _bundle_args(p: argparse.ArgumentParser, with_r: bool = True) -> None:
    if with_r:
        p.add_argument("--r", type=int, required=True)
    p.add_argument("--e1", type=_rational, required=True)
    p.add_argument("--e2", type=_rational, required=True)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="seshpack", description="Seshadri and packing constants on P1 x P1.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, metavar="BITS",
                   help="working precision of the phi path")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("seshadri", help="r-point Seshadri constant")
    _bundle_args(s)
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    s.add_argument("--approx", action="store_true", help="add float approximations")
    s.add_argument("--hull", action="store_true", help="convexity lower bound on the inner region")
    s.add_argument("--window", type=int, default=5)
    s.set_defaults(fn=cmd_seshadri)

    s = sub.add_parser("packing", help="packing constant nu_r(L)")
    _bundle_args(s)
    s.set_defaults(fn=cmd_packing)

    s = sub.add_parser("fullpack", help="full-packing classification over a range of r")
    _bundle_args(s, with_r=False)
    s.add_argument("--rmin", type=int, required=True)
    s.add_argument("--rmax", type=int, required=True)
    s.set_defaults(fn=cmd_fullpack)

    s = sub.add_parser("unusual-r", help="the even r whose xi_n slope equals slope(L)")
    _bundle_args(s, with_r=False)
    s.set_defaults(fn=cmd_unusual_r)

    s = sub.add_parser("sequences", help="p, m, q tables for even r")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.set_defaults(fn=cmd_sequences)

    s = sub.add_parser("cone", help="slice generators and diagram")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--window", type=int, default=5)
    s.add_argument("--svg", metavar="PATH")
    s.set_defaults(fn=cmd_cone)

    s = sub.add_parser("nefgen", help="certified inner square-zero nef classes")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--window", type=int, default=5)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--e", type=int)
    g.add_argument("--reflect", type=int, nargs=2, metavar=("G1", "G2"))
    g.add_argument("--pullback", type=int, nargs=2, metavar=("A", "B"))
    s.set_defaults(fn=cmd_nefgen)

    s = sub.add_parser("verify", help="run the oracle suite")
    s.add_argument("--fast", action="store_true")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
