"""Command-line driver.

Exit codes: 0 success, 1 domain error, 2 usage error.  Every error is a
single line on stderr starting with ``error:``.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import ccc, gale, linebundle, microlocal, stackyfan
from .errors import InvalidFanError, ToricError
from .fanfile import load_morphism, parse, resolve_path, serialize


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _window(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--window needs x0,y0,x1,y1")
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read window {text!r}") from None


def _q(x) -> str:
    return str(Fraction(x))


def _vec(v) -> str:
    return "(" + ", ".join(_q(x) for x in v) + ")"


def _fan(args, check: bool = True):
    F = parse(resolve_path(args.fan))
    if check:
        rep = stackyfan.validate(F)
        if not rep.ok:
            raise InvalidFanError("; ".join(rep.violations))
    return F


def _divisor(F, text):
    c = _ints(text)
    if len(c) != F.nrays:
        raise UsageError(f"divisor has {len(c)} entries but the fan has {F.nrays} rays")
    return c


def _print_complex(E: ccc.ThetaComplex, out):
    out.append(f"terms: {len(E.terms)}")
    for i, (d, a) in enumerate(E.terms):
        out.append(f"  [{i}] degree {d}: cone {list(a.cone)} values {list(a.values)}")
    out.append(f"differential: {len(E.differential)} entries")
    for p, q, c in E.differential:
        out.append(f"  {p} -> {q}: {_q(c)}")


def _print_ext(b: dict, lo: int, hi: int, out):
    degs = sorted(set(range(lo, hi + 1)) | set(b))
    for k in degs:
        out.append(f"Ext^{k} = {b.get(k, 0)}")


def cmd_validate(args, out):
    F = _fan(args, check=False)
    rep = stackyfan.validate(F)
    if not rep.ok:
        for v in rep.violations:
            out.append(f"violation: {v}")
        raise ToricError(f"invalid stacky fan ({len(rep.violations)} violations)")
    out.append("valid: yes")
    out.append(f"lattice: {F.lattice}")
    out.append(f"rays: {F.nrays}")
    out.append(f"maximal cones: {len(F.maximal_cones)}")
    out.append(f"complete: {'yes' if stackyfan.is_complete(F) else 'no'}")


def cmd_gale(args, out):
    F = _fan(args)
    g = gale.gale_dual(F)
    out.append(f"DG(beta): {g.dg}")
    out.append("beta_dual:")
    for row in g.beta_dual.matrix.rows:
        out.append("  " + " ".join(str(x) for x in row))
    out.append(f"generic stabilizer: {gale.generic_stabilizer(F)}")
    ideal = gale.irrelevant_ideal(F)
    mons = ["*".join(f"z{i}" for i in s) or "1" for s in ideal]
    out.append("irrelevant ideal: (" + ", ".join(mons) + ")")


def cmd_rigidify(args, out):
    out.append(serialize(stackyfan.rigidify(_fan(args))).rstrip("\n"))


def cmd_lift(args, out):
    F = _fan(args)
    L = stackyfan.lift_fan(F)
    out.append(f"lifted lattice rank: {L.rank}")
    for ch in L.charts:
        out.append(f"cone {list(ch.cone)}: generators {[list(g) for g in ch.generators]} "
                   f"inverted {list(ch.complement)} M_sigma rank {ch.character_rank}")


def cmd_ample(args, out):
    F = _fan(args)
    u = linebundle.from_divisor(F, _divisor(F, args.divisor))
    cert = linebundle.is_q_ample(F, u)
    out.append(f"Q-ample: {'yes' if cert.ample else 'no'}")
    out.append(f"reason: {cert.reason}")
    for c, p in zip(F.maximal_cones, cert.apexes):
        out.append(f"apex {list(c)}: {_vec(p)}")


def cmd_sections(args, out):
    F = _fan(args)
    u = linebundle.from_divisor(F, _divisor(F, args.divisor))
    pts = linebundle.section_weights(F, u)
    out.append(f"sections: {len(pts)}")
    for p in pts:
        out.append(f"  {_vec(p)}")


def cmd_kappa(args, out):
    F = _fan(args)
    E = ccc.kappa_divisor(F, _divisor(F, args.divisor))
    if args.simplify:
        E = ccc.simplify(E)
    _print_complex(E, out)


def cmd_ext(args, out):
    F = _fan(args)
    E = ccc.kappa_divisor(F, _divisor(F, args.from_))
    G = ccc.kappa_divisor(F, _divisor(F, args.to))
    _print_ext(ccc.hom_complex_betti(E, G), 0, F.dim, out)


def cmd_convolve(args, out):
    F = _fan(args)
    E = ccc.convolve(ccc.kappa_divisor(F, _divisor(F, args.left)),
                     ccc.kappa_divisor(F, _divisor(F, args.right)))
    if args.simplify:
        E = ccc.simplify(E)
    _print_complex(E, out)
    if args.probe is not None:
        P = ccc.kappa_divisor(F, _divisor(F, args.probe))
        _print_ext(ccc.hom_complex_betti(P, E), 0, F.dim, out)


def cmd_pullback(args, out):
    phi = load_morphism(resolve_path(args.morphism))
    rep = stackyfan.validate_morphism(phi)
    for note in rep.violations + rep.hypothesis_notes:
        out.append(f"note: {note}")
    F2 = phi.target
    E = ccc.pullback(phi, ccc.kappa_divisor(F2, _divisor(F2, args.divisor)))
    if args.simplify:
        E = ccc.simplify(E)
    _print_complex(E, out)
    O = ccc.kappa_divisor(phi.source, (0,) * phi.source.nrays)
    out.append("Ext from the structure sheaf:")
    _print_ext(ccc.hom_complex_betti(O, E), 0, phi.source.dim, out)


def cmd_resolve(args, out):
    F = _fan(args)
    base = _divisor(F, args.twist) if args.twist else None
    T = linebundle.taylor_resolution(F, args.ideal, base)
    out.append("generators: " + ", ".join(linebundle.format_monomial(g) for g in T.generators))
    for i, t in enumerate(T.terms):
        out.append(f"  [{i}] degree {t.degree}: subset {list(t.subset)} "
                   f"lcm {linebundle.format_monomial(t.lcm)} twist {list(t.twist)}")
    out.append(f"differential: {len(T.differential)} entries")
    for p, q, s, mono in T.differential:
        out.append(f"  {p} -> {q}: {'+' if s > 0 else '-'}{linebundle.format_monomial(mono)}")
    out.append(f"d^2 = 0: {'yes' if T.d_squared_is_zero() else 'no'}")


def cmd_lambda_svg(args, out):
    F = _fan(args)
    svg = microlocal.lambda_svg(F, _window(args.window), precision=args.precision, coarse=args.coarse)
    if args.output == "-":
        out.append(svg.rstrip("\n"))
    else:
        Path(args.output).write_text(svg)
        out.append(f"wrote {args.output}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toric-ccc", description="Exact toric CCC computations on stacky fans.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fan_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("fan", help="fan file, or the name of a bundled fan (e.g. p112.fan)")
        s.set_defaults(fn=fn)
        return s

    fan_cmd("validate", cmd_validate, "check the stacky-fan invariants")
    fan_cmd("gale", cmd_gale, "Gale dual, generic stabilizer and irrelevant ideal")
    fan_cmd("rigidify", cmd_rigidify, "print the rigidified fan")
    fan_cmd("lift", cmd_lift, "coordinate cones of the lifted fan")
    for name, fn, h in (("ample", cmd_ample, "Q-ampleness with apexes"),
                        ("sections", cmd_sections, "lattice points of the section polytope")):
        s = fan_cmd(name, fn, h)
        s.add_argument("--divisor", required=True)
    s = fan_cmd("kappa", cmd_kappa, "Cech complex of costandard objects for a line bundle")
    s.add_argument("--divisor", required=True)
    s.add_argument("--simplify", action="store_true")
    s = fan_cmd("ext", cmd_ext, "dimensions of Ext between two line bundles")
    s.add_argument("--from", dest="from_", required=True)
    s.add_argument("--to", required=True)
    s = fan_cmd("convolve", cmd_convolve, "convolution of two line-bundle complexes")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--probe", help="also print Ext from this line bundle")
    s.add_argument("--simplify", action="store_true")
    s = sub.add_parser("pullback", help="pull a line-bundle complex back along a fan map")
    s.add_argument("--morphism", required=True)
    s.add_argument("--divisor", required=True, help="divisor on the target fan")
    s.add_argument("--simplify", action="store_true")
    s.set_defaults(fn=cmd_pullback)
    s = fan_cmd("resolve", cmd_resolve, "Taylor resolution of a monomial ideal")
    s.add_argument("--ideal", required=True, help='e.g. "z0^2,z0*z1"')
    s.add_argument("--twist", help="divisor of the line bundle being resolved")
    s = fan_cmd("lambda-svg", cmd_lambda_svg, "render the Lagrangian modulo M as SVG")
    s.add_argument("--window", default="0,0,1,1")
    s.add_argument("-o", "--output", default="-")
    s.add_argument("--precision", type=int, default=6)
    s.add_argument("--coarse", action="store_true", help="restrict offsets to characters of M")
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out: list = []
    try:
        args = build_parser().parse_args(argv)
        args.fn(args, out)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except UsageError as e:
        print(f"error: usage: {e}", file=stderr)
        return 2
    except ToricError as e:
        for line in out:
            print(line, file=stdout)
        msg = " ".join(str(e).split())
        print(f"error: {type(e).__name__}: {msg}", file=stderr)
        return 1
    for line in out:
        print(line, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
