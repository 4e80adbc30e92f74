"""The conical Lagrangian of a stacky fan and singular supports of costandard objects.

Points of ``T*M_R = M_R x N_R`` are pairs ``(x, y)``.  A piece
``sigma^perp_chi x (-sigma)`` is the affine subspace ``<x, b_j> = m_j`` over
the rays of ``sigma`` times the negated cone.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .ccc import GammaElement, ThetaComplex
from .errors import DimensionError
from .stackyfan import StackyFan
from .zlat import dot, solve_q


def _is_int(q) -> bool:
    return Fraction(q).denominator == 1


def lambda_contains(F: StackyFan, x: Sequence, y: Sequence, coarse: bool = False) -> bool:
    """Membership of ``(x, y)`` in the conical Lagrangian.

    ``-y`` picks out the cone whose relative interior contains it; ``x`` must
    then take integral values on that cone's rays.  With ``coarse`` the
    offsets are restricted to characters of ``M`` itself, which makes a
    difference only on cones of index > 1.
    """
    x = tuple(Fraction(a) for a in x)
    y = tuple(Fraction(a) for a in y)
    if not any(y):
        return True
    tau = F.locate(tuple(-a for a in y))
    if tau is None:
        return False
    if coarse:
        return _in_coarse_offsets(F, tau, x)
    return all(_is_int(dot(x, F.bar_rays[j])) for j in tau)


def _in_coarse_offsets(F: StackyFan, tau, x) -> bool:
    """Is ``x`` on ``tau^perp_chi`` for some ``chi`` in ``M``?"""
    from .zlat import IntMatrix, solve_integer
    vals = [dot(x, F.bar_rays[j]) for j in tau]
    if not all(_is_int(v) for v in vals):
        return False
    A = IntMatrix.from_rows([F.bar_rays[j] for j in tau], F.dim)
    return solve_integer(A, [int(v) for v in vals]) is not None


@dataclass(frozen=True)
class ShardPiece:
    """``cone^perp_values x (-cone)``; ``values`` may be rational for hand-built pieces."""
    cone: tuple
    values: tuple

    def sample(self, F: StackyFan) -> tuple:
        """A point ``(x, y)`` in the relative interior of the piece's conormal direction."""
        gens = F.generators(self.cone)
        n = F.dim
        x = _solve_on(gens, self.values, n)
        y = tuple(-sum(g[k] for g in gens) for k in range(n))
        return x, y


@dataclass(frozen=True)
class SSPiece:
    """One face contribution to the singular support of a costandard object:
    ``(face^perp_values & wedge) x (-face)``."""
    face: tuple
    values: tuple
    wedge: GammaElement

    @property
    def shard(self) -> ShardPiece:
        return ShardPiece(self.face, self.values)

    def sample(self, F: StackyFan) -> tuple:
        """A point of the piece: ``x`` solves the equalities of the whole wedge."""
        gens = F.generators(self.wedge.cone)
        x = _solve_on(gens, self.wedge.values, F.dim)
        fg = F.generators(self.face)
        y = tuple(-sum(g[k] for g in fg) for k in range(F.dim))
        return x, y


def _solve_on(gens, values, n) -> tuple:
    """Some rational ``x`` with ``<x, g_i> = v_i`` (independent ``g_i``)."""
    if not gens:
        return (Fraction(0),) * n
    # complete gens to a basis with standard vectors, setting extra values to 0
    rows = [tuple(g) for g in gens]
    vals = list(values)
    from .zlat import rank_q
    for k in range(n):
        if len(rows) == n:
            break
        e = tuple(int(i == k) for i in range(n))
        if rank_q(rows + [e]) > len(rows):
            rows.append(e)
            vals.append(0)
    cols = [tuple(r[k] for r in rows) for k in range(n)]
    return solve_q(cols, vals)


def ss_theta(F: StackyFan, a: GammaElement) -> list:
    """Pieces over every face of ``a``'s cone, values restricted to the face."""
    out = []
    c = a.cone
    for size in range(len(c) + 1):
        for face in itertools.combinations(c, size):
            out.append(SSPiece(face, a.restrict(face).values, a))
    return out


def ss_in_lambda(F: StackyFan, obj) -> bool:
    """Whether every singular-support piece has integral offsets.

    Accepts a ``GammaElement``, a ``ThetaComplex`` (union over its objects),
    an ``SSPiece``/``ShardPiece``, or an iterable of pieces.
    """
    if isinstance(obj, GammaElement):
        pieces = ss_theta(F, obj)
    elif isinstance(obj, ThetaComplex):
        pieces = [p for a in obj.objects() for p in ss_theta(F, a)]
    elif isinstance(obj, (SSPiece, ShardPiece)):
        pieces = [obj]
    else:
        pieces = list(obj)
    return all(all(_is_int(v) for v in p.values) for p in pieces)


def shard_arrangement_of(E: ThetaComplex) -> list:
    """Deduplicated shard pieces covering the singular support of every term."""
    seen = set()
    for a in E.objects():
        for p in ss_theta(E.fan, a):
            seen.add(p.shard)
    return sorted(seen, key=lambda s: (len(s.cone), s.cone, s.values))


# ---------------------------------------------------------------------------
# SVG rendering of Lambda / M in the plane


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
ZERO_SECTION = "#bbbbbb"
APEX = "#000000"


def fmt(q, precision: int = 6) -> str:
    """Exact rational to a fixed-precision decimal string without floats."""
    q = round(Fraction(q), precision)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole = q.numerator // q.denominator
    frac = q - whole
    digits = ""
    if frac:
        scaled = frac * 10 ** precision
        digits = str(scaled.numerator // scaled.denominator).rjust(precision, "0").rstrip("0")
    s = f"{whole}.{digits}" if digits else str(whole)
    return "0" if s == "0" else sign + s


def _clip_line(normal, k, window):
    """Segment of ``<x, normal> = k`` inside the closed window, or ``None``."""
    x0, y0, x1, y1 = window
    a, b = normal
    pts = set()
    if b != 0:
        for x in (x0, x1):
            y = Fraction(k - a * x, b)
            if y0 <= y <= y1:
                pts.add((x, y))
    if a != 0:
        for y in (y0, y1):
            x = Fraction(k - b * y, a)
            if x0 <= x <= x1:
                pts.add((x, y))
    if len(pts) < 2:
        return None
    pts = sorted(pts)
    return pts[0], pts[-1]


def _half_open_ok(seg, window) -> bool:
    """Drop segments that only touch the closing edges ``x = x1`` or ``y = y1``."""
    (px, py), (qx, qy) = seg
    _, _, x1, y1 = window
    if px == qx == x1 or py == qy == y1:
        return False
    return True


def line_offsets(F: StackyFan, j: int, window, coarse: bool = False) -> list:
    """Offsets ``k`` whose line ``<x, b_j> = k`` crosses the half-open window."""
    x0, y0, x1, y1 = window
    b = F.bar_rays[j]
    step = math.gcd(*b) if coarse else 1
    vals = [dot((x, y), b) for x in (x0, x1) for y in (y0, y1)]
    lo, hi = math.floor(min(vals)), math.ceil(max(vals))
    out = []
    for k in range(lo, hi + 1):
        if k % step:
            continue
        seg = _clip_line(b, k, window)
        if seg and seg[0] != seg[1] and _half_open_ok(seg, window):
            out.append((k, seg))
    return out


def apex_points(F: StackyFan, cone, window, coarse: bool = False) -> list:
    """Points of the half-open window where every ray of the 2-cone takes integral values."""
    x0, y0, x1, y1 = window
    gens = F.generators(cone)
    cols = [tuple(g[k] for g in gens) for k in range(2)]
    ranges = []
    for g in gens:
        vals = [dot((x, y), g) for x in (x0, x1) for y in (y0, y1)]
        ranges.append(range(math.floor(min(vals)), math.ceil(max(vals)) + 1))
    out = []
    for ks in itertools.product(*ranges):
        p = solve_q(cols, ks)
        if not (x0 <= p[0] < x1 and y0 <= p[1] < y1):
            continue
        if coarse and not all(_is_int(c) for c in p):
            continue
        out.append(p)
    return sorted(set(out))


def lambda_svg(F: StackyFan, window=(0, 0, 1, 1), precision: int = 6, coarse: bool = False,
               size: int = 400) -> str:
    """SVG picture of the Lagrangian modulo ``M`` inside ``window``.

    One ``<g>`` per ray holds a ``<path>`` per offset line (``data-offset``
    carries the offset); one ``<g>`` per 2-cone holds its apex points.  The
    y axis points up.
    """
    if F.dim != 2:
        raise DimensionError(f"rendering needs a rank-2 lattice, got rank {F.dim}")
    window = tuple(Fraction(w) for w in window)
    x0, y0, x1, y1 = window
    if not (x0 < x1 and y0 < y1):
        raise ValueError("window must satisfy x0 < x1 and y0 < y1")
    w, h = x1 - x0, y1 - y0
    sx = Fraction(size) / w
    height = h * sx

    def X(x):
        return fmt((x - x0) * sx, precision)

    def Y(y):
        return fmt((y1 - y) * sx, precision)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
        f'height="{fmt(height, precision)}" viewBox="0 0 {size} {fmt(height, precision)}">',
        f'<title>{"coarse" if coarse else "stack"} Lagrangian mod M, window '
        f'[{fmt(x0)},{fmt(x1)})x[{fmt(y0)},{fmt(y1)})</title>',
        f'<g id="zero-section"><rect x="0" y="0" width="{size}" height="{fmt(height, precision)}" '
        f'fill="none" stroke="{ZERO_SECTION}" stroke-width="1"/></g>',
    ]
    for j in range(F.nrays):
        b = F.bar_rays[j]
        color = PALETTE[j % len(PALETTE)]
        lines.append(f'<g class="ray" id="ray-{j}" data-ray="{b[0]},{b[1]}" stroke="{color}" '
                     f'stroke-width="2" fill="none">')
        for k, (p, q) in line_offsets(F, j, window, coarse):
            lines.append(f'<path data-offset="{k}" d="M {X(p[0])} {Y(p[1])} L {X(q[0])} {Y(q[1])}"/>')
        lines.append("</g>")
    for cone in F.cones:
        if len(cone) != 2:
            continue
        lines.append(f'<g class="cone" id="cone-{cone[0]}-{cone[1]}" fill="{APEX}">')
        for p in apex_points(F, cone, window, coarse):
            lines.append(f'<circle cx="{X(p[0])}" cy="{Y(p[1])}" r="3" '
                         f'data-point="{fmt(p[0], precision)},{fmt(p[1], precision)}"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
