"""Equivariant line bundles as twisted polytopes, ampleness, sections, and
Taylor resolutions of monomial ideals."""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import IncompatiblePolytopeError, NotCompleteError, NotMonomialError
from .stackyfan import StackyFan, StackyFanMorphism, ValidationReport, is_complete, require_complete
from .zlat import dot, in_convex_hull, polyhedron_vertices, solve_q


@dataclass(frozen=True)
class TwistedPolytope:
    """Per maximal cone ``C_i``, the integer values ``m_ij = <chi_i, b_j>`` for rays ``j`` in ``C_i``."""
    cones: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "cones", tuple(tuple(c) for c in self.cones))
        object.__setattr__(self, "values", tuple(tuple(int(x) for x in v) for v in self.values))
        if len(self.cones) != len(self.values):
            raise ValueError("one value tuple per maximal cone is required")
        for c, v in zip(self.cones, self.values):
            if len(c) != len(v):
                raise ValueError(f"cone {list(c)} has {len(c)} rays but {len(v)} values")

    def ray_values(self) -> dict:
        """``ray -> value``; only meaningful for a compatible polytope."""
        out = {}
        for c, v in zip(self.cones, self.values):
            for j, m in zip(c, v):
                out.setdefault(j, m)
        return out

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return negate(self)


def from_divisor(F: StackyFan, c: Sequence[int]) -> TwistedPolytope:
    """Twisted polytope of ``O(sum c_j D_j)``: value ``-c_j`` on every ray ``j``."""
    require_complete(F)
    c = tuple(int(x) for x in c)
    if len(c) != F.nrays:
        raise ValueError(f"divisor has {len(c)} coefficients, fan has {F.nrays} rays")
    return TwistedPolytope(F.maximal_cones, tuple(tuple(-c[j] for j in C) for C in F.maximal_cones))


def to_divisor(u: TwistedPolytope, nrays: int) -> tuple:
    vals = u.ray_values()
    return tuple(-vals.get(j, 0) for j in range(nrays))


def validate_twisted(F: StackyFan, u: TwistedPolytope) -> ValidationReport:
    v = []
    if u.cones != F.maximal_cones:
        v.append("cones do not match the fan's maximal cones")
        return ValidationReport(tuple(v))
    seen = {}
    for i, (c, vals) in enumerate(zip(u.cones, u.values)):
        for j, m in zip(c, vals):
            if j in seen and seen[j][1] != m:
                v.append(f"ray {j} has value {seen[j][1]} on cone {seen[j][0]} but {m} on cone {i}")
            seen.setdefault(j, (i, m))
    return ValidationReport(tuple(v))


def _require_valid(F, u):
    rep = validate_twisted(F, u)
    if not rep.ok:
        raise IncompatiblePolytopeError("; ".join(rep.violations))


def apex(F: StackyFan, cone: Sequence[int], values: Sequence[int]) -> tuple:
    """The unique ``x`` with ``<x, b_j> = m_j`` over the rays of a full-dimensional cone."""
    gens = F.generators(tuple(cone))
    n = F.dim
    if len(gens) != n:
        raise NotCompleteError(f"cone {list(cone)} is not full-dimensional")
    cols = [tuple(g[k] for g in gens) for k in range(n)]
    x = solve_q(cols, values)
    if x is None:  # pragma: no cover - independent rays always give a solution
        raise IncompatiblePolytopeError(f"no apex for cone {list(cone)}")
    return x


def apexes(F: StackyFan, u: TwistedPolytope) -> list:
    require_complete(F)
    _require_valid(F, u)
    return [apex(F, c, v) for c, v in zip(u.cones, u.values)]


def _same_cones(a: TwistedPolytope, b: TwistedPolytope):
    if a.cones != b.cones:
        raise IncompatiblePolytopeError("twisted polytopes live on different fans")


def add(a: TwistedPolytope, b: TwistedPolytope) -> TwistedPolytope:
    _same_cones(a, b)
    return TwistedPolytope(a.cones, tuple(tuple(x + y for x, y in zip(p, q))
                                          for p, q in zip(a.values, b.values)))


def negate(a: TwistedPolytope) -> TwistedPolytope:
    return TwistedPolytope(a.cones, tuple(tuple(-x for x in p) for p in a.values))


def scale(a: TwistedPolytope, n: int) -> TwistedPolytope:
    return TwistedPolytope(a.cones, tuple(tuple(n * x for x in p) for p in a.values))


def pullback_twisted(phi: StackyFanMorphism, u: TwistedPolytope) -> TwistedPolytope:
    """Pull a twisted polytope back along a fan morphism, cone by cone."""
    F1, F2 = phi.source, phi.target
    _require_valid(F2, u)
    vals = []
    for B in F1.maximal_cones:
        for C, v in zip(u.cones, u.values):
            if phi.maps_into(B, C):
                vals.append(phi.values_on(B, C, v))
                break
        else:
            raise NotCompleteError(f"cone {list(B)} maps into no maximal cone of the target")
    return TwistedPolytope(F1.maximal_cones, tuple(vals))


# ---------------------------------------------------------------------------
# ampleness and sections


def _constraints(F: StackyFan, u: TwistedPolytope) -> list:
    out = []
    for c, v in zip(u.cones, u.values):
        for j, m in zip(c, v):
            out.append((F.bar_rays[j], m))
    return out


@dataclass(frozen=True)
class AmpleCertificate:
    ample: bool
    apexes: tuple
    distinct: bool
    strictly_convex: bool
    hull_in_polytope: bool
    polytope_in_hull: bool
    polytope_vertices: tuple

    def __bool__(self):
        return self.ample

    @property
    def reason(self) -> str:
        if self.ample:
            return "apexes are the distinct vertices of the polytope"
        if not self.distinct:
            return "apexes coincide"
        if not self.strictly_convex:
            return "some apex is not a vertex of the apex hull"
        if not self.hull_in_polytope:
            return "some apex violates a cone inequality"
        return "the polytope has a vertex outside the apex hull"


def is_q_ample(F: StackyFan, u: TwistedPolytope) -> AmpleCertificate:
    """Strict convexity of the apexes plus equality of their hull with the polytope."""
    require_complete(F)
    pts = apexes(F, u)
    distinct = len(set(pts)) == len(pts)
    convex = distinct and all(
        not in_convex_hull(pts[:i] + pts[i + 1:], p) for i, p in enumerate(pts))
    cons = _constraints(F, u)
    hull_in = all(dot(a, p) >= b for p in pts for a, b in cons)
    verts = polyhedron_vertices(cons, F.dim)
    poly_in = bool(verts) and all(in_convex_hull(pts, v) for v in verts)
    return AmpleCertificate(distinct and convex and hull_in and poly_in, tuple(pts), distinct,
                            convex, hull_in, poly_in, tuple(verts))


def section_weights(F: StackyFan, u: TwistedPolytope) -> list:
    """Lattice points ``xi`` with ``<xi, b_j> >= m_ij`` for every cone and ray."""
    if not is_complete(F):
        raise NotCompleteError(f"fan {F} is not complete: the section polytope is unbounded")
    _require_valid(F, u)
    cons = _constraints(F, u)
    verts = polyhedron_vertices(cons, F.dim)
    if not verts:
        return []
    lo = [math.floor(min(v[k] for v in verts)) for k in range(F.dim)]
    hi = [math.ceil(max(v[k] for v in verts)) for k in range(F.dim)]
    out = []
    for xi in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(dot(a, xi) >= b for a, b in cons):
            out.append(xi)
    return out


def count_weighted_monomials(weights: Sequence[int], d: int) -> int:
    """Number of exponent vectors ``e >= 0`` with ``sum e_i w_i = d``."""
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    if d < 0:
        return 0
    ways = [1] + [0] * d
    for w in weights:
        for k in range(w, d + 1):
            ways[k] += ways[k - w]
    return ways[d]


# ---------------------------------------------------------------------------
# Taylor resolutions


_FACTOR = re.compile(r"^z(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, nvars: int) -> tuple:
    """``"z0^2*z1"`` -> exponent vector; ``"1"`` is the unit monomial."""
    text = text.strip()
    if not text:
        raise NotMonomialError("empty generator")
    if "+" in text or "-" in text:
        raise NotMonomialError(f"{text!r} is not a monomial")
    e = [0] * nvars
    if text == "1":
        return tuple(e)
    for factor in text.split("*"):
        m = _FACTOR.match(factor.strip())
        if not m:
            raise NotMonomialError(f"cannot read factor {factor!r} in {text!r}")
        i, k = int(m.group(1)), int(m.group(2) or 1)
        if i >= nvars:
            raise NotMonomialError(f"variable z{i} out of range (fan has {nvars} rays)")
        e[i] += k
    return tuple(e)


def parse_ideal(text: str, nvars: int) -> list:
    return [parse_monomial(t, nvars) for t in text.split(",")]


def format_monomial(e: Sequence[int]) -> str:
    parts = [f"z{i}" if k == 1 else f"z{i}^{k}" for i, k in enumerate(e) if k]
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class TaylorTerm:
    subset: tuple
    degree: int
    lcm: tuple
    twist: tuple  # divisor coefficients of the line bundle in this slot


@dataclass(frozen=True)
class TaylorComplex:
    generators: tuple
    terms: tuple
    differential: tuple  # (source index, target index, sign, monomial exponents)

    def degrees(self) -> list:
        return sorted(set(t.degree for t in self.terms))

    def d_squared_is_zero(self) -> bool:
        out = {}
        by_src = {}
        for p, q, s, mono in self.differential:
            by_src.setdefault(p, []).append((q, s, mono))
        for p, q, s, mono in self.differential:
            for r, s2, mono2 in by_src.get(q, []):
                key = (p, r, tuple(a + b for a, b in zip(mono, mono2)))
                out[key] = out.get(key, 0) + s * s2
        return all(v == 0 for v in out.values())

    def weight_complex(self, w: Sequence[int]):
        """The complex in multidegree ``w``: a basis vector for each term with ``lcm <= w``.

        Returns ``(basis_by_degree, matrices)`` where ``matrices[k]`` maps
        degree ``k`` to ``k+1`` as a list of rows.
        """
        live = [i for i, t in enumerate(self.terms) if all(a <= b for a, b in zip(t.lcm, w))]
        basis = {}
        for i in live:
            basis.setdefault(self.terms[i].degree, []).append(i)
        mats = {}
        for k, src in basis.items():
            tgt = basis.get(k + 1, [])
            pos = {i: n for n, i in enumerate(src)}
            tpos = {i: n for n, i in enumerate(tgt)}
            M = [[0] * len(src) for _ in tgt]
            for p, q, s, _ in self.differential:
                if p in pos and q in tpos:
                    M[tpos[q]][pos[p]] += s
            mats[k] = M
        return basis, mats

    def weight_cohomology(self, w: Sequence[int]) -> dict:
        from .zlat import rank_q
        basis, mats = self.weight_complex(w)
        out = {}
        for k, src in basis.items():
            rk_out = rank_q(mats[k]) if mats[k] and src else 0
            prev = mats.get(k - 1)
            rk_in = rank_q(prev) if prev and basis.get(k - 1) else 0
            out[k] = len(src) - rk_out - rk_in
        return out


def taylor_resolution(F: StackyFan, generators, base: Optional[Sequence[int]] = None) -> TaylorComplex:
    """Taylor complex of the monomial ideal generated by ``generators``.

    ``generators`` is a list of exponent vectors or a string such as
    ``"z0^2,z0*z1"``.  The term for a subset ``S`` sits in degree ``-|S|``
    and is the line bundle with divisor ``base - lcm(S)``; the differential
    drops one generator at a time with alternating sign times the quotient
    monomial.
    """
    r = F.nrays
    if isinstance(generators, str):
        generators = parse_ideal(generators, r)
    gens = []
    for g in generators:
        if isinstance(g, str):
            g = parse_monomial(g, r)
        g = tuple(int(x) for x in g)
        if len(g) != r or any(x < 0 for x in g):
            raise NotMonomialError(f"exponent vector {g} is invalid for {r} variables")
        gens.append(g)
    base = tuple(int(x) for x in base) if base is not None else (0,) * r
    subsets = [S for k in range(len(gens) + 1) for S in itertools.combinations(range(len(gens)), k)]
    index = {S: i for i, S in enumerate(subsets)}
    terms = []
    for S in subsets:
        l = tuple(max((gens[s][k] for s in S), default=0) for k in range(r))
        terms.append(TaylorTerm(S, -len(S), l, tuple(b - x for b, x in zip(base, l))))
    diff = []
    for S in subsets:
        for t, s in enumerate(S):
            T = S[:t] + S[t + 1:]
            p, q = index[S], index[T]
            mono = tuple(a - b for a, b in zip(terms[p].lcm, terms[q].lcm))
            diff.append((p, q, (-1) ** t, mono))
    return TaylorComplex(tuple(gens), tuple(terms), tuple(diff))
