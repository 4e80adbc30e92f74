"""The poset of shifted wedges, complexes of costandard objects over it, and
the functor sending line-bundle complexes to such complexes.

An element ``(sigma, m)`` stands for the wedge ``{x : <x, b_j> >= m_j, j in
sigma}``; ``a <= b`` means the wedge of ``a`` sits inside the wedge of ``b``
and then there is exactly one basis morphism ``a -> b``.  A ``ThetaComplex``
is a bounded twisted complex of such objects with rational coefficients.

Ext between two complexes is computed in two layers.  The weight-``m`` piece
is the cohomology of the Hom complex against the translate of the target by
``m`` (this is the equivariant Ext when ``m = 0``); the total Ext sums the
pieces over the character lattice.  The weight pieces only depend on which
pairs of objects are comparable, so they are cached by that pattern.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import HypothesisError, InvalidComplexError, NotCompactError
from .linebundle import TwistedPolytope, _require_valid
from .stackyfan import (StackyFan, StackyFanMorphism, ValidationReport, preimage_cover,
                        preimage_faces, require_complete, validate_morphism)
from .zlat import dot, rank_q, solve_q


@dataclass(frozen=True, order=True)
class GammaElement:
    cone: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "cone", tuple(self.cone))
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))
        if len(self.cone) != len(self.values):
            raise ValueError(f"cone {self.cone} has {len(self.cone)} rays but {len(self.values)} values")

    def value_map(self) -> dict:
        return dict(zip(self.cone, self.values))

    def restrict(self, face: Sequence[int]) -> "GammaElement":
        vm = self.value_map()
        face = tuple(face)
        return GammaElement(face, tuple(vm[j] for j in face))

    def __str__(self):
        inner = ", ".join(f"{j}:{m}" for j, m in zip(self.cone, self.values))
        return "{" + inner + "}"


def leq(a: GammaElement, b: GammaElement) -> bool:
    """Wedge of ``a`` inside wedge of ``b``.

    In a simplicial fan this needs the cone of ``b`` to be a face of the cone
    of ``a``; each ray of ``b`` is then a ray of ``a`` (its coefficient vector
    is a unit vector) and the condition is value domination on those rays.
    """
    va = a.value_map()
    for j, m in zip(b.cone, b.values):
        if j not in va or va[j] < m:
            return False
    return True


def theta_ext(a: GammaElement, b: GammaElement) -> dict:
    """Graded dimensions of Ext between two costandard objects."""
    return {0: 1} if leq(a, b) else {}


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class ThetaComplex:
    """Terms ``(degree, GammaElement)`` and differential entries ``(p, q, coeff)``."""
    fan: StackyFan
    terms: tuple
    differential: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(d), a) for d, a in self.terms))
        merged = {}
        for p, q, c in self.differential:
            c = Fraction(c)
            merged[(p, q)] = merged.get((p, q), 0) + c
        object.__setattr__(self, "differential",
                           tuple(sorted((p, q, c) for (p, q), c in merged.items() if c != 0)))

    @classmethod
    def single(cls, fan: StackyFan, a: GammaElement, degree: int = 0) -> "ThetaComplex":
        return cls(fan, ((degree, a),))

    def __len__(self):
        return len(self.terms)

    @cached_property
    def out_edges(self) -> dict:
        out = {}
        for p, q, c in self.differential:
            out.setdefault(p, []).append((q, c))
        return out

    @cached_property
    def in_edges(self) -> dict:
        out = {}
        for p, q, c in self.differential:
            out.setdefault(q, []).append((p, c))
        return out

    def degrees(self) -> list:
        return sorted(set(d for d, _ in self.terms))

    def objects(self) -> list:
        return [a for _, a in self.terms]

    def shift(self, k: int) -> "ThetaComplex":
        """``E[k]``: degrees drop by ``k`` and the differential picks up ``(-1)^k``."""
        s = -1 if k % 2 else 1
        return ThetaComplex(self.fan, tuple((d - k, a) for d, a in self.terms),
                            tuple((p, q, s * c) for p, q, c in self.differential))


def validate_complex(E: ThetaComplex) -> ValidationReport:
    v = []
    n = len(E.terms)
    for p, q, c in E.differential:
        if not (0 <= p < n and 0 <= q < n):
            v.append(f"differential entry {p}->{q} refers to a missing term")
            continue
        dp, a = E.terms[p]
        dq, b = E.terms[q]
        if dq != dp + 1:
            v.append(f"entry {p}->{q} goes from degree {dp} to degree {dq}")
        if not leq(a, b):
            v.append(f"entry {p}->{q}: {a} is not below {b}")
    for d, a in E.terms:
        for j in a.cone:
            if not 0 <= j < E.fan.nrays:
                v.append(f"object {a} uses a ray outside the fan")
        if not E.fan.has_cone(a.cone):
            v.append(f"object {a} is not on a cone of the fan")
    if v:
        return ValidationReport(tuple(v))
    sq = {}
    for p, q, c in E.differential:
        for r, c2 in E.out_edges.get(q, []):
            sq[(p, r)] = sq.get((p, r), 0) + c * c2
    bad = [k for k, x in sq.items() if x != 0]
    if bad:
        v.append(f"d^2 != 0 on {len(bad)} entries, e.g. {bad[0][0]}->{bad[0][1]}")
    return ValidationReport(tuple(v))


def _require(E: ThetaComplex):
    rep = validate_complex(E)
    if not rep.ok:
        raise InvalidComplexError("; ".join(rep.violations))


def translate(E: ThetaComplex, m: Sequence) -> ThetaComplex:
    """Shift every wedge by the character ``m``: values ``m_j + <m, b_j>``."""
    bars = E.fan.bar_rays
    terms = tuple((d, GammaElement(a.cone, tuple(x + dot(m, bars[j]) for j, x in zip(a.cone, a.values))))
                  for d, a in E.terms)
    return ThetaComplex(E.fan, terms, E.differential)


def direct_sum(*cs: ThetaComplex) -> ThetaComplex:
    terms, diff, off = [], [], 0
    for c in cs:
        terms.extend(c.terms)
        diff.extend((p + off, q + off, x) for p, q, x in c.differential)
        off += len(c.terms)
    return ThetaComplex(cs[0].fan, tuple(terms), tuple(diff))


# ---------------------------------------------------------------------------
# the functor on line bundles


def cech_kappa(F: StackyFan, u: TwistedPolytope) -> ThetaComplex:
    """Alternating Cech complex over intersections of maximal cones, first term in degree 0."""
    require_complete(F)
    _require_valid(F, u)
    vals = u.ray_values()
    v = len(F.maximal_cones)
    subsets = [I for k in range(1, v + 1) for I in itertools.combinations(range(v), k)]
    index = {I: n for n, I in enumerate(subsets)}
    terms = []
    for I in subsets:
        cone = tuple(sorted(set.intersection(*(set(F.maximal_cones[i]) for i in I))))
        terms.append((len(I) - 1, GammaElement(cone, tuple(vals[j] for j in cone))))
    diff = []
    for J in subsets:
        if len(J) < 2:
            continue
        for t in range(len(J)):
            diff.append((index[J[:t] + J[t + 1:]], index[J], (-1) ** t))
    return ThetaComplex(F, tuple(terms), tuple(diff))


def kappa_divisor(F: StackyFan, c: Sequence[int]) -> ThetaComplex:
    from .linebundle import from_divisor
    return cech_kappa(F, from_divisor(F, c))


# ---------------------------------------------------------------------------
# simplification


def simplify(E: ThetaComplex) -> ThetaComplex:
    """Cancel isomorphism components ``a -> a`` by Gaussian elimination.

    The result is homotopy equivalent to ``E``.
    """
    alive = set(range(len(E.terms)))
    out = {p: {} for p in alive}
    inn = {p: {} for p in alive}
    for p, q, c in E.differential:
        out[p][q] = c
        inn[q][p] = c
    while True:
        pair = None
        for p in sorted(alive):
            for q, c in out[p].items():
                if E.terms[p][1] == E.terms[q][1]:
                    pair = (p, q, c)
                    break
            if pair:
                break
        if pair is None:
            break
        p, q, c = pair
        ys = [(y, w) for y, w in out[p].items() if y != q]
        xs = [(x, w) for x, w in inn[q].items() if x != p]
        for x, wx in xs:
            for y, wy in ys:
                nv = out[x].get(y, 0) - wx * wy / c
                if nv:
                    out[x][y] = nv
                    inn[y][x] = nv
                else:
                    out[x].pop(y, None)
                    inn[y].pop(x, None)
        for k in (p, q):
            for y in list(out[k]):
                inn[y].pop(k, None)
            for x in list(inn[k]):
                out[x].pop(k, None)
            alive.discard(k)
            del out[k], inn[k]
    keep = sorted(alive)
    new = {old: i for i, old in enumerate(keep)}
    terms = tuple(E.terms[k] for k in keep)
    diff = tuple((new[p], new[q], c) for p in keep for q, c in out[p].items())
    return ThetaComplex(E.fan, terms, diff)


# ---------------------------------------------------------------------------
# Hom complexes and Ext


def _sparse_rank(rows: Iterable[dict]) -> int:
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            c = min(row)
            if c in pivots:
                f = row[c]
                for k, v in pivots[c].items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                inv = 1 / row[c]
                pivots[c] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
    return rank


def _betti_from_pairs(E: ThetaComplex, F: ThetaComplex, pairs: Iterable[tuple]) -> dict:
    basis = sorted(pairs)
    index = {pq: i for i, pq in enumerate(basis)}
    deg = {pq: F.terms[pq[1]][0] - E.terms[pq[0]][0] for pq in basis}
    by_deg = {}
    for pq in basis:
        by_deg.setdefault(deg[pq], []).append(pq)
    # delta(e_pq) = sum_q' dF(q->q') e_pq' - (-1)^k sum_p' dE(p'->p) e_p'q
    rows_by_deg = {}
    for pq in basis:
        p, q = pq
        k = deg[pq]
        col = {}
        for q2, c in F.out_edges.get(q, []):
            t = index.get((p, q2))
            if t is not None:
                col[t] = col.get(t, 0) + c
        s = -1 if k % 2 == 0 else 1
        for p2, c in E.in_edges.get(p, []):
            t = index.get((p2, q))
            if t is not None:
                col[t] = col.get(t, 0) + s * c
        rows_by_deg.setdefault(k, []).append(col)
    ranks = {k: _sparse_rank(rows) for k, rows in rows_by_deg.items()}
    out = {}
    for k, items in by_deg.items():
        b = len(items) - ranks.get(k, 0) - ranks.get(k - 1, 0)
        if b:
            out[k] = b
    return out


def equivariant_hom_betti(E: ThetaComplex, F: ThetaComplex, weight: Optional[Sequence] = None) -> dict:
    """Cohomology dimensions of the Hom complex from ``E`` to the translate ``F + weight``.

    With ``weight`` omitted this is Ext in the poset category itself.
    Zero entries are dropped from the returned ``{degree: dim}``.
    """
    _require(E)
    _require(F)
    if weight is not None:
        F = translate(F, weight)
    pairs = [(p, q) for p, (_, a) in enumerate(E.terms) for q, (_, b) in enumerate(F.terms) if leq(a, b)]
    return _betti_from_pairs(E, F, pairs)


@dataclass
class _PairThresholds:
    """For each comparable-cone pair, the bounds ``<m, b_j> <= t`` that make it ``leq``."""
    pairs: list
    rays: list

    @classmethod
    def build(cls, E: ThetaComplex, F: ThetaComplex):
        pairs = []
        rays = set()
        for p, (_, a) in enumerate(E.terms):
            va = a.value_map()
            for q, (_, b) in enumerate(F.terms):
                if all(j in va for j in b.cone):
                    conds = tuple((j, va[j] - m) for j, m in zip(b.cone, b.values))
                    rays.update(j for j, _ in conds)
                    pairs.append(((p, q), conds))
        return cls(pairs, sorted(rays))

    def pattern(self, avals: dict) -> frozenset:
        return frozenset(pq for pq, conds in self.pairs if all(avals[j] <= t for j, t in conds))

    def ranges(self) -> dict:
        lo, hi = {}, {}
        for _, conds in self.pairs:
            for j, t in conds:
                lo[j] = min(lo.get(j, t), t)
                hi[j] = max(hi.get(j, t), t)
        return {j: (lo[j], hi[j] + 1) for j in lo}


def _vertex_box(fan: StackyFan, ranges: dict):
    """Bounding box of every vertex of the arrangement ``<m, b_j> = c`` with ``c`` in range."""
    n = fan.dim
    rays = sorted(ranges)
    lo = [None] * n
    hi = [None] * n
    for S in itertools.combinations(rays, n):
        gens = [fan.bar_rays[j] for j in S]
        if rank_q(gens) < n:
            continue
        cols = [tuple(g[k] for g in gens) for k in range(n)]
        for corner in itertools.product(*(ranges[j] for j in S)):
            x = solve_q(cols, corner)
            for k in range(n):
                lo[k] = x[k] if lo[k] is None else min(lo[k], x[k])
                hi[k] = x[k] if hi[k] is None else max(hi[k], x[k])
    if n == 0 or lo[0] is None:
        return None
    return [math.floor(x) for x in lo], [math.ceil(x) for x in hi]


def hom_complex_betti(E: ThetaComplex, F: ThetaComplex, simplify_first: bool = True) -> dict:
    """Graded dimensions of total Ext from ``E`` to ``F``.

    Sums the weight pieces over all characters.  Every region where the
    comparability pattern is constant and bounded lies inside the vertex box
    of the threshold arrangement; the box is padded by one lattice layer and
    a nonzero piece on that layer is reported as non-compact support.
    """
    _require(E)
    _require(F)
    if E.fan != F.fan:
        raise InvalidComplexError("complexes live on different fans")
    if simplify_first:
        E, F = simplify(E), simplify(F)
    if not E.terms or not F.terms:
        return {}
    fan = E.fan
    n = fan.dim
    th = _PairThresholds.build(E, F)
    cache = {}

    def piece(m):
        avals = {j: dot(m, fan.bar_rays[j]) for j in th.rays}
        pat = th.pattern(avals)
        if pat not in cache:
            cache[pat] = _betti_from_pairs(E, F, pat) if pat else {}
        return cache[pat]

    if n == 0:
        return dict(piece(()))
    ranges = th.ranges()
    box = _vertex_box(fan, ranges) if ranges and rank_q([fan.bar_rays[j] for j in ranges]) == n else None
    if box is None:
        # the pattern is invariant along a line: any nonzero piece repeats forever
        R = max((abs(x) for r in ranges.values() for x in r), default=0) + 2
        for m in itertools.product(range(-R, R + 1), repeat=n):
            if piece(m):
                raise NotCompactError("Ext has non-compact support (weight pieces repeat along a line)")
        return {}
    lo, hi = box
    lo = [x - 1 for x in lo]
    hi = [x + 1 for x in hi]
    total = {}
    for m in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        b = piece(m)
        if not b:
            continue
        if any(x == a or x == c for x, a, c in zip(m, lo, hi)):
            raise NotCompactError(f"Ext has a nonzero weight piece at {m} on the guard layer")
        for k, d in b.items():
            total[k] = total.get(k, 0) + d
    return total


ext_betti = hom_complex_betti


# ---------------------------------------------------------------------------
# convolution and pullback


def convolve(E: ThetaComplex, F: ThetaComplex) -> ThetaComplex:
    """Tensor-product model: ``(a, b) -> (cone_a & cone_b, values added)``, degrees add."""
    if E.fan != F.fan:
        raise InvalidComplexError("complexes live on different fans")
    nF = len(F.terms)
    terms = []
    for da, a in E.terms:
        va = a.value_map()
        for db, b in F.terms:
            vb = b.value_map()
            cone = tuple(j for j in a.cone if j in vb)
            terms.append((da + db, GammaElement(cone, tuple(va[j] + vb[j] for j in cone))))
    diff = []
    for p, p2, c in E.differential:
        for q in range(nF):
            diff.append((p * nF + q, p2 * nF + q, c))
    for q, q2, c in F.differential:
        for p, (dp, _) in enumerate(E.terms):
            diff.append((p * nF + q, p * nF + q2, c if dp % 2 == 0 else -c))
    return ThetaComplex(E.fan, tuple(terms), tuple(diff))


def _require_pullback_ready(phi: StackyFanMorphism):
    rep = validate_morphism(phi)
    if not rep.pullback_ready:
        raise HypothesisError("; ".join(rep.violations + rep.hypothesis_notes) or "morphism is invalid")


def pullback(phi: StackyFanMorphism, E: ThetaComplex) -> ThetaComplex:
    """Pull a complex on the target fan back to the source fan.

    Each object ``(sigma2, chi2)`` becomes the Cech complex of the faces
    ``D_i`` of the source maximal cones that map into ``sigma2``, indexed by
    every maximal cone, with values pulled back through ``f``.  Using the same
    index set for every object lets the differential of ``E`` act term by
    term.  Redundant faces only add contractible pieces.
    """
    _require_pullback_ready(phi)
    _require(E)
    if E.fan != phi.target:
        raise InvalidComplexError("complex does not live on the morphism's target fan")
    F1 = phi.source
    v = len(F1.maximal_cones)
    subsets = [I for k in range(1, v + 1) for I in itertools.combinations(range(v), k)]
    sidx = {I: n for n, I in enumerate(subsets)}
    ns = len(subsets)
    terms = []
    for d, a in E.terms:
        faces = preimage_faces(phi, a.cone)
        for I in subsets:
            cone = tuple(sorted(set.intersection(*(set(faces[i]) for i in I))))
            terms.append((d + len(I) - 1, GammaElement(cone, phi.values_on(cone, a.cone, a.values))))
    diff = []
    for p, q, c in E.differential:
        for n_ in range(ns):
            diff.append((p * ns + n_, q * ns + n_, c))
    for p, (d, _) in enumerate(E.terms):
        s = -1 if d % 2 else 1
        for J in subsets:
            if len(J) < 2:
                continue
            for t in range(len(J)):
                diff.append((p * ns + sidx[J[:t] + J[t + 1:]], p * ns + sidx[J], s * (-1) ** t))
    return ThetaComplex(F1, tuple(terms), tuple(diff))


def pullback_object(phi: StackyFanMorphism, a: GammaElement, degree: int = 0) -> ThetaComplex:
    """Cech complex over the maximal cones of the preimage of ``a``'s cone."""
    _require_pullback_ready(phi)
    cover = preimage_cover(phi, a.cone)
    w = len(cover)
    subsets = [I for k in range(1, w + 1) for I in itertools.combinations(range(w), k)]
    sidx = {I: n for n, I in enumerate(subsets)}
    terms = []
    for I in subsets:
        cone = tuple(sorted(set.intersection(*(set(cover[i]) for i in I))))
        terms.append((degree + len(I) - 1, GammaElement(cone, phi.values_on(cone, a.cone, a.values))))
    diff = []
    for J in subsets:
        if len(J) < 2:
            continue
        for t in range(len(J)):
            diff.append((sidx[J[:t] + J[t + 1:]], sidx[J], (-1) ** t))
    return ThetaComplex(phi.source, tuple(terms), tuple(diff))
