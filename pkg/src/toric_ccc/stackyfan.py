"""Stacky fans, their validation, rigidification, lifted fan, and morphisms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import HypothesisError, NotCompleteError
from .zlat import (FGAbelianGroup, GroupHom, IntMatrix, RationalCone, cone_generators,
                   dot, rank_q, simplicial_membership)

Cone = tuple  # sorted tuple of ray indices


@dataclass(frozen=True)
class StackyFan:
    """A simplicial fan in ``N_R`` together with ray elements ``b_i`` of ``N``.

    ``rays`` hold full elements of ``N`` (free coordinates then torsion
    coordinates); ``maximal_cones`` are sorted ray-index tuples in the order
    they were given, which fixes every Cech ordering downstream.
    """
    lattice: FGAbelianGroup
    rays: tuple
    maximal_cones: tuple
    name: str = field(default="", compare=False)

    @classmethod
    def from_data(cls, lattice: FGAbelianGroup, rays, cones, name: str = "") -> "StackyFan":
        rays = tuple(lattice.reduce(tuple(int(x) for x in b)) for b in rays)
        given = []
        for c in cones:
            c = tuple(sorted(set(int(i) for i in c)))
            if c not in given:
                given.append(c)
        maximal = tuple(c for c in given if not any(set(c) < set(d) for d in given))
        if not maximal:
            maximal = ((),)
        return cls(lattice, rays, maximal, name)

    @property
    def dim(self) -> int:
        return self.lattice.free_rank

    @property
    def nrays(self) -> int:
        return len(self.rays)

    @cached_property
    def bar_rays(self) -> tuple:
        """Images ``b_i`` in the free quotient; not necessarily primitive."""
        return tuple(self.lattice.free_part(b) for b in self.rays)

    @cached_property
    def cones(self) -> tuple:
        """Every cone of the fan (faces included), including the zero cone.

        Ordered by size descending, then by the first maximal cone containing
        it, then lexicographically.
        """
        first = {}
        for k, c in enumerate(self.maximal_cones):
            for size in range(len(c), -1, -1):
                for face in itertools.combinations(c, size):
                    first.setdefault(face, k)
        return tuple(sorted(first, key=lambda f: (-len(f), first[f], f)))

    @cached_property
    def _cone_set(self) -> frozenset:
        return frozenset(self.cones)

    def has_cone(self, cone: Sequence[int]) -> bool:
        return tuple(sorted(cone)) in self._cone_set

    def generators(self, cone: Cone) -> list:
        return [self.bar_rays[i] for i in cone]

    def membership(self, cone: Cone, v) -> Optional[tuple]:
        """Coefficients of ``v`` over the rays of ``cone`` (``None`` if outside)."""
        return simplicial_membership(self.generators(cone), v)

    def locate(self, v) -> Optional[Cone]:
        """The cone whose relative interior contains ``v``, or ``None`` outside the support."""
        for c in self.maximal_cones:
            lam = self.membership(c, v)
            if lam is not None:
                return tuple(i for i, x in zip(c, lam) if x > 0)
        return None

    @cached_property
    def maximal_index(self) -> dict:
        return {c: k for k, c in enumerate(self.maximal_cones)}

    def __str__(self):
        return self.name or f"StackyFan({self.lattice}, {self.nrays} rays)"


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def _intersection_generators(A: Sequence, B: Sequence, dim: int) -> list:
    """Generators of ``cone(A) & cone(B)`` (both given by generators)."""
    ineq = list(RationalCone(dim, A).inequalities) + list(RationalCone(dim, B).inequalities)
    if not ineq:
        return cone_generators([], dim)
    return cone_generators(ineq, dim)


def validate(F: StackyFan) -> ValidationReport:
    """Check every stacky-fan invariant; collect violations instead of raising."""
    v = []
    N = F.lattice
    n = F.dim
    for i, b in enumerate(F.rays):
        if len(b) != N.ngens:
            v.append(f"ray {i} has {len(b)} coordinates, expected {N.ngens}")
    if v:
        return ValidationReport(tuple(v))
    for i, b in enumerate(F.bar_rays):
        if not any(b):
            v.append(f"ray {i} has zero image in the free quotient")
    for c in F.maximal_cones:
        bad = [i for i in c if not 0 <= i < F.nrays]
        if bad:
            v.append(f"cone {list(c)} uses ray indices {bad} out of range")
    if v:
        return ValidationReport(tuple(v))
    used = set(i for c in F.maximal_cones for i in c)
    for i in range(F.nrays):
        if i not in used:
            v.append(f"ray {i} belongs to no cone")
    for c in F.maximal_cones:
        if c and rank_q(F.generators(c)) < len(c):
            v.append(f"cone {list(c)} is not simplicial: dependent rays")
    if v:
        return ValidationReport(tuple(v))
    if rank_q(list(F.bar_rays)) < n:
        v.append("rays do not span N_R (cokernel of beta is infinite)")
    for c1, c2 in itertools.combinations(F.maximal_cones, 2):
        shared = tuple(sorted(set(c1) & set(c2)))
        shared_gens = F.generators(shared)
        for g in _intersection_generators(F.generators(c1), F.generators(c2), n):
            if any(g) and simplicial_membership(shared_gens, g) is None:
                v.append(f"cones {list(c1)} and {list(c2)} do not meet in a common face")
                break
    return ValidationReport(tuple(v))


def is_complete(F: StackyFan) -> bool:
    """Support equals ``N_R``: full-dimensional maximal cones, each wall in exactly two."""
    n = F.dim
    if n == 0:
        return F.maximal_cones == ((),)
    if any(len(c) != n for c in F.maximal_cones):
        return False
    walls = {}
    for c in F.maximal_cones:
        for w in itertools.combinations(c, n - 1):
            walls[w] = walls.get(w, 0) + 1
    return bool(walls) and all(k == 2 for k in walls.values())


def require_complete(F: StackyFan) -> None:
    if not is_complete(F):
        raise NotCompleteError(f"fan {F} is not complete (or has a maximal cone that is not full-dimensional)")


def rigidify(F: StackyFan) -> StackyFan:
    """Forget torsion: the same cones with rays ``b_i`` in ``Z^n``."""
    return StackyFan(FGAbelianGroup(F.dim), F.bar_rays, F.maximal_cones, name=F.name)


@dataclass(frozen=True)
class LiftedChart:
    cone: Cone
    generators: tuple       # unit vectors e_i in Z^r, i in cone
    complement: tuple       # ray indices outside the cone (variables inverted on the chart)
    character_rank: int     # rank of M_sigma


@dataclass(frozen=True)
class LiftedFan:
    rank: int
    charts: tuple

    def chart(self, cone: Cone) -> LiftedChart:
        for ch in self.charts:
            if ch.cone == tuple(cone):
                return ch
        raise KeyError(cone)


def lift_fan(F: StackyFan) -> LiftedFan:
    """Coordinate cones in ``R^r`` matching each cone of the fan."""
    r = F.nrays
    charts = []
    for c in F.cones:
        gens = tuple(tuple(int(i == j) for j in range(r)) for i in c)
        comp = tuple(i for i in range(r) if i not in c)
        charts.append(LiftedChart(c, gens, comp, len(c)))
    return LiftedFan(r, tuple(charts))


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class StackyFanMorphism:
    source: StackyFan
    target: StackyFan
    f: GroupHom
    name: str = field(default="", compare=False)

    @cached_property
    def bar_matrix(self) -> IntMatrix:
        """Action on free parts (torsion generators cannot reach free coordinates)."""
        n1, n2 = self.source.dim, self.target.dim
        return IntMatrix.from_rows([self.f.matrix.rows[i][:n1] for i in range(n2)], n1)

    def image_bar(self, v) -> tuple:
        return self.bar_matrix @ tuple(v)

    def ray_images(self) -> list:
        return [self.image_bar(b) for b in self.source.bar_rays]

    def maps_into(self, cone1: Cone, cone2: Cone) -> bool:
        gens2 = self.target.generators(cone2)
        imgs = self.ray_images()
        return all(simplicial_membership(gens2, imgs[i]) is not None for i in cone1)

    def values_on(self, cone1: Cone, cone2: Cone, values2: Sequence[int]) -> tuple:
        """Pull a character of ``M_cone2`` (by its ray values) back to ``M_cone1``.

        Each source ray image is written over the rays of ``cone2`` and the
        target values are combined with those coefficients.
        """
        gens2 = self.target.generators(cone2)
        imgs = self.ray_images()
        out = []
        for i in cone1:
            lam = simplicial_membership(gens2, imgs[i])
            if lam is None:
                raise HypothesisError(f"ray {i} does not map into cone {list(cone2)}")
            s = sum((l * m for l, m in zip(lam, values2)), Fraction(0))
            if s.denominator != 1:
                raise HypothesisError(f"pulled-back value {s} on ray {i} is not integral")
            out.append(int(s))
        return tuple(out)


@dataclass(frozen=True)
class MorphismReport:
    violations: tuple = ()
    preimage_union_of_cones: bool = True
    injective: bool = True
    hypothesis_notes: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def pullback_ready(self) -> bool:
        return self.ok and self.preimage_union_of_cones and self.injective


def _preimage_meets_relint(phi: StackyFanMorphism, tau: Cone, sigma2: Cone) -> bool:
    F1, F2 = phi.source, phi.target
    n1 = F1.dim
    M = phi.bar_matrix
    ineq = list(RationalCone(n1, F1.generators(tau)).inequalities) if tau else []
    if not tau:
        return False
    for a in RationalCone(F2.dim, F2.generators(sigma2)).inequalities:
        ineq.append(tuple(sum(a[k] * M.rows[k][j] for k in range(F2.dim)) for j in range(n1)))
    gens = cone_generators(ineq, n1)
    total = [sum(g[k] for g in gens) for k in range(n1)]
    lam = simplicial_membership(F1.generators(tau), total)
    return lam is not None and all(x > 0 for x in lam)


def validate_morphism(phi: StackyFanMorphism) -> MorphismReport:
    F1, F2 = phi.source, phi.target
    v = []
    if phi.f.source != F1.lattice or phi.f.target != F2.lattice:
        v.append("homomorphism does not go between the fans' lattices")
        return MorphismReport(tuple(v), False, False)
    for c1 in F1.cones:
        targets = [c2 for c2 in F2.cones if phi.maps_into(c1, c2)]
        if not targets:
            v.append(f"cone {list(c1)} maps into no cone of the target")
            continue
        for c2 in targets:
            gens = [F2.rays[j] for j in c2]
            for i in c1:
                if not F2.lattice.contains(gens, phi.f(F1.rays[i])):
                    v.append(f"f(b_{i}) is outside the subgroup N_sigma for cone {list(c2)}")
                    break
    notes = []
    union_ok = True
    for c2 in F2.cones:
        for tau in F1.cones:
            if not phi.maps_into(tau, c2) and _preimage_meets_relint(phi, tau, c2):
                union_ok = False
                notes.append(f"preimage of cone {list(c2)} cuts cone {list(tau)} through its interior")
                break
    injective = phi.f.is_injective()
    if not injective:
        notes.append("f is not injective")
    return MorphismReport(tuple(v), union_ok, injective, tuple(notes))


def preimage_faces(phi: StackyFanMorphism, sigma2: Cone) -> list:
    """For each maximal cone of the source, the face mapping into ``sigma2``."""
    imgs = phi.ray_images()
    gens2 = phi.target.generators(tuple(sigma2))
    return [tuple(i for i in c if simplicial_membership(gens2, imgs[i]) is not None)
            for c in phi.source.maximal_cones]


def preimage_cover(phi: StackyFanMorphism, sigma2: Cone) -> list:
    """Maximal source cones inside the preimage of ``sigma2``, in fan order."""
    sigma2 = tuple(sorted(sigma2))
    rep = validate_morphism(phi)
    if not rep.preimage_union_of_cones:
        raise HypothesisError("; ".join(rep.hypothesis_notes) or "preimage is not a union of cones")
    inside = [c for c in phi.source.cones if phi.maps_into(c, sigma2)]
    maximal = [c for c in inside if not any(set(c) < set(d) for d in inside)]
    order = {}
    for k, c in enumerate(phi.source.maximal_cones):
        for face in itertools.chain.from_iterable(
                itertools.combinations(c, s) for s in range(len(c), -1, -1)):
            order.setdefault(face, k)
    return sorted(maximal, key=lambda c: (order[c], -len(c), c))


__all__ = ["StackyFan", "ValidationReport", "validate", "is_complete", "require_complete",
           "rigidify", "LiftedChart", "LiftedFan", "lift_fan", "StackyFanMorphism",
           "MorphismReport", "validate_morphism", "preimage_cover", "preimage_faces"]
