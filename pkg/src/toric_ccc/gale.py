"""Gale duality and the Cox-quotient data of a stacky fan."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .stackyfan import StackyFan
from .zlat import FGAbelianGroup, GroupHom, IntMatrix, cokernel


@dataclass(frozen=True)
class GaleData:
    """``DG(beta) = coker(B* + Q*)`` and the map ``beta_dual: Z^r -> DG(beta)``.

    ``lift`` is the integer matrix ``B`` (columns lift the rays to
    ``Z^(n+l)``) and ``presentation`` is ``Q``; ``projection`` is the full
    quotient map ``Z^(r+l) -> DG(beta)``.
    """
    dg: FGAbelianGroup
    beta_dual: GroupHom
    lift: IntMatrix
    presentation: IntMatrix
    projection: GroupHom

    @property
    def weights(self) -> tuple:
        """Rows of ``beta_dual`` on the free part of ``DG(beta)`` (one per free generator)."""
        k = self.dg.free_rank
        return tuple(self.beta_dual.matrix.rows[:k])

    @property
    def torsion_weights(self) -> tuple:
        return tuple(self.beta_dual.matrix.rows[self.dg.free_rank:])


def canonical_lift(F: StackyFan) -> IntMatrix:
    """Columns are the rays with torsion coordinates in ``[0, a_j)``."""
    return IntMatrix.from_columns([F.lattice.reduce(b) for b in F.rays], F.lattice.ngens)


def gale_dual(F: StackyFan, lift: Optional[IntMatrix] = None) -> GaleData:
    """Gale dual of ``beta``.  ``lift`` may replace the canonical ``B``.

    Any alternative lift must agree with the rays modulo the relations
    ``Q``; the invariant factors of the result do not depend on the choice.
    """
    N = F.lattice
    r, l = F.nrays, len(N.invariants)
    B = canonical_lift(F) if lift is None else lift
    if B.shape != (N.ngens, r):
        raise ValueError(f"lift has shape {B.shape}, expected {(N.ngens, r)}")
    for j, col in enumerate(B.columns()):
        if N.reduce(col) != N.reduce(F.rays[j]):
            raise ValueError(f"lift column {j} does not map to ray {j}")
    Q = N.relations() if l else IntMatrix.zeros(N.ngens, 0)
    # B* + Q* : Z^(n+l) -> Z^r + Z^l, the transposes stacked.
    D = B.T.vstack(Q.T) if l else B.T
    dg, proj = cokernel(GroupHom(FGAbelianGroup(N.ngens), FGAbelianGroup(r + l), D))
    bd = IntMatrix.from_rows([row[:r] for row in proj.matrix.rows], r) if dg.ngens else IntMatrix.zeros(0, r)
    beta_dual = GroupHom(FGAbelianGroup(r), dg, bd)
    return GaleData(dg, beta_dual, B, Q, proj)


def rigid_comparison(F: StackyFan):
    """The map ``DG(beta_bar) -> DG(beta)`` induced by ``Z^r -> Z^(r+l)``.

    Returns ``(map, cokernel_group)``.  The map is injective and its cokernel
    is isomorphic to the torsion of ``N``.
    """
    from .stackyfan import rigidify
    full = gale_dual(F)
    rig = gale_dual(rigidify(F))
    r = F.nrays
    # a section of the rigid projection: lift generators of DG(beta_bar) to Z^r
    Pr = rig.projection
    sec = _section(Pr)
    cols = []
    for c in sec:
        cols.append(full.projection(tuple(c) + (0,) * (full.projection.source.ngens - r)))
    m = GroupHom(rig.dg, full.dg, IntMatrix.from_columns(cols, full.dg.ngens)
                 if cols else IntMatrix.zeros(full.dg.ngens, 0))
    return m, cokernel(m)[0]


def _section(P: GroupHom) -> list:
    """Preimages in ``Z^m`` of the generators of a quotient ``P: Z^m -> G``."""
    from .zlat import solve_integer
    G = P.target
    A = P.matrix.hstack(G.relations()) if G.invariants else P.matrix
    out = []
    for k in range(G.ngens):
        e = tuple(int(i == k) for i in range(G.ngens))
        x = solve_integer(A, e)
        if x is None:
            raise ValueError("projection is not surjective")
        out.append(x[:P.source.ngens])
    return out


def generic_stabilizer(F: StackyFan) -> list:
    """Invariant factors of the torsion of ``N``."""
    return list(F.lattice.invariants)


def irrelevant_ideal(F: StackyFan) -> list:
    """Monomial supports ``{i : ray i not in C}`` per maximal cone, redundant ones dropped."""
    comps = []
    for c in F.maximal_cones:
        s = tuple(i for i in range(F.nrays) if i not in c)
        if s not in comps:
            comps.append(s)
    return [s for s in comps if not any(set(t) < set(s) for t in comps)]


@dataclass(frozen=True)
class CoxData:
    cox_group: FGAbelianGroup
    torus_rank: int
    generic_stabilizer: tuple
    irrelevant_generators: tuple


def cox_data(F: StackyFan) -> CoxData:
    g = gale_dual(F)
    return CoxData(g.dg, g.dg.free_rank, tuple(generic_stabilizer(F)), tuple(irrelevant_ideal(F)))
