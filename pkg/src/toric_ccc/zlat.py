"""Exact integer and rational linear algebra.

Integer matrices, Smith and Hermite normal forms, finitely generated abelian
groups with their homomorphisms, and rational polyhedral cones.  Everything is
done with Python ints and ``fractions.Fraction``; nothing here ever touches a
float.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import NonSimplicialError

Vector = tuple


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError(f"entry count does not match shape {self.nrows}x{self.ncols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: Optional[int] = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, cols: Iterable[Iterable[int]], nrows: int) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        return cls(nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int], nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, tuple(
            tuple(entries[i] if i == j and i < len(entries) else 0 for j in range(ncols))
            for i in range(nrows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.ncols, self.nrows,
                         tuple(tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)))

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.columns()
            return IntMatrix(self.nrows, other.ncols, tuple(
                tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise ValueError("shape mismatch")
        return IntMatrix(self.nrows, self.ncols + other.ncols,
                         tuple(a + b for a, b in zip(self.rows, other.rows)))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return IntMatrix(self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.rows])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def tolist(self) -> list:
        return [list(r) for r in self.rows]


def _bareiss_det(a):
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``A = U @ S @ V`` with the inverses of ``U`` and ``V`` kept alongside."""
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> tuple:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_form(A: IntMatrix) -> SmithForm:
    m, n = A.shape
    D = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # Row op "row_i += k * row_j" on D is E D with E = I + k e_ij; to keep
    # A = U D V we set U <- U E^-1 (column op on U) and U^-1 <- E U^-1.
    def row_add(i, j, k):
        if k == 0:
            return
        D[i] = [a + k * b for a, b in zip(D[i], D[j])]
        for r in U:
            r[j] -= k * r[i]
        Ui[i] = [a + k * b for a, b in zip(Ui[i], Ui[j])]

    def row_swap(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        for r in U:
            r[i], r[j] = r[j], r[i]
        Ui[i], Ui[j] = Ui[j], Ui[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        for r in U:
            r[i] = -r[i]
        Ui[i] = [-a for a in Ui[i]]

    # Column op "col_i += k * col_j" is D F with F = I + k e_ji.
    def col_add(i, j, k):
        if k == 0:
            return
        for r in D:
            r[i] += k * r[j]
        V[j] = [a - k * b for a, b in zip(V[j], V[i])]
        for r in Vi:
            r[i] += k * r[j]

    def col_swap(i, j):
        if i == j:
            return
        for r in D:
            r[i], r[j] = r[j], r[i]
        V[i], V[j] = V[j], V[i]
        for r in Vi:
            r[i], r[j] = r[j], r[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            row_swap(t, best[0])
            col_swap(t, best[1])
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                row_add(i, t, -q)
                dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                q = D[t][j] // p
                col_add(j, t, -q)
                dirty |= D[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is not None:
                row_add(t, bad[0], 1)
                continue
            if p < 0:
                row_neg(t)
            break
        else:  # pragma: no cover
            pass
        if all(D[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break

    return SmithForm(
        U=IntMatrix.from_rows(U, m), S=IntMatrix.from_rows(D, n), V=IntMatrix.from_rows(V, n),
        U_inv=IntMatrix.from_rows(Ui, m), V_inv=IntMatrix.from_rows(Vi, n))


def smith_normal_form(A: IntMatrix):
    """Return unimodular ``U``, ``V`` and diagonal ``S`` with ``A = U S V``.

    The diagonal of ``S`` is nonnegative and forms a divisibility chain.
    """
    sf = smith_form(A)
    return sf.U, sf.S, sf.V


# ---------------------------------------------------------------------------
# Hermite normal form (row style) and integer solving


def hermite_rows(rows: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns ``(H, T)`` with ``H = T @ rows`` (as lists), ``T`` unimodular, and
    the nonzero rows of ``H`` in echelon form with positive pivots and entries
    above each pivot reduced into ``[0, pivot)``.  Zero rows are at the bottom.
    """
    H = [list(r) for r in rows]
    m = len(H)
    if ncols is None:
        ncols = len(H[0]) if H else 0
    T = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[k] = H[k], H[r]
            T[r], T[k] = T[k], T[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    T[i] = [a - q * b for a, b in zip(T[i], T[r])]
                    done &= H[i][c] == 0
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            T[r] = [-a for a in T[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                T[i] = [a - q * b for a, b in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
    return H, T


def solve_integer(A: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """An integer ``x`` with ``A x = b``, or ``None`` if there is none."""
    sf = smith_form(A)
    w = sf.U_inv @ tuple(b)
    d = sf.diagonal
    y = [0] * A.ncols
    for i, wi in enumerate(w):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if wi != 0:
                return None
        elif wi % di:
            return None
        else:
            y[i] = wi // di
    return sf.V_inv @ tuple(y)


def kernel_basis(A: IntMatrix) -> list:
    """Saturated lattice basis of ``ker A`` over the integers.

    The basis is put in Hermite normal form, so a one-dimensional kernel comes
    back as the primitive vector with positive leading entry.
    """
    sf = smith_form(A)
    k = sf.rank
    basis = [sf.V_inv.column(j) for j in range(k, A.ncols)]
    if not basis:
        return []
    H, _ = hermite_rows(basis, A.ncols)
    return [tuple(r) for r in H if any(r)]


def primitive(v: Sequence) -> tuple:
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# rational linear algebra


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None):
    """Reduced row echelon form over Q.  Returns ``(R, pivot_columns)``."""
    R = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        p = R[r][c]
        R[r] = [x / p for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank_q(rows: Sequence[Sequence]) -> int:
    rows = [r for r in rows]
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace_q(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of ``{x : rows @ x = 0}``; the standard basis when ``rows`` is empty."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(R, piv):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_q(columns: Sequence[Sequence], v: Sequence) -> Optional[tuple]:
    """Solve ``sum_i x_i columns[i] = v`` over Q; ``None`` when inconsistent.

    Assumes the columns are independent (the solution is then unique).
    """
    k = len(columns)
    n = len(v)
    aug = [[Fraction(columns[i][r]) for i in range(k)] + [Fraction(v[r])] for r in range(n)]
    R, piv = rref(aug, k + 1)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for row, pc in zip(R, piv):
        x[pc] = row[k]
    return tuple(x)


def simplicial_membership(generators: Sequence[Sequence], v: Sequence) -> Optional[tuple]:
    """Barycentric-style coefficients of ``v`` in a simplicial cone.

    Returns the unique ``lam >= 0`` with ``v = sum lam_i g_i``, or ``None``
    when ``v`` is outside the cone.  Raises ``NonSimplicialError`` if the
    generators are linearly dependent.
    """
    generators = [tuple(g) for g in generators]
    if generators and rank_q(generators) < len(generators):
        raise NonSimplicialError(f"generators {generators} are linearly dependent")
    if not generators:
        return () if all(Fraction(x) == 0 for x in v) else None
    lam = solve_q(generators, v)
    if lam is None or any(x < 0 for x in lam):
        return None
    return lam


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FGAbelianGroup:
    """``Z^free_rank (+) Z/a_1 (+) ... (+) Z/a_l`` with ``a_1 | a_2 | ...``.

    Elements are integer tuples of length ``free_rank + len(invariants)``;
    torsion coordinates are taken modulo the matching invariant.
    """
    free_rank: int
    invariants: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "invariants", tuple(int(a) for a in self.invariants))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a in self.invariants:
            if a < 2:
                raise ValueError(f"invariant factor {a} must be >= 2")
        for a, b in zip(self.invariants, self.invariants[1:]):
            if b % a:
                raise ValueError(f"invariant factors {self.invariants} do not form a divisibility chain")

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.invariants)

    @property
    def torsion_order(self) -> int:
        return math.prod(self.invariants)

    def orders(self) -> tuple:
        """Order of each generator, 0 for free generators."""
        return (0,) * self.free_rank + self.invariants

    def reduce(self, v: Sequence[int]) -> tuple:
        if len(v) != self.ngens:
            raise ValueError(f"element {tuple(v)} has wrong length for {self}")
        n = self.free_rank
        return tuple(v[:n]) + tuple(x % a for x, a in zip(v[n:], self.invariants))

    def free_part(self, v: Sequence[int]) -> tuple:
        return tuple(v[:self.free_rank])

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def relations(self) -> IntMatrix:
        """Presentation matrix ``Q``: the group is ``Z^ngens / im Q``."""
        l = len(self.invariants)
        return IntMatrix.from_columns(
            [(0,) * self.free_rank + tuple(a if i == j else 0 for i in range(l))
             for j, a in enumerate(self.invariants)], self.ngens)

    def contains(self, gens: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
        """Whether ``v`` lies in the subgroup generated by ``gens``."""
        A = IntMatrix.from_columns(list(gens), self.ngens).hstack(self.relations())
        return solve_integer(A, v) is not None

    def __str__(self):
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{a}" for a in self.invariants]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by its action on generators (columns = images)."""
    source: FGAbelianGroup
    target: FGAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match "
                             f"{self.target.ngens}x{self.source.ngens}")
        rows = tuple(self.target.reduce(c) for c in self.matrix.columns())
        object.__setattr__(self, "matrix", IntMatrix.from_columns(rows, self.target.ngens))
        for a, col in zip(self.source.orders(), rows):
            if a and not self.target.is_zero(tuple(a * x for x in col)):
                raise ValueError(f"image {col} of an order-{a} generator has the wrong order")

    def __call__(self, v: Sequence[int]) -> tuple:
        return self.target.reduce(self.matrix @ tuple(v))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``self o other``."""
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)

    def is_zero(self) -> bool:
        return all(self.target.is_zero(c) for c in self.matrix.columns())

    def is_surjective(self) -> bool:
        return cokernel(self)[0] == FGAbelianGroup(0)

    def is_injective(self) -> bool:
        A = self.matrix.hstack(self.target.relations())
        k = self.source.ngens
        for v in kernel_basis(A):
            if not self.source.is_zero(v[:k]):
                return False
        return True


def cokernel(f: GroupHom):
    """Cokernel of ``f`` in invariant-factor form, with the projection from the target."""
    T = f.target
    P = f.matrix.hstack(T.relations())
    sf = smith_form(P)
    m = T.ngens
    d = list(sf.diagonal) + [0] * (m - len(sf.diagonal))
    torsion_rows = [i for i in range(m) if d[i] > 1]
    free_rows = [i for i in range(m) if d[i] == 0]
    group = FGAbelianGroup(len(free_rows), tuple(d[i] for i in torsion_rows))
    Ui = sf.U_inv.rows
    free = [list(Ui[i]) for i in free_rows]
    if free:
        free, _ = hermite_rows(free, m)
    rows = [tuple(r) for r in free] + [tuple(x % d[i] for x in Ui[i]) for i in torsion_rows]
    proj = GroupHom(T, group, IntMatrix.from_rows(rows, m) if rows else IntMatrix.zeros(0, m))
    return group, proj


def normalize_group(free_rank: int, orders: Sequence[int]):
    """Put ``Z^free_rank (+) (+)Z/orders`` into invariant-factor form.

    Returns the normalized group and the isomorphism from the naive
    presentation (as a matrix acting on naive coordinates).
    """
    orders = [int(a) for a in orders]
    if any(a < 1 for a in orders):
        raise ValueError(f"torsion orders {orders} must be positive")
    n = free_rank + len(orders)
    Q = IntMatrix.from_columns(
        [(0,) * free_rank + tuple(a if i == j else 0 for i in range(len(orders)))
         for j, a in enumerate(orders)], n) if orders else IntMatrix.zeros(n, 0)
    naive_free = FGAbelianGroup(n)
    rel = GroupHom(FGAbelianGroup(len(orders)), naive_free, Q)
    group, proj = cokernel(rel)
    return group, proj.matrix


# ---------------------------------------------------------------------------
# rational polyhedral cones


def cone_from_inequalities(normals: Sequence[Sequence], dim: int) -> tuple:
    """Generators of ``{x : <a, x> >= 0 for every a in normals}``.

    Returns ``(lineality, rays)``: a basis of the lineality space (each vector
    and its negative belong to the cone) and the extreme rays of the pointed
    part inside the orthogonal complement of the lineality space.  Every
    vector is primitive integral.  Exhaustive over subsets of tight
    constraints, which is fine at the sizes used here.
    """
    A = [tuple(Fraction(x) for x in a) for a in normals]
    L = [primitive(v) for v in nullspace_q(A, dim)]
    d = dim - len(L)
    rays = []
    seen = set()
    if d > 0:
        for S in itertools.combinations(range(len(A)), d - 1):
            rows = [A[i] for i in S] + [tuple(Fraction(x) for x in l) for l in L]
            ns = nullspace_q(rows, dim)
            if len(ns) != 1:
                continue
            r = ns[0]
            for sgn in (1, -1):
                cand = tuple(sgn * x for x in r)
                if all(dot(a, cand) >= 0 for a in A):
                    p = primitive(cand)
                    if p not in seen:
                        seen.add(p)
                        rays.append(p)
    return L, rays


@dataclass(frozen=True)
class RationalCone:
    """Cone generated by rational vectors; H-representation is optional."""
    ambient_dim: int
    generators: tuple
    halfspaces: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(tuple(Fraction(x) for x in g) for g in self.generators)
        if any(len(g) != self.ambient_dim for g in gens):
            raise ValueError("generator of the wrong dimension")
        object.__setattr__(self, "generators", gens)
        if self.halfspaces is not None:
            object.__setattr__(self, "halfspaces",
                               tuple(tuple(Fraction(x) for x in h) for h in self.halfspaces))

    @cached_property
    def inequalities(self) -> tuple:
        """Normals ``a`` with the cone equal to ``{x : <a, x> >= 0}``."""
        if self.halfspaces is not None:
            return self.halfspaces
        L, rays = cone_from_inequalities(self.generators, self.ambient_dim)
        return tuple(tuple(Fraction(x) for x in v)
                     for v in list(L) + [tuple(-y for y in l) for l in L] + list(rays))

    def contains(self, v: Sequence) -> bool:
        return all(dot(a, v) >= 0 for a in self.inequalities)

    def dimension(self) -> int:
        return rank_q(self.generators)

    def check_representations(self) -> bool:
        """Whether the stored H-description cuts out exactly cone(generators)."""
        if self.halfspaces is None:
            return True
        if not all(dot(a, g) >= 0 for a in self.halfspaces for g in self.generators):
            return False
        span = RationalCone(self.ambient_dim, self.generators)
        return all(span.contains(g) for g in cone_generators(self.halfspaces, self.ambient_dim))


def cone_generators(normals: Sequence[Sequence], dim: int) -> list:
    L, rays = cone_from_inequalities(normals, dim)
    return [tuple(l) for l in L] + [tuple(-x for x in l) for l in L] + [tuple(r) for r in rays]


def dual_cone(C: RationalCone) -> RationalCone:
    """``{x : <x, g> >= 0 for every generator g}`` with primitive integer generators."""
    gens = cone_generators(C.generators, C.ambient_dim)
    return RationalCone(C.ambient_dim, gens, halfspaces=C.generators)


def in_convex_hull(points: Sequence[Sequence], p: Sequence) -> bool:
    """Exact membership of ``p`` in the convex hull of ``points``."""
    if not points:
        return False
    lifted = RationalCone(len(p) + 1, [tuple(q) + (1,) for q in points])
    return lifted.contains(tuple(p) + (1,))


def polyhedron_vertices(constraints: Sequence, dim: int) -> list:
    """Vertices of ``{x : <a, x> >= b}`` for ``(a, b)`` in ``constraints``.

    Enumerates ``dim``-subsets of constraints; degenerate subsets are skipped.
    """
    cons = [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in constraints]
    verts = []
    seen = set()
    for S in itertools.combinations(range(len(cons)), dim):
        normals = [cons[i][0] for i in S]
        if rank_q(normals) < dim:
            continue
        # solve normals @ x = rhs
        cols = [tuple(normals[r][c] for r in range(dim)) for c in range(dim)]
        x = solve_q(cols, [cons[i][1] for i in S])
        if x is None or x in seen:
            continue
        if all(dot(a, x) >= b for a, b in cons):
            seen.add(x)
            verts.append(x)
    return verts
