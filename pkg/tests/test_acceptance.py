"""Acceptance criteria 1-10.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script; the
terminal summary prints one PASS/FAIL line per criterion.
"""
import itertools
import random
import re
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from toric_ccc import bundled, bundled_morphism
from toric_ccc.ccc import (GammaElement, ThetaComplex, convolve, hom_complex_betti, kappa_divisor,
                           leq, pullback)
from toric_ccc.gale import canonical_lift, gale_dual, generic_stabilizer
from toric_ccc.linebundle import (count_weighted_monomials, from_divisor, is_q_ample,
                                  pullback_twisted, scale, section_weights, taylor_resolution)
from toric_ccc.microlocal import lambda_contains, lambda_svg, ss_in_lambda
from toric_ccc.stackyfan import StackyFan, rigidify
from toric_ccc.zlat import FGAbelianGroup, IntMatrix, kernel_basis, solve_q

from conftest import COMPLETE, FAN_NAMES, PLANAR

SECTION_FANS = ["p1", "p2", "p1xp1", "p112", "football", "gerby_p1"]
criterion = pytest.mark.criterion


def e0(F, k):
    return (k,) + (0,) * (F.nrays - 1)


# ---------------------------------------------------------------------------
# inputs, shared with the singular-support sweep of criterion 8(c)

def c1_pairs():
    return [(k, l) for k in range(4) for l in range(4)]


def c2_divisors(name, count=24):
    F = bundled(name)
    rng = random.Random(f"c2-{name}")
    return [tuple(rng.randint(-2, 3) for _ in range(F.nrays)) for _ in range(count)]


def c56_pairs(name, tag, count=10):
    F = bundled(name)
    rng = random.Random(f"{tag}-{name}")
    return [(tuple(rng.randint(-1, 2) for _ in range(F.nrays)),
             tuple(rng.randint(-1, 2) for _ in range(F.nrays))) for _ in range(count)]


PROBES = (-1, 0, 1, 2)


def probe_betti(F, E):
    return [hom_complex_betti(kappa_divisor(F, e0(F, k)), E) for k in PROBES]


def refinement_divisors():
    return [(0, 0, 0), (1, 0, 0), (0, 2, 1), (1, 1, 1), (-1, 2, 0)]


# ---------------------------------------------------------------------------
# 1

@criterion(1, "P(1,1,2) exceptional collection")
def test_c1_exceptional_collection():
    F = bundled("p112")
    t0 = time.perf_counter()
    for k, l in c1_pairs():
        got = hom_complex_betti(kappa_divisor(F, e0(F, k)), kappa_divisor(F, e0(F, l)))
        expected = {0: count_weighted_monomials((1, 1, 2), l - k)} if l >= k else {}
        assert got == expected, (k, l)
    assert [count_weighted_monomials((1, 1, 2), d) for d in range(4)] == [1, 2, 4, 6]
    assert time.perf_counter() - t0 < 10


# ---------------------------------------------------------------------------
# 2

_c2_clock = {"spent": 0.0}


@criterion(2, "section-count oracle")
@pytest.mark.parametrize("name", SECTION_FANS)
def test_c2_section_counts(name):
    F = bundled(name)
    t0 = time.perf_counter()
    O = kappa_divisor(F, (0,) * F.nrays)
    divisors = c2_divisors(name)
    assert len(divisors) >= 20
    for c in divisors:
        u = from_divisor(F, c)
        b = hom_complex_betti(O, kappa_divisor(F, c))
        assert b.get(0, 0) == len(section_weights(F, u)), c
        if is_q_ample(F, u):
            assert all(v == 0 for k, v in b.items() if k != 0), c
    _c2_clock["spent"] += time.perf_counter() - t0
    assert _c2_clock["spent"] < 120


# ---------------------------------------------------------------------------
# 3

def _up_to_sign(v):
    return min(tuple(v), tuple(-x for x in v))


@criterion(3, "Gale duality")
@pytest.mark.parametrize("name,weights", [("p2", (1, 1, 1)), ("p112", (1, 2, 1)), ("football", (1, 2))])
def test_c3_weights(name, weights):
    F = bundled(name)
    g = gale_dual(F)
    (oracle,) = kernel_basis(IntMatrix.from_columns(F.bar_rays, F.dim))
    assert g.dg == FGAbelianGroup(1)
    (w,) = g.weights
    assert _up_to_sign(w) == _up_to_sign(oracle) == _up_to_sign(weights)


@criterion(3, "Gale duality")
def test_c3_gerby():
    F = bundled("gerby_p1")
    assert gale_dual(F).dg == FGAbelianGroup(1)
    assert generic_stabilizer(F) == [2]


def _torsion_fan():
    return StackyFan.from_data(FGAbelianGroup(2, (2, 4)),
                               [(1, 0, 1, 0), (0, 1, 0, 1), (-1, -1, 1, 3)], [[0, 1], [1, 2], [2, 0]])


@criterion(3, "Gale duality")
def test_c3_random_lifts():
    rng = random.Random(3)
    passed = 0
    fans = [bundled("gerby_p1"), _torsion_fan()]
    for t in range(100):
        F = fans[t % 2]
        B, Q = canonical_lift(F), F.lattice.relations()
        H = IntMatrix.from_rows([[rng.randint(-6, 6) for _ in range(F.nrays)]
                                 for _ in range(len(F.lattice.invariants))], F.nrays)
        lift = IntMatrix.from_rows([[a + b for a, b in zip(r, s)] for r, s in zip(B.rows, (Q @ H).rows)],
                                   F.nrays)
        g1, g2 = gale_dual(F), gale_dual(F, lift=lift)
        passed += g1.dg == g2.dg and g1.weights == g2.weights
    assert passed == 100


# ---------------------------------------------------------------------------
# 4

GRID = np.arange(-32, 33) / 4.0  # step 1/4 on [-8, 8]; quarters are exact in binary


class WedgeOracle:
    """Grid sampling of ``wedge(a) \\ wedge(b)`` on the [-8, 8]^2 box.

    Both wedges are first translated by the same integer character, chosen
    near the midpoint of their apexes, so the box sees both corners.
    Containment is unchanged by a common translation.
    """

    def __init__(self, F):
        xs, ys = np.meshgrid(GRID, GRID, indexing="ij")
        self.F = F
        self.pts = np.stack([xs.ravel(), ys.ravel()], axis=1)

    def mask(self, a, shift):
        m = np.ones(len(self.pts), dtype=bool)
        for j, v in zip(a.cone, a.values):
            b = self.F.bar_rays[j]
            m &= self.pts @ np.array(b, dtype=float) >= v - sum(s * t for s, t in zip(shift, b))
        return m

    def apex(self, a):
        """Nearest point to the origin where ``a``'s defining inequalities are tight."""
        gens = self.F.generators(a.cone)
        if not gens:
            return None
        if len(gens) == 1:
            (b,) = gens
            return tuple(Fraction(a.values[0] * t, b[0] ** 2 + b[1] ** 2) for t in b)
        return solve_q([tuple(g[k] for g in gens) for k in range(2)], a.values)

    def shift_for(self, a, b):
        pts = [p for p in (self.apex(a), self.apex(b)) if p is not None]
        if not pts:
            return (0, 0)
        return tuple(round(sum(p[k] for p in pts) / len(pts)) for k in range(2))

    def contained(self, a, b):
        shift = self.shift_for(a, b)
        return not np.any(self.mask(a, shift) & ~self.mask(b, shift))


def _random_element(F, rng):
    c = rng.choice(F.cones)
    return GammaElement(c, tuple(rng.randint(-3, 3) for _ in c))


@criterion(4, "poset laws and containment oracle")
@pytest.mark.parametrize("name", PLANAR)
def test_c4_poset(name):
    F = bundled(name)
    rng = random.Random(f"c4-{name}")
    oracle = WedgeOracle(F)
    disagreements = 0
    for _ in range(10_000):
        a, b, c = (_random_element(F, rng) for _ in range(3))
        # skew toward comparable pairs: half the time b is a face restriction of a, loosened
        if rng.random() < 0.5:
            face = tuple(j for j in a.cone if rng.random() < 0.5)
            b = GammaElement(face, tuple(a.value_map()[j] - rng.randint(-1, 2) for j in face))
        assert leq(a, a)
        ab, ba = leq(a, b), leq(b, a)
        if ab and ba:
            assert a == b
        if ab and leq(b, c):
            assert leq(a, c)
        disagreements += ab != oracle.contained(a, b)
    assert disagreements == 0


# ---------------------------------------------------------------------------
# 5

@criterion(5, "monoidality")
@pytest.mark.parametrize("name", COMPLETE)
def test_c5_monoidality(name):
    F = bundled(name)
    for c1, c2 in c56_pairs(name, "c5"):
        conv = convolve(kappa_divisor(F, c1), kappa_divisor(F, c2))
        total = kappa_divisor(F, tuple(a + b for a, b in zip(c1, c2)))
        assert probe_betti(F, conv) == probe_betti(F, total), (c1, c2)


# ---------------------------------------------------------------------------
# 6

@criterion(6, "duality")
@pytest.mark.parametrize("name", COMPLETE)
def test_c6_duality(name):
    F = bundled(name)
    for c1, c2 in c56_pairs(name, "c6"):
        lhs = hom_complex_betti(kappa_divisor(F, c1), kappa_divisor(F, c2))
        rhs = hom_complex_betti(kappa_divisor(F, tuple(-x for x in c2)),
                                kappa_divisor(F, tuple(-x for x in c1)))
        assert lhs == rhs, (c1, c2)


# ---------------------------------------------------------------------------
# 7

@criterion(7, "functoriality")
@pytest.mark.parametrize("a,b", list(itertools.product(range(4), repeat=2)))
def test_c7_diagonal(a, b):
    phi = bundled_morphism("diagonal_p1")
    P1 = phi.source
    pulled = pullback(phi, kappa_divisor(phi.target, (a, 0, b, 0)))
    assert probe_betti(P1, pulled) == probe_betti(P1, kappa_divisor(P1, (a + b, 0)))
    assert probe_betti(P1, pulled)[1] == {0: a + b + 1}


@criterion(7, "functoriality")
@pytest.mark.parametrize("c", refinement_divisors(), ids=lambda c: ",".join(map(str, c)))
def test_c7_refinement(c):
    phi = bundled_morphism("refine_p2")
    F1, F2 = phi.source, phi.target
    u1 = pullback_twisted(phi, from_divisor(F2, c))
    # ray (1,1) sits in the cone of rays 0 and 1, so its coefficient is c0 + c1
    assert u1 == from_divisor(F1, (c[0], c[1], c[2], c[0] + c[1]))
    pulled = pullback(phi, kappa_divisor(F2, c))
    assert probe_betti(F1, pulled) == probe_betti(F1, kappa_divisor(F1, (c[0], c[1], c[2], c[0] + c[1])))


# ---------------------------------------------------------------------------
# 8

def _rand_q(rng):
    return Fraction(rng.randint(-40, 40), rng.choice([1, 2, 3, 4, 6]))


def _lambda_samples(F, rng, n=1000):
    for _ in range(n):
        x = tuple(_rand_q(rng) for _ in range(F.dim))
        # half of the covectors point along a (negated) ray, where membership is non-trivial
        if rng.random() < 0.5:
            j = rng.randrange(F.nrays)
            y = tuple(-rng.randint(1, 4) * t for t in F.bar_rays[j])
        else:
            y = tuple(rng.randint(-3, 3) for _ in range(F.dim))
        yield x, y


@criterion(8, "microlocal")
@pytest.mark.parametrize("name", FAN_NAMES)
def test_c8a_lambda_invariances(name):
    F = bundled(name)
    rng = random.Random(f"c8a-{name}")
    hits = 0
    for x, y in _lambda_samples(F, rng):
        m = tuple(rng.randint(-9, 9) for _ in range(F.dim))
        lam = Fraction(rng.randint(1, 12), rng.randint(1, 12))
        base = lambda_contains(F, x, y)
        hits += base
        assert base == lambda_contains(F, tuple(a + b for a, b in zip(x, m)), y)
        assert base == lambda_contains(F, x, tuple(lam * t for t in y))
    assert 0 < hits < 1000


@criterion(8, "microlocal")
@pytest.mark.parametrize("name", FAN_NAMES)
def test_c8b_rigidification(name):
    F = bundled(name)
    R = rigidify(F)
    rng = random.Random(f"c8a-{name}")
    for x, y in _lambda_samples(F, rng):
        assert lambda_contains(F, x, y) == lambda_contains(R, x, y)


def _exercised_complexes():
    """Every complex built by criteria 1-7, regenerated from the same inputs."""
    F = bundled("p112")
    for k, l in c1_pairs():
        yield F, kappa_divisor(F, e0(F, k))
        yield F, kappa_divisor(F, e0(F, l))
    for name in SECTION_FANS:
        F = bundled(name)
        for c in c2_divisors(name):
            yield F, kappa_divisor(F, c)
    for name in COMPLETE:
        F = bundled(name)
        for k in PROBES:
            yield F, kappa_divisor(F, e0(F, k))
        for c1, c2 in c56_pairs(name, "c5"):
            yield F, convolve(kappa_divisor(F, c1), kappa_divisor(F, c2))
        for c1, c2 in c56_pairs(name, "c6"):
            for c in (c1, c2):
                yield F, kappa_divisor(F, c)
                yield F, kappa_divisor(F, tuple(-x for x in c))
    phi = bundled_morphism("diagonal_p1")
    for a, b in itertools.product(range(4), repeat=2):
        yield phi.source, pullback(phi, kappa_divisor(phi.target, (a, 0, b, 0)))
    phi = bundled_morphism("refine_p2")
    for c in refinement_divisors():
        yield phi.source, pullback(phi, kappa_divisor(phi.target, c))


@criterion(8, "microlocal")
def test_c8c_singular_support_in_lambda():
    seen = 0
    for F, E in _exercised_complexes():
        assert isinstance(E, ThetaComplex)
        for a in E.objects():
            assert ss_in_lambda(F, a), a
            seen += 1
    assert seen > 1000


def _ray_paths(svg, j):
    block = svg.split(f'id="ray-{j}"', 1)[1].split("</g>", 1)[0]
    return re.findall(r"<path ", block)


@criterion(8, "microlocal")
def test_c8d_svg_line_family_doubling():
    F = bundled("p112")
    j = F.bar_rays.index((-1, -2))
    stack = _ray_paths(lambda_svg(F, (0, 0, 1, 1)), j)
    coarse = _ray_paths(lambda_svg(F, (0, 0, 1, 1), coarse=True), j)
    assert len(coarse) > 0
    assert len(stack) == 2 * len(coarse)


def test_svg_apex_lattice_doubling():
    # where the stack and coarse pictures do differ: the index-2 cone {(1,0),(-1,-2)}
    F = bundled("p112")
    svg_s, svg_c = lambda_svg(F), lambda_svg(F, coarse=True)
    count = lambda svg: len(re.findall(r"<circle ", svg.split('id="cone-0-2"', 1)[1].split("</g>", 1)[0]))
    assert count(svg_s) == 2 * count(svg_c) == 2


# ---------------------------------------------------------------------------
# 9

@criterion(9, "Taylor/Koszul resolutions")
@pytest.mark.parametrize("ideal", ["z0,z1", "z0^2,z0*z1"])
def test_c9_resolutions(ideal):
    A2 = bundled("quadrant")
    T = taylor_resolution(A2, ideal)
    assert T.d_squared_is_zero()
    gens = T.generators
    for w in itertools.product(range(7), repeat=2):
        h = T.weight_cohomology(w)
        quotient = 0 if any(all(g <= x for g, x in zip(m, w)) for m in gens) else 1
        assert {k: v for k, v in h.items() if v} == ({0: 1} if quotient else {}), w


# ---------------------------------------------------------------------------
# 10

@criterion(10, "Q-ampleness")
def test_c10_p112_ampleness():
    F = bundled("p112")
    for d in range(-3, 4):
        assert bool(is_q_ample(F, from_divisor(F, e0(F, d)))) == (d >= 1), d


@criterion(10, "Q-ampleness")
def test_c10_scaling():
    F = bundled("p112")
    for c in itertools.product(range(-2, 3), repeat=3):
        u = from_divisor(F, c)
        base = bool(is_q_ample(F, u))
        for n in range(1, 6):
            assert bool(is_q_ample(F, scale(u, n))) == base, (c, n)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
