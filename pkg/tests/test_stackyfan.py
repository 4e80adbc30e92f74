import itertools
import random
from fractions import Fraction

import pytest

from toric_ccc import bundled, bundled_morphism
from toric_ccc.ccc import GammaElement, ThetaComplex, equivariant_hom_betti
from toric_ccc.errors import HypothesisError
from toric_ccc.stackyfan import (StackyFan, StackyFanMorphism, is_complete, lift_fan,
                                 preimage_cover, rigidify, validate, validate_morphism)
from toric_ccc.zlat import FGAbelianGroup, GroupHom, IntMatrix, simplicial_membership

from conftest import COMPLETE, FAN_NAMES


def fan(free_rank, rays, cones, torsion=()):
    return StackyFan.from_data(FGAbelianGroup(free_rank, torsion), rays, cones)


@pytest.mark.parametrize("name", FAN_NAMES)
def test_bundled_fans_valid(name):
    assert validate(bundled(name)).ok


def test_validate_examples():
    assert validate(fan(1, [(1,), (-1,)], [[0], [1]])).ok
    assert validate(bundled("p112")).ok
    bad = validate(fan(2, [(1, 0), (2, 0)], [[0, 1]]))
    assert not bad.ok and any("simplicial" in v for v in bad.violations)


def test_validate_overlapping_cones():
    # cones {(1,0),(0,1)} and {(1,1),(-1,2)}... overlap without sharing a face
    F = fan(2, [(1, 0), (0, 1), (1, 1), (-1, 0)], [[0, 1], [2, 3]])
    rep = validate(F)
    assert any("common face" in v for v in rep.violations)


def test_validate_not_spanning_and_zero_ray():
    assert not validate(fan(2, [(1, 0)], [[0]])).ok
    rep = validate(fan(1, [(0, 1), (1, 0)], [[0], [1]], torsion=(2,)))
    assert any("zero image" in v for v in rep.violations)


@pytest.mark.parametrize("name,expected", [("p1", True), ("p112", True), ("quadrant", False),
                                           ("p2_subdivided", True), ("gerby_p1", True)])
def test_is_complete(name, expected):
    F = bundled(name)
    assert is_complete(F) is expected
    assert is_complete(rigidify(F)) is expected


def _covers_sphere(F, trials=300, seed=0):
    """Oracle: random rational directions all land in some maximal cone."""
    rng = random.Random(seed)
    for _ in range(trials):
        v = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(F.dim)]
        if not any(v):
            continue
        if not any(simplicial_membership(F.generators(c), v) is not None for c in F.maximal_cones):
            return False
    return True


@pytest.mark.parametrize("name", FAN_NAMES)
def test_completeness_matches_sampling(name):
    F = bundled(name)
    assert is_complete(F) == _covers_sphere(F)


def test_rigidify():
    G = bundled("gerby_p1")
    R = rigidify(G)
    assert R.lattice == FGAbelianGroup(1) and R.rays == ((1,), (-1,))
    P = bundled("p112")
    assert rigidify(P) == P
    fb = bundled("football")
    assert rigidify(fb).rays == ((2,), (-1,))


@pytest.mark.parametrize("name", FAN_NAMES)
def test_rigidify_idempotent_and_poset(name):
    F = bundled(name)
    R = rigidify(F)
    assert rigidify(R) == R
    assert R.cones == F.cones
    rng = random.Random(name)
    elems = [GammaElement(c, tuple(rng.randint(-2, 2) for _ in c)) for c in F.cones[:6]]
    # rigidification keeps cones and values, so small Hom spaces must agree
    for a, b in itertools.product(elems, repeat=2):
        w = (0,) * F.dim
        assert (equivariant_hom_betti(ThetaComplex.single(F, a), ThetaComplex.single(F, b), w)
                == equivariant_hom_betti(ThetaComplex.single(R, a), ThetaComplex.single(R, b), w))
    assert [F.generators(c) for c in F.cones] == [R.generators(c) for c in R.cones]


def test_lift_fan():
    L = lift_fan(bundled("p1"))
    assert L.rank == 2
    assert L.chart((0,)).generators == ((1, 0),)
    assert L.chart(()).generators == ()
    L2 = lift_fan(bundled("p112"))
    assert L2.chart((0, 1)).generators == ((1, 0, 0), (0, 1, 0))
    assert L2.chart((0, 1)).complement == (2,)


def test_diagonal_morphism():
    phi = bundled_morphism("diagonal_p1")
    rep = validate_morphism(phi)
    assert rep.ok and rep.preimage_union_of_cones and rep.injective
    assert preimage_cover(phi, (0, 2)) == [(0,)]
    assert preimage_cover(phi, ()) == [()]


def test_identity_morphism():
    F = bundled("p112")
    phi = StackyFanMorphism(F, F, GroupHom(F.lattice, F.lattice, IntMatrix.identity(2)))
    rep = validate_morphism(phi)
    assert rep.pullback_ready
    for c in F.cones:
        assert preimage_cover(phi, c) == [c]


def test_zero_morphism_not_injective():
    P1 = bundled("p1")
    phi = StackyFanMorphism(P1, P1, GroupHom(P1.lattice, P1.lattice, IntMatrix.from_rows([[0]])))
    rep = validate_morphism(phi)
    assert rep.ok and not rep.injective and not rep.pullback_ready


def test_coarsening_breaks_preimage_hypothesis():
    # identity from P^2 to its subdivision: the preimage of (0,3) cuts a cone in half
    P2, S = bundled("p2"), bundled("p2_subdivided")
    phi = StackyFanMorphism(P2, S, GroupHom(P2.lattice, S.lattice, IntMatrix.identity(2)))
    rep = validate_morphism(phi)
    assert not rep.ok
    assert not rep.preimage_union_of_cones
    with pytest.raises(HypothesisError):
        preimage_cover(phi, (0, 3))


def test_torsion_subgroup_condition():
    # Z -> Z + Z/2 sending 1 to (1, 1): rays must land in N_sigma of the gerby fan
    P1, G = bundled("p1"), bundled("gerby_p1")
    ok = StackyFanMorphism(P1, G, GroupHom(P1.lattice, G.lattice, IntMatrix.from_rows([[1], [1]])))
    assert not validate_morphism(ok).ok  # f(-1) = (-1, 1) is not a multiple of (-1, 0)
    bad = StackyFanMorphism(P1, G, GroupHom(P1.lattice, G.lattice, IntMatrix.from_rows([[1], [0]])))
    assert not validate_morphism(bad).ok


def test_refinement_cover_union():
    phi = bundled_morphism("refine_p2")
    cover = preimage_cover(phi, (0, 1))
    assert cover == [(0, 3), (1, 3)]
    # every sampled point of the target cone lies in one of the cover cones
    rng = random.Random(3)
    for _ in range(200):
        lam = [Fraction(rng.randint(0, 20), rng.randint(1, 5)) for _ in range(2)]
        v = [lam[0], lam[1]]
        assert any(phi.source.membership(c, v) is not None for c in cover)
