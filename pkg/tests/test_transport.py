from __future__ import annotations

import numpy as np
import pytest

from nexang.angulated import contains_angle, identity_angle, image_angle
from nexang.category import AddFunctor, EquivalenceWitness, NatTransform, Universe, compose_functors, functors_equal_on
from nexang.complexes import SigmaSequence, find_sequence_isomorphism
from nexang.exangulated import Extension, induced_from_sigma, is_n_exangle, split_exangulated
from nexang.fixtures import all_exact_structure
from nexang.report import FAIL, INCONCLUSIVE, PASS
from nexang.transport import (
    transport_abelian,
    transport_angulation,
    transport_exact_structure,
    transport_exangulated_structure,
    transport_sigma,
    transport_to_skeleton,
)


def identity_witness(cat) -> EquivalenceWitness:
    idf = AddFunctor.identity(cat)
    one = NatTransform.identity(compose_functors(idf, idf))
    return EquivalenceWitness(idf, idf, one, one)


def _clean(res):
    return res.verdict == PASS and res.report.count(INCONCLUSIVE) == 0


def test_identity_transport_keeps_the_angles(stable, vect):
    res = transport_angulation(stable, identity_witness(vect), Universe(vect, 2))
    assert _clean(res)
    for g, h in zip(stable.representatives(), res.structure.generators):
        assert h.key() == g.key()


def test_transported_sigma_on_the_doubled_category(stable, doubling, doubled):
    ss2, theta = transport_sigma(stable.ss, doubling)
    assert ss2.validate(Universe(doubled, 2)).verdict == PASS
    for a in doubled.objects:
        assert ss2.sigma.obj((a,)) == (a,) or len(ss2.sigma.obj((a,))) == 1
    assert set(theta.components) == {"S"}


def test_angulation_transport_along_doubling(stable, doubling, doubled):
    res = transport_angulation(stable, doubling, Universe(doubled, 2))
    assert _clean(res)
    # every image of a source angle is an angle of the target
    for g in stable.generators:
        img = image_angle(res.functor_witness, res.structure.sigma, g)
        assert contains_angle(res.structure, img).status is True


def test_transport_then_back_recovers_the_angles(stable, doubling, doubled, vect):
    there = transport_angulation(stable, doubling, Universe(doubled, 2)).structure
    back_w = EquivalenceWitness(doubling.G, doubling.F, doubling.counit.inverse(), doubling.unit.inverse())
    back = transport_angulation(there, back_w, Universe(vect, 2))
    assert _clean(back)
    assert functors_equal_on(back.structure.sigma, stable.sigma, Universe(vect, 2)) == []
    for g in back.structure.generators:
        assert contains_angle(stable, SigmaSequence(g.objects, g.diffs, g.last, stable.sigma)).status is True


def test_exact_structure_transport(vect, doubling, doubled):
    x = all_exact_structure(vect, 1, 2)
    res = transport_exact_structure(x, doubling, Universe(doubled, 2))
    assert _clean(res)
    assert len(res.structure.generators) == len(x.generators)


def test_abelian_transport_agrees(doubling, doubled):
    res = transport_abelian(1, doubling, Universe(doubled, 2))
    assert _clean(res) and res.report.has_check("same-verdict")


@pytest.mark.parametrize("n", [1, 2])
def test_split_exangulated_transport(vect, doubling, doubled, n):
    res = transport_exangulated_structure(split_exangulated(vect, n), doubling, Universe(doubled, 2))
    assert _clean(res)


def test_sigma_exangulated_transport(stable, doubling, doubled):
    res = transport_exangulated_structure(induced_from_sigma(stable), doubling, Universe(doubled, 2))
    assert _clean(res)
    ex2 = res.structure
    assert ex2.E.dims == {(c, a): 1 for c in doubled.objects for a in doubled.objects}
    d = Extension(("S'",), ("S",), np.array([1]))
    assert is_n_exangle(ex2.E, ex2.s(d), d)


def test_skeleton_transport_has_a_strict_inverse(stable, doubling, doubled):
    t2 = transport_angulation(stable, doubling, Universe(doubled, 2)).structure
    res = transport_to_skeleton(t2, Universe(doubled, 2))
    assert _clean(res)
    assert res.report.check_verdict("exact-inverse") == PASS
    skel = res.extras["skeleton"]
    assert skel.objects == ["S"]
    inv, sig = res.extras["sigma_inverse"], res.structure.sigma
    for a in skel.objects:
        assert inv.obj(sig.obj((a,))) == (a,)


def test_broken_witness_stops_transport(stable, doubling, doubled):
    bad_unit = NatTransform(doubling.unit.source, doubling.unit.target, {a: doubled.zero((a,), ("S",)) for a in doubled.objects}, name="unit")
    w = EquivalenceWitness(doubling.F, doubling.G, bad_unit, doubling.counit)
    res = transport_angulation(stable, w, Universe(doubled, 2))
    assert res.structure is None and res.verdict == FAIL


def test_image_of_identity_angle_is_isomorphic_to_identity_angle(stable, doubling, doubled):
    res = transport_angulation(stable, doubling, Universe(doubled, 2))
    t2 = res.structure
    for a in doubled.objects:
        src = identity_angle(stable.cat, stable.sigma, doubling.G.obj((a,)), 1)
        img = image_angle(res.functor_witness, t2.sigma, src)
        tgt = identity_angle(doubled, t2.sigma, img.objects[0], 1)
        assert find_sequence_isomorphism(doubled, img, tgt).status is True
