from __future__ import annotations

import pytest

from nexang.angulated import (
    Angulation,
    AngulatedFunctorWitness,
    SigmaStructure,
    check_angulated_functor,
    check_angulation_axioms,
    contains_angle,
    identity_angle,
    image_angle,
    is_exact_sigma_sequence,
    right_rotation,
)
from nexang.category import AddFunctor, NatTransform, Universe, compose_functors
from nexang.complexes import SigmaSequence, find_sequence_isomorphism, left_rotation
from nexang.report import FAIL, INCONCLUSIVE, PASS, InputError

S = ("S",)


def test_stable_generators_are_exact(stable, vect):
    for g in stable.generators:
        assert is_exact_sigma_sequence(vect, g)


def test_identity_angle_is_a_member(stable, vect):
    assert contains_angle(stable, identity_angle(vect, stable.sigma, S, 1)).status is True
    assert contains_angle(stable, identity_angle(vect, stable.sigma, ("S", "S"), 1)).status is True


def test_zero_composition_violation_is_rejected(stable, vect):
    one = vect.identity(S)
    s = SigmaSequence((S, S, S), (one, one), one, stable.sigma)
    assert not is_exact_sigma_sequence(vect, s)
    assert contains_angle(stable, s).status is False


def test_rotations_stay_inside(stable, vect):
    for g in stable.generators:
        assert contains_angle(stable, left_rotation(vect, g)).status is True
        assert contains_angle(stable, right_rotation(stable.ss, g)).status is True


def test_right_rotation_undoes_left_rotation(stable, vect):
    for g in stable.generators:
        back = left_rotation(vect, right_rotation(stable.ss, g))
        assert find_sequence_isomorphism(vect, back, g).status is True


def test_removing_the_identity_angle_breaks_f1b(stable):
    broken = Angulation(stable.ss, 1, stable.generators[1:], closure="none", name="broken")
    rep = check_angulation_axioms(broken, Universe(stable.cat, 2))
    assert rep.check_verdict("F1b") == FAIL


def test_identity_angles_alone_break_f1c(stable, vect):
    only = Angulation(stable.ss, 1, [identity_angle(vect, stable.sigma, S, 1)], name="identity-only")
    rep = check_angulation_axioms(only, Universe(vect, 2))
    assert rep.check_verdict("F1c") == FAIL
    assert rep.check_verdict("F1b") == PASS


def test_axioms_at_bound_one_have_no_inconclusive(stable, vect):
    rep = check_angulation_axioms(stable, Universe(vect, 1))
    assert rep.verdict == PASS and rep.count(INCONCLUSIVE) == 0


def test_strict_sigma_checks(vect):
    ss = SigmaStructure.identity(vect)
    rep = ss.validate(Universe(vect, 1))
    assert rep.verdict == PASS and rep.has_check("object-bijection")


def test_generator_validation(stable, vect):
    with pytest.raises(InputError):
        Angulation(stable.ss, 2, stable.generators)
    with pytest.raises(InputError):
        Angulation(stable.ss, 1, stable.generators, closure="bogus")


def _theta(fun, t_src, t_dst, comps):
    return NatTransform(compose_functors(fun, t_src.sigma), compose_functors(t_dst.sigma, fun), comps, name="Theta")


def test_identity_functor_is_angulated(stable, vect):
    idf = AddFunctor.identity(vect)
    w = AngulatedFunctorWitness(idf, _theta(idf, stable, stable, {"S": vect.identity(S)}))
    assert check_angulated_functor(w, stable, stable, Universe(vect, 2)).verdict == PASS
    img = image_angle(w, stable.sigma, stable.generators[1])
    assert img.key() == stable.generators[1].key()


def test_zero_theta_is_rejected(stable, vect):
    idf = AddFunctor.identity(vect)
    w = AngulatedFunctorWitness(idf, _theta(idf, stable, stable, {"S": vect.zero(S, S)}))
    rep = check_angulated_functor(w, stable, stable, Universe(vect, 2))
    assert rep.check_verdict("theta-invertible") == FAIL
