from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nexang.angulated import AngulatedFunctorWitness
from nexang.category import AddFunctor, NatTransform, Universe, compose_functors
from nexang.complexes import split_complex
from nexang.exangulated import (
    BiadditiveE,
    Exangulated,
    ExFunctorWitness,
    Extension,
    Realization,
    act_on_extension,
    check_exangulated_axioms,
    check_exangulated_functor,
    check_realization,
    classify,
    gamma_from_theta,
    induced_from_exact,
    induced_from_sigma,
    is_n_exangle,
    split_exangulated,
    theta_from_gamma,
)
from nexang.fixtures import all_exact_structure, nakayama_category
from nexang.report import FAIL, INCONCLUSIVE, PASS, InputError

S = ("S",)


@pytest.fixture(scope="module")
def sigma_ex(stable):
    return induced_from_sigma(stable)


@pytest.fixture(scope="module")
def nak_ex():
    cat = nakayama_category(2)
    x = all_exact_structure(cat, 1, 1)
    u = Universe(cat, 1)
    ex, rep = induced_from_exact(x, u)
    return cat, u, ex, rep


# -- E = 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_split_exangulated_passes(vect, n):
    rep = check_exangulated_axioms(split_exangulated(vect, n), Universe(vect, 2))
    assert rep.verdict == PASS and rep.count(INCONCLUSIVE) == 0


def test_zero_bifunctor_is_valid(vect):
    e = BiadditiveE.zero(vect)
    assert e.validate().verdict == PASS
    assert e.dim(("S", "S"), S) == 0
    assert [d.coords.tolist() for d in e.elements(S, S)] == [[]]


# -- E = Hom(-, Sigma -)


def test_sigma_extensions_are_one_dimensional(sigma_ex):
    e = sigma_ex.E
    assert e.dims == {("S", "S"): 1}
    assert e.dim(("S", "S"), S) == 2
    assert e.validate().verdict == PASS


def test_sigma_action_is_composition(vect, sigma_ex):
    e = sigma_ex.E
    rng = np.random.default_rng(5)
    for _ in range(30):
        c, a, a2, c2 = (S * int(k) for k in rng.integers(1, 3, size=4))
        d = Extension(c, a, rng.integers(0, 2, size=e.dim(c, a)))
        x = vect.morphism(a, a2, rng.integers(0, 2, size=len(a) * len(a2)))
        z = vect.morphism(c2, c, rng.integers(0, 2, size=len(c) * len(c2)))
        got = e.to_morphism(act_on_extension(e, d, x=x, z=z))
        want = vect.compose(e.sigma(x), vect.compose(e.to_morphism(d), z))
        assert got == want
        assert e.from_morphism(e.to_morphism(d), c, a) == d


def test_act_on_extension_checks_endpoints(vect, sigma_ex):
    e = sigma_ex.E
    d = Extension(S, S, np.array([1]))
    with pytest.raises(InputError):
        act_on_extension(e, d, x=vect.identity(("S", "S")))


def test_sigma_realizations_are_exangles(vect, sigma_ex):
    for c in (S, ("S", "S")):
        for a in (S, ("S", "S")):
            for d in sigma_ex.E.elements(c, a):
                x = sigma_ex.s(d)
                assert x is not None and is_n_exangle(sigma_ex.E, x, d)


def test_sigma_exangulated_axioms(vect, sigma_ex):
    rep = check_exangulated_axioms(sigma_ex, Universe(vect, 2))
    assert rep.verdict == PASS and rep.count(INCONCLUSIVE) == 0


def test_split_sequence_does_not_realize_a_nonzero_class(vect, sigma_ex):
    d = Extension(S, S, np.array([1]))
    assert not is_n_exangle(sigma_ex.E, split_complex(vect, S, S, 1), d)
    wrong = Realization(sigma_ex.s, table={d.key(): split_complex(vect, S, S, 1)}, name="wrong")
    bad = Exangulated(vect, 1, sigma_ex.E, wrong, name="bad")
    assert check_realization(bad, Universe(vect, 1)).verdict == FAIL


# -- E_X from an exact structure


def test_nakayama_extension_dimensions(nak_ex):
    _, _, ex, _ = nak_ex
    assert ex.E.dims == {("k", "k"): 1, ("k", "P"): 0, ("P", "k"): 0, ("P", "P"): 0}
    assert ex.E.validate().verdict == PASS


def test_nakayama_nonsplit_class_is_realized_through_p(nak_ex):
    _, _, ex, _ = nak_ex
    k = ("k",)
    d = Extension(k, k, np.array([1]))
    x = ex.s(d)
    assert x.objects == (k, ("P",), k)
    assert is_n_exangle(ex.E, x, d)
    assert classify(ex, x).witness == d
    zero = ex.s(Extension(k, k, np.array([0])))
    assert classify(ex, zero).witness.is_zero()


def test_e_x_construction_needs_room_for_split_middles(nak_ex):
    cat, _, _, rep = nak_ex
    # k -> k+k -> k has a middle term outside the bound-one universe
    assert {e.check for e in rep.failures()} == {"zero-class"}
    _, full = induced_from_exact(all_exact_structure(cat, 1, 2), Universe(cat, 2))
    assert full.verdict == PASS


def test_baer_sum_matches_coordinate_addition():
    from nexang.complexes import direct_sum_sequences
    from nexang.exangulated import _pullback_sequence, _pushout_sequence

    cat = nakayama_category(2)
    u = Universe(cat, 2)
    x = all_exact_structure(cat, 1, 2)
    ex, rep = induced_from_exact(x, u)
    assert rep.check_verdict("group-structure") == PASS
    k = ("k",)
    diag = cat.assemble([k, k], [k], [[cat.identity(k)], [cat.identity(k)]])
    codiag = cat.assemble([k], [k, k], [[cat.identity(k), cat.identity(k)]])
    elems = list(ex.E.elements(k, k))
    assert len(elems) == 2
    for d1 in elems:
        for d2 in elems:
            both = direct_sum_sequences(cat, [ex.s(d1), ex.s(d2)])
            summed = _pushout_sequence(x, _pullback_sequence(x, both, diag, u), codiag, u)
            assert classify(ex, summed).witness == Extension(k, k, (d1.coords + d2.coords) % 2)


def test_nakayama_exangulated_axioms(nak_ex):
    _, u, ex, _ = nak_ex
    assert check_realization(ex, u).verdict == PASS
    assert check_exangulated_axioms(ex, u).verdict == PASS


@given(st.data())
def test_actions_are_bilinear_and_commute(data):
    from nexang.fixtures import vect_category, stable_angulation

    cat = vect_category(3)
    e = induced_from_sigma(stable_angulation(cat)).E
    size = st.integers(1, 2)
    c, a, a2, c2 = (S * data.draw(size) for _ in range(4))

    def vec(k):
        return np.array(data.draw(st.lists(st.integers(0, 2), min_size=k, max_size=k)), dtype=np.int64)

    d1, d2 = Extension(c, a, vec(e.dim(c, a))), Extension(c, a, vec(e.dim(c, a)))
    x = cat.morphism(a, a2, vec(len(a) * len(a2)))
    z = cat.morphism(c2, c, vec(len(c) * len(c2)))
    total = Extension(c, a, (d1.coords + d2.coords) % 3)
    lhs = act_on_extension(e, total, x=x)
    rhs = (act_on_extension(e, d1, x=x).coords + act_on_extension(e, d2, x=x).coords) % 3
    assert lhs.coords.tolist() == rhs.tolist()
    xz = act_on_extension(e, act_on_extension(e, d1, x=x), z=z)
    zx = act_on_extension(e, act_on_extension(e, d1, z=z), x=x)
    assert xz == zx


# -- functors


def _identity_theta(stable, vect, comp):
    idf = AddFunctor.identity(vect)
    theta = NatTransform(compose_functors(idf, stable.sigma), compose_functors(stable.sigma, idf), {"S": comp}, name="Theta")
    return AngulatedFunctorWitness(idf, theta)


def test_gamma_theta_round_trip(stable, vect, sigma_ex):
    wa = _identity_theta(stable, vect, vect.identity(S))
    gw = gamma_from_theta(wa, sigma_ex.E, sigma_ex.E)
    assert gw.gamma[("S", "S")].tolist() == [[1]]
    theta = theta_from_gamma(gw, sigma_ex.E, sigma_ex.E, stable.sigma, stable.sigma)
    assert theta.component(S) == vect.identity(S)
    assert check_exangulated_functor(gw, sigma_ex, sigma_ex, Universe(vect, 2)).verdict == PASS


def test_zero_gamma_is_not_exangulated(vect, sigma_ex):
    zero = ExFunctorWitness(AddFunctor.identity(vect), {("S", "S"): np.zeros((1, 1), dtype=np.int64)}, name="zero")
    assert zero.naturality(sigma_ex.E, sigma_ex.E).verdict == PASS
    rep = check_exangulated_functor(zero, sigma_ex, sigma_ex, Universe(vect, 2))
    assert rep.check_verdict("image-conflation") == FAIL
