from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nexang.category import (
    AddFunctor,
    BaseCategory,
    EquivalenceWitness,
    Universe,
    compose_functors,
    compute_skeleton,
    find_isomorphisms,
    functors_equal_on,
    search_idempotent_splitting,
    skeletal_inverse,
    validate_base_category,
    validate_equivalence,
)
from nexang.fixtures import idempotent_category
from nexang.report import FAIL, PASS, InputError

S = ("S",)
SS = ("S", "S")


def test_single_composition(vect):
    one = vect.identity(S)
    assert vect.compose(one, one) == one
    assert one.vec.tolist() == [1]


def test_row_times_column_vanishes_over_f2(vect):
    col = vect.morphism(S, SS, [1, 1])
    row = vect.morphism(SS, S, [1, 1])
    assert vect.compose(row, col).is_zero()


def test_no_isomorphism_between_s_and_s_plus_s(vect):
    assert find_isomorphisms(vect, S, SS) == []
    assert len(find_isomorphisms(vect, SS, SS)) == 6  # |GL_2(F_2)|


@pytest.mark.parametrize("name", ["vect", "doubled", "nakayama", "idempotent"])
def test_fixture_categories_are_valid(name):
    from nexang import fixtures

    cat = {"vect": fixtures.vect_category, "doubled": fixtures.doubled_category, "nakayama": fixtures.nakayama_category, "idempotent": idempotent_category}[name]()
    assert validate_base_category(cat).verdict == PASS


def test_broken_associativity_is_reported():
    # End(E) spanned by 1, e with e*e = 0 and e*1 = e, but 1*e = 0: not associative/unital
    comp = np.zeros((2, 2, 2), dtype=np.int64)
    comp[0, 0, 0] = 1
    comp[1, 1, 0] = 1
    bad = BaseCategory(2, ["E"], {("E", "E"): 2}, {("E", "E", "E"): comp}, {"E": [1, 0]}, name="bad")
    rep = validate_base_category(bad)
    assert rep.verdict == FAIL
    assert rep.check_verdict("unit") == FAIL


def test_constructor_rejects_bad_shapes():
    with pytest.raises(InputError):
        BaseCategory(2, ["A"], {("A", "A"): 1}, {("A", "A", "A"): np.zeros((1, 1, 2))}, {"A": [1]})
    with pytest.raises(InputError):
        BaseCategory(2, ["A"], {("A", "A"): 1}, {("A", "A", "A"): np.ones((1, 1, 1))}, {})


def test_idempotent_that_does_not_split():
    cat = idempotent_category()
    e = cat.morphism(("E",), ("E",), [0, 1])
    assert cat.compose(e, e) == e
    assert search_idempotent_splitting(cat, e, Universe(cat, 2)) is None


def test_split_idempotent_in_vect(vect):
    e = vect.morphism(SS, SS, [1, 0, 0, 0])
    assert vect.compose(e, e) == e
    y, r, s = search_idempotent_splitting(vect, e, Universe(vect, 2))
    assert y == S and vect.compose(s, r) == e and vect.compose(r, s) == vect.identity(S)


def test_universe_enumeration(nakayama):
    u = Universe(nakayama, 2)
    assert len(u) == 6  # 0, k, P, kk, kP, PP
    with pytest.raises(InputError):
        Universe(nakayama, -1)


def test_doubling_witness_is_an_equivalence(doubling):
    assert validate_equivalence(doubling, Universe(doubling.source, 2)).verdict == PASS


def test_corrupted_unit_fails(doubling, doubled):
    from nexang.category import NatTransform

    bad_unit = NatTransform(doubling.unit.source, doubling.unit.target, {a: doubled.zero((a,), ("S",)) for a in doubled.objects}, name="unit")
    w = EquivalenceWitness(doubling.F, doubling.G, bad_unit, doubling.counit)
    assert validate_equivalence(w).verdict == FAIL


def test_skeleton_of_doubled_collapses_the_pair(doubled):
    skel, w = compute_skeleton(doubled)
    assert skel.objects == ["S"]
    assert w.F.on_objects == {"S": ("S",), "S'": ("S",)}
    assert validate_equivalence(w, Universe(doubled, 2)).verdict == PASS


def test_skeletal_inverse_of_identity(vect):
    inv, rep = skeletal_inverse(AddFunctor.identity(vect))
    assert rep.verdict == PASS
    assert functors_equal_on(compose_functors(inv, AddFunctor.identity(vect)), AddFunctor.identity(vect), Universe(vect, 2)) == []


@given(st.data())
def test_composition_is_associative_and_bilinear(data):
    from nexang.fixtures import nakayama_category

    cat = nakayama_category()
    u = Universe(cat, 2)
    w, x, y, z = (data.draw(st.sampled_from(u.objects)) for _ in range(4))

    def rnd(a, b):
        d = cat.dim(a, b)
        return cat.morphism(a, b, data.draw(st.lists(st.integers(0, 1), min_size=d, max_size=d)))

    f, g, h = rnd(w, x), rnd(x, y), rnd(y, z)
    assert cat.compose(h, cat.compose(g, f)) == cat.compose(cat.compose(h, g), f)
    g2 = rnd(x, y)
    assert cat.compose(cat.add(g, g2), f) == cat.add(cat.compose(g, f), cat.compose(g2, f))
    assert cat.compose(cat.identity(x), f) == f == cat.compose(f, cat.identity(w))


@given(st.data())
def test_functor_preserves_composition(data):
    from nexang.fixtures import doubled_category, doubling_witness, vect_category

    v, d = vect_category(), doubled_category()
    w = doubling_witness(v, d)
    u = Universe(d, 2)
    x, y, z = (data.draw(st.sampled_from(u.objects)) for _ in range(3))

    def rnd(a, b):
        n = d.dim(a, b)
        return d.morphism(a, b, data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))

    f, g = rnd(x, y), rnd(y, z)
    assert w.G(d.compose(g, f)) == v.compose(w.G(g), w.G(f))
