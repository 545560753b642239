from __future__ import annotations

import numpy as np
import pytest

from nexang.category import AddFunctor, AddMorphism, Universe
from nexang.complexes import ComplexN, split_complex
from nexang.fixtures import all_exact_structure, idempotent_category, split_exact_structure
from nexang.homalg import (
    ExactStructure,
    check_n_abelian_axioms,
    check_n_exact_axioms,
    check_n_exact_functor,
    enumerate_n_exact_sequences,
    is_n_cokernel,
    is_n_exact_sequence,
    is_n_kernel,
    search_n_cokernels,
)
from nexang.linalg import kernel_basis
from nexang.report import FAIL, PASS

S = ("S",)


def test_kernel_inclusions_are_1_kernels(vect):
    for f in Universe(vect, 2).morphisms():
        a, b = len(f.source), len(f.target)
        if a == 0:
            continue
        k = kernel_basis(f.vec.reshape(b, a), 2)
        incl = AddMorphism(S * k.shape[1], f.source, k.reshape(-1))
        assert is_n_kernel(vect, [incl], f)


def test_zero_map_is_not_a_kernel(vect):
    z = vect.zero(S, S)
    assert not is_n_kernel(vect, [z], z)
    assert is_n_kernel(vect, [vect.identity(S)], z)
    assert is_n_cokernel(vect, z, [vect.identity(S)])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_split_complexes_are_n_exact(vect, n):
    assert is_n_exact_sequence(vect, split_complex(vect, S, ("S", "S"), n))


def test_non_complex_is_not_exact(vect):
    one = vect.identity(S)
    assert not is_n_exact_sequence(vect, ComplexN((S, S, S), (one, one)))


def test_enumerated_sequences_are_exact(vect):
    seqs = enumerate_n_exact_sequences(vect, 1, Universe(vect, 2))
    assert seqs and all(is_n_exact_sequence(vect, s) for s in seqs)
    shapes = {tuple(len(o) for o in s.objects) for s in seqs}
    assert (1, 2, 1) in shapes and (0, 1, 1) in shapes


def test_n_cokernel_search_finds_exact_completions(vect):
    incl = vect.morphism(S, ("S", "S"), [1, 0])
    found = list(search_n_cokernels(vect, incl, 2, Universe(vect, 2)))
    assert found
    for chain in found:
        assert is_n_cokernel(vect, incl, chain)


def test_non_exact_generator_is_reported(vect):
    one = vect.identity(S)
    bad = ExactStructure(vect, 1, [ComplexN((S, S, S), (one, one))], name="bad")
    assert bad.validate().verdict == FAIL


@pytest.mark.parametrize("builder", [split_exact_structure, all_exact_structure])
def test_nakayama_structures_at_bound_one(nakayama, builder):
    x = builder(nakayama, 1) if builder is split_exact_structure else builder(nakayama, 1, 1)
    rep = check_n_exact_axioms(x, Universe(nakayama, 1))
    assert rep.verdict == PASS, "\n".join(rep.summary_lines())


def test_nonsplit_idempotent_breaks_n_a0():
    cat = idempotent_category()
    rep = check_n_abelian_axioms(cat, Universe(cat, 1), 1, fail_fast=True)
    assert rep.check_verdict("n-A0") == FAIL


def test_exact_functor_checks(nakayama):
    idf = AddFunctor.identity(nakayama)
    full = all_exact_structure(nakayama, 1, 1)
    split = split_exact_structure(nakayama, 1)
    u = Universe(nakayama, 1)
    assert check_n_exact_functor(idf, full, full, u).verdict == PASS
    assert check_n_exact_functor(idf, split, full, u).verdict == PASS
    # 0 -> k -> P -> k -> 0 does not split
    assert check_n_exact_functor(idf, full, split, u).verdict == FAIL


def test_exact_structure_rejects_wrong_length(vect):
    from nexang.report import InputError

    with pytest.raises(InputError):
        ExactStructure(vect, 2, [split_complex(vect, S, S, 1)])
    with pytest.raises(InputError):
        ExactStructure(vect, 1, [], zigzag_depth=0)


def test_split_structure_contains_sums_of_generators(vect):
    x = split_exact_structure(vect, 1)
    big = split_complex(vect, ("S", "S"), S, 1)
    assert x.contains(big, Universe(vect, 2)).status is True
    assert x.contains(split_complex(vect, (), S, 1), Universe(vect, 1)).status is True
    np.testing.assert_array_equal(big.diffs[0].vec, vect.inclusion([("S", "S"), S], 0).vec)
