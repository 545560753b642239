from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from nexang.linalg import (
    FMatrix,
    LinearSeq,
    PrimeField,
    affine_solutions,
    image_basis,
    inverse,
    is_exact_at,
    kernel_basis,
    rank,
    rref,
    solve_linear,
    span_elements,
)

# (matrix, p, rank, |kernel|, inverse or None); values produced by tests/oracles.py and frozen.
FROZEN = [
    ([[1, 1], [1, 1]], 2, 1, 2, None),
    ([[1, 2], [2, 1]], 3, 1, 3, None),
    ([[1, 2], [2, 4]], 3, 1, 3, None),
    ([[1, 0, 1], [0, 1, 1], [1, 1, 0]], 2, 2, 2, None),
    ([[1, 0, 1], [0, 1, 1], [1, 1, 2]], 3, 2, 3, None),
    ([[1, 1], [0, 1]], 3, 2, 1, [[1, 2], [0, 1]]),
    ([[0, 1, 1], [1, 0, 1], [1, 1, 1]], 2, 3, 1, [[1, 0, 1], [0, 1, 1], [1, 1, 1]]),
    ([[2, 1, 0], [0, 2, 1], [1, 0, 2]], 3, 2, 3, None),
]


@pytest.mark.parametrize("m,p,r,ksize,inv", FROZEN)
def test_frozen_values(m, p, r, ksize, inv):
    a = np.array(m)
    assert rank(a, p) == r
    assert p ** kernel_basis(a, p).shape[1] == ksize
    got = inverse(a, p)
    if inv is None:
        assert got is None
    else:
        assert got.tolist() == inv


def test_four_by_four_cycle_over_f2():
    a = np.array([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
    assert rank(a, 2) == 3
    assert kernel_basis(a, 2).T.tolist() == [[1, 1, 1, 1]]


def matrices(max_rows=4, max_cols=4, primes=(2, 3, 5)):
    @st.composite
    def build(draw):
        p = draw(st.sampled_from(primes))
        r = draw(st.integers(1, max_rows))
        c = draw(st.integers(1, max_cols))
        entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
        return np.array(entries, dtype=np.int64).reshape(r, c), p

    return build()


@given(matrices())
def test_rank_nullity(mp):
    a, p = mp
    assert rank(a, p) + kernel_basis(a, p).shape[1] == a.shape[1]


@given(matrices())
def test_rank_of_transpose(mp):
    a, p = mp
    assert rank(a, p) == rank(a.T, p)


@given(matrices())
def test_kernel_vectors_are_annihilated_and_independent(mp):
    a, p = mp
    k = kernel_basis(a, p)
    assert not ((a @ k) % p).any()
    assert rank(k, p) == k.shape[1]


@given(matrices())
def test_rref_is_idempotent_and_preserves_row_space(mp):
    a, p = mp
    r, piv = rref(a, p)
    r2, piv2 = rref(r, p)
    assert piv == piv2 and (r2 == r).all()
    assert rank(np.vstack([a, r]), p) == rank(a, p)


@given(matrices())
def test_image_basis_spans_columns(mp):
    a, p = mp
    im = image_basis(a, p)
    assert im.shape[1] == rank(a, p)
    assert rank(np.hstack([im, a]), p) == im.shape[1]


@given(matrices(), st.data())
def test_solve_linear_returns_solution_when_one_exists(mp, data):
    a, p = mp
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])))
    b = (a @ x) % p
    sol = solve_linear(a, b, p)
    assert sol is not None and ((a @ sol - b) % p == 0).all()
    part, ker = affine_solutions(a, b, p)
    assert ((a @ part - b) % p == 0).all() and ker.shape[1] == a.shape[1] - rank(a, p)


@given(matrices(max_rows=3, max_cols=3))
def test_inverse_roundtrip(mp):
    a, p = mp
    inv = inverse(a, p)
    if a.shape[0] != a.shape[1] or rank(a, p) < a.shape[0]:
        assert inv is None
    else:
        assert ((a @ inv) % p == np.eye(a.shape[0], dtype=np.int64)).all()


def test_gf2_packed_path_agrees_with_generic_elimination():
    """The packed F_2 path is used for <= 62 columns; compare with brute force and a wide matrix."""
    rng = np.random.default_rng(7)
    for _ in range(200):
        r, c = rng.integers(1, 6), rng.integers(1, 6)
        a = rng.integers(0, 2, size=(r, c))
        assert rank(a, 2) == oracles.rank(a.tolist(), c, 2)
    for _ in range(50):
        narrow = rng.integers(0, 2, size=(rng.integers(1, 9), 60))
        padded = np.hstack([narrow, np.zeros((narrow.shape[0], 10), dtype=np.int64)])  # 70 columns: generic path
        r1, p1 = rref(narrow, 2)
        r2, p2 = rref(padded, 2)
        assert p1 == p2 and (r1 == r2[:, :60]).all()


def test_span_elements_enumerates_the_span():
    basis = np.array([[1, 0], [1, 1], [0, 1]])
    elems = {tuple(v) for v in span_elements(basis, 2)}
    assert elems == oracles.image_set(basis.tolist(), 2, 2)


def test_exactness_of_linear_sequence():
    # F_2 --(1,1)^T--> F_2^2 --(1 1)--> F_2
    s = LinearSeq((1, 2, 1), (np.array([[1], [1]]), np.array([[1, 1]])), 2)
    assert is_exact_at(s, 1)
    s_bad = LinearSeq((1, 2, 1), (np.array([[1], [0]]), np.array([[0, 0]])), 2)
    assert not is_exact_at(s_bad, 1)


def test_field_and_matrix_validation():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        FMatrix(1, 2, (0,), 2)
    m = FMatrix.from_rows([[1, 2], [3, 4]], 5)
    assert m.to_rows() == [[1, 2], [3, 4]] and FMatrix.from_array(m.array, 5) == m
