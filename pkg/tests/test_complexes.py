from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from nexang.angulated import SigmaStructure, identity_angle
from nexang.category import AddMorphism
from nexang.complexes import (
    ComplexMorphism,
    ComplexN,
    SigmaSequence,
    complex_failures,
    compose_morphisms,
    cone_of_angle_morphism,
    direct_sum_sequences,
    find_homotopy,
    find_sequence_isomorphism,
    find_weak_isomorphism,
    hom_system,
    homotopy_equivalent,
    identity_morphism,
    is_homotopy_equivalence,
    is_morphism,
    left_rotation,
    mapping_cone,
    split_complex,
)
from nexang.fixtures import vect_category
from nexang.linalg import kernel_basis

S = ("S",)


# -- random generation over Vect_{F_p} (object S^k, morphisms are row-major k' x k matrices)


def _mor(cat, k_src: int, k_dst: int, mat: np.ndarray) -> AddMorphism:
    return AddMorphism(S * k_src, S * k_dst, np.asarray(mat, dtype=np.int64).reshape(-1) % cat.p)


def _mat(f: AddMorphism) -> np.ndarray:
    return f.vec.reshape(len(f.target), len(f.source))


def random_complex(cat, dims, rng) -> ComplexN:
    """Random chain complex with d^{i+1} d^i = 0: rows of d^{i+1} lie in the left null space of d^i."""
    p = cat.p
    mats = [rng.integers(0, p, size=(dims[1], dims[0]))]
    for i in range(1, len(dims) - 1):
        left_null = kernel_basis(mats[-1].T, p).T  # rows r with r d = 0
        coeff = rng.integers(0, p, size=(dims[i + 1], left_null.shape[0]))
        mats.append((coeff @ left_null) % p if left_null.size else np.zeros((dims[i + 1], dims[i]), dtype=np.int64))
    diffs = [_mor(cat, dims[i], dims[i + 1], m) for i, m in enumerate(mats)]
    return ComplexN(tuple(S * k for k in dims), tuple(diffs))


def random_angle_complex(cat, sigma, dims, rng) -> SigmaSequence:
    """Sigma = Id; a Sigma-sequence whose every consecutive composite (including the wrap) vanishes."""
    x = random_complex(cat, dims, rng)
    p = cat.p
    d0, dn = _mat(x.diffs[0]), _mat(x.diffs[-1])
    ker0 = kernel_basis(d0, p)  # columns c with d0 c = 0
    left_null = kernel_basis(dn.T, p).T
    if ker0.size and left_null.size:
        last = (ker0 @ rng.integers(0, p, size=(ker0.shape[1], left_null.shape[0])) @ left_null) % p
    else:
        last = np.zeros((dims[0], dims[-1]), dtype=np.int64)
    return SigmaSequence(x.objects, x.diffs, _mor(cat, dims[-1], dims[0], last), sigma)


def random_morphism(cat, x, y, rng, sigma=None) -> ComplexMorphism:
    ls = hom_system(cat, x, y, sigma=sigma)
    a, _ = ls.matrix()
    ker = kernel_basis(a, cat.p)
    v = (ker @ rng.integers(0, cat.p, size=ker.shape[1])) % cat.p if ker.size else np.zeros(ls.ncols, dtype=np.int64)
    parts = ls.split(v)
    return ComplexMorphism(x, y, tuple(AddMorphism(x.objects[i], y.objects[i], parts[f"f{i}"]) for i in range(x.length)))


# -- worked examples


def test_cone_of_fixture_morphism(vect):
    x = ComplexN((S, S), (vect.identity(S),))
    y = ComplexN((S, S), (vect.zero(S, S),))
    f = ComplexMorphism(x, y, (vect.identity(S), vect.zero(S, S)))
    assert is_morphism(vect, f)
    c = mapping_cone(vect, f)
    assert c.objects == (S, ("S", "S"), S)
    assert c.diffs[0].vec.tolist() == [1, 1]
    assert c.diffs[1].vec.tolist() == [0, 0]
    assert complex_failures(vect, c) == []


def test_split_complex_shape(vect):
    x = split_complex(vect, S, S, 2)
    assert x.objects == (S, S, S, S)
    assert [d.vec.tolist() for d in x.diffs] == [[1], [0], [1]]
    assert complex_failures(vect, x) == []


# -- formula fidelity (random suites)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_cones_square_to_zero(p, n):
    cat = vect_category(p)
    sig = SigmaStructure.identity(cat).sigma
    rng = np.random.default_rng(100 * p + n)
    count = 0
    while count < 50:
        dims = list(rng.integers(0, 3, size=n + 2))
        dims2 = list(rng.integers(0, 3, size=n + 2))
        x, y = random_complex(cat, dims, rng), random_complex(cat, dims2, rng)
        f = random_morphism(cat, x, y, rng)
        assert is_morphism(cat, f)
        assert complex_failures(cat, mapping_cone(cat, f)) == []
        xs, ys = random_angle_complex(cat, sig, dims, rng), random_angle_complex(cat, sig, dims2, rng)
        g = random_morphism(cat, xs, ys, rng, sigma=sig)
        assert is_morphism(cat, g)
        cone = cone_of_angle_morphism(cat, g)
        maps = list(cone.maps()) + [sig(cone.diffs[0])]
        for a, b in zip(maps, maps[1:]):
            assert cat.compose(b, a).is_zero()
        count += 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rotation_sign(n):
    cat = vect_category(3)
    sig = SigmaStructure.identity(cat).sigma
    rng = np.random.default_rng(n)
    for _ in range(30):
        s = random_angle_complex(cat, sig, list(rng.integers(1, 3, size=n + 2)), rng)
        r = left_rotation(cat, s)
        assert r.objects == s.objects[1:] + (s.objects[0],)
        assert r.last == cat.scale((-1) ** n, s.diffs[0])
        back = s
        for _ in range(n + 2):
            back = left_rotation(cat, back)
        assert back.objects == s.objects
        sign = (-1) ** n
        for a, b in zip(back.maps(), s.maps()):
            assert a == cat.scale(sign, b)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cone_of_identity_is_split(n):
    """Relative to its end terms the cone of 1_X is homotopy equivalent to the split complex."""
    cat = vect_category(2)
    rng = np.random.default_rng(7 + n)
    for _ in range(5):
        x = random_complex(cat, list(rng.integers(1, 3, size=n + 2)), rng)
        c = mapping_cone(cat, identity_morphism(cat, x))
        split = split_complex(cat, c.objects[0], c.objects[-1], c.length - 2)
        assert homotopy_equivalent(cat, c, split).status is True


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cone_of_identity_angle_morphism_splits(n):
    """C(1_X) is the sum of rotated identity angles on X^1, ..., X^{n+1}, Sigma X^0."""
    cat = vect_category(2)
    sig = SigmaStructure.identity(cat).sigma
    rng = np.random.default_rng(11 + n)
    for _ in range(3):
        x = random_angle_complex(cat, sig, list(rng.integers(1, 3, size=n + 2)), rng)
        cone = cone_of_angle_morphism(cat, identity_morphism(cat, x))
        pieces = []
        k = n + 2
        for j in range(k):
            a = x.objects[(j + 1) % k]
            piece = identity_angle(cat, sig, a, n)  # a at slots 0, 1
            for _ in range((k - j) % k):
                piece = left_rotation(cat, piece)  # moves the pair to slots j, j+1
            pieces.append(piece)
        target = direct_sum_sequences(cat, pieces)
        assert find_sequence_isomorphism(cat, cone, target).status is True


# -- homotopy search against brute force


@pytest.mark.parametrize("seed", range(12))
def test_find_homotopy_matches_exhaustive_scan(seed):
    cat = vect_category(2)
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 4))
    dims_x = [1] * m
    dims_y = [1] * m
    x, y = random_complex(cat, dims_x, rng), random_complex(cat, dims_y, rng)
    f, g = random_morphism(cat, x, y, rng), random_morphism(cat, x, y, rng)
    got = find_homotopy(cat, f, g) is not None
    want = oracles.homotopic(
        [_mat(d).tolist() for d in x.diffs],
        [_mat(d).tolist() for d in y.diffs],
        [_mat(c).tolist() for c in f.comps],
        [_mat(c).tolist() for c in g.comps],
        dims_x,
        dims_y,
        2,
    )
    assert got == want


def test_homotopy_equivalence_is_reflexive_and_symmetric(vect):
    rng = np.random.default_rng(3)
    for _ in range(10):
        x = random_complex(vect, [1, 2, 2, 1], rng)
        res = is_homotopy_equivalence(vect, identity_morphism(vect, x))
        assert res.status is True
        g = res.witness
        assert is_homotopy_equivalence(vect, g).status is True
        assert is_homotopy_equivalence(vect, compose_morphisms(vect, g, g)).status is True


def test_weak_isomorphism_search(vect):
    x = split_complex(vect, S, S, 1)
    assert find_weak_isomorphism(vect, x, x).status is True


@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_morphism_sum_is_a_morphism(seed, n):
    cat = vect_category(3)
    rng = np.random.default_rng(seed)
    dims = list(rng.integers(0, 3, size=n + 2))
    x = random_complex(cat, dims, rng)
    y = random_complex(cat, list(rng.integers(0, 3, size=n + 2)), rng)
    f, g = random_morphism(cat, x, y, rng), random_morphism(cat, x, y, rng)
    h = ComplexMorphism(x, y, tuple(cat.add(a, b) for a, b in zip(f.comps, g.comps)))
    assert is_morphism(cat, h)
    assert find_homotopy(cat, h, h) is not None


def test_hom_system_unknowns_match_hom_dimensions(vect):
    x = split_complex(vect, S, ("S", "S"), 1)
    ls = hom_system(vect, x, x)
    assert ls.ncols == sum(vect.dim(o, o) for o in x.objects)
