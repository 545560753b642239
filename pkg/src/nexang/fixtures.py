"""Small categories used as worked examples and test fixtures."""
from __future__ import annotations

import numpy as np

from .category import AddFunctor, BaseCategory, EquivalenceWitness, NatTransform, compose_functors

__all__ = [
    "algebra_category",
    "vect_category",
    "doubled_category",
    "idempotent_category",
    "nakayama_category",
    "doubling_witness",
    "stable_angulation",
    "all_exact_structure",
    "split_exact_structure",
]


def algebra_category(p: int, name: str, obj: str, mult: dict[tuple[int, int], dict[int, int]], dim: int) -> BaseCategory:
    """One object whose endomorphism algebra has basis 0..dim-1 (basis 0 = identity).

    mult[(s, t)] gives the coordinates of basis_s o basis_t.
    """
    comp = np.zeros((dim, dim, dim), dtype=np.int64)
    for (s, t), coords in mult.items():
        for r, c in coords.items():
            comp[r, s, t] = c % p
    ident = [1] + [0] * (dim - 1)
    return BaseCategory(p, [obj], {(obj, obj): dim}, {(obj, obj, obj): comp}, {obj: ident}, name=name)


def vect_category(p: int = 2) -> BaseCategory:
    """F_p-vector spaces: one object S with End(S) = F_p."""
    return algebra_category(p, "vect", "S", {(0, 0): {0: 1}}, 1)


def doubled_category(p: int = 2) -> BaseCategory:
    """Two isomorphic copies S, S' of S; every Hom is F_p with phi_bc o phi_ab = phi_ac."""
    objs = ["S", "S'"]
    hom = {(a, b): 1 for a in objs for b in objs}
    comp = {(a, b, c): np.ones((1, 1, 1), dtype=np.int64) for a in objs for b in objs for c in objs}
    return BaseCategory(p, objs, hom, comp, {a: [1] for a in objs}, name="doubled")


def idempotent_category(p: int = 2) -> BaseCategory:
    """One object E with End(E) = F_p[e]/(e^2 - e); the idempotent e does not split."""
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {1: 1}}
    return algebra_category(p, "idempotent", "E", mult, 2)


def nakayama_category(p: int = 2) -> BaseCategory:
    """Modules over F_p[x]/(x^2): the simple k and the free module P.

    Bases: Hom(k,k) = {1}, Hom(k,P) = {i}, Hom(P,k) = {q}, Hom(P,P) = {1, x}
    with i q = x and q i = x i = q x = x x = 0.
    """
    objs = ["k", "P"]
    hom = {("k", "k"): 1, ("k", "P"): 1, ("P", "k"): 1, ("P", "P"): 2}
    comp = {}
    for a in objs:
        for b in objs:
            for c in objs:
                comp[(a, b, c)] = np.zeros((hom[(a, c)], hom[(b, c)], hom[(a, b)]), dtype=np.int64)
    comp[("k", "k", "k")][0, 0, 0] = 1
    comp[("k", "k", "P")][0, 0, 0] = 1  # i o 1 = i
    comp[("k", "P", "P")][0, 0, 0] = 1  # 1 o i = i ; x o i = 0
    # q o i = 0 (k -> P -> k)
    comp[("P", "k", "k")][0, 0, 0] = 1  # 1 o q = q
    comp[("P", "k", "P")][1, 0, 0] = 1  # i o q = x
    comp[("P", "P", "k")][0, 0, 0] = 1  # q o 1 = q ; q o x = 0
    pp = comp[("P", "P", "P")]
    pp[0, 0, 0] = 1
    pp[1, 0, 1] = 1
    pp[1, 1, 0] = 1
    return BaseCategory(p, objs, hom, comp, {"k": [1], "P": [1, 0]}, name="nakayama")


def doubling_witness(c: BaseCategory, d: BaseCategory) -> EquivalenceWitness:
    """Inclusion S -> S of the one-object category into the doubled one, with the retraction S, S' -> S."""
    F = AddFunctor(c, d, {"S": ("S",)}, {("S", "S"): np.eye(1, dtype=np.int64)}, name="D")
    G = AddFunctor(
        d,
        c,
        {"S": ("S",), "S'": ("S",)},
        {(a, b): np.eye(1, dtype=np.int64) for a in d.objects for b in d.objects},
        name="R",
    )
    FG = compose_functors(F, G)
    GF = compose_functors(G, F)
    unit = NatTransform(AddFunctor.identity(d), FG, {a: d.morphism((a,), ("S",), [1]) for a in d.objects}, name="unit")
    counit = NatTransform(GF, AddFunctor.identity(c), {"S": c.identity(("S",))}, name="counit")
    return EquivalenceWitness(F, G, unit, counit)


def stable_angulation(cat: BaseCategory | None = None):
    """Stable modules of F_2[x]/(x^2): one object, Sigma = Id, angles the rotations of the identity angle."""
    from .angulated import Angulation, SigmaStructure, identity_angle
    from .complexes import left_rotation

    cat = cat or vect_category()
    ss = SigmaStructure.identity(cat)
    g1 = identity_angle(cat, ss.sigma, (cat.objects[0],), 1)
    g2 = left_rotation(cat, g1)
    g3 = left_rotation(cat, g2)
    return Angulation(ss, 1, [g1, g2, g3], name="stable")


def all_exact_structure(cat: BaseCategory, n: int, bound: int = 2):
    """Every n-exact sequence in the universe of the given bound."""
    from .category import Universe
    from .homalg import ExactStructure, enumerate_n_exact_sequences

    gens = enumerate_n_exact_sequences(cat, n, Universe(cat, bound))
    return ExactStructure(cat, n, gens, name=f"{cat.name}-all")


def split_exact_structure(cat: BaseCategory, n: int):
    """Split n-exact sequences only."""
    from .complexes import split_complex
    from .homalg import ExactStructure

    ends = [()] + [(a,) for a in cat.objects]
    gens = [split_complex(cat, a, c, n) for a in ends for c in ends]
    return ExactStructure(cat, n, gens, name=f"{cat.name}-split")
