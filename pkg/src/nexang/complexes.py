"""Complexes, Sigma-sequences, their morphisms, homotopies, rotations and cones."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .category import AddFunctor, AddMorphism, AddObject, BaseCategory
from .linalg import LinearSystem, kernel_basis, rank, rref, span_elements

__all__ = [
    "ComplexN",
    "SigmaSequence",
    "ComplexMorphism",
    "HomotopyWitness",
    "SearchResult",
    "complex_failures",
    "is_morphism",
    "identity_morphism",
    "compose_morphisms",
    "mapping_cone",
    "cone_of_angle_morphism",
    "left_rotation",
    "find_homotopy",
    "is_homotopy_equivalence",
    "homotopy_equivalent",
    "is_weak_isomorphism",
    "find_weak_isomorphism",
    "direct_sum_sequences",
    "conjugate",
    "apply_functor",
    "hom_system",
    "find_sequence_isomorphism",
    "split_complex",
]

# Search sizes for bounded enumerations (number of candidates visited).
ENUM_CAP = 1 << 14
RANDOM_TRIES = 256
SEED = 20240601


@dataclass(frozen=True, eq=False)
class ComplexN:
    """Objects X^0..X^{n+1} and differentials d^0..d^n (any length >= 1 object)."""

    objects: tuple
    diffs: tuple

    def __post_init__(self) -> None:
        objs = tuple(tuple(o) for o in self.objects)
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if len(self.diffs) != len(objs) - 1:
            raise ValueError("need one differential between consecutive objects")
        for i, d in enumerate(self.diffs):
            if d.source != objs[i] or d.target != objs[i + 1]:
                raise ValueError(f"d^{i} has endpoints {d.source}->{d.target}, expected {objs[i]}->{objs[i + 1]}")

    @property
    def n(self) -> int:
        return len(self.objects) - 2

    @property
    def length(self) -> int:
        return len(self.objects)

    def key(self) -> tuple:
        return ("C", self.objects, tuple(d.key() for d in self.diffs))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ComplexN) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True, eq=False)
class SigmaSequence:
    """X^0 -> ... -> X^{n+1} -> Sigma X^0; no vanishing of composites is required."""

    objects: tuple
    diffs: tuple
    last: AddMorphism
    sigma: AddFunctor

    def __post_init__(self) -> None:
        objs = tuple(tuple(o) for o in self.objects)
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if len(self.diffs) != len(objs) - 1:
            raise ValueError("need one map between consecutive objects")
        for i, d in enumerate(self.diffs):
            if d.source != objs[i] or d.target != objs[i + 1]:
                raise ValueError(f"d^{i} has endpoints {d.source}->{d.target}, expected {objs[i]}->{objs[i + 1]}")
        if self.last.source != objs[-1] or self.last.target != self.sigma.obj(objs[0]):
            raise ValueError("last map must go from X^{n+1} to Sigma X^0")

    @property
    def n(self) -> int:
        return len(self.objects) - 2

    @property
    def length(self) -> int:
        return len(self.objects)

    def maps(self) -> tuple:
        return self.diffs + (self.last,)

    def key(self) -> tuple:
        return ("S", self.objects, tuple(d.key() for d in self.diffs), self.last.key())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SigmaSequence) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def truncate(self) -> ComplexN:
        return ComplexN(self.objects, self.diffs)


Seq = ComplexN | SigmaSequence


@dataclass(frozen=True, eq=False)
class ComplexMorphism:
    source: object
    target: object
    comps: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "comps", tuple(self.comps))
        if len(self.comps) != self.source.length or self.source.length != self.target.length:
            raise ValueError("component count must match the sequence length")
        for i, f in enumerate(self.comps):
            if f.source != self.source.objects[i] or f.target != self.target.objects[i]:
                raise ValueError(f"component {i} has wrong endpoints")

    def key(self) -> tuple:
        return (self.source.key(), self.target.key(), tuple(f.key() for f in self.comps))


@dataclass(frozen=True)
class HomotopyWitness:
    """h^1..h^{m-1} with h^i: X^i -> Y^{i-1}."""

    maps: tuple


@dataclass(frozen=True)
class SearchResult:
    """Tri-state outcome of a bounded search: found (True), exhausted (False) or undecided (None)."""

    status: bool | None
    witness: object = None
    visited: int = 0

    def __bool__(self) -> bool:
        return self.status is True


def complex_failures(cat: BaseCategory, x: ComplexN) -> list[int]:
    """Indices i with d^{i+1} d^i != 0."""
    return [i for i in range(len(x.diffs) - 1) if not cat.compose(x.diffs[i + 1], x.diffs[i]).is_zero()]


def split_complex(cat: BaseCategory, a: AddObject, c: AddObject, n: int) -> ComplexN:
    """The direct sum of the two trivial realizations [A -1-> A -> 0 ...] and [... 0 -> C -1-> C]."""
    a, c = tuple(a), tuple(c)
    if n == 1:
        mid = a + c
        d0 = cat.inclusion([a, c], 0)
        d1 = cat.projection([a, c], 1)
        return ComplexN((a, mid, c), (d0, d1))
    objs = [a, a] + [()] * (n - 2) + [c, c]
    diffs = []
    for i in range(n + 1):
        s, t = objs[i], objs[i + 1]
        if i == 0:
            diffs.append(cat.identity(a))
        elif i == n:
            diffs.append(cat.identity(c))
        else:
            diffs.append(cat.zero(s, t))
    return ComplexN(tuple(objs), tuple(diffs))


def identity_morphism(cat: BaseCategory, x) -> ComplexMorphism:
    return ComplexMorphism(x, x, tuple(cat.identity(o) for o in x.objects))


def compose_morphisms(cat: BaseCategory, g: ComplexMorphism, f: ComplexMorphism) -> ComplexMorphism:
    return ComplexMorphism(f.source, g.target, tuple(cat.compose(a, b) for a, b in zip(g.comps, f.comps)))


def is_morphism(cat: BaseCategory, f: ComplexMorphism) -> bool:
    x, y = f.source, f.target
    for i in range(x.length - 1):
        if cat.compose(f.comps[i + 1], x.diffs[i]) != cat.compose(y.diffs[i], f.comps[i]):
            return False
    if isinstance(x, SigmaSequence):
        sig = x.sigma
        if cat.compose(sig(f.comps[0]), x.last) != cat.compose(y.last, f.comps[-1]):
            return False
    return True


def _minus(cat: BaseCategory, f: AddMorphism) -> AddMorphism:
    return cat.neg(f)


def mapping_cone(cat: BaseCategory, f: ComplexMorphism) -> ComplexN:
    """MC(f) for a morphism of chains X^0..X^m -> Y^0..Y^m; objects X^0, X^1+Y^0, ..., X^m+Y^{m-1}, Y^m."""
    x, y = f.source, f.target
    m = x.length - 1
    if m < 1:
        raise ValueError("mapping cone needs chains with at least two objects")
    objs = [x.objects[0]] + [x.objects[i + 1] + y.objects[i] for i in range(m)] + [y.objects[m]]
    diffs = []
    # d^{-1} = (-d_X^0 ; f^0)
    diffs.append(cat.assemble([x.objects[1], y.objects[0]], [x.objects[0]], [[_minus(cat, x.diffs[0])], [f.comps[0]]]))
    for i in range(m - 1):
        diffs.append(
            cat.assemble(
                [x.objects[i + 2], y.objects[i + 1]],
                [x.objects[i + 1], y.objects[i]],
                [[_minus(cat, x.diffs[i + 1]), None], [f.comps[i + 1], y.diffs[i]]],
            )
        )
    # d^{m-1} = (f^m, d_Y^{m-1})
    diffs.append(cat.assemble([y.objects[m]], [x.objects[m], y.objects[m - 1]], [[f.comps[m], y.diffs[m - 1]]]))
    return ComplexN(tuple(objs), tuple(diffs))


def cone_of_angle_morphism(cat: BaseCategory, f: ComplexMorphism) -> SigmaSequence:
    """C(f) on X^{i+1} + Y^i with d_C^i = [[-d_X^{i+1}, 0], [f^{i+1}, d_Y^i]]."""
    x, y = f.source, f.target
    if x.sigma is not y.sigma:
        raise ValueError("Sigma mismatch between source and target")
    sig = x.sigma
    k = x.length  # n + 2
    xo = list(x.objects) + [sig.obj(x.objects[0]), sig.obj(x.objects[1])]
    yo = list(y.objects) + [sig.obj(y.objects[0])]
    dx = list(x.maps()) + [sig(x.diffs[0])]
    dy = list(y.maps())
    fs = list(f.comps) + [sig(f.comps[0])]
    objs = [xo[i + 1] + yo[i] for i in range(k)]
    maps = []
    for i in range(k):
        maps.append(
            cat.assemble(
                [xo[i + 2], yo[i + 1]],
                [xo[i + 1], yo[i]],
                [[_minus(cat, dx[i + 1]), None], [fs[i + 1], dy[i]]],
            )
        )
    return SigmaSequence(tuple(objs), tuple(maps[:-1]), maps[-1], sig)


def left_rotation(cat: BaseCategory, s: SigmaSequence) -> SigmaSequence:
    """X^1 -> ... -> X^{n+1} -> Sigma X^0 -> Sigma X^1 with last map (-1)^n Sigma d^0."""
    n = s.n
    sig = s.sigma
    objs = s.objects[1:] + (sig.obj(s.objects[0]),)
    diffs = s.diffs[1:] + (s.last,)
    last = cat.scale((-1) ** n, sig(s.diffs[0]))
    return SigmaSequence(objs, diffs, last, sig)


def direct_sum_sequences(cat: BaseCategory, seqs: Sequence) -> object:
    if not seqs:
        raise ValueError("empty direct sum")
    first = seqs[0]
    k = first.length
    objs = tuple(sum((s.objects[i] for s in seqs), ()) for i in range(k))
    diffs = tuple(cat.direct_sum(*(s.diffs[i] for s in seqs)) for i in range(k - 1))
    if isinstance(first, SigmaSequence):
        last = cat.direct_sum(*(s.last for s in seqs))
        return SigmaSequence(objs, diffs, last, first.sigma)
    return ComplexN(objs, diffs)


def conjugate(cat: BaseCategory, s, isos: Sequence[AddMorphism]):
    """Transport s along componentwise isomorphisms phi^i: X^i -> Z^i."""
    invs = []
    for phi in isos:
        inv = cat.inverse(phi)
        if inv is None:
            raise ValueError("conjugation needs isomorphisms")
        invs.append(inv)
    objs = tuple(phi.target for phi in isos)
    diffs = tuple(cat.chain(isos[i + 1], s.diffs[i], invs[i]) for i in range(s.length - 1))
    if isinstance(s, SigmaSequence):
        last = cat.chain(s.sigma(isos[0]), s.last, invs[-1])
        return SigmaSequence(objs, diffs, last, s.sigma)
    return ComplexN(objs, diffs)


def apply_functor(fun: AddFunctor, x: ComplexN) -> ComplexN:
    return ComplexN(tuple(fun.obj(o) for o in x.objects), tuple(fun(d) for d in x.diffs))


# -- linear systems -------------------------------------------------------


def hom_system(
    cat: BaseCategory, x, y, fixed: Mapping[int, AddMorphism] | None = None, sigma: AddFunctor | None = None
) -> LinearSystem:
    """Unknowns f^i (names 'f{i}') for the non-fixed components of a morphism x -> y."""
    fixed = dict(fixed or {})
    ls = LinearSystem(cat.p)
    k = x.length
    for i in range(k):
        if i not in fixed:
            ls.var(f"f{i}", cat.dim(x.objects[i], y.objects[i]))
    for i in range(k - 1):
        rows = cat.dim(x.objects[i], y.objects[i + 1])
        rhs = np.zeros(rows, dtype=np.int64)
        terms = []
        if i + 1 in fixed:
            rhs = rhs - cat.compose(fixed[i + 1], x.diffs[i]).vec
        else:
            terms.append((f"f{i + 1}", cat.right_matrix(x.diffs[i], y.objects[i + 1])))
        if i in fixed:
            rhs = rhs + cat.compose(y.diffs[i], fixed[i]).vec
        else:
            terms.append((f"f{i}", (-cat.left_matrix(y.diffs[i], x.objects[i])) % cat.p))
        ls.eq(terms, rhs % cat.p)
    if sigma is not None:
        sx0 = sigma.obj(y.objects[0])
        rows = cat.dim(x.objects[-1], sx0)
        rhs = np.zeros(rows, dtype=np.int64)
        terms = []
        if 0 in fixed:
            rhs = rhs - cat.compose(sigma(fixed[0]), x.last).vec
        else:
            m = cat.right_matrix(x.last, sx0) @ sigma.hom_matrix(x.objects[0], y.objects[0])
            terms.append(("f0", m % cat.p))
        if k - 1 in fixed:
            rhs = rhs + cat.compose(y.last, fixed[k - 1]).vec
        else:
            terms.append((f"f{k - 1}", (-cat.left_matrix(y.last, x.objects[-1])) % cat.p))
        ls.eq(terms, rhs % cat.p)
    return ls


def _homotopy_terms(cat: BaseCategory, ls: LinearSystem, x, y, prefix: str, sign: int = 1) -> dict[int, list]:
    """Register h^i: X^i -> Y^{i-1}; return per-degree terms of (d h + h d)."""
    k = x.length
    for i in range(1, k):
        ls.var(f"{prefix}{i}", cat.dim(x.objects[i], y.objects[i - 1]))
    terms: dict[int, list] = {i: [] for i in range(k)}
    for i in range(k):
        if i >= 1:
            terms[i].append((f"{prefix}{i}", (sign * cat.left_matrix(y.diffs[i - 1], x.objects[i])) % cat.p))
        if i + 1 <= k - 1:
            terms[i].append((f"{prefix}{i + 1}", (sign * cat.right_matrix(x.diffs[i], y.objects[i])) % cat.p))
    return terms


def find_homotopy(cat: BaseCategory, f: ComplexMorphism, g: ComplexMorphism) -> HomotopyWitness | None:
    """h with f^i - g^i = d_Y^{i-1} h^i + h^{i+1} d_X^i (h^0 = h^{m} = 0), or None."""
    x, y = f.source, f.target
    if g.source.key() != x.key() or g.target.key() != y.key():
        raise ValueError("homotopy needs parallel morphisms")
    ls = LinearSystem(cat.p)
    terms = _homotopy_terms(cat, ls, x, y, "h")
    for i in range(x.length):
        ls.eq(terms[i], cat.sub(f.comps[i], g.comps[i]).vec)
    sol = ls.solve()
    if sol is None:
        return None
    hs = tuple(AddMorphism(x.objects[i], y.objects[i - 1], sol[f"h{i}"]) for i in range(1, x.length))
    # re-verify the witness
    for i in range(x.length):
        acc = cat.zero(x.objects[i], y.objects[i])
        if i >= 1:
            acc = cat.add(acc, cat.compose(y.diffs[i - 1], hs[i - 1]))
        if i + 1 <= x.length - 1:
            acc = cat.add(acc, cat.compose(hs[i], x.diffs[i]))
        if acc != cat.sub(f.comps[i], g.comps[i]):
            raise AssertionError("homotopy witness failed re-verification")
    return HomotopyWitness(hs)


def _check_endpoint_identities(cat: BaseCategory, f: ComplexMorphism) -> None:
    x, y = f.source, f.target
    if x.objects[0] != y.objects[0] or x.objects[-1] != y.objects[-1]:
        raise ValueError("endpoint objects differ")
    if f.comps[0] != cat.identity(x.objects[0]) or f.comps[-1] != cat.identity(x.objects[-1]):
        raise ValueError("endpoint components must be identities")


def is_homotopy_equivalence(cat: BaseCategory, f: ComplexMorphism) -> SearchResult:
    """Decide whether f in C^n_(A,C) has a homotopy inverse fixing the endpoints (one linear system)."""
    _check_endpoint_identities(cat, f)
    x, y = f.source, f.target
    k = x.length
    ls = LinearSystem(cat.p)
    fixed = {0: cat.identity(y.objects[0]), k - 1: cat.identity(y.objects[-1])}
    for i in range(1, k - 1):
        ls.var(f"g{i}", cat.dim(y.objects[i], x.objects[i]))
    # g is a chain map y -> x
    for i in range(k - 1):
        rhs = np.zeros(cat.dim(y.objects[i], x.objects[i + 1]), dtype=np.int64)
        terms = []
        if i + 1 in fixed:
            rhs = rhs - cat.compose(fixed[i + 1], y.diffs[i]).vec
        else:
            terms.append((f"g{i + 1}", cat.right_matrix(y.diffs[i], x.objects[i + 1])))
        if i in fixed:
            rhs = rhs + cat.compose(x.diffs[i], fixed[i]).vec
        else:
            terms.append((f"g{i}", (-cat.left_matrix(x.diffs[i], y.objects[i])) % cat.p))
        ls.eq(terms, rhs % cat.p)
    hx = _homotopy_terms(cat, ls, x, x, "h", sign=-1)
    hy = _homotopy_terms(cat, ls, y, y, "k", sign=-1)
    for i in range(k):
        # g^i f^i - 1 - (d h + h d)^i = 0
        rhs = cat.identity(x.objects[i]).vec.copy()
        terms = list(hx[i])
        if i in fixed:
            rhs = rhs - cat.compose(fixed[i], f.comps[i]).vec
        else:
            terms.append((f"g{i}", cat.right_matrix(f.comps[i], x.objects[i])))
        ls.eq(terms, rhs % cat.p)
        rhs = cat.identity(y.objects[i]).vec.copy()
        terms = list(hy[i])
        if i in fixed:
            rhs = rhs - cat.compose(f.comps[i], fixed[i]).vec
        else:
            terms.append((f"g{i}", cat.left_matrix(f.comps[i], y.objects[i])))
        ls.eq(terms, rhs % cat.p)
    sol = ls.solve()
    if sol is None:
        return SearchResult(False)
    g = ComplexMorphism(
        y,
        x,
        tuple(fixed[i] if i in fixed else AddMorphism(y.objects[i], x.objects[i], sol[f"g{i}"]) for i in range(k)),
    )
    return SearchResult(True, g)


def _null_homotopic_basis(cat: BaseCategory, x, y, ls_hom: LinearSystem) -> np.ndarray:
    """Basis (columns, in ls_hom's flat coordinates) of null-homotopic maps x -> y with zero endpoints."""
    k = x.length
    hs = LinearSystem(cat.p)
    terms = _homotopy_terms(cat, hs, x, y, "h")
    nh = hs.ncols
    offs = hs.offsets()
    blocks = []
    for i in range(k):
        rows = cat.dim(x.objects[i], y.objects[i])
        m = np.zeros((rows, nh), dtype=np.int64)
        for name, mat in terms[i]:
            m[:, offs[name] : offs[name] + hs.sizes[name]] += mat
        blocks.append(m % cat.p)
    ends = np.concatenate([blocks[0], blocks[-1]], axis=0)
    kb = kernel_basis(ends, cat.p) if nh else np.zeros((0, 0), dtype=np.int64)
    mids = [blocks[i] for i in range(1, k - 1) if f"f{i}" in ls_hom.sizes]
    if not mids or kb.shape[1] == 0:
        return np.zeros((ls_hom.ncols, 0), dtype=np.int64)
    return (np.concatenate(mids, axis=0) @ kb) % cat.p


def _complement(sub: np.ndarray, space: np.ndarray, p: int) -> np.ndarray:
    """Columns of `space` completing a basis of span(sub) to span(sub + space)."""
    if space.shape[1] == 0:
        return space
    both = np.concatenate([sub, space], axis=1)
    _, piv = rref(both, p)
    keep = [c - sub.shape[1] for c in piv if c >= sub.shape[1]]
    return space[:, keep]


def homotopy_equivalent(cat: BaseCategory, x: ComplexN, y: ComplexN, cap: int = ENUM_CAP) -> SearchResult:
    """Search a homotopy equivalence x -> y in C^n_(A,C); classes of chain maps modulo null-homotopy are enumerated."""
    k = x.length
    if y.length != k or x.objects[0] != y.objects[0] or x.objects[-1] != y.objects[-1]:
        return SearchResult(False)
    fixed = {0: cat.identity(x.objects[0]), k - 1: cat.identity(x.objects[-1])}
    ls = hom_system(cat, x, y, fixed)
    space = ls.solution_space()
    if space is None:
        return SearchResult(False)
    part, basis = space
    null = _null_homotopic_basis(cat, x, y, ls)
    comp = _complement(null, basis, cat.p)
    dim = comp.shape[1]

    def build(vec: np.ndarray) -> ComplexMorphism:
        parts = ls.split(vec)
        return ComplexMorphism(
            x,
            y,
            tuple(fixed[i] if i in fixed else AddMorphism(x.objects[i], y.objects[i], parts[f"f{i}"]) for i in range(k)),
        )

    visited = 0
    if cat.p ** dim <= cap:
        for vec in span_elements(comp, cat.p, part):
            visited += 1
            f = build(vec)
            if is_homotopy_equivalence(cat, f):
                return SearchResult(True, f, visited)
        return SearchResult(False, None, visited)
    rng = np.random.default_rng(SEED)
    for _ in range(cap):
        visited += 1
        vec = (part + comp @ rng.integers(0, cat.p, size=dim)) % cat.p
        f = build(vec)
        if is_homotopy_equivalence(cat, f):
            return SearchResult(True, f, visited)
    return SearchResult(None, None, visited)


def find_weak_isomorphism(cat: BaseCategory, x, y, cap: int = ENUM_CAP) -> SearchResult:
    """Morphism x -> y with two cyclically consecutive invertible components."""
    k = x.length
    undecided = False
    for i in range(k):
        r = find_sequence_isomorphism(cat, x, y, cap, required=(i, (i + 1) % k))
        if r.status:
            return r
        undecided = undecided or r.status is None
    return SearchResult(None if undecided else False)


def is_weak_isomorphism(cat: BaseCategory, f: ComplexMorphism) -> bool:
    k = len(f.comps)
    inv = [cat.is_iso(c) for c in f.comps]
    return any(inv[i] and inv[(i + 1) % k] for i in range(k))


# -- isomorphism search for sequences ----------------------------------------


def find_sequence_isomorphism(cat: BaseCategory, x, y, cap: int = ENUM_CAP, required=None) -> SearchResult:
    """Morphism x -> y (all squares commuting) whose components in `required` are invertible.

    `required` defaults to every component (an isomorphism of sequences); passing two cyclically
    consecutive indices searches for a weak isomorphism.
    """
    if x.length != y.length:
        return SearchResult(False)
    req = sorted(set(range(x.length) if required is None else required))
    for i in req:
        if cat.signature(x.objects[i]) != cat.signature(y.objects[i]):
            return SearchResult(False)
    sigma = x.sigma if isinstance(x, SigmaSequence) else None
    if required is None and _rank_profile(cat, x) != _rank_profile(cat, y):
        return SearchResult(False)
    ls = hom_system(cat, x, y, sigma=sigma)
    space = ls.solution_space()
    assert space is not None
    _, basis = space
    offs = ls.offsets()
    slices = [(offs[f"f{i}"], offs[f"f{i}"] + ls.sizes[f"f{i}"]) for i in range(x.length)]

    def comp_ok(i: int, vec: np.ndarray) -> bool:
        a, b = slices[i]
        return cat.is_iso(AddMorphism(x.objects[i], y.objects[i], vec[a:b]))

    def build(vec: np.ndarray) -> ComplexMorphism:
        return ComplexMorphism(
            x, y, tuple(AddMorphism(x.objects[i], y.objects[i], vec[slices[i][0] : slices[i][1]]) for i in range(x.length))
        )

    dim = basis.shape[1]
    visited = 0
    rng = np.random.default_rng(SEED)
    for _ in range(RANDOM_TRIES if dim else 1):
        visited += 1
        vec = (basis @ rng.integers(0, cat.p, size=dim)) % cat.p if dim else np.zeros(ls.ncols, dtype=np.int64)
        if all(comp_ok(i, vec) for i in req):
            return SearchResult(True, build(vec), visited)
    if dim == 0:
        return SearchResult(False, None, visited)

    # Exhaustive backtracking, one component at a time.
    budget = [cap]

    def rec(j: int, base: np.ndarray, b: np.ndarray):
        if j == len(req):
            return base
        i = req[j]
        a, e = slices[i]
        proj = b[a:e]
        if proj.shape[1] == 0 or not np.any(proj):
            if not comp_ok(i, base):
                return None
            return rec(j + 1, base, b)
        _, piv = rref(proj, cat.p)
        pb = b[:, piv]
        rest = (b @ kernel_basis(proj, cat.p)) % cat.p
        for coeffs in span_elements(np.eye(len(piv), dtype=np.int64), cat.p):
            budget[0] -= 1
            if budget[0] < 0:
                raise _Budget
            cand = (base + pb @ coeffs) % cat.p
            if comp_ok(i, cand):
                out = rec(j + 1, cand, rest)
                if out is not None:
                    return out
        return None

    try:
        found = rec(0, np.zeros(ls.ncols, dtype=np.int64), basis)
    except _Budget:
        return SearchResult(None, None, visited + cap)
    if found is None:
        return SearchResult(False, None, visited + cap - budget[0])
    return SearchResult(True, build(found), visited + cap - budget[0])


def _rank_profile(cat: BaseCategory, x) -> tuple:
    """Ranks of Hom(z, d) and Hom(d, z) for every map d of x: invariant under isomorphism of sequences."""
    maps = x.maps() if isinstance(x, SigmaSequence) else x.diffs
    out = []
    for d in maps:
        for z in cat.objects:
            out.append(rank(cat.left_matrix(d, (z,)), cat.p))
            out.append(rank(cat.right_matrix(d, (z,)), cat.p))
    return tuple(out)


class _Budget(Exception):
    pass
