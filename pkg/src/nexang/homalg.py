"""n-kernels, n-cokernels, n-exact sequences and the n-exact / n-abelian axiom suites.

Every exactness question is reduced to Hom-sequences out of (or into) the
base objects, which suffices because Hom is additive in each variable.
"""
from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .category import AddMorphism, AddObject, BaseCategory, Universe, search_idempotent_splitting
from .complexes import (
    ENUM_CAP,
    RANDOM_TRIES,
    SEED,
    ComplexMorphism,
    ComplexN,
    SearchResult,
    apply_functor,
    complex_failures,
    direct_sum_sequences,
    find_sequence_isomorphism,
    find_weak_isomorphism,
    mapping_cone,
)
from .linalg import LinearSystem, rank, span_elements
from .report import FAIL, INCONCLUSIVE, PASS, InputError, Report

__all__ = [
    "is_n_kernel",
    "is_n_cokernel",
    "is_n_exact_sequence",
    "is_n_pushout",
    "is_n_pullback",
    "search_n_cokernels",
    "search_n_kernels",
    "search_n_pushouts",
    "search_n_pullbacks",
    "search_n_pushout_completion",
    "enumerate_n_exact_sequences",
    "witness_universe",
    "ExactStructure",
    "check_n_exact_axioms",
    "check_n_abelian_axioms",
    "check_n_exact_functor",
]


# -- exactness of Hom sequences ---------------------------------------------


def _left_exact(mats: Sequence[np.ndarray], p: int) -> bool:
    """0 -> V_0 -m_0-> V_1 -> ... -m_k-> V_{k+1}: injective at V_0, exact at V_1..V_k."""
    ranks = [rank(m, p) for m in mats]
    if ranks[0] != mats[0].shape[1]:
        return False
    for i in range(1, len(mats)):
        if np.any((mats[i] @ mats[i - 1]) % p):
            return False
        if ranks[i - 1] + ranks[i] != mats[i].shape[1]:
            return False
    return True


def _exact_cov(cat: BaseCategory, d_in: AddMorphism, d_out: AddMorphism) -> bool:
    """Hom(z, -) exact at the middle object of d_out o d_in, for all base z."""
    for z in cat.objects:
        a = cat.left_matrix(d_in, (z,))
        b = cat.left_matrix(d_out, (z,))
        if np.any((b @ a) % cat.p) or rank(a, cat.p) + rank(b, cat.p) != b.shape[1]:
            return False
    return True


def _exact_contra(cat: BaseCategory, d_in: AddMorphism, d_out: AddMorphism) -> bool:
    """Hom(-, z) exact at the middle object of d_out o d_in, for all base z."""
    for z in cat.objects:
        a = cat.right_matrix(d_out, (z,))
        b = cat.right_matrix(d_in, (z,))
        if np.any((b @ a) % cat.p) or rank(a, cat.p) + rank(b, cat.p) != a.shape[0]:
            return False
    return True


def _check_chain(maps: Sequence[AddMorphism]) -> None:
    for i in range(len(maps) - 1):
        if maps[i].target != maps[i + 1].source:
            raise InputError(f"maps {i} and {i + 1} are not composable", "chain")


def is_n_kernel(cat: BaseCategory, chain: Sequence[AddMorphism], f: AddMorphism) -> bool:
    """(d^0..d^{n-1}) is an n-kernel of f = d^n."""
    maps = list(chain) + [f]
    _check_chain(maps)
    for z in cat.objects:
        if not _left_exact([cat.left_matrix(d, (z,)) for d in maps], cat.p):
            return False
    return True


def is_n_cokernel(cat: BaseCategory, f: AddMorphism, chain: Sequence[AddMorphism]) -> bool:
    """(d^1..d^n) is an n-cokernel of f = d^0."""
    maps = [f] + list(chain)
    _check_chain(maps)
    for z in cat.objects:
        if not _left_exact([cat.right_matrix(d, (z,)) for d in reversed(maps)], cat.p):
            return False
    return True


def is_n_exact_sequence(cat: BaseCategory, x: ComplexN) -> bool:
    if x.length < 3 or complex_failures(cat, x):
        return False
    d = list(x.diffs)
    return is_n_kernel(cat, d[:-1], d[-1]) and is_n_cokernel(cat, d[0], d[1:])


def is_n_pushout(cat: BaseCategory, f: ComplexMorphism) -> bool:
    """MC(f) has (d_C^0..d_C^{n-1}) an n-cokernel of d_C^{-1}."""
    c = mapping_cone(cat, f)
    if complex_failures(cat, c):
        return False
    return is_n_cokernel(cat, c.diffs[0], c.diffs[1:])


def is_n_pullback(cat: BaseCategory, g: ComplexMorphism) -> bool:
    """MC(g) has (d_C^{-1}..d_C^{n-2}) an n-kernel of d_C^{n-1}."""
    c = mapping_cone(cat, g)
    if complex_failures(cat, c):
        return False
    return is_n_kernel(cat, c.diffs[:-1], c.diffs[-1])


# -- bounded searches ------------------------------------------------------

# Solution spaces up to this many elements are enumerated; larger ones are sampled.
EXHAUSTIVE = 1 << 10


class _Cap:
    def __init__(self, cap: int) -> None:
        self.left = cap
        self.hit = False
        self.sampled = False  # some solution space was sampled rather than exhausted

    def tick(self) -> bool:
        self.left -= 1
        if self.left < 0:
            self.hit = True
        return not self.hit


def _solutions(ls: LinearSystem, p: int, cap: _Cap) -> Iterator[dict[str, np.ndarray]]:
    """All solutions when there are at most EXHAUSTIVE of them, else a seeded random sample (flagging the cap)."""
    space = ls.solution_space()
    if space is None:
        return
    part, basis = space
    k = basis.shape[1]
    if p**k <= EXHAUSTIVE:
        for v in span_elements(basis, p, part):
            yield ls.split(v)
        return
    cap.sampled = True
    rng = np.random.default_rng(SEED)
    for _ in range(RANDOM_TRIES):
        yield ls.split((part + basis @ rng.integers(0, p, size=k)) % p)


def _candidates(universe: Universe, cov: tuple | None = None, contra: tuple | None = None) -> list[AddObject]:
    """Universe objects by size; optionally only those with prescribed dim Hom(z, -) or dim Hom(-, z)."""
    cat = universe.cat
    out = []
    for o in sorted(universe.objects, key=lambda o: (len(o), cat.obj_key(o))):
        if cov is not None and tuple(cat.dim((z,), o) for z in cat.objects) != cov:
            continue
        if contra is not None and tuple(cat.dim(o, (z,)) for z in cat.objects) != contra:
            continue
        out.append(o)
    return out


def _coker_dims(cat: BaseCategory, u: AddMorphism) -> tuple:
    """dim ker Hom(u, z) per base z: forced value of dim Hom(Y, z) for a cokernel u -> Y."""
    return tuple(cat.dim(u.target, (z,)) - rank(cat.right_matrix(u, (z,)), cat.p) for z in cat.objects)


def _ker_dims(cat: BaseCategory, u: AddMorphism) -> tuple:
    return tuple(cat.dim((z,), u.source) - rank(cat.left_matrix(u, (z,)), cat.p) for z in cat.objects)


_WITNESS: dict[tuple[int, int], Universe] = {}


def witness_universe(universe: Universe) -> Universe:
    """Objects with up to twice the bound: room for the witnesses of existence claims about the universe.

    A pushout of maps between objects of size <= B can need B + B summands, so
    quantifiers range over `universe` while the searched-for objects come from here.
    """
    key = (id(universe.cat), universe.bound)
    if key not in _WITNESS:
        _WITNESS[key] = Universe(universe.cat, 2 * universe.bound)
    return _WITNESS[key]


def search_n_cokernels(cat: BaseCategory, f: AddMorphism, n: int, universe: Universe, cap: int = ENUM_CAP):
    """Yield every n-cokernel (d^1..d^n) of f with objects in the universe; see `.cap_hit` on the iterator."""
    return _CokernelSearch(cat, f, n, universe, cap)


class _CokernelSearch:
    def __init__(self, cat, f, n, universe, cap):
        self.cat, self.f, self.n, self.universe = cat, f, n, universe
        self.cap = _Cap(cap)

    @property
    def cap_hit(self) -> bool:
        return self.cap.hit or self.cap.sampled

    def __iter__(self):
        cat = self.cat
        objs = _candidates(self.universe)

        def rec(prev: list[AddMorphism]):
            i = len(prev)  # choosing d^i
            src = prev[-1].target
            cands = _candidates(self.universe, contra=_coker_dims(cat, prev[-1])) if i == self.n else objs
            for y in cands:
                ls = LinearSystem(cat.p)
                ls.var("d", cat.dim(src, y))
                ls.eq([("d", cat.right_matrix(prev[-1], y))], np.zeros(cat.dim(prev[-1].source, y), dtype=np.int64))
                for sol in _solutions(ls, cat.p, self.cap):
                    if not self.cap.tick():
                        return
                    d = AddMorphism(src, y, sol["d"])
                    if not _exact_contra(cat, prev[-1], d):
                        continue
                    if i == self.n:
                        if cat.is_epi(d):
                            yield prev[1:] + [d]
                    else:
                        yield from rec(prev + [d])
                    if self.cap.hit:
                        return

        yield from rec([self.f])


def search_n_kernels(cat: BaseCategory, g: AddMorphism, n: int, universe: Universe, cap: int = ENUM_CAP):
    """Yield every n-kernel (d^0..d^{n-1}) of g with objects in the universe."""
    return _KernelSearch(cat, g, n, universe, cap)


class _KernelSearch(_CokernelSearch):
    def __iter__(self):
        cat = self.cat
        objs = _candidates(self.universe)

        def rec(nxt: list[AddMorphism]):
            tgt = nxt[0].source
            cands = _candidates(self.universe, cov=_ker_dims(cat, nxt[0])) if len(nxt) == self.n else objs
            for y in cands:
                ls = LinearSystem(cat.p)
                ls.var("d", cat.dim(y, tgt))
                ls.eq([("d", cat.left_matrix(nxt[0], y))], np.zeros(cat.dim(y, nxt[0].target), dtype=np.int64))
                for sol in _solutions(ls, cat.p, self.cap):
                    if not self.cap.tick():
                        return
                    d = AddMorphism(y, tgt, sol["d"])
                    if not _exact_cov(cat, d, nxt[0]):
                        continue
                    if len(nxt) == self.n:
                        if cat.is_mono(d):
                            yield [d] + nxt[:-1]
                    else:
                        yield from rec([d] + nxt)
                    if self.cap.hit:
                        return

        yield from rec([self.f])


def search_n_pushouts(cat: BaseCategory, xs: Sequence[AddMorphism], f0: AddMorphism, universe: Universe, cap: int = ENUM_CAP):
    """Yield n-pushouts of the chain xs = (d^0..d^{n-1}) along f0 as ComplexMorphisms; objects Y^1..Y^n from the universe."""
    return _PushoutSearch(cat, list(xs), f0, universe, cap)


class _PushoutSearch:
    def __init__(self, cat, xs, f0, universe, cap):
        self.cat, self.xs, self.f0, self.universe = cat, xs, f0, universe
        self.cap = _Cap(cap)
        if f0.source != xs[0].source:
            raise InputError("f^0 must start at X^0", "pushout")

    @property
    def cap_hit(self) -> bool:
        return self.cap.hit or self.cap.sampled

    def __iter__(self):
        cat, xs = self.cat, self.xs
        n = len(xs)
        objs = _candidates(self.universe)
        xo = [d.source for d in xs] + [xs[-1].target]

        first = cat.assemble([xo[1], self.f0.target], [xo[0]], [[cat.neg(xs[0])], [self.f0]])

        def rec(fs, ds, cone):
            i = len(ds)  # choosing d_Y^i and f^{i+1}
            src = ds[-1].target if ds else self.f0.target
            cands = _candidates(self.universe, contra=_coker_dims(cat, cone[-1])) if i + 1 == n else objs
            for y in cands:
                ls = LinearSystem(cat.p)
                ls.var("d", cat.dim(src, y))
                ls.var("f", cat.dim(xo[i + 1], y))
                ls.eq(
                    [("f", cat.right_matrix(xs[i], y)), ("d", (-cat.right_matrix(fs[i], y)) % cat.p)],
                    np.zeros(cat.dim(xo[i], y), dtype=np.int64),
                )
                if ds:
                    ls.eq([("d", cat.right_matrix(ds[-1], y))], np.zeros(cat.dim(ds[-1].source, y), dtype=np.int64))
                for sol in _solutions(ls, cat.p, self.cap):
                    if not self.cap.tick():
                        return
                    d = AddMorphism(src, y, sol["d"])
                    f = AddMorphism(xo[i + 1], y, sol["f"])
                    fs2, ds2 = fs + [f], ds + [d]
                    if i + 1 == n:
                        last = cat.assemble([y], [xo[n], src], [[f, d]])
                    else:
                        last = cat.assemble([xo[i + 2], y], [xo[i + 1], src], [[cat.neg(xs[i + 1]), None], [f, d]])
                    if not _exact_contra(cat, cone[-1], last):
                        continue
                    if i + 1 == n:
                        if cat.is_epi(last):
                            src_c = ComplexN(tuple(xo), tuple(xs))
                            tgt_c = ComplexN(tuple(g.target for g in fs2), tuple(ds2))
                            yield ComplexMorphism(src_c, tgt_c, tuple(fs2))
                    else:
                        yield from rec(fs2, ds2, cone + [last])
                    if self.cap.hit:
                        return

        yield from rec([self.f0], [], [first])


def search_n_pullbacks(cat: BaseCategory, xs: Sequence[AddMorphism], gn: AddMorphism, universe: Universe, cap: int = ENUM_CAP):
    """Yield n-pullbacks of the chain xs = (d^0..d^{n-1}) along gn: Z^n -> X^n as ComplexMorphisms Z -> X."""
    return _PullbackSearch(cat, list(xs), gn, universe, cap)


class _PullbackSearch(_PushoutSearch):
    def __init__(self, cat, xs, gn, universe, cap):
        self.cat, self.xs, self.gn, self.universe = cat, xs, gn, universe
        self.cap = _Cap(cap)
        if gn.target != xs[-1].target:
            raise InputError("g^n must end at X^n", "pullback")

    def __iter__(self):
        cat, xs = self.cat, self.xs
        n = len(xs)
        objs = _candidates(self.universe)
        xo = [d.source for d in xs] + [xs[-1].target]
        zn = self.gn.source
        # d_C^{n-1} = (g^n, d_X^{n-1}): Z^n + X^{n-1} -> X^n
        last = cat.assemble([xo[n]], [zn, xo[n - 1]], [[self.gn, xs[n - 1]]])

        def rec(gs, ds, cone):
            # gs = [g^{j+1}..g^n], ds = [d_Z^{j+1}..d_Z^{n-1}]; choose Z^j, d_Z^j, g^j
            j = n - len(gs)
            tgt = gs[0].source
            cands = _candidates(self.universe, cov=_ker_dims(cat, cone[0])) if j == 0 else objs
            for y in cands:
                ls = LinearSystem(cat.p)
                ls.var("d", cat.dim(y, tgt))
                ls.var("g", cat.dim(y, xo[j]))
                # d_X^j g^j = g^{j+1} d_Z^j
                ls.eq(
                    [("g", cat.left_matrix(xs[j], y)), ("d", (-cat.left_matrix(gs[0], y)) % cat.p)],
                    np.zeros(cat.dim(y, xo[j + 1]), dtype=np.int64),
                )
                if ds:
                    ls.eq([("d", cat.left_matrix(ds[0], y))], np.zeros(cat.dim(y, ds[0].target), dtype=np.int64))
                for sol in _solutions(ls, cat.p, self.cap):
                    if not self.cap.tick():
                        return
                    d = AddMorphism(y, tgt, sol["d"])
                    g = AddMorphism(y, xo[j], sol["g"])
                    gs2, ds2 = [g] + gs, [d] + ds
                    if j == 0:
                        into = cat.assemble([tgt, xo[0]], [y], [[cat.neg(d)], [g]])
                    else:
                        into = cat.assemble([tgt, xo[j]], [y, xo[j - 1]], [[cat.neg(d), None], [g, xs[j - 1]]])
                    if not _exact_cov(cat, into, cone[0]):
                        continue
                    if j == 0:
                        if cat.is_mono(into):
                            src_c = ComplexN(tuple(h.source for h in gs2), tuple(ds2))
                            tgt_c = ComplexN(tuple(xo), tuple(xs))
                            yield ComplexMorphism(src_c, tgt_c, tuple(gs2))
                    else:
                        yield from rec(gs2, ds2, [into] + cone)
                    if self.cap.hit:
                        return

        yield from rec([self.gn], [], [last])


def search_n_pushout_completion(cat: BaseCategory, x: ComplexN, f0: AddMorphism, universe: Universe, cap: int = ENUM_CAP) -> SearchResult:
    """First n-pushout of (d^0..d^{n-1}) along f0 (a ComplexMorphism), or False/None if none is found."""
    search = search_n_pushouts(cat, x.diffs[:-1], f0, universe, cap)
    for found in search:
        return SearchResult(True, found, cap - search.cap.left)
    return SearchResult(None, None, cap - max(search.cap.left, 0))


def enumerate_n_exact_sequences(cat: BaseCategory, n: int, universe: Universe, up_to_iso: bool = True) -> list[ComplexN]:
    """All n-exact sequences with objects in the universe (one per isomorphism class by default)."""
    out: list[ComplexN] = []
    for a in universe.objects:
        for b in universe.objects:
            for d0 in cat.hom_elements(a, b):
                if not cat.is_mono(d0):
                    continue
                for chain in search_n_cokernels(cat, d0, n, universe):
                    x = ComplexN((a, b) + tuple(d.target for d in chain), (d0,) + tuple(chain))
                    if not is_n_exact_sequence(cat, x):
                        continue
                    if up_to_iso and any(find_sequence_isomorphism(cat, y, x).status for y in out if _same_shape(cat, y, x)):
                        continue
                    out.append(x)
    return out


def _same_shape(cat: BaseCategory, x, y) -> bool:
    return all(cat.signature(a) == cat.signature(b) for a, b in zip(x.objects, y.objects))


# -- exact structures --------------------------------------------------------


class ExactStructure:
    """A class of n-exact sequences presented by generators.

    Members are the n-exact sequences reachable from a finite direct sum of
    generators by weak-isomorphism zigzags of bounded depth.
    """

    def __init__(self, cat: BaseCategory, n: int, generators: Sequence[ComplexN], zigzag_depth: int = 1, name: str = "") -> None:
        if zigzag_depth < 1:
            raise InputError("zigzag depth must be at least 1", "zigzag_depth")
        self.cat = cat
        self.n = n
        self.generators = list(generators)
        self.zigzag_depth = zigzag_depth
        self.name = name
        for k, g in enumerate(self.generators):
            if g.n != n:
                raise InputError(f"generator has n = {g.n}, expected {n}", f"generators[{k}]")
        self._memo: dict[tuple, SearchResult] = {}
        self._pool: list[ComplexN] | None = None
        self._reps: list[ComplexN] | None = None

    def validate(self) -> Report:
        rep = Report("exact structure generators")
        for k, g in enumerate(self.generators):
            if not is_n_exact_sequence(self.cat, g):
                rep.add("generator-n-exact", FAIL, generator=k)
        if rep.verdict == PASS:
            rep.ok("generator-n-exact", count=len(self.generators))
        return rep

    def contains(self, x: ComplexN, universe: Universe | None = None) -> SearchResult:
        """Membership: x is n-exact and reachable from a generator by at most `zigzag_depth` weak isomorphisms."""
        key = x.key()
        if key in self._memo:
            return self._memo[key]
        res = self._contains(x, universe)
        self._memo[key] = res
        return res

    def _direct(self, x: ComplexN, targets: Sequence[ComplexN]) -> SearchResult:
        undecided = False
        for g in targets:
            if not _weak_shape(self.cat, g, x):
                continue
            for a, b in ((g, x), (x, g)):
                r = find_weak_isomorphism(self.cat, a, b)
                if r.status:
                    return SearchResult(True, r.witness)
                undecided = undecided or r.status is None
        return SearchResult(None if undecided else False)

    def _sums_for(self, x: ComplexN, limit: int = 64) -> list[ComplexN]:
        """Direct sums of generator representatives matching x on some consecutive pair of positions."""
        cat = self.cat
        if self._reps is None:
            self._reps = [g for g in self.representatives() if any(g.objects)]
        k = x.length
        out: dict[tuple, ComplexN] = {}
        for i in range(k):
            j = (i + 1) % k
            vec = lambda c: np.array(cat.signature(c.objects[i]) + cat.signature(c.objects[j]), dtype=np.int64)
            want = vec(x)
            reps = [(g, vec(g)) for g in self._reps]
            reps = [(g, v) for g, v in reps if v.any()]

            def rec(start: int, left: np.ndarray, chosen: list[ComplexN]):
                if len(out) >= limit:
                    return
                if not left.any():
                    if chosen:
                        t = chosen[0] if len(chosen) == 1 else direct_sum_sequences(cat, chosen)
                        out.setdefault(t.key(), t)
                    return
                for m in range(start, len(reps)):
                    g, v = reps[m]
                    if np.all(v <= left):
                        rec(m, left - v, chosen + [g])

            rec(0, want, [])
        return list(out.values())

    def _contains(self, x: ComplexN, universe: Universe | None) -> SearchResult:
        if x.n != self.n or not is_n_exact_sequence(self.cat, x):
            return SearchResult(False)
        r = self._direct(x, self.generators)
        if not r.status:
            r2 = self._direct(x, self._sums_for(x))
            if r2.status or r2.status is None:
                r = r2
        if r.status or self.zigzag_depth == 1:
            return r
        if universe is None:
            return SearchResult(None)
        if self._pool is None:
            self._pool = enumerate_n_exact_sequences(self.cat, self.n, universe, up_to_iso=False)
        level = list(self.generators)
        seen = {g.key() for g in level}
        for _ in range(self.zigzag_depth - 1):
            nxt = [y for y in self._pool if y.key() not in seen and self._direct(y, level).status]
            for y in nxt:
                seen.add(y.key())
            if not nxt:
                break
            r2 = self._direct(x, nxt)
            if r2.status:
                return r2
            level = nxt
        return SearchResult(False if r.status is False else None)

    def admissible_mono(self, d: AddMorphism, universe: Universe) -> SearchResult:
        """Is d the first map of an admissible sequence?  Decided through its n-cokernels in the universe."""
        return self._admissible_end(d, universe, first=True)

    def admissible_epi(self, d: AddMorphism, universe: Universe) -> SearchResult:
        return self._admissible_end(d, universe, first=False)

    def _admissible_end(self, d: AddMorphism, universe: Universe, first: bool) -> SearchResult:
        cat = self.cat
        if not (cat.is_mono(d) if first else cat.is_epi(d)):
            return SearchResult(False)
        wu = witness_universe(universe)
        search = search_n_cokernels(cat, d, self.n, wu) if first else search_n_kernels(cat, d, self.n, wu)
        found_any = False
        undecided = False
        for k, chain in enumerate(search):
            found_any = True
            maps = [d] + list(chain) if first else list(chain) + [d]
            x = ComplexN(tuple(m.source for m in maps) + (maps[-1].target,), tuple(maps))
            r = self.contains(x, universe)
            if r.status:
                return SearchResult(True, x)
            undecided = undecided or r.status is None
            if k >= 31:
                return SearchResult(None)
        if not found_any or search.cap_hit or undecided:
            return SearchResult(None)
        return SearchResult(False)

    def representatives(self) -> list[ComplexN]:
        """Generators up to isomorphism of sequences."""
        reps: list[ComplexN] = []
        for g in self.generators:
            if not any(_same_shape(self.cat, r, g) and find_sequence_isomorphism(self.cat, r, g).status for r in reps):
                reps.append(g)
        return reps


def _weak_shape(cat: BaseCategory, x, y) -> bool:
    k = x.length
    same = [cat.signature(a) == cat.signature(b) for a, b in zip(x.objects, y.objects)]
    return any(same[i] and same[(i + 1) % k] for i in range(k))


def _status_verdict(r: SearchResult) -> str:
    return PASS if r.status else (FAIL if r.status is False else INCONCLUSIVE)


def _obj(o: AddObject) -> list[str]:
    return list(o)


def _mor(f: AddMorphism) -> dict:
    return {"source": list(f.source), "target": list(f.target), "vec": [int(v) for v in f.vec]}


def check_n_exact_axioms(x: ExactStructure, universe: Universe, fail_fast: bool = False) -> Report:
    cat, n = x.cat, x.n
    rep = Report(f"{n}-exact axioms ({x.name or cat.name}, B={universe.bound}, zigzag depth {x.zigzag_depth})")
    rep.attach(x.validate())

    # n-E0
    zero = ComplexN(((),) * (n + 2), tuple(cat.zero((), ()) for _ in range(n + 1)))
    rep.add("n-E0", _status_verdict(x.contains(zero, universe)))

    # n-E1 / n-E1op
    for check, first in (("n-E1", True), ("n-E1op", False)):
        adm: list[AddMorphism] = []
        undecided = 0
        for a in universe.objects:
            for b in universe.objects:
                for d in cat.hom_elements(a, b):
                    if not (cat.is_mono(d) if first else cat.is_epi(d)):
                        continue
                    r = x.admissible_mono(d, universe) if first else x.admissible_epi(d, universe)
                    if r.status:
                        adm.append(d)
                    elif r.status is None:
                        undecided += 1
        bad = 0
        for f in adm:
            for g in adm:
                if f.target != g.source:
                    continue
                comp = cat.compose(g, f)
                r = x.admissible_mono(comp, universe) if first else x.admissible_epi(comp, universe)
                if r.status is False:
                    rep.add(check, FAIL, first=_mor(f), second=_mor(g), reason="composite not admissible")
                    bad += 1
                elif r.status is None:
                    rep.add(check, INCONCLUSIVE, first=_mor(f), second=_mor(g), reason="composite not decided within bound")
                    bad += 1
                if fail_fast and bad:
                    return rep
        if not bad:
            rep.ok(check, admissible=len(adm), undecided_candidates=undecided)

    # n-E2 / n-E2op
    reps = x.representatives()
    for check, push in (("n-E2", True), ("n-E2op", False)):
        bad = 0
        for k, g in enumerate(reps):
            end = g.objects[0] if push else g.objects[-1]
            for y in universe.objects:
                maps = cat.hom_elements(end, y) if push else cat.hom_elements(y, end)
                for f in maps:
                    v, info = _e2_instance(x, g, f, universe, push)
                    if v != PASS:
                        rep.add(check, v, sequence=k, morphism=_mor(f), **info)
                        bad += 1
                        if fail_fast and v == FAIL:
                            return rep
        if not bad:
            rep.ok(check, sequences=len(reps))
    return rep


def _e2_instance(x: ExactStructure, g: ComplexN, f: AddMorphism, universe: Universe, push: bool):
    cat = x.cat
    wu = witness_universe(universe)
    if push:
        search = search_n_pushouts(cat, g.diffs[:-1], f, wu)
    else:
        search = search_n_pullbacks(cat, g.diffs[1:], f, wu)
    saw_false = False
    for k, h in enumerate(search):
        chain = h.target if push else h.source
        end = chain.diffs[0] if push else chain.diffs[-1]
        r = x.admissible_mono(end, universe) if push else x.admissible_epi(end, universe)
        if r.status:
            return PASS, {}
        saw_false = saw_false or r.status is False
        if k >= 15:
            break
    if saw_false:
        return FAIL, {"reason": "found completion whose end map is not admissible"}
    return INCONCLUSIVE, {"reason": "no completion found within universe"}


def check_n_abelian_axioms(cat: BaseCategory, universe: Universe, n: int, fail_fast: bool = False) -> Report:
    rep = Report(f"{n}-abelian axioms ({cat.name}, B={universe.bound})")

    # n-A0: idempotents split
    bad = 0
    for xo in universe.objects:
        for e in cat.hom_elements(xo, xo):
            if cat.compose(e, e) != e:
                continue
            if search_idempotent_splitting(cat, e, universe) is None:
                rep.add("n-A0", FAIL, idempotent=_mor(e), reason="no splitting object with at most as many summands")
                bad += 1
                if fail_fast:
                    return rep
    if not bad:
        rep.ok("n-A0")

    # n-A1: n-kernels and n-cokernels exist
    bad = 0
    for f in universe.morphisms():
        wu = witness_universe(universe)
        for side, search in (("kernel", search_n_kernels(cat, f, n, wu)), ("cokernel", search_n_cokernels(cat, f, n, wu))):
            if next(iter(search), None) is None:
                rep.add("n-A1", INCONCLUSIVE, morphism=_mor(f), missing=side, reason="not found within universe")
                bad += 1
    if not bad:
        rep.ok("n-A1")

    # n-A2 / n-A2op
    for check, first in (("n-A2", True), ("n-A2op", False)):
        bad = 0
        tested = 0
        for d in universe.morphisms():
            if not (cat.is_mono(d) if first else cat.is_epi(d)):
                continue
            search = search_n_cokernels(cat, d, n, universe) if first else search_n_kernels(cat, d, n, universe)
            for chain in search:
                maps = [d] + list(chain) if first else list(chain) + [d]
                x = ComplexN(tuple(m.source for m in maps) + (maps[-1].target,), tuple(maps))
                tested += 1
                if not is_n_exact_sequence(cat, x):
                    rep.add(check, FAIL, sequence=[_mor(m) for m in maps], reason="not n-exact")
                    bad += 1
                    if fail_fast:
                        return rep
                    break
            if search.cap_hit:
                rep.add(check, INCONCLUSIVE, morphism=_mor(d), reason="enumeration cap reached")
                bad += 1
        if not bad:
            rep.ok(check, sequences=tested)
    return rep


def check_n_exact_functor(fun, src: ExactStructure, dst: ExactStructure, universe: Universe | None = None) -> Report:
    """F sends admissible sequences to admissible sequences (checked on generator representatives)."""
    rep = Report(f"{src.n}-exact functor {fun.name}")
    bad = 0
    dst_universe = Universe(dst.cat, universe.bound) if universe is not None and universe.cat is not dst.cat else universe
    for k, g in enumerate(src.representatives()):
        r = dst.contains(apply_functor(fun, g), dst_universe)
        if not r.status:
            rep.add("exact-functor", _status_verdict(r), generator=k)
            bad += 1
    if not bad:
        rep.ok("exact-functor", generators=len(src.generators))
    return rep
