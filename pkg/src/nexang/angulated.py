"""(n+2)-angulations presented by generators, and exhaustive checks of F1-F4."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .category import (
    AddFunctor,
    AddMorphism,
    AddObject,
    BaseCategory,
    EquivalenceWitness,
    NatTransform,
    Universe,
    search_idempotent_splitting,
    validate_equivalence,
)
from .complexes import (
    ENUM_CAP,
    RANDOM_TRIES,
    SEED,
    ComplexMorphism,
    ComplexN,
    SearchResult,
    SigmaSequence,
    cone_of_angle_morphism,
    direct_sum_sequences,
    find_sequence_isomorphism,
    hom_system,
    left_rotation,
)
from .homalg import _exact_contra, _exact_cov, witness_universe
from .linalg import LinearSystem, rank, solve_linear, span_elements
from .report import FAIL, INCONCLUSIVE, PASS, InputError, Report

__all__ = [
    "SigmaStructure",
    "Angulation",
    "AngulatedFunctorWitness",
    "identity_angle",
    "right_rotation",
    "is_exact_sigma_sequence",
    "contains_angle",
    "check_angulation_axioms",
    "check_angulated_functor",
    "image_angle",
]

# Endomorphism spaces of members up to this size are scanned for idempotents.
ENDO_CAP = 1 << 12


@dataclass
class SigmaStructure:
    """Sigma with a quasi-inverse Sigma_- and the two natural isomorphisms relating them."""

    witness: EquivalenceWitness
    strict_automorphism: bool = False

    @property
    def sigma(self) -> AddFunctor:
        return self.witness.F

    @property
    def sigma_minus(self) -> AddFunctor:
        return self.witness.G

    @property
    def cat(self) -> BaseCategory:
        return self.witness.F.src

    @staticmethod
    def identity(cat: BaseCategory) -> "SigmaStructure":
        return SigmaStructure(EquivalenceWitness.identity(cat), strict_automorphism=True)

    def validate(self, universe: Universe | None = None) -> Report:
        rep = Report("sigma structure")
        if self.sigma.src is not self.sigma.dst:
            rep.add("endofunctor", FAIL, reason="Sigma must be an endofunctor")
            return rep
        full = validate_equivalence(self.witness, universe)
        # Only naturality and invertibility of the two transformations are required of the witness.
        for e in full.entries:
            if not e.check.startswith("triangle:"):
                rep.entries.append(e)
        if self.strict_automorphism:
            rep.attach(self.check_strict())
        return rep

    def check_strict(self) -> Report:
        rep = Report("strict automorphism")
        cat, sig = self.cat, self.sigma
        images = [sig.on_objects[a] for a in cat.objects]
        if any(len(im) != 1 for im in images) or len({im[0] for im in images}) != len(images):
            rep.add("object-bijection", FAIL, images=[list(im) for im in images])
            return rep
        rep.ok("object-bijection")
        bad = []
        for a in cat.objects:
            for b in cat.objects:
                m = sig.hom_matrix((a,), (b,))
                if m.shape[0] != m.shape[1] or rank(m, cat.p) != m.shape[0]:
                    bad.append([a, b])
        for pair in bad:
            rep.add("hom-bijection", FAIL, objects=pair)
        if not bad:
            rep.ok("hom-bijection")
        return rep


def identity_angle(cat: BaseCategory, sigma: AddFunctor, x: AddObject, n: int) -> SigmaSequence:
    """X -1-> X -> 0 -> ... -> 0 -> Sigma X."""
    objs = (x, x) + ((),) * n
    diffs = [cat.identity(x)] + [cat.zero(objs[i], objs[i + 1]) for i in range(1, n + 1)]
    return SigmaSequence(objs, tuple(diffs), cat.zero((), sigma.obj(x)), sigma)


def right_rotation(ss: SigmaStructure, s: SigmaSequence) -> SigmaSequence:
    """A sequence whose left rotation is isomorphic to s (identity components, unit at the end)."""
    cat, sig = ss.cat, ss.sigma
    n = s.n
    top = s.objects[-1]
    back = ss.sigma_minus.obj(top)
    eta = ss.witness.unit.component(top)  # top -> Sigma Sigma_- top
    eta_inv = cat.inverse(eta)
    if eta_inv is None:
        raise InputError("unit of the Sigma witness is not invertible", "sigma")
    want = cat.scale((-1) ** n, cat.compose(s.last, eta_inv))
    sol = solve_linear(sig.hom_matrix(back, s.objects[0]), want.vec, cat.p)
    if sol is None:
        raise InputError("Sigma is not full on the required Hom space", "sigma")
    first = AddMorphism(back, s.objects[0], sol)
    objs = (back,) + s.objects[:-1]
    diffs = (first,) + s.diffs[:-1]
    return SigmaSequence(objs, diffs, cat.compose(eta, s.diffs[-1]), sig)


def is_exact_sigma_sequence(cat: BaseCategory, s: SigmaSequence, periods: int = 2) -> bool:
    """Exactness of Hom(z, -) and Hom(-, z) along the sequence continued by left rotation."""
    maps: list[AddMorphism] = []
    cur = s
    for _ in range(periods):
        maps.extend(cur.maps())
        for _ in range(cur.length):
            cur = left_rotation(cat, cur)
    for a, b in zip(maps, maps[1:]):
        if not (_exact_cov(cat, a, b) and _exact_contra(cat, a, b)):
            return False
    return True


class Angulation:
    """A class of Sigma-sequences: finite direct sums of generators, closed under isomorphism.

    closure: "sums" (default), "iso" (isomorphic to a single generator) or "none" (literal generators).
    """

    def __init__(self, ss: SigmaStructure, n: int, generators: Sequence[SigmaSequence], closure: str = "sums", name: str = "") -> None:
        if closure not in ("sums", "iso", "none"):
            raise InputError(f"unknown closure {closure!r}", "closure")
        self.ss, self.n, self.closure, self.name = ss, n, closure, name
        self.cat = ss.cat
        self.generators = list(generators)
        for k, g in enumerate(self.generators):
            if g.sigma is not ss.sigma:
                raise InputError("generator uses a different Sigma", f"generators[{k}]")
            if g.n != n:
                raise InputError(f"generator has n = {g.n}, expected {n}", f"generators[{k}]")
        self._memo: dict[tuple, SearchResult] = {}
        self._reps: list[SigmaSequence] | None = None

    @property
    def sigma(self) -> AddFunctor:
        return self.ss.sigma

    def representatives(self) -> list[SigmaSequence]:
        if self._reps is None:
            reps: list[SigmaSequence] = []
            for g in self.generators:
                if not any(_shape(self.cat, r) == _shape(self.cat, g) and find_sequence_isomorphism(self.cat, r, g).status for r in reps):
                    reps.append(g)
            self._reps = reps
        return self._reps

    def zero(self) -> SigmaSequence:
        return identity_angle(self.cat, self.sigma, (), self.n)

    def sums_matching(self, s: SigmaSequence, limit: int = 256) -> tuple[list[SigmaSequence], bool]:
        """Direct sums of representatives with the same Hom-dimensions as s at every position."""
        cat = self.cat
        want = np.array(_shape_vec(cat, s), dtype=np.int64)
        reps = [(g, np.array(_shape_vec(cat, g), dtype=np.int64)) for g in self.representatives()]
        reps = [(g, v) for g, v in reps if v.any()]
        out: list[SigmaSequence] = []
        full = [False]

        def rec(start: int, left: np.ndarray, chosen: list[SigmaSequence]):
            if len(out) >= limit:
                full[0] = True
                return
            if not left.any():
                out.append(self.zero() if not chosen else chosen[0] if len(chosen) == 1 else direct_sum_sequences(cat, chosen))
                return
            for m in range(start, len(reps)):
                g, v = reps[m]
                if np.all(v <= left):
                    rec(m, left - v, chosen + [g])

        rec(0, want, [])
        return out, full[0]

    def members(self, universe: Universe) -> list[SigmaSequence]:
        """Direct sums of representatives whose objects all lie in the universe, one per multiset."""
        cat = self.cat
        if self.closure != "sums":
            return [g for g in self.generators if all(o in universe for o in g.objects)]
        reps = [g for g in self.representatives() if any(g.objects)]
        out = [self.zero()]

        def rec(start: int, sizes: list[int], chosen: list[SigmaSequence]):
            for m in range(start, len(reps)):
                g = reps[m]
                new = [a + len(o) for a, o in zip(sizes, g.objects)]
                if max(new) > universe.bound:
                    continue
                picked = chosen + [g]
                out.append(picked[0] if len(picked) == 1 else direct_sum_sequences(cat, picked))
                rec(m, new, picked)

        rec(0, [0] * (self.n + 2), [])
        return out


def _shape(cat: BaseCategory, s) -> tuple:
    return tuple(cat.signature(o) for o in s.objects)


def _shape_vec(cat: BaseCategory, s) -> tuple:
    return sum(_shape(cat, s), ())


def contains_angle(t: Angulation, s: SigmaSequence, universe: Universe | None = None) -> SearchResult:
    """Is s isomorphic (as a Sigma-sequence) to a finite direct sum of generators?"""
    if s.sigma is not t.sigma:
        raise InputError("sequence uses a different Sigma", "sequence")
    if s.n != t.n:
        return SearchResult(False)
    key = s.key()
    if key in t._memo:
        return t._memo[key]
    cat = t.cat
    if t.closure == "none":
        res = SearchResult(any(g.key() == key for g in t.generators))
    else:
        if t.closure == "iso":
            cands, full = t.representatives(), False
            cands = [g for g in cands if _shape(cat, g) == _shape(cat, s)]
        else:
            cands, full = t.sums_matching(s)
        undecided = full
        res = None
        for g in cands:
            r = find_sequence_isomorphism(cat, g, s)
            if r.status:
                res = SearchResult(True, r.witness)
                break
            undecided = undecided or r.status is None
        if res is None:
            res = SearchResult(None if undecided else False)
    t._memo[key] = res
    return res


@dataclass
class AngulatedFunctorWitness:
    functor: AddFunctor
    theta: NatTransform  # F Sigma => Sigma' F

    def validate(self) -> Report:
        rep = Report("angulated functor witness")
        bad = self.theta.naturality_failures()
        for b in bad:
            rep.add("theta-natural", FAIL, **b)
        if not bad:
            rep.ok("theta-natural")
        non = self.theta.non_invertible()
        for a in non:
            rep.add("theta-invertible", FAIL, object=a)
        if not non:
            rep.ok("theta-invertible")
        return rep


# -- axiom checks ------------------------------------------------------------


def _mor(f: AddMorphism) -> dict:
    return {"source": list(f.source), "target": list(f.target), "vec": [int(v) for v in f.vec]}


def _seq(s: SigmaSequence) -> dict:
    return {"objects": [list(o) for o in s.objects], "maps": [_mor(d) for d in s.maps()]}


def _verdict(r: SearchResult) -> str:
    return PASS if r.status else (FAIL if r.status is False else INCONCLUSIVE)


def _space(ls, p: int, cap: int = ENUM_CAP) -> tuple[Iterator[np.ndarray], bool] | None:
    """Elements of a solution space; exhaustive if small, else a seeded sample (second value True)."""
    space = ls.solution_space()
    if space is None:
        return None
    part, basis = space
    k = basis.shape[1]
    if p**k <= cap:
        return span_elements(basis, p, part), False
    rng = np.random.default_rng(SEED)
    return ((part + basis @ rng.integers(0, p, size=k)) % p for _ in range(RANDOM_TRIES)), True


def _components(cat: BaseCategory, ls, x, y, vec: np.ndarray, fixed: dict[int, AddMorphism] | None = None) -> list[AddMorphism]:
    parts = ls.split(vec)
    fixed = fixed or {}
    return [fixed[i] if i in fixed else AddMorphism(x.objects[i], y.objects[i], parts[f"f{i}"]) for i in range(x.length)]


def _split_member(t: Angulation, m: SigmaSequence, comps: list[AddMorphism], universe: Universe):
    """Image of an idempotent endomorphism of m, split componentwise in the universe."""
    cat = t.cat
    parts = []
    for e in comps:
        sp = search_idempotent_splitting(cat, e, universe)
        if sp is None:
            return None
        parts.append(sp)
    objs = tuple(y for y, _, _ in parts)
    diffs = tuple(cat.chain(parts[i + 1][1], m.diffs[i], parts[i][2]) for i in range(m.length - 1))
    last = cat.chain(t.sigma(parts[0][1]), m.last, parts[-1][2])
    return SigmaSequence(objs, diffs, last, t.sigma)


def check_angulation_axioms(t: Angulation, universe: Universe, fail_fast: bool = False) -> Report:
    cat, n, sig = t.cat, t.n, t.sigma
    rep = Report(f"({n}+2)-angulation axioms ({t.name or cat.name}, B={universe.bound})")
    rep.attach(t.ss.validate(universe))
    members = t.members(universe)

    def member(s):
        return contains_angle(t, s, universe)

    # F1(a): finite direct sums and direct summands
    bad = 0
    for i, a in enumerate(members):
        for b in members[i:]:
            s = direct_sum_sequences(cat, [a, b])
            if not all(o in universe for o in s.objects):
                continue
            r = member(s)
            if not r.status:
                rep.add("F1a-sum", _verdict(r), first=_seq(a), second=_seq(b))
                bad += 1
    if not bad:
        rep.ok("F1a-sum", members=len(members))
    bad = 0
    for m in members:
        ls = hom_system(cat, m, m, sigma=sig)
        it = _space(ls, cat.p, ENDO_CAP)
        sampled = it[1]
        if sampled:
            rep.add("F1a-summand", INCONCLUSIVE, member=_seq(m), reason="endomorphism space sampled")
            bad += 1
        for vec in it[0]:
            comps = _components(cat, ls, m, m, vec)
            if any(cat.compose(e, e) != e for e in comps):
                continue
            if all(e.is_zero() for e in comps) or all(e == cat.identity(e.source) for e in comps):
                continue
            part = _split_member(t, m, comps, universe)
            if part is None:
                rep.add("F1a-summand", INCONCLUSIVE, member=_seq(m), reason="idempotent does not split in universe")
                bad += 1
                continue
            r = member(part)
            if not r.status:
                rep.add("F1a-summand", _verdict(r), member=_seq(m), summand=_seq(part))
                bad += 1
                if fail_fast and r.status is False:
                    return rep
                break
    if not bad:
        rep.ok("F1a-summand", members=len(members))

    # F1(b): identity angles
    bad = 0
    for x in universe.objects:
        r = member(identity_angle(cat, sig, x, n))
        if not r.status:
            rep.add("F1b", _verdict(r), object=list(x))
            bad += 1
            if fail_fast:
                return rep
    if not bad:
        rep.ok("F1b", objects=len(universe))

    # F1(c): every morphism is the first map of a member (members may be larger than the universe)
    bad = 0
    wide = t.members(witness_universe(universe))
    for f in universe.morphisms():
        r = _first_map_of_member(t, f, wide)
        if not r.status:
            rep.add("F1c", _verdict(r), morphism=_mor(f))
            bad += 1
            if fail_fast and r.status is False:
                return rep
    if not bad:
        rep.ok("F1c")

    # F2: rotation in both directions
    bad = 0
    for m in members:
        for label, s in (("left", left_rotation(cat, m)), ("right", right_rotation(t.ss, m))):
            r = member(s)
            if not r.status:
                rep.add("F2", _verdict(r), member=_seq(m), rotation=label)
                bad += 1
                if fail_fast and r.status is False:
                    return rep
    if not bad:
        rep.ok("F2", members=len(members))

    # F3 / F4: completion of (f^0, f^1), and one with a member cone
    bad3 = bad4 = 0
    instances = 0
    for x in members:
        for y in members:
            for f0, f1 in _commuting_pairs(cat, x, y):
                instances += 1
                v3, v4, info = _f34_instance(t, x, y, f0, f1, universe)
                assert not (v4 == PASS and v3 != PASS), "F4 completion must witness F3"
                if v3 != PASS:
                    rep.add("F3", v3, source=_seq(x), target=_seq(y), f0=_mor(f0), f1=_mor(f1))
                    bad3 += 1
                if v4 != PASS:
                    rep.add("F4", v4, source=_seq(x), target=_seq(y), f0=_mor(f0), f1=_mor(f1), **info)
                    bad4 += 1
                if fail_fast and FAIL in (v3, v4):
                    return rep
    if not bad3:
        rep.ok("F3", instances=instances)
    if not bad4:
        rep.ok("F4", instances=instances)
    return rep


def _commuting_pairs(cat: BaseCategory, x: SigmaSequence, y: SigmaSequence):
    """Every (f^0, f^1) with d_Y^0 f^0 = f^1 d_X^0."""
    ls = LinearSystem(cat.p)
    ls.var("f0", cat.dim(x.objects[0], y.objects[0]))
    ls.var("f1", cat.dim(x.objects[1], y.objects[1]))
    ls.eq(
        [("f1", cat.right_matrix(x.diffs[0], y.objects[1])), ("f0", (-cat.left_matrix(y.diffs[0], x.objects[0])) % cat.p)],
        np.zeros(cat.dim(x.objects[0], y.objects[1]), dtype=np.int64),
    )
    part, basis = ls.solution_space()
    for vec in span_elements(basis, cat.p, part):
        sol = ls.split(vec)
        yield AddMorphism(x.objects[0], y.objects[0], sol["f0"]), AddMorphism(x.objects[1], y.objects[1], sol["f1"])


def _f34_instance(t: Angulation, x, y, f0, f1, universe: Universe):
    cat = t.cat
    ls = hom_system(cat, x, y, fixed={0: f0, 1: f1}, sigma=t.sigma)
    it = _space(ls, cat.p)
    if it is None:
        return FAIL, FAIL, {"reason": "no completion"}
    elems, sampled = it
    undecided = sampled
    for vec in elems:
        comps = _components(cat, ls, x, y, vec, {0: f0, 1: f1})
        cone = cone_of_angle_morphism(cat, ComplexMorphism(x, y, tuple(comps)))
        r = contains_angle(t, cone, universe)
        if r.status:
            return PASS, PASS, {}
        undecided = undecided or r.status is None
    if undecided:
        return PASS, INCONCLUSIVE, {"reason": "no completion with a member cone found"}
    return PASS, FAIL, {"reason": "no completion has a member cone"}


def _first_map_of_member(t: Angulation, f: AddMorphism, members: Sequence[SigmaSequence]) -> SearchResult:
    """Some member m and isomorphisms X -> m^0, Y -> m^1 intertwining f and d^0."""
    cat = t.cat
    two = ComplexN((f.source, f.target), (f,))
    undecided = False
    for m in members:
        if cat.signature(m.objects[0]) != cat.signature(f.source) or cat.signature(m.objects[1]) != cat.signature(f.target):
            continue
        r = find_sequence_isomorphism(cat, two, ComplexN(m.objects[:2], m.diffs[:1]))
        if r.status:
            return SearchResult(True, m)
        undecided = undecided or r.status is None
    return SearchResult(None if undecided else False)


def check_angulated_functor(w: AngulatedFunctorWitness, t_src: Angulation, t_dst: Angulation, universe: Universe) -> Report:
    """F sends members of t_src to members of t_dst, with last map Theta o F(last)."""
    fun = w.functor
    rep = Report(f"angulated functor {fun.name}")
    rep.attach(w.validate())
    if rep.verdict == FAIL:
        return rep
    dst = fun.dst
    bad = 0
    members = t_src.members(universe)
    for m in members:
        img = image_angle(w, t_dst.sigma, m)
        r = contains_angle(t_dst, img, None)
        if not r.status:
            rep.add("image-angle", _verdict(r), member=_seq(m))
            bad += 1
    if not bad:
        rep.ok("image-angle", members=len(members))
    return rep


def image_angle(w: AngulatedFunctorWitness, sigma_dst: AddFunctor, m: SigmaSequence) -> SigmaSequence:
    fun = w.functor
    dst = fun.dst
    objs = tuple(fun.obj(o) for o in m.objects)
    diffs = tuple(fun(d) for d in m.diffs)
    last = dst.compose(w.theta.component(m.objects[0]), fun(m.last))
    return SigmaSequence(objs, diffs, last, sigma_dst)
