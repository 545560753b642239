"""Transport of n-angulated, n-exact, n-abelian and n-exangulated structures along equivalences."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .angulated import (
    AngulatedFunctorWitness,
    Angulation,
    SigmaStructure,
    check_angulated_functor,
    check_angulation_axioms,
    image_angle,
)
from .category import (
    AddFunctor,
    AddObject,
    BaseCategory,
    EquivalenceWitness,
    NatTransform,
    Universe,
    compose_functors,
    compute_skeleton,
    functors_equal_on,
    skeletal_inverse,
    validate_equivalence,
)
from .complexes import ComplexN, apply_functor
from .exangulated import (
    BiadditiveE,
    Exangulated,
    ExFunctorWitness,
    Extension,
    Realization,
    act_on_extension,
    check_exangulated_axioms,
    check_exangulated_functor,
)
from .homalg import ExactStructure, check_n_abelian_axioms, check_n_exact_axioms, check_n_exact_functor
from .report import FAIL, PASS, Report

__all__ = [
    "TransportResult",
    "transport_sigma",
    "transport_angulation",
    "transport_exact_structure",
    "transport_abelian",
    "transport_exangulated_structure",
    "transported_exangulation",
    "TransportedE",
    "transport_to_skeleton",
]


@dataclass
class TransportResult:
    kind: str
    structure: Any
    functor_witness: Any
    report: Report
    extras: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return self.report.verdict


def _check_witness(w: EquivalenceWitness, rep: Report, universe: Universe | None) -> bool:
    v = validate_equivalence(w, universe)
    rep.attach(v)
    return v.verdict != FAIL


def transport_sigma(ss: SigmaStructure, w: EquivalenceWitness) -> tuple[SigmaStructure, NatTransform]:
    """Sigma' = F Sigma G with quasi-inverse F Sigma_- G, and Theta = F Sigma Psi^-1: F Sigma => Sigma' F."""
    F, G, phi, psi = w.F, w.G, w.unit, w.counit
    c, d = w.source, w.target
    sig, sigm = ss.sigma, ss.sigma_minus
    eta, eps = ss.witness.unit, ss.witness.counit  # Id => Sigma Sigma_-, Sigma_- Sigma => Id
    s1 = compose_functors(F, compose_functors(sig, G), name="Sigma'")
    s2 = compose_functors(F, compose_functors(sigm, G), name="Sigma'_-")
    psi_inv = psi.inverse()
    phi_inv = phi.inverse()
    unit_c, counit_c = {}, {}
    for y in d.objects:
        gy = G.obj((y,))
        # y -> FGy -> F Sigma Sigma_- G y -> F Sigma (GF) Sigma_- G y
        unit_c[y] = d.chain(F(sig(psi_inv.component(sigm.obj(gy)))), F(eta.component(gy)), phi.components[y])
        # F Sigma_- (GF) Sigma G y -> F Sigma_- Sigma G y -> F G y -> y
        counit_c[y] = d.chain(phi_inv.components[y], F(eps.component(gy)), F(sigm(psi.component(sig.obj(gy)))))
    idd = AddFunctor.identity(d)
    unit = NatTransform(idd, compose_functors(s1, s2), unit_c, name="unit'")
    counit = NatTransform(compose_functors(s2, s1), idd, counit_c, name="counit'")
    ss2 = SigmaStructure(EquivalenceWitness(s1, s2, unit, counit))
    theta = NatTransform(
        compose_functors(F, sig),
        compose_functors(s1, F),
        {a: F(sig(psi_inv.components[a])) for a in c.objects},
        name="Theta",
    )
    return ss2, theta


def transport_angulation(t: Angulation, w: EquivalenceWitness, universe: Universe, fail_fast: bool = False) -> TransportResult:
    """Angles of C' are the sequences isomorphic to images (F X, Theta o F(last))."""
    rep = Report(f"transport of {t.name or 'angulation'} along {w.F.name or 'F'}")
    src_u = Universe(w.source, universe.bound)
    if not _check_witness(w, rep, src_u):
        return TransportResult("angulation", None, None, rep)
    ss2, theta = transport_sigma(t.ss, w)
    rep.attach(ss2.validate(universe))
    fw = AngulatedFunctorWitness(w.F, theta)
    gens = [image_angle(fw, ss2.sigma, g) for g in t.representatives()]
    t2 = Angulation(ss2, t.n, gens, closure=t.closure, name=f"{t.name or 'T'}'")
    rep.attach(check_angulation_axioms(t2, universe, fail_fast))
    rep.attach(check_angulated_functor(fw, t, t2, src_u))
    return TransportResult("angulation", t2, fw, rep)


def transport_exact_structure(x: ExactStructure, w: EquivalenceWitness, universe: Universe, fail_fast: bool = False) -> TransportResult:
    """Admissible sequences of C' are those weakly isomorphic to images of admissible sequences."""
    rep = Report(f"transport of {x.name or 'exact structure'} along {w.F.name or 'F'}")
    src_u = Universe(w.source, universe.bound)
    if not _check_witness(w, rep, src_u):
        return TransportResult("exact", None, None, rep)
    gens = [apply_functor(w.F, g) for g in x.generators]
    x2 = ExactStructure(w.target, x.n, gens, zigzag_depth=x.zigzag_depth, name=f"{x.name or 'X'}'")
    rep.attach(check_n_exact_axioms(x2, universe, fail_fast))
    rep.attach(check_n_exact_functor(w.F, x, x2, universe))
    return TransportResult("exact", x2, w.F, rep)


def transport_abelian(n: int, w: EquivalenceWitness, universe: Universe, fail_fast: bool = False) -> TransportResult:
    """n-abelianness is a property of the additive category, so it passes to C' unchanged."""
    rep = Report(f"{n}-abelian transport along {w.F.name or 'F'}")
    src_u = Universe(w.source, universe.bound)
    if not _check_witness(w, rep, src_u):
        return TransportResult("abelian", None, None, rep)
    src = check_n_abelian_axioms(w.source, src_u, n, fail_fast)
    dst = check_n_abelian_axioms(w.target, universe, n, fail_fast)
    rep.attach(src)
    rep.attach(dst)
    if src.verdict == dst.verdict:
        rep.ok("same-verdict", source=src.verdict, target=dst.verdict)
    else:
        rep.add("same-verdict", FAIL, source=src.verdict, target=dst.verdict)
    return TransportResult("abelian", w.target, w.F, rep)


class TransportedE(BiadditiveE):
    """E'(C, A) = E(GC, GA) with E'(z, x) = E(Gz, Gx)."""

    def __init__(self, e: BiadditiveE, G: AddFunctor) -> None:
        self.base, self.G = e, G
        d = G.src
        objs = d.objects
        dims = {(c, a): e.dim(G.obj((c,)), G.obj((a,))) for c in objs for a in objs}
        left, right = {}, {}
        for c in objs:
            gc = G.obj((c,))
            for a in objs:
                for a2 in objs:
                    left[(c, a, a2)] = [e.left_matrix(G(g), gc) for g in d.basis((a,), (a2,))]
        for c2 in objs:
            for c in objs:
                for a in objs:
                    ga = G.obj((a,))
                    right[(c2, c, a)] = [e.right_matrix(G(f), ga) for f in d.basis((c2,), (c,))]
        super().__init__(d, dims, left, right, name=f"{e.name}'")
        self._perm: dict[tuple, np.ndarray] = {}

    def perm(self, c_obj: AddObject, a_obj: AddObject) -> np.ndarray:
        """idx with E'(C, A) coordinate k equal to E(GC, GA) coordinate idx[k]."""
        key = (tuple(c_obj), tuple(a_obj))
        if key not in self._perm:
            G, e = self.G, self.base
            c_parts = [G.obj((c,)) for c in c_obj]
            a_parts = [G.obj((a,)) for a in a_obj]
            offs, total = self.offsets(c_obj, a_obj)
            idx = np.zeros(total, dtype=np.int64)
            for i in range(len(a_obj)):
                for j in range(len(c_obj)):
                    k = self.dims[(c_obj[j], a_obj[i])]
                    idx[offs[i, j] : offs[i, j] + k] = e.embed_index(c_parts, a_parts, j, i)
            self._perm[key] = idx
        return self._perm[key]

    def to_base(self, d: Extension) -> Extension:
        G = self.G
        gc, ga = G.obj(d.c_obj), G.obj(d.a_obj)
        v = np.zeros(self.base.dim(gc, ga), dtype=np.int64)
        v[self.perm(d.c_obj, d.a_obj)] = d.coords
        return Extension(gc, ga, v)

    def from_base(self, d: Extension, c_obj: AddObject, a_obj: AddObject) -> Extension:
        return Extension(tuple(c_obj), tuple(a_obj), np.asarray(d.coords)[self.perm(c_obj, a_obj)] % self.cat.p)


def transported_exangulation(ex: Exangulated, w: EquivalenceWitness) -> tuple[Exangulated, ExFunctorWitness]:
    """(C', E', s') together with Gamma: E(C, A) -> E'(FC, FA) making F exangulated."""
    F, G, phi, psi = w.F, w.G, w.unit, w.counit
    c, d = w.source, w.target
    e2 = TransportedE(ex.E, G)
    phi_inv = phi.inverse()

    def realize(delta: Extension) -> ComplexN | None:
        x = ex.s(e2.to_base(delta))
        if x is None:
            return None
        a_obj, c_obj = delta.a_obj, delta.c_obj
        diffs = [F(dd) for dd in x.diffs]
        diffs[0] = d.compose(diffs[0], phi.component(a_obj))
        diffs[-1] = d.compose(phi_inv.component(c_obj), diffs[-1])
        objs = (a_obj,) + tuple(F.obj(o) for o in x.objects[1:-1]) + (c_obj,)
        return ComplexN(objs, tuple(diffs))

    ex2 = Exangulated(d, ex.n, e2, Realization(realize, name=f"{ex.s.name}'"), name=f"{ex.name}'")
    psi_inv = psi.inverse()
    gamma = {}
    for cc in c.objects:
        for aa in c.objects:
            cols = []
            k = ex.E.dim((cc,), (aa,))
            for b in range(k):
                v = np.zeros(k, dtype=np.int64)
                v[b] = 1
                delta = Extension((cc,), (aa,), v)
                # Gamma(delta) = (Psi_A^-1)_E (Psi_C)^E delta in E(GFC, GFA) = E'(FC, FA)
                moved = act_on_extension(ex.E, delta, x=psi_inv.component((aa,)), z=psi.component((cc,)))
                cols.append(e2.from_base(moved, F.obj((cc,)), F.obj((aa,))).coords)
            rows = e2.dim(F.obj((cc,)), F.obj((aa,)))
            gamma[(cc, aa)] = np.stack(cols, axis=1) if cols else np.zeros((rows, 0), dtype=np.int64)
    return ex2, ExFunctorWitness(F, gamma, name="Gamma")


def transport_exangulated_structure(ex: Exangulated, w: EquivalenceWitness, universe: Universe, fail_fast: bool = False) -> TransportResult:
    rep = Report(f"transport of {ex.name or 'exangulated structure'} along {w.F.name or 'F'}")
    src_u = Universe(w.source, universe.bound)
    if not _check_witness(w, rep, src_u):
        return TransportResult("exangulated", None, None, rep)
    ex2, fw = transported_exangulation(ex, w)
    rep.attach(check_exangulated_axioms(ex2, universe, fail_fast))
    rep.attach(check_exangulated_functor(fw, ex, ex2, src_u))
    return TransportResult("exangulated", ex2, fw, rep)


def transport_to_skeleton(t: Angulation, universe: Universe, fail_fast: bool = False) -> TransportResult:
    """Transport to the skeleton; there Sigma' must be a strict automorphism with an exact inverse."""
    cat = t.cat
    skel, w = compute_skeleton(cat, Universe(cat, universe.bound))
    res = transport_angulation(t, w, Universe(skel, universe.bound), fail_fast)
    rep = res.report
    if res.structure is None:
        return res
    sig = res.structure.sigma
    inv, irep = skeletal_inverse(sig, Universe(skel, universe.bound))
    rep.attach(irep)
    if inv is not None:
        ident = AddFunctor.identity(skel)
        su = Universe(skel, universe.bound)
        bad = functors_equal_on(compose_functors(inv, sig), ident, su) + functors_equal_on(compose_functors(sig, inv), ident, su)
        for b in bad:
            rep.add("exact-inverse", FAIL, **b)
        if not bad:
            rep.ok("exact-inverse")
    res.extras.update({"skeleton": skel, "witness": w, "sigma_inverse": inv})
    return res
