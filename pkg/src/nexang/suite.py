"""The functor-theorem crosscheck suite: identities, doubling equivalences and corrupted witnesses."""
from __future__ import annotations

from .angulated import AngulatedFunctorWitness
from .category import AddFunctor, NatTransform, Universe, compose_functors, compute_skeleton
from .exangulated import ExFunctorWitness, crosscheck_functor_theorems, gamma_from_theta, induced_from_exact, induced_from_sigma
from .fixtures import (
    all_exact_structure,
    doubled_category,
    doubling_witness,
    nakayama_category,
    split_exact_structure,
    stable_angulation,
    vect_category,
)
from .report import Report
from .transport import transport_angulation, transport_exact_structure, transport_sigma

__all__ = ["crosscheck_witnesses", "run_crosscheck_suite"]


def _zero_theta(fun: AddFunctor, sig_src: AddFunctor, sig_dst: AddFunctor) -> NatTransform:
    src, dst = compose_functors(fun, sig_src), compose_functors(sig_dst, fun)
    return NatTransform(src, dst, {a: dst.dst.zero(src.obj((a,)), dst.obj((a,))) for a in fun.src.objects}, name="zero")


def crosscheck_witnesses(bound: int = 2) -> list[tuple[str, dict]]:
    """(label, keyword arguments for crosscheck_functor_theorems) for every witness of the suite."""
    out: list[tuple[str, dict]] = []
    v, d = vect_category(), doubled_category()
    t = stable_angulation(v)
    ex_t = induced_from_sigma(t)
    idv = AddFunctor.identity(v)
    theta_id = NatTransform.identity(compose_functors(idv, t.sigma))
    theta_id = NatTransform(compose_functors(idv, t.sigma), compose_functors(t.sigma, idv), theta_id.components, name="id")
    w_id = AngulatedFunctorWitness(idv, theta_id)
    out.append(("identity/stable/theta", {"angulated": (w_id, t, t, ex_t, ex_t)}))
    out.append(("identity/stable/gamma", {"gamma": (gamma_from_theta(w_id, ex_t.E, ex_t.E), t, t, ex_t, ex_t)}))

    dw = doubling_witness(v, d)
    tr = transport_angulation(t, dw, Universe(d, bound))
    t2 = tr.structure
    ex_t2 = induced_from_sigma(t2)
    w_d = tr.functor_witness
    out.append(("doubling/stable/theta", {"angulated": (w_d, t, t2, ex_t, ex_t2)}))
    out.append(("doubling/stable/gamma", {"gamma": (gamma_from_theta(w_d, ex_t.E, ex_t2.E), t, t2, ex_t, ex_t2)}))

    # Retraction G: doubled -> vect, with Theta read off from the transported Sigma'.
    ss2, _ = transport_sigma(t.ss, dw)
    G = dw.G
    theta_g = NatTransform(
        compose_functors(G, t2.sigma),
        compose_functors(t.sigma, G),
        {a: v.identity(G.obj((a,))) for a in d.objects},
        name="id",
    )
    w_g = AngulatedFunctorWitness(G, theta_g)
    out.append(("retraction/stable/theta", {"angulated": (w_g, t2, t, ex_t2, ex_t)}))

    z = AngulatedFunctorWitness(idv, _zero_theta(idv, t.sigma, t.sigma))
    out.append(("corrupted-theta/stable", {"angulated": (z, t, t, ex_t, ex_t)}))
    zg = ExFunctorWitness(idv, {k: 0 * m for k, m in gamma_from_theta(w_id, ex_t.E, ex_t.E).gamma.items()}, name="zero")
    out.append(("corrupted-gamma/stable", {"gamma": (zg, t, t, ex_t, ex_t)}))

    uv = Universe(v, bound)
    xv = all_exact_structure(v, 1, bound)
    exv, _ = induced_from_exact(xv, uv)
    out.append(("identity/vect-exact", {"exact": (idv, xv, xv, exv, exv)}))
    xd = transport_exact_structure(xv, dw, Universe(d, bound)).structure
    exd, _ = induced_from_exact(xd, Universe(d, bound))
    out.append(("doubling/vect-exact", {"exact": (dw.F, xv, xd, exv, exd)}))

    nk = nakayama_category()
    un = Universe(nk, bound)
    xa = all_exact_structure(nk, 1, bound)
    xs = split_exact_structure(nk, 1)
    exa, _ = induced_from_exact(xa, un)
    exs, _ = induced_from_exact(xs, un)
    idn = AddFunctor.identity(nk)
    out.append(("identity/nakayama-all", {"exact": (idn, xa, xa, exa, exa)}))
    out.append(("identity/nakayama-all-to-split", {"exact": (idn, xa, xs, exa, exs)}))
    out.append(("identity/nakayama-split-to-all", {"exact": (idn, xs, xa, exs, exa)}))

    skel, sw = compute_skeleton(d, Universe(d, bound))
    ts = transport_angulation(t2, sw, Universe(skel, bound))
    out.append(("skeleton/stable/theta", {"angulated": (ts.functor_witness, t2, ts.structure, ex_t2, induced_from_sigma(ts.structure))}))
    return out


def run_crosscheck_suite(bound: int = 2) -> Report:
    rep = Report(f"functor theorem crosscheck suite (B={bound})")
    for label, kw in crosscheck_witnesses(bound):
        src_cat = next(iter(kw.values()))[0]
        cat = src_cat.functor.src if hasattr(src_cat, "functor") else src_cat.src
        sub = crosscheck_functor_theorems(Universe(cat, bound), **kw)
        sub.title = label
        rep.attach(sub)
    return rep
