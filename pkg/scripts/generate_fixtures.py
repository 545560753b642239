"""Regenerate fixtures/ (structure files and example jobs) from the built-in examples."""
from __future__ import annotations

import argparse
from pathlib import Path

from nexang.angulated import Angulation
from nexang.category import Universe
from nexang.exangulated import split_exangulated
from nexang.fixtures import all_exact_structure, doubled_category, doubling_witness, stable_angulation, vect_category
from nexang.io import dump_angulation, dump_category, dump_equivalence, dump_exact_structure, dump_exangulation, write_file
from nexang.transport import transport_angulation, transport_exact_structure

P, BOUND = 2, 2


def job(**fields) -> dict:
    return {"type": "job", **fields}


def main(out: Path) -> None:
    jobs = out / "jobs"
    jobs.mkdir(parents=True, exist_ok=True)
    v, d = vect_category(P), doubled_category(P)
    t = stable_angulation(v)
    w = doubling_witness(v, d)

    x = all_exact_structure(v, 1, BOUND)
    files = {
        "stable.json": dump_angulation(t),
        "split_exangulated.json": dump_exangulation(split_exangulated(v, 1), {"kind": "split"}),
        "doubled_equivalence.json": dump_equivalence(w),
        "vect.json": dump_category(v),
        "doubled.json": dump_category(d),
        "vect_exact.json": dump_exact_structure(x),
        "doubled_exact.json": dump_exact_structure(transport_exact_structure(x, w, Universe(d, BOUND)).structure),
        "stable_doubled.json": dump_angulation(transport_angulation(t, w, Universe(d, BOUND)).structure),
        # Negative control: the identity angle dropped and no closure.
        "stable_broken.json": dump_angulation(Angulation(t.ss, 1, t.generators[1:], closure="none", name="stable-broken")),
    }
    for name, payload in files.items():
        write_file(out / name, payload, P, BOUND)

    sigma_theta = {"S": [1]}
    identity = {"type": "functor", "name": "Id", "on_objects": {"S": ["S"]}, "on_homs": [{"source": "S", "target": "S", "matrix": [[1]]}]}
    job_files = {
        "check_stable.json": job(kind="angulated", angulation={"$ref": "../stable.json"}),
        "check_stable_broken.json": job(kind="angulated", angulation={"$ref": "../stable_broken.json"}),
        "check_split.json": job(kind="exangulated", exangulation={"$ref": "../split_exangulated.json"}),
        "check_stable_exangulated.json": job(
            kind="exangulated",
            exangulation={
                "type": "exangulation",
                "name": "E_Sigma",
                "n": 1,
                "category": {"$ref": "../vect.json"},
                "realization": {"kind": "angles", "angulation": {"$ref": "../stable.json"}},
            },
        ),
        "check_equivalence.json": job(kind="equivalence", equivalence={"$ref": "../doubled_equivalence.json"}),
        "check_vect_exact.json": job(kind="n-exact", exact_structure={"$ref": "../vect_exact.json"}),
        "check_vect_abelian.json": job(kind="n-abelian", category={"$ref": "../vect.json"}, n=1),
        "check_category.json": job(kind="base-category", category={"$ref": "../doubled.json"}),
        "check_identity_functor.json": job(
            kind="angulated-functor",
            source={"$ref": "../stable.json"},
            target={"$ref": "../stable.json"},
            functor=identity,
            theta=sigma_theta,
        ),
        "crosscheck.json": job(
            kind="crosscheck",
            witnesses=[
                {
                    "label": "identity/theta",
                    "mode": "angulated",
                    "source": {"$ref": "../stable.json"},
                    "target": {"$ref": "../stable.json"},
                    "functor": identity,
                    "theta": sigma_theta,
                },
                {
                    "label": "doubling/theta",
                    "mode": "angulated",
                    "source": {"$ref": "../stable.json"},
                    "target": {"$ref": "../stable_doubled.json"},
                    "functor": {"$ref": "../doubled_equivalence.json", "$part": "F"},
                    "theta": sigma_theta,
                },
                {
                    "label": "zero-theta (negative)",
                    "mode": "angulated",
                    "source": {"$ref": "../stable.json"},
                    "target": {"$ref": "../stable_doubled.json"},
                    "functor": {"$ref": "../doubled_equivalence.json", "$part": "F"},
                    "theta": {"S": [0]},
                },
                {
                    "label": "doubling/exact",
                    "mode": "exact",
                    "source": {"$ref": "../vect_exact.json"},
                    "target": {"$ref": "../doubled_exact.json"},
                    "functor": {"$ref": "../doubled_equivalence.json", "$part": "F"},
                },
            ],
        ),
        "transport_stable.json": job(
            kind="transport",
            structure={"$ref": "../stable.json"},
            witness={"$ref": "../doubled_equivalence.json"},
            output="out/stable_transported.json",
        ),
        "transport_split.json": job(
            kind="transport",
            structure={"$ref": "../split_exangulated.json"},
            witness={"$ref": "../doubled_equivalence.json"},
            output="out/split_transported.json",
        ),
        "transport_vect_exact.json": job(
            kind="transport",
            structure={"$ref": "../vect_exact.json"},
            witness={"$ref": "../doubled_equivalence.json"},
            output="out/vect_exact_transported.json",
        ),
        "transport_skeleton.json": job(
            kind="transport",
            structure={"$ref": "../stable_doubled.json"},
            witness="skeleton",
            output="out/stable_skeleton.json",
        ),
        "check_bound_zero.json": job(kind="angulated", angulation={"$ref": "../stable.json"}),
    }
    for name, payload in job_files.items():
        write_file(jobs / name, payload, P, 0 if name == "check_bound_zero.json" else BOUND)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "fixtures")
    main(ap.parse_args().out)
