"""Command-line entry points: `nexang check JOB...` and `nexang transport JOB`.

Exit status: 0 all pass, 1 some failure, 2 input error, 3 inconclusive (and no failure).
"""
from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

import click
import numpy as np

from .angulated import AngulatedFunctorWitness, check_angulated_functor, check_angulation_axioms
from .category import AddFunctor, Universe, compose_functors, validate_base_category, validate_equivalence
from .complexes import SEED
from .exangulated import (
    ExFunctorWitness,
    check_exangulated_axioms,
    check_exangulated_functor,
    crosscheck_functor_theorems,
    gamma_from_theta,
    induced_from_exact,
    induced_from_sigma,
)
from .homalg import check_n_abelian_axioms, check_n_exact_axioms
from .io import SCHEMA_VERSION, Loader, _json_default, dump_angulation, dump_category, dump_equivalence, dump_exact_structure, dump_exangulation, dumps, write_file
from .report import FAIL, INCONCLUSIVE, PASS, InputError, Report
from .transport import (
    transport_abelian,
    transport_angulation,
    transport_exact_structure,
    transport_exangulated_structure,
    transport_to_skeleton,
)

__all__ = ["run_check", "run_transport", "exit_code", "main", "CHECK_KINDS"]

CHECK_KINDS = (
    "base-category",
    "equivalence",
    "angulated",
    "n-exact",
    "n-abelian",
    "exangulated",
    "angulated-functor",
    "exangulated-functor",
    "crosscheck",
)
# Job kinds whose axioms assert existence of objects or maps.
_EXISTENCE = {"angulated", "n-exact", "n-abelian", "exangulated", "crosscheck"}


def exit_code(verdict: str) -> int:
    return {PASS: 0, FAIL: 1, INCONCLUSIVE: 3}[verdict]


def _job(loader: Loader, path: str) -> dict:
    doc = loader.read(Path(path).resolve())
    job = doc["payload"]
    where = f"{path}#/payload"
    if not isinstance(job, dict) or job.get("type") != "job":
        raise InputError("payload is not a job", where)
    return job


def _req(job: dict, key: str, where: str) -> Any:
    if key not in job:
        raise InputError(f"missing field {key!r}", where)
    return job[key]


def _theta(loader: Loader, node: Any, fun: AddFunctor, sig_src: AddFunctor, sig_dst: AddFunctor, where: str):
    return loader.nat(node, where, compose_functors(fun, sig_src), compose_functors(sig_dst, fun), "Theta")


def _gamma(node: Any, fun: AddFunctor, e_src, e_dst, where: str) -> ExFunctorWitness:
    if not isinstance(node, list):
        raise InputError("gamma must be a list of {c, a, matrix}", where)
    gamma = {}
    cat = fun.src
    for k, ent in enumerate(node):
        loc = f"{where}/{k}"
        c, a = _req(ent, "c", loc), _req(ent, "a", loc)
        if c not in cat.index or a not in cat.index:
            raise InputError("unknown object", loc)
        m = np.array(_req(ent, "matrix", loc), dtype=np.int64)
        shape = (e_dst.dim(fun.obj((c,)), fun.obj((a,))), e_src.dim((c,), (a,)))
        if m.size == 0:
            m = m.reshape(shape)
        if m.shape != shape:
            raise InputError(f"matrix has shape {m.shape}, expected {shape}", loc)
        gamma[(c, a)] = m % cat.p
    for c in cat.objects:
        for a in cat.objects:
            if (c, a) not in gamma:
                shape = (e_dst.dim(fun.obj((c,)), fun.obj((a,))), e_src.dim((c,), (a,)))
                if 0 not in shape:
                    raise InputError(f"missing Gamma component at ({c}, {a})", where)
                gamma[(c, a)] = np.zeros(shape, dtype=np.int64)
    return ExFunctorWitness(fun, gamma, name="Gamma")


def _crosscheck(loader: Loader, job: dict, where: str, bound: int) -> Report:
    rep = Report(f"functor theorem crosscheck (B={bound})")
    for k, wn in enumerate(_req(job, "witnesses", where)):
        loc = f"{where}/witnesses/{k}"
        mode = _req(wn, "mode", loc)
        if mode in ("angulated", "gamma"):
            t1 = loader.angulation(_req(wn, "source", loc), f"{loc}/source")
            t2 = loader.angulation(_req(wn, "target", loc), f"{loc}/target")
            fun = loader.functor(_req(wn, "functor", loc), f"{loc}/functor", t1.cat, t2.cat)
            e1, e2 = induced_from_sigma(t1), induced_from_sigma(t2)
            if mode == "angulated":
                th = _theta(loader, _req(wn, "theta", loc), fun, t1.sigma, t2.sigma, f"{loc}/theta")
                sub = crosscheck_functor_theorems(Universe(t1.cat, bound), angulated=(AngulatedFunctorWitness(fun, th), t1, t2, e1, e2))
            else:
                g = _gamma(_req(wn, "gamma", loc), fun, e1.E, e2.E, f"{loc}/gamma")
                sub = crosscheck_functor_theorems(Universe(t1.cat, bound), gamma=(g, t1, t2, e1, e2))
        elif mode == "exact":
            x1 = loader.exact_structure(_req(wn, "source", loc), f"{loc}/source")
            x2 = loader.exact_structure(_req(wn, "target", loc), f"{loc}/target")
            fun = loader.functor(_req(wn, "functor", loc), f"{loc}/functor", x1.cat, x2.cat)
            e1, _ = induced_from_exact(x1, Universe(x1.cat, bound))
            e2, _ = induced_from_exact(x2, Universe(x2.cat, bound))
            sub = crosscheck_functor_theorems(Universe(x1.cat, bound), exact=(fun, x1, x2, e1, e2))
        else:
            raise InputError(f"unknown crosscheck mode {mode!r}", f"{loc}/mode")
        sub.title = wn.get("label", f"witness {k}")
        rep.attach(sub)
    return rep


def _dispatch(loader: Loader, job: dict, where: str, fail_fast: bool) -> Report:
    kind = _req(job, "kind", where)
    b = loader.bound
    if kind == "base-category":
        return validate_base_category(loader.category(_req(job, "category", where), f"{where}/category"))
    if kind == "equivalence":
        w = loader.equivalence(_req(job, "equivalence", where), f"{where}/equivalence")
        return validate_equivalence(w, Universe(w.source, b))
    if kind == "angulated":
        t = loader.angulation(_req(job, "angulation", where), f"{where}/angulation")
        return check_angulation_axioms(t, Universe(t.cat, b), fail_fast)
    if kind == "n-exact":
        x = loader.exact_structure(_req(job, "exact_structure", where), f"{where}/exact_structure")
        return check_n_exact_axioms(x, Universe(x.cat, b), fail_fast)
    if kind == "n-abelian":
        cat = loader.category(_req(job, "category", where), f"{where}/category")
        return check_n_abelian_axioms(cat, Universe(cat, b), int(_req(job, "n", where)), fail_fast)
    if kind == "exangulated":
        x = loader.exangulation(_req(job, "exangulation", where), f"{where}/exangulation")
        return check_exangulated_axioms(x, Universe(x.cat, b), fail_fast)
    if kind == "angulated-functor":
        t1 = loader.angulation(_req(job, "source", where), f"{where}/source")
        t2 = loader.angulation(_req(job, "target", where), f"{where}/target")
        fun = loader.functor(_req(job, "functor", where), f"{where}/functor", t1.cat, t2.cat)
        th = _theta(loader, _req(job, "theta", where), fun, t1.sigma, t2.sigma, f"{where}/theta")
        return check_angulated_functor(AngulatedFunctorWitness(fun, th), t1, t2, Universe(t1.cat, b))
    if kind == "exangulated-functor":
        x1 = loader.exangulation(_req(job, "source", where), f"{where}/source")
        x2 = loader.exangulation(_req(job, "target", where), f"{where}/target")
        fun = loader.functor(_req(job, "functor", where), f"{where}/functor", x1.cat, x2.cat)
        g = _gamma(_req(job, "gamma", where), fun, x1.E, x2.E, f"{where}/gamma")
        return check_exangulated_functor(g, x1, x2, Universe(x1.cat, b))
    if kind == "crosscheck":
        return _crosscheck(loader, job, where, b)
    raise InputError(f"unknown job kind {kind!r} (expected one of {', '.join(CHECK_KINDS)})", f"{where}/kind")


def _envelope(path: str, kind: str | None, bound: int | None, report: Report | None, code: int, error: str | None = None) -> dict:
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "job": path,
        "kind": kind,
        "universe_bound": bound,
        "seed": SEED,
        "exit_code": code,
    }
    if report is not None:
        out["verdict"] = report.verdict
        out["report"] = report.to_dict()
    if error is not None:
        out["error"] = error
    return out


def run_check(path: str, *, universe_bound: int | None = None, zigzag_depth: int | None = None, fail_fast: bool = False) -> tuple[int, dict, Report | None]:
    """Run one check job; returns (exit status, JSON-ready result, report)."""
    loader = Loader(Path(path).parent, bound=universe_bound, zigzag_depth=zigzag_depth)
    kind = None
    try:
        job = _job(loader, path)
        kind = job.get("kind")
        rep = _dispatch(loader, job, f"{path}#/payload", fail_fast)
    except InputError as exc:
        return 2, _envelope(path, kind, loader.bound, None, 2, str(exc)), None
    if loader.bound == 0 and kind in _EXISTENCE:
        rep.add("universe", INCONCLUSIVE, bound=0, reason="the universe holds only the zero object; existence axioms are not exercised")
    code = exit_code(rep.verdict)
    return code, _envelope(path, kind, loader.bound, rep, code), rep


def run_transport(path: str, *, universe_bound: int | None = None, zigzag_depth: int | None = None, fail_fast: bool = False) -> tuple[int, dict, Report | None]:
    """Run a transport job, write the target structure file, return (exit status, result, report)."""
    loader = Loader(Path(path).parent, bound=universe_bound, zigzag_depth=zigzag_depth)
    where = f"{path}#/payload"
    try:
        job = _job(loader, path)
        if job.get("kind") != "transport":
            raise InputError("job kind must be 'transport'", f"{where}/kind")
        out_path = Path(path).parent / _req(job, "output", where)
        snode, sloc = loader.node(_req(job, "structure", where), f"{where}/structure")
        stype = snode.get("type") if isinstance(snode, dict) else None
        wnode = _req(job, "witness", where)
        b = loader.bound
        if wnode == "skeleton":
            if stype != "angulation":
                raise InputError("skeleton transport takes an angulation", f"{where}/structure")
            t = loader.angulation(snode, sloc)
            res = transport_to_skeleton(t, Universe(t.cat, b), fail_fast)
            payload = None
            if res.structure is not None:
                inverse_ok = res.report.check_verdict("exact-inverse") == PASS and res.report.has_check("exact-inverse")
                res.structure.ss.strict_automorphism = inverse_ok
                payload = dump_angulation(res.structure)
        else:
            w = loader.equivalence(wnode, f"{where}/witness")
            u = Universe(w.target, b)
            if stype == "angulation":
                t = loader.angulation(snode, sloc)
                _same(t.cat, w, f"{where}/structure")
                res = transport_angulation(t, w, u, fail_fast)
                payload = dump_angulation(res.structure) if res.structure is not None else None
            elif stype == "exact_structure":
                x = loader.exact_structure(snode, sloc)
                _same(x.cat, w, f"{where}/structure")
                res = transport_exact_structure(x, w, u, fail_fast)
                payload = dump_exact_structure(res.structure) if res.structure is not None else None
            elif stype == "exangulation":
                x = loader.exangulation(snode, sloc)
                _same(x.cat, w, f"{where}/structure")
                res = transport_exangulated_structure(x, w, u, fail_fast)
                real = {"kind": "transported", "source": snode, "witness": dump_equivalence(w)}
                payload = dump_exangulation(res.structure, real) if res.structure is not None else None
            elif stype == "category":
                cat = loader.category(snode, sloc)
                _same(cat, w, f"{where}/structure")
                res = transport_abelian(int(_req(job, "n", where)), w, u, fail_fast)
                payload = dump_category(w.target)
            else:
                raise InputError(f"cannot transport a {stype!r}", f"{where}/structure")
    except InputError as exc:
        return 2, _envelope(path, "transport", loader.bound, None, 2, str(exc)), None
    rep = res.report
    if payload is not None:
        write_file(out_path, payload, loader.p, loader.bound)
    code = exit_code(rep.verdict)
    env = _envelope(path, "transport", loader.bound, rep, code)
    env["output"] = str(_req(job, "output", where)) if payload is not None else None
    return code, env, rep


def _same(cat, w, where: str) -> None:
    if w.source is not cat:
        raise InputError("the witness does not start at the structure's category", where)


def _text(env: dict, rep: Report | None, elapsed: float) -> str:
    lines = [f"job {env['job']} ({env['kind']}), B={env['universe_bound']}, seed={env['seed']}"]
    if rep is not None:
        lines.extend(rep.summary_lines(1))
        for e in rep.failures()[:20]:
            detail = json.dumps(e.detail, sort_keys=True, default=_json_default, separators=(",", ":"))
            lines.append(f"  FAIL {e.check}: {detail[:240]}{'...' if len(detail) > 240 else ''}")
    if env.get("error"):
        lines.append(f"  input error: {env['error']}")
    if env.get("output"):
        lines.append(f"  wrote {env['output']}")
    lines.append(f"  exit {env['exit_code']} ({elapsed:.2f}s)")
    return "\n".join(lines)


def _run_one(args: tuple) -> tuple[int, dict, str]:
    fn, path, opts, fmt = args
    t0 = time.perf_counter()
    code, env, rep = fn(path, **opts)
    return code, env, _text(env, rep, time.perf_counter() - t0) if fmt == "text" else ""


def _emit(fn, paths: tuple[str, ...], opts: dict, fmt: str, parallel: int) -> int:
    tasks = [(fn, p, opts, fmt) for p in paths]
    if parallel > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    if fmt == "json":
        body = results[0][1] if len(results) == 1 else {"schema_version": SCHEMA_VERSION, "results": [r[1] for r in results]}
        sys.stdout.write(dumps(body))
    else:
        sys.stdout.write("\n".join(r[2] for r in results) + "\n")
    codes = [r[0] for r in results]
    for c in (2, 1, 3):
        if c in codes:
            return c
    return 0


_options = [
    click.option("--universe-bound", type=click.IntRange(min=0), default=None, help="Maximum number of base summands per universe object (overrides the file header)."),
    click.option("--zigzag-depth", type=click.IntRange(min=1), default=None, help="Weak-isomorphism zigzag depth for exact-structure membership."),
    click.option("--report", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True),
    click.option("--parallel", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes; results keep input order."),
    click.option("--fail-fast", is_flag=True, help="Stop a suite at its first failing instance."),
]


def _with_options(f):
    for opt in reversed(_options):
        f = opt(f)
    return f


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Check and transport n-angulated, n-exact, n-abelian and n-exangulated structures over F_p."""


@main.command()
@click.argument("jobs", nargs=-1, required=True, type=click.Path(dir_okay=False))
@_with_options
def check(jobs, universe_bound, zigzag_depth, fmt, parallel, fail_fast) -> None:
    """Run check job files."""
    opts = {"universe_bound": universe_bound, "zigzag_depth": zigzag_depth, "fail_fast": fail_fast}
    sys.exit(_emit(run_check, jobs, opts, fmt, parallel))


@main.command()
@click.argument("jobs", nargs=-1, required=True, type=click.Path(dir_okay=False))
@_with_options
def transport(jobs, universe_bound, zigzag_depth, fmt, parallel, fail_fast) -> None:
    """Run transport job files and write the transported structures."""
    opts = {"universe_bound": universe_bound, "zigzag_depth": zigzag_depth, "fail_fast": fail_fast}
    sys.exit(_emit(run_transport, jobs, opts, fmt, parallel))


if __name__ == "__main__":  # pragma: no cover
    main()
