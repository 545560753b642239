"""Workbench JSON files: loading with reference resolution, and deterministic emission."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .angulated import Angulation, SigmaStructure
from .category import AddFunctor, AddMorphism, BaseCategory, EquivalenceWitness, NatTransform, Universe, compose_functors
from .complexes import ComplexN, SigmaSequence, split_complex
from .exangulated import BiadditiveE, Exangulated, Extension, Realization, induced_from_exact, induced_from_sigma, split_exangulated
from .homalg import ExactStructure
from .report import InputError

__all__ = [
    "SCHEMA_VERSION",
    "Loader",
    "dumps",
    "write_file",
    "header",
    "dump_category",
    "dump_functor",
    "dump_equivalence",
    "dump_sigma",
    "dump_angulation",
    "dump_exact_structure",
    "dump_exangulation",
]

SCHEMA_VERSION = "1"


def _ints(a) -> Any:
    return np.asarray(a, dtype=np.int64).tolist()


def _json_default(o: Any) -> Any:
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, default=_json_default, ensure_ascii=False) + "\n"


def header(p: int, bound: int) -> dict:
    return {"schema_version": SCHEMA_VERSION, "field_char": int(p), "universe_bound": int(bound)}


def write_file(path: str | Path, payload: dict, p: int, bound: int) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps({"header": header(p, bound), "payload": payload}), encoding="utf-8")


# -- emission ---------------------------------------------------------------


def dump_category(c: BaseCategory) -> dict:
    hom = [{"source": a, "target": b, "dim": c.hom_dim[(a, b)]} for a in c.objects for b in c.objects if c.hom_dim[(a, b)]]
    comp = []
    for (a, b, x), t in c.comp.items():
        if t.size:
            comp.append({"objects": [a, b, x], "tensor": _ints(t)})
    return {
        "type": "category",
        "name": c.name,
        "objects": list(c.objects),
        "hom": hom,
        "identity": {a: _ints(c.ident[a]) for a in c.objects},
        "composition": comp,
    }


def dump_functor(f: AddFunctor, with_ends: bool = True) -> dict:
    out = {
        "type": "functor",
        "name": f.name,
        "on_objects": {a: list(f.on_objects[a]) for a in f.src.objects},
        "on_homs": [
            {"source": a, "target": b, "matrix": _ints(m)} for (a, b), m in f.on_homs.items() if m.size
        ],
    }
    if with_ends:
        out["source"] = dump_category(f.src)
        out["target"] = dump_category(f.dst)
    return out


def _components(eta: NatTransform) -> dict:
    return {a: _ints(m.vec) for a, m in eta.components.items()}


def dump_equivalence(w: EquivalenceWitness) -> dict:
    return {
        "type": "equivalence",
        "source": dump_category(w.source),
        "target": dump_category(w.target),
        "F": dump_functor(w.F, with_ends=False),
        "G": dump_functor(w.G, with_ends=False),
        "unit": _components(w.unit),
        "counit": _components(w.counit),
    }


def dump_sigma(ss: SigmaStructure) -> dict:
    w = ss.witness
    return {
        "sigma": dump_functor(w.F, with_ends=False),
        "sigma_minus": dump_functor(w.G, with_ends=False),
        "unit": _components(w.unit),
        "counit": _components(w.counit),
        "strict": bool(ss.strict_automorphism),
    }


def _dump_seq(s) -> dict:
    out = {"objects": [list(o) for o in s.objects], "diffs": [_ints(d.vec) for d in s.diffs]}
    if isinstance(s, SigmaSequence):
        out["last"] = _ints(s.last.vec)
    return out


def dump_angulation(t: Angulation) -> dict:
    return {
        "type": "angulation",
        "name": t.name,
        "n": t.n,
        "category": dump_category(t.cat),
        "sigma": dump_sigma(t.ss),
        "closure": t.closure,
        "generators": [_dump_seq(g) for g in t.generators],
    }


def dump_exact_structure(x: ExactStructure) -> dict:
    return {
        "type": "exact_structure",
        "name": x.name,
        "n": x.n,
        "zigzag_depth": x.zigzag_depth,
        "category": dump_category(x.cat),
        "generators": [_dump_seq(g) for g in x.generators],
    }


def _dump_e(e: BiadditiveE) -> dict:
    objs = e.cat.objects
    return {
        "dims": [{"c": c, "a": a, "dim": e.dims[(c, a)]} for c in objs for a in objs if e.dims[(c, a)]],
        "left": [
            {"c": c, "a": a, "a2": a2, "matrices": _ints(t)}
            for (c, a, a2), t in e.left.items()
            if t.size
        ],
        "right": [
            {"c2": c2, "c": c, "a": a, "matrices": _ints(t)}
            for (c2, c, a), t in e.right.items()
            if t.size
        ],
    }


def dump_exangulation(x: Exangulated, realization: dict) -> dict:
    """`realization` is the realization node (split, table, angles, admissible or transported)."""
    return {
        "type": "exangulation",
        "name": x.name,
        "n": x.n,
        "category": dump_category(x.cat),
        "E": _dump_e(x.E),
        "realization": realization,
    }


# -- loading ----------------------------------------------------------------


class Loader:
    """Resolves inline payloads and {"$ref": path} nodes; equal categories become one object."""

    def __init__(self, base: str | Path, p: int | None = None, bound: int | None = None, zigzag_depth: int | None = None) -> None:
        self.base = Path(base)
        self.p = p
        self.bound = bound
        self.zigzag_depth = zigzag_depth
        self._cats: dict[str, BaseCategory] = {}
        self._files: dict[Path, dict] = {}

    # file level
    def read(self, path: str | Path) -> dict:
        path = Path(path)
        if not path.is_absolute():
            path = self.base / path
        path = path.resolve()
        if path not in self._files:
            try:
                doc = json.loads(path.read_text(encoding="utf-8"))
            except FileNotFoundError:
                raise InputError("file not found", str(path)) from None
            except json.JSONDecodeError as exc:
                raise InputError(f"invalid JSON ({exc.msg})", f"{path}:{exc.lineno}") from None
            self._check_header(doc, str(path))
            self._files[path] = doc
        return self._files[path]

    def _check_header(self, doc: Any, where: str) -> None:
        if not isinstance(doc, dict) or "header" not in doc or "payload" not in doc:
            raise InputError("expected an object with 'header' and 'payload'", where)
        h = doc["header"]
        if h.get("schema_version") != SCHEMA_VERSION:
            raise InputError(f"unsupported schema_version {h.get('schema_version')!r}", f"{where}#/header")
        p = h.get("field_char")
        if not isinstance(p, int) or p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise InputError("field_char must be a prime", f"{where}#/header/field_char")
        if self.p is None:
            self.p = p
        elif self.p != p:
            raise InputError(f"field_char {p} differs from {self.p}", f"{where}#/header/field_char")
        if self.bound is None:
            b = h.get("universe_bound", 2)
            if not isinstance(b, int) or b < 0:
                raise InputError("universe_bound must be a non-negative integer", f"{where}#/header/universe_bound")
            self.bound = b

    def node(self, node: Any, where: str) -> tuple[Any, str]:
        """Follow a $ref (to a file's payload, or one field of it via $part); returns (node, location)."""
        if isinstance(node, dict) and "$ref" in node:
            ref = node["$ref"]
            if not isinstance(ref, str):
                raise InputError("$ref must be a path", where)
            path = (self.base / ref).resolve()
            try:
                doc = self.read(path)
            except InputError as exc:
                raise InputError(f"unresolved reference {ref!r} ({exc})", where) from None
            payload, loc = doc["payload"], f"{path}#/payload"
            part = node.get("$part")
            if part is not None:
                if not isinstance(payload, dict) or part not in payload:
                    raise InputError(f"referenced payload has no part {part!r}", where)
                payload, loc = payload[part], f"{loc}/{part}"
            return payload, loc
        if node is None:
            raise InputError("missing required field", where)
        return node, where

    @staticmethod
    def _field(node: dict, key: str, where: str) -> Any:
        if not isinstance(node, dict):
            raise InputError("expected an object", where)
        if key not in node:
            raise InputError(f"missing field {key!r}", where)
        return node[key]

    def _expect(self, node: dict, kind: str, where: str) -> None:
        if node.get("type", kind) != kind:
            raise InputError(f"expected a {kind}, found {node.get('type')!r}", where)

    # categories and functors
    def category(self, node: Any, where: str) -> BaseCategory:
        node, where = self.node(node, where)
        self._expect(node, "category", where)
        key = json.dumps(node, sort_keys=True)
        if key in self._cats:
            return self._cats[key]
        objs = self._field(node, "objects", where)
        if not isinstance(objs, list) or not all(isinstance(o, str) for o in objs):
            raise InputError("objects must be a list of names", f"{where}/objects")
        hom = {}
        for k, h in enumerate(node.get("hom", [])):
            loc = f"{where}/hom/{k}"
            a, b = self._field(h, "source", loc), self._field(h, "target", loc)
            for o in (a, b):
                if o not in objs:
                    raise InputError(f"unknown object {o!r}", loc)
            hom[(a, b)] = int(self._field(h, "dim", loc))
        comp = {}
        for k, c in enumerate(node.get("composition", [])):
            loc = f"{where}/composition/{k}"
            trip = self._field(c, "objects", loc)
            if not isinstance(trip, list) or len(trip) != 3 or any(o not in objs for o in trip):
                raise InputError("objects must name three known objects", loc)
            comp[tuple(trip)] = np.array(self._field(c, "tensor", loc), dtype=np.int64)
        ident = self._field(node, "identity", where)
        try:
            cat = BaseCategory(self.p, objs, hom, comp, ident, name=node.get("name", ""))
        except InputError as exc:
            raise InputError(str(exc), where) from None
        self._cats[key] = cat
        return cat

    def functor(self, node: Any, where: str, src: BaseCategory | None = None, dst: BaseCategory | None = None) -> AddFunctor:
        node, where = self.node(node, where)
        self._expect(node, "functor", where)
        if src is None:
            src = self.category(self._field(node, "source", where), f"{where}/source")
        if dst is None:
            dst = self.category(self._field(node, "target", where), f"{where}/target")
        on_obj = self._field(node, "on_objects", where)
        homs = {}
        for k, h in enumerate(node.get("on_homs", [])):
            loc = f"{where}/on_homs/{k}"
            a, b = self._field(h, "source", loc), self._field(h, "target", loc)
            if a not in src.index or b not in src.index:
                raise InputError("unknown object", loc)
            homs[(a, b)] = np.array(self._field(h, "matrix", loc), dtype=np.int64)
        try:
            for a, im in on_obj.items():
                if a not in src.index:
                    raise InputError(f"unknown object {a!r}", f"{where}/on_objects")
                for o in im:
                    if o not in dst.index:
                        raise InputError(f"unknown target object {o!r}", f"{where}/on_objects/{a}")
            return AddFunctor(src, dst, on_obj, homs, name=node.get("name", ""))
        except InputError as exc:
            raise InputError(str(exc), where) from None

    def nat(self, node: Any, where: str, source: AddFunctor, target: AddFunctor, name: str) -> NatTransform:
        if not isinstance(node, dict):
            raise InputError("components must be an object keyed by base object", where)
        cat = source.dst
        comps = {}
        for a in source.src.objects:
            if a not in node:
                raise InputError(f"missing component at {a!r}", where)
            x, y = source.obj((a,)), target.obj((a,))
            vec = np.array(node[a], dtype=np.int64).reshape(-1)
            if vec.shape[0] != cat.dim(x, y):
                raise InputError(f"component has {vec.shape[0]} coordinates, expected {cat.dim(x, y)}", f"{where}/{a}")
            comps[a] = AddMorphism(x, y, vec % cat.p)
        return NatTransform(source, target, comps, name=name)

    def equivalence(self, node: Any, where: str) -> EquivalenceWitness:
        node, where = self.node(node, where)
        self._expect(node, "equivalence", where)
        c = self.category(self._field(node, "source", where), f"{where}/source")
        d = self.category(self._field(node, "target", where), f"{where}/target")
        F = self.functor(self._field(node, "F", where), f"{where}/F", c, d)
        G = self.functor(self._field(node, "G", where), f"{where}/G", d, c)
        unit = self.nat(self._field(node, "unit", where), f"{where}/unit", AddFunctor.identity(d), compose_functors(F, G), "unit")
        counit = self.nat(self._field(node, "counit", where), f"{where}/counit", compose_functors(G, F), AddFunctor.identity(c), "counit")
        return EquivalenceWitness(F, G, unit, counit)

    def sigma(self, node: Any, where: str, cat: BaseCategory) -> SigmaStructure:
        node, where = self.node(node, where)
        if node.get("identity"):
            return SigmaStructure.identity(cat)
        s = self.functor(self._field(node, "sigma", where), f"{where}/sigma", cat, cat)
        sm = self.functor(self._field(node, "sigma_minus", where), f"{where}/sigma_minus", cat, cat)
        idf = AddFunctor.identity(cat)
        unit = self.nat(self._field(node, "unit", where), f"{where}/unit", idf, compose_functors(s, sm), "unit")
        counit = self.nat(self._field(node, "counit", where), f"{where}/counit", compose_functors(sm, s), idf, "counit")
        return SigmaStructure(EquivalenceWitness(s, sm, unit, counit), strict_automorphism=bool(node.get("strict", False)))

    # sequences
    def _objects(self, node: Any, cat: BaseCategory, where: str) -> list[tuple]:
        if not isinstance(node, list):
            raise InputError("objects must be a list of object lists", where)
        out = []
        for k, o in enumerate(node):
            try:
                out.append(cat.check_object(o))
            except InputError as exc:
                raise InputError(str(exc), f"{where}/{k}") from None
        return out

    def _morphism(self, vec: Any, x: tuple, y: tuple, cat: BaseCategory, where: str) -> AddMorphism:
        v = np.array(vec, dtype=np.int64).reshape(-1)
        if v.shape[0] != cat.dim(x, y):
            raise InputError(f"{v.shape[0]} coordinates, expected dim Hom = {cat.dim(x, y)}", where)
        return AddMorphism(x, y, v % cat.p)

    def complex(self, node: Any, cat: BaseCategory, where: str) -> ComplexN:
        objs = self._objects(self._field(node, "objects", where), cat, f"{where}/objects")
        diffs = self._field(node, "diffs", where)
        if len(diffs) != len(objs) - 1:
            raise InputError("need one map between consecutive objects", f"{where}/diffs")
        ds = [self._morphism(v, objs[i], objs[i + 1], cat, f"{where}/diffs/{i}") for i, v in enumerate(diffs)]
        return ComplexN(tuple(objs), tuple(ds))

    def sigma_sequence(self, node: Any, cat: BaseCategory, sig: AddFunctor, where: str) -> SigmaSequence:
        x = self.complex(node, cat, where)
        last = self._morphism(self._field(node, "last", where), x.objects[-1], sig.obj(x.objects[0]), cat, f"{where}/last")
        return SigmaSequence(x.objects, x.diffs, last, sig)

    # structures
    def angulation(self, node: Any, where: str) -> Angulation:
        node, where = self.node(node, where)
        self._expect(node, "angulation", where)
        cat = self.category(self._field(node, "category", where), f"{where}/category")
        ss = self.sigma(self._field(node, "sigma", where), f"{where}/sigma", cat)
        n = int(self._field(node, "n", where))
        gens = [
            self.sigma_sequence(g, cat, ss.sigma, f"{where}/generators/{k}") for k, g in enumerate(self._field(node, "generators", where))
        ]
        return Angulation(ss, n, gens, closure=node.get("closure", "sums"), name=node.get("name", ""))

    def exact_structure(self, node: Any, where: str) -> ExactStructure:
        node, where = self.node(node, where)
        self._expect(node, "exact_structure", where)
        cat = self.category(self._field(node, "category", where), f"{where}/category")
        n = int(self._field(node, "n", where))
        gens = [self.complex(g, cat, f"{where}/generators/{k}") for k, g in enumerate(self._field(node, "generators", where))]
        depth = self.zigzag_depth if self.zigzag_depth is not None else int(node.get("zigzag_depth", 1))
        return ExactStructure(cat, n, gens, zigzag_depth=depth, name=node.get("name", ""))

    def biadditive(self, node: Any, cat: BaseCategory, where: str) -> BiadditiveE:
        dims = {}
        for k, d in enumerate(node.get("dims", [])):
            loc = f"{where}/dims/{k}"
            c, a = self._field(d, "c", loc), self._field(d, "a", loc)
            if c not in cat.index or a not in cat.index:
                raise InputError("unknown object", loc)
            dims[(c, a)] = int(self._field(d, "dim", loc))
        left = {}
        for k, d in enumerate(node.get("left", [])):
            loc = f"{where}/left/{k}"
            left[(self._field(d, "c", loc), self._field(d, "a", loc), self._field(d, "a2", loc))] = self._field(d, "matrices", loc)
        right = {}
        for k, d in enumerate(node.get("right", [])):
            loc = f"{where}/right/{k}"
            right[(self._field(d, "c2", loc), self._field(d, "c", loc), self._field(d, "a", loc))] = self._field(d, "matrices", loc)
        try:
            return BiadditiveE(cat, dims, left, right, name=node.get("name", "E"))
        except (InputError, ValueError) as exc:
            raise InputError(str(exc), where) from None

    def exangulation(self, node: Any, where: str) -> Exangulated:
        from .transport import transported_exangulation

        node, where = self.node(node, where)
        self._expect(node, "exangulation", where)
        cat = self.category(self._field(node, "category", where), f"{where}/category")
        n = int(self._field(node, "n", where))
        real = self._field(node, "realization", where)
        kind = self._field(real, "kind", f"{where}/realization")
        name = node.get("name", "")
        if kind == "split":
            if "E" in node:
                e = self.biadditive(node["E"], cat, f"{where}/E")
                x = split_exangulated(cat, n)
                return Exangulated(cat, n, e, x.s, name=name or x.name)
            x = split_exangulated(cat, n)
            x.name = name or x.name
            return x
        if kind == "table":
            e = self.biadditive(self._field(node, "E", where), cat, f"{where}/E")
            table = {}
            for k, ent in enumerate(self._field(real, "entries", f"{where}/realization")):
                loc = f"{where}/realization/entries/{k}"
                c_obj = cat.check_object(self._field(ent, "c", loc))
                a_obj = cat.check_object(self._field(ent, "a", loc))
                coords = np.array(self._field(ent, "coords", loc), dtype=np.int64).reshape(-1)
                if coords.shape[0] != e.dim(c_obj, a_obj):
                    raise InputError("coordinate vector has the wrong length", f"{loc}/coords")
                table[Extension(c_obj, a_obj, coords % cat.p).key()] = self.complex(self._field(ent, "complex", loc), cat, f"{loc}/complex")
            return Exangulated(cat, n, e, Realization(table=table, name="table"), name=name)
        if kind == "angles":
            t = self.angulation(self._field(real, "angulation", f"{where}/realization"), f"{where}/realization/angulation")
            if t.cat is not cat:
                raise InputError("angulation lives on a different category", f"{where}/realization/angulation")
            x = induced_from_sigma(t)
            x.name = name or x.name
            return self._derived(node, x, where)
        if kind == "admissible":
            xs = self.exact_structure(self._field(real, "exact_structure", f"{where}/realization"), f"{where}/realization/exact_structure")
            if xs.cat is not cat:
                raise InputError("exact structure lives on a different category", f"{where}/realization/exact_structure")
            x, _ = induced_from_exact(xs, Universe(cat, self.bound))
            x.name = name or x.name
            return self._derived(node, x, where)
        if kind == "transported":
            src = self.exangulation(self._field(real, "source", f"{where}/realization"), f"{where}/realization/source")
            w = self.equivalence(self._field(real, "witness", f"{where}/realization"), f"{where}/realization/witness")
            if w.source is not src.cat or w.target is not cat:
                raise InputError("witness does not connect the source category to this one", f"{where}/realization/witness")
            x, _ = transported_exangulation(src, w)
            x.name = name or x.name
            return self._derived(node, x, where)
        raise InputError(f"unknown realization kind {kind!r}", f"{where}/realization/kind")

    def _derived(self, node: dict, x: Exangulated, where: str) -> Exangulated:
        """A stated E for a derived realization must agree with the derived one."""
        if "E" in node and _dump_e(self.biadditive(node["E"], x.cat, f"{where}/E")) != _dump_e(x.E):
            raise InputError("stated E differs from the one induced by the realization", f"{where}/E")
        return x
