"""Finite F_p-linear categories, their additive closures, functors and equivalences.

A base category lists objects, Hom dimensions and structure constants for
composition.  Objects of the additive closure are tuples of base object
names (formal direct sums); a morphism X -> Y is one flat coordinate vector
holding the blocks Hom(X_j, Y_i) in row-major order (i over the target,
j over the source).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .linalg import PrimeField, inverse as mat_inverse, rank, solve_linear, span_elements
from .report import FAIL, InputError, Report

__all__ = [
    "AddObject",
    "AddMorphism",
    "BaseCategory",
    "Universe",
    "AddFunctor",
    "NatTransform",
    "EquivalenceWitness",
    "validate_base_category",
    "validate_equivalence",
    "find_isomorphisms",
    "first_isomorphism",
    "compute_skeleton",
    "skeletal_inverse",
    "search_idempotent_splitting",
    "compose_functors",
    "functors_equal_on",
]

AddObject = tuple  # tuple[str, ...]


class AddMorphism:
    """A morphism of the additive closure; immutable."""

    __slots__ = ("source", "target", "vec")

    def __init__(self, source: Sequence[str], target: Sequence[str], vec) -> None:
        self.source = tuple(source)
        self.target = tuple(target)
        v = np.array(vec, dtype=np.int64).reshape(-1)
        v.flags.writeable = False
        self.vec = v

    def key(self) -> tuple:
        return (self.source, self.target, self.vec.tobytes())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AddMorphism):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def is_zero(self) -> bool:
        return not np.any(self.vec)

    def __repr__(self) -> str:
        return f"AddMorphism({list(self.source)} -> {list(self.target)}, {self.vec.tolist()})"


class BaseCategory:
    """Objects, Hom dimensions and composition constants of a finite F_p-linear category.

    comp[(a, b, c)] has shape (dim Hom(a,c), dim Hom(b,c), dim Hom(a,b)):
    entry [r, s, t] is the r-th coordinate of (basis_s of Hom(b,c)) o (basis_t of Hom(a,b)).
    """

    def __init__(
        self,
        p: int,
        objects: Sequence[str],
        hom_dim: Mapping[tuple[str, str], int],
        comp: Mapping[tuple[str, str, str], np.ndarray],
        ident: Mapping[str, Sequence[int]],
        name: str = "",
    ) -> None:
        self.field = PrimeField(p)
        self.p = p
        self.name = name
        self.objects = list(objects)
        if len(set(self.objects)) != len(self.objects):
            raise InputError("duplicate object names", "category.objects")
        self.index = {o: i for i, o in enumerate(self.objects)}
        self.hom_dim: dict[tuple[str, str], int] = {}
        for a in self.objects:
            for b in self.objects:
                d = int(hom_dim.get((a, b), 0))
                if d < 0:
                    raise InputError("negative dimension", f"hom_dim[{a},{b}]")
                self.hom_dim[(a, b)] = d
        for key in hom_dim:
            if key[0] not in self.index or key[1] not in self.index:
                raise InputError("unknown object", f"hom_dim[{key[0]},{key[1]}]")
        self.comp: dict[tuple[str, str, str], np.ndarray] = {}
        for a, b, c in product(self.objects, repeat=3):
            shape = (self.hom_dim[(a, c)], self.hom_dim[(b, c)], self.hom_dim[(a, b)])
            if (a, b, c) in comp:
                arr = np.asarray(comp[(a, b, c)], dtype=np.int64)
                if arr.size == 0 and 0 in shape:
                    arr = np.zeros(shape, dtype=np.int64)
                if arr.shape != shape:
                    raise InputError(f"shape {arr.shape}, expected {shape}", f"comp[{a},{b},{c}]")
                self.comp[(a, b, c)] = arr % p
            elif 0 in shape:
                self.comp[(a, b, c)] = np.zeros(shape, dtype=np.int64)
            else:
                raise InputError("missing composition table", f"comp[{a},{b},{c}]")
        self.ident: dict[str, np.ndarray] = {}
        for a in self.objects:
            if a not in ident:
                raise InputError("missing identity", f"id[{a}]")
            v = np.asarray(ident[a], dtype=np.int64).reshape(-1)
            if v.shape[0] != self.hom_dim[(a, a)]:
                raise InputError("identity vector has wrong length", f"id[{a}]")
            self.ident[a] = v % p
        self._layouts: dict = {}
        self._tensors: dict = {}
        self._iso_cache: dict = {}

    # -- layout -----------------------------------------------------------
    def check_object(self, x: Sequence[str]) -> AddObject:
        x = tuple(x)
        for o in x:
            if o not in self.index:
                raise InputError(f"unknown object {o!r}", "object")
        return x

    def layout(self, x: AddObject, y: AddObject) -> np.ndarray:
        """offsets[i, j] of block Hom(x_j, y_i); last entry of the flat array is the total."""
        key = (x, y)
        lay = self._layouts.get(key)
        if lay is None:
            offs = np.zeros((len(y), len(x)), dtype=np.int64)
            pos = 0
            for i, yi in enumerate(y):
                for j, xj in enumerate(x):
                    offs[i, j] = pos
                    pos += self.hom_dim[(xj, yi)]
            lay = (offs, pos)
            self._layouts[key] = lay
        return lay

    def dim(self, x: AddObject, y: AddObject) -> int:
        return self.layout(x, y)[1]

    def embed_index(self, x: AddObject, y: AddObject, xs: AddObject, ys: AddObject, x_off: int, y_off: int) -> np.ndarray:
        """Positions in Hom(x, y) of the coordinates of Hom(xs, ys) placed at summand offsets."""
        offs_small, total_small = self.layout(xs, ys)
        offs_big, _ = self.layout(x, y)
        idx = np.zeros(total_small, dtype=np.int64)
        for a, ya in enumerate(ys):
            for b, xb in enumerate(xs):
                h = self.hom_dim[(xb, ya)]
                s = offs_small[a, b]
                t = offs_big[y_off + a, x_off + b]
                idx[s : s + h] = np.arange(t, t + h)
        return idx

    def comp_tensor(self, x: AddObject, y: AddObject, z: AddObject) -> np.ndarray:
        key = (x, y, z)
        t = self._tensors.get(key)
        if t is None:
            oxz, dxz = self.layout(x, z)
            oyz, dyz = self.layout(y, z)
            oxy, dxy = self.layout(x, y)
            t = np.zeros((dxz, dyz, dxy), dtype=np.int64)
            for i, zi in enumerate(z):
                for j, yj in enumerate(y):
                    for k, xk in enumerate(x):
                        c = self.comp[(xk, yj, zi)]
                        if c.size == 0:
                            continue
                        r0, s0, t0 = oxz[i, k], oyz[i, j], oxy[j, k]
                        t[r0 : r0 + c.shape[0], s0 : s0 + c.shape[1], t0 : t0 + c.shape[2]] += c
            self._tensors[key] = t
        return t

    # -- morphism calculus --------------------------------------------------
    def morphism(self, x: Sequence[str], y: Sequence[str], vec) -> AddMorphism:
        x, y = tuple(x), tuple(y)
        v = np.asarray(vec, dtype=np.int64).reshape(-1)
        if v.shape[0] != self.dim(x, y):
            raise InputError(f"coordinate vector of length {v.shape[0]}, expected {self.dim(x, y)}", "morphism")
        return AddMorphism(x, y, v % self.p)

    def zero(self, x: AddObject, y: AddObject) -> AddMorphism:
        return AddMorphism(x, y, np.zeros(self.dim(x, y), dtype=np.int64))

    def identity(self, x: AddObject) -> AddMorphism:
        x = tuple(x)
        offs, total = self.layout(x, x)
        v = np.zeros(total, dtype=np.int64)
        for i, xi in enumerate(x):
            h = self.hom_dim[(xi, xi)]
            v[offs[i, i] : offs[i, i] + h] = self.ident[xi]
        return AddMorphism(x, x, v)

    def compose(self, g: AddMorphism, f: AddMorphism) -> AddMorphism:
        """g o f."""
        if f.target != g.source:
            raise ValueError(f"cannot compose: {f.target} != {g.source}")
        t = self.comp_tensor(f.source, f.target, g.target)
        if t.size == 0:
            return self.zero(f.source, g.target)
        v = np.tensordot(t, f.vec, axes=([2], [0])) @ g.vec
        return AddMorphism(f.source, g.target, v % self.p)

    def chain(self, *maps: AddMorphism) -> AddMorphism:
        """chain(h, g, f) = h o g o f."""
        out = maps[-1]
        for m in reversed(maps[:-1]):
            out = self.compose(m, out)
        return out

    def add(self, f: AddMorphism, g: AddMorphism) -> AddMorphism:
        if (f.source, f.target) != (g.source, g.target):
            raise ValueError("cannot add morphisms with different endpoints")
        return AddMorphism(f.source, f.target, (f.vec + g.vec) % self.p)

    def sub(self, f: AddMorphism, g: AddMorphism) -> AddMorphism:
        if (f.source, f.target) != (g.source, g.target):
            raise ValueError("cannot subtract morphisms with different endpoints")
        return AddMorphism(f.source, f.target, (f.vec - g.vec) % self.p)

    def scale(self, c: int, f: AddMorphism) -> AddMorphism:
        return AddMorphism(f.source, f.target, (c * f.vec) % self.p)

    def neg(self, f: AddMorphism) -> AddMorphism:
        return self.scale(-1, f)

    def left_matrix(self, g: AddMorphism, x: AddObject) -> np.ndarray:
        """Matrix of f |-> g o f on Hom(x, g.source)."""
        t = self.comp_tensor(tuple(x), g.source, g.target)
        if t.size == 0:
            return np.zeros((t.shape[0], t.shape[2]), dtype=np.int64)
        return np.tensordot(t, g.vec, axes=([1], [0])) % self.p

    def right_matrix(self, f: AddMorphism, z: AddObject) -> np.ndarray:
        """Matrix of g |-> g o f on Hom(f.target, z)."""
        t = self.comp_tensor(f.source, f.target, tuple(z))
        if t.size == 0:
            return np.zeros((t.shape[0], t.shape[1]), dtype=np.int64)
        return np.tensordot(t, f.vec, axes=([2], [0])) % self.p

    def block(self, f: AddMorphism, i: int, j: int) -> AddMorphism:
        """Component f_{ij}: source_j -> target_i."""
        offs, _ = self.layout(f.source, f.target)
        h = self.hom_dim[(f.source[j], f.target[i])]
        return AddMorphism((f.source[j],), (f.target[i],), f.vec[offs[i, j] : offs[i, j] + h])

    def assemble(self, row_parts: Sequence[AddObject], col_parts: Sequence[AddObject], grid) -> AddMorphism:
        """Block matrix from concat(col_parts) to concat(row_parts); grid[i][j] or None for zero."""
        row_parts = [tuple(r) for r in row_parts]
        col_parts = [tuple(c) for c in col_parts]
        x = sum(col_parts, ())
        y = sum(row_parts, ())
        v = np.zeros(self.dim(x, y), dtype=np.int64)
        y_off = 0
        for i, rp in enumerate(row_parts):
            x_off = 0
            for j, cp in enumerate(col_parts):
                f = grid[i][j]
                if f is not None:
                    if (f.source, f.target) != (cp, rp):
                        raise ValueError(f"block ({i},{j}) has endpoints {f.source}->{f.target}, expected {cp}->{rp}")
                    idx = self.embed_index(x, y, cp, rp, x_off, y_off)
                    v[idx] = (v[idx] + f.vec) % self.p
                x_off += len(cp)
            y_off += len(rp)
        return AddMorphism(x, y, v)

    def direct_sum(self, *fs: AddMorphism) -> AddMorphism:
        n = len(fs)
        grid = [[fs[i] if i == j else None for j in range(n)] for i in range(n)]
        return self.assemble([f.target for f in fs], [f.source for f in fs], grid)

    def inclusion(self, parts: Sequence[AddObject], k: int) -> AddMorphism:
        parts = [tuple(q) for q in parts]
        grid = [[self.identity(parts[k]) if i == k else None] for i in range(len(parts))]
        return self.assemble(parts, [parts[k]], grid)

    def projection(self, parts: Sequence[AddObject], k: int) -> AddMorphism:
        parts = [tuple(q) for q in parts]
        grid = [[self.identity(parts[k]) if j == k else None for j in range(len(parts))]]
        return self.assemble([parts[k]], parts, grid)

    def restrict(self, f: AddMorphism, rows: Sequence[int], cols: Sequence[int]) -> AddMorphism:
        """Sub-block of f on the chosen target/source summand indices."""
        x = tuple(f.source[j] for j in cols)
        y = tuple(f.target[i] for i in rows)
        v = np.zeros(self.dim(x, y), dtype=np.int64)
        offs_s, _ = self.layout(x, y)
        offs_b, _ = self.layout(f.source, f.target)
        for a, i in enumerate(rows):
            for b, j in enumerate(cols):
                h = self.hom_dim[(f.source[j], f.target[i])]
                v[offs_s[a, b] : offs_s[a, b] + h] = f.vec[offs_b[i, j] : offs_b[i, j] + h]
        return AddMorphism(x, y, v)

    def basis(self, x: AddObject, y: AddObject) -> list[AddMorphism]:
        d = self.dim(x, y)
        eye = np.eye(d, dtype=np.int64)
        return [AddMorphism(x, y, eye[k]) for k in range(d)]

    def hom_elements(self, x: AddObject, y: AddObject) -> Iterator[AddMorphism]:
        d = self.dim(x, y)
        for v in span_elements(np.eye(d, dtype=np.int64), self.p):
            yield AddMorphism(x, y, v)

    # -- Hom functors and invertibility ------------------------------------
    def hom_from(self, z: AddObject, f: AddMorphism) -> np.ndarray:
        """Hom(z, f): Hom(z, X) -> Hom(z, Y)."""
        return self.left_matrix(f, z)

    def hom_to(self, f: AddMorphism, z: AddObject) -> np.ndarray:
        """Hom(f, z): Hom(Y, z) -> Hom(X, z)."""
        return self.right_matrix(f, z)

    def signature(self, x: AddObject) -> tuple[int, ...]:
        """dim Hom(z, x) and dim Hom(x, z) for every base z; additive in x."""
        return tuple(self.dim((z,), x) for z in self.objects) + tuple(self.dim(x, (z,)) for z in self.objects)

    def is_iso(self, f: AddMorphism) -> bool:
        # Yoneda on base objects: f is invertible iff every Hom(z, f) is.
        for z in self.objects:
            m = self.left_matrix(f, (z,))
            if m.shape[0] != m.shape[1] or rank(m, self.p) != m.shape[0]:
                return False
        return True

    def inverse(self, f: AddMorphism) -> AddMorphism | None:
        m = self.right_matrix(f, f.source)
        g = solve_linear(m, self.identity(f.source).vec, self.p)
        if g is None:
            return None
        gm = AddMorphism(f.target, f.source, g)
        if self.compose(f, gm) != self.identity(f.target):
            return None
        return gm

    def is_mono(self, f: AddMorphism) -> bool:
        return all(rank(self.left_matrix(f, (z,)), self.p) == self.dim((z,), f.source) for z in self.objects)

    def is_epi(self, f: AddMorphism) -> bool:
        return all(rank(self.right_matrix(f, (z,)), self.p) == self.dim(f.target, (z,)) for z in self.objects)

    # -- canonical objects -------------------------------------------------
    def obj_key(self, x: AddObject) -> tuple:
        return (len(x), tuple(self.index[o] for o in x))

    def canonical(self, x: AddObject) -> AddObject:
        return tuple(sorted(x, key=lambda o: self.index[o]))

    def permutation(self, x: AddObject, order: Sequence[int]) -> AddMorphism:
        """Iso x -> (x[order[0]], x[order[1]], ...)."""
        y = tuple(x[k] for k in order)
        grid = [[self.identity((x[k],)) if j == k else None for j in range(len(x))] for k in order]
        return self.assemble([(o,) for o in y], [(o,) for o in x], grid)

    def to_canonical(self, x: AddObject) -> AddMorphism:
        order = sorted(range(len(x)), key=lambda k: (self.index[x[k]], k))
        return self.permutation(x, order)


def validate_base_category(c: BaseCategory) -> Report:
    rep = Report(f"base category {c.name}".strip())
    p = c.p
    bad_assoc = []
    for a, b, cc, d in product(c.objects, repeat=4):
        abd, bcd = c.comp[(a, b, d)], c.comp[(b, cc, d)]
        acd, abc = c.comp[(a, cc, d)], c.comp[(a, b, cc)]
        if min(c.hom_dim[(a, b)], c.hom_dim[(b, cc)], c.hom_dim[(cc, d)]) == 0:
            continue
        lhs = np.einsum("urv,rst->ustv", abd, bcd) % p
        rhs = np.einsum("usw,wtv->ustv", acd, abc) % p
        if not np.array_equal(lhs, rhs):
            u, s, t, v = (int(q[0]) for q in np.nonzero((lhs - rhs) % p))
            bad_assoc.append({"objects": [a, b, cc, d], "basis": {"h": s, "g": t, "f": v}})
    bad_unit = []
    for a, b in product(c.objects, repeat=2):
        h = c.hom_dim[(a, b)]
        if h == 0:
            continue
        eye = np.eye(h, dtype=np.int64)
        right = np.tensordot(c.comp[(a, a, b)], c.ident[a], axes=([2], [0])) % p
        left = np.tensordot(c.comp[(a, b, b)], c.ident[b], axes=([1], [0])) % p
        if not np.array_equal(right, eye):
            bad_unit.append({"objects": [a, b], "side": "right"})
        if not np.array_equal(left, eye):
            bad_unit.append({"objects": [a, b], "side": "left"})
    for item in bad_assoc:
        rep.add("associativity", FAIL, **item)
    if not bad_assoc:
        rep.ok("associativity", objects=len(c.objects))
    for item in bad_unit:
        rep.add("unit", FAIL, **item)
    if not bad_unit:
        rep.ok("unit", objects=len(c.objects))
    return rep


class Universe:
    """All canonical additive objects with at most `bound` summands."""

    def __init__(self, cat: BaseCategory, bound: int) -> None:
        if bound < 0:
            raise InputError("universe bound must be non-negative", "universe_bound")
        self.cat = cat
        self.bound = bound
        objs: list[AddObject] = []
        for k in range(bound + 1):
            for combo in combinations_with_replacement(cat.objects, k):
                objs.append(tuple(combo))
        self.objects = sorted(objs, key=cat.obj_key)

    def __iter__(self) -> Iterator[AddObject]:
        return iter(self.objects)

    def __len__(self) -> int:
        return len(self.objects)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, tuple) and len(x) <= self.bound and all(o in self.cat.index for o in x)

    def morphisms(self) -> Iterator[AddMorphism]:
        for x in self.objects:
            for y in self.objects:
                yield from self.cat.hom_elements(x, y)


def _same_signature(cat: BaseCategory, x: AddObject, y: AddObject) -> bool:
    return cat.signature(x) == cat.signature(y)


def find_isomorphisms(cat: BaseCategory, x: AddObject, y: AddObject, limit: int | None = None) -> list[AddMorphism]:
    """Invertible morphisms x -> y by exhaustive scan of Hom(x, y)."""
    x, y = tuple(x), tuple(y)
    if not _same_signature(cat, x, y):
        return []
    out = []
    for f in cat.hom_elements(x, y):
        if cat.is_iso(f):
            out.append(f)
            if limit is not None and len(out) >= limit:
                break
    return out


def first_isomorphism(cat: BaseCategory, x: AddObject, y: AddObject) -> AddMorphism | None:
    key = (tuple(x), tuple(y))
    if key not in cat._iso_cache:
        if tuple(x) == tuple(y):
            cat._iso_cache[key] = cat.identity(tuple(x))
        else:
            found = find_isomorphisms(cat, x, y, limit=1)
            cat._iso_cache[key] = found[0] if found else None
    return cat._iso_cache[key]


def search_idempotent_splitting(cat: BaseCategory, e: AddMorphism, universe: Universe):
    """(Y, r, s) with s o r = e and r o s = 1_Y, or None when the universe has no splitting object."""
    x = e.source
    if e.target != x or cat.compose(e, e) != e:
        raise ValueError("morphism is not an idempotent endomorphism")
    img = tuple(rank(cat.left_matrix(e, (z,)), cat.p) for z in cat.objects)
    coimg = tuple(rank(cat.right_matrix(e, (z,)), cat.p) for z in cat.objects)
    for y in universe.objects:
        if len(y) > len(x):
            continue
        if tuple(cat.dim((z,), y) for z in cat.objects) != img:
            continue
        if tuple(cat.dim(y, (z,)) for z in cat.objects) != coimg:
            continue
        ident = cat.identity(y).vec
        for s in cat.hom_elements(y, x):
            a = np.concatenate([cat.left_matrix(s, x), cat.right_matrix(s, y)], axis=0)
            b = np.concatenate([e.vec, ident])
            r = solve_linear(a, b, cat.p)
            if r is not None:
                return y, AddMorphism(x, y, r), s
    return None


class AddFunctor:
    """Additive functor given on base objects and base Hom spaces."""

    def __init__(
        self,
        src: BaseCategory,
        dst: BaseCategory,
        on_objects: Mapping[str, Sequence[str]],
        on_homs: Mapping[tuple[str, str], np.ndarray],
        name: str = "",
    ) -> None:
        self.src, self.dst, self.name = src, dst, name
        self.on_objects: dict[str, AddObject] = {}
        for a in src.objects:
            if a not in on_objects:
                raise InputError(f"functor {name!r} undefined on object {a!r}", "functor.on_objects")
            self.on_objects[a] = dst.check_object(on_objects[a])
        self.on_homs: dict[tuple[str, str], np.ndarray] = {}
        for a in src.objects:
            for b in src.objects:
                shape = (dst.dim(self.on_objects[a], self.on_objects[b]), src.hom_dim[(a, b)])
                m = on_homs.get((a, b))
                if m is None:
                    if 0 in shape:
                        m = np.zeros(shape, dtype=np.int64)
                    else:
                        raise InputError(f"functor {name!r} undefined on Hom({a},{b})", "functor.on_homs")
                m = np.asarray(m, dtype=np.int64)
                if m.size == 0:
                    m = m.reshape(shape)
                if m.shape != shape:
                    raise InputError(f"shape {m.shape}, expected {shape}", f"functor {name!r} on Hom({a},{b})")
                self.on_homs[(a, b)] = m % dst.p
        self._mats: dict = {}

    def obj(self, x: AddObject) -> AddObject:
        return sum((self.on_objects[o] for o in x), ())

    def hom_matrix(self, x: AddObject, y: AddObject) -> np.ndarray:
        key = (tuple(x), tuple(y))
        m = self._mats.get(key)
        if m is None:
            fx, fy = self.obj(x), self.obj(y)
            m = np.zeros((self.dst.dim(fx, fy), self.src.dim(x, y)), dtype=np.int64)
            offs, _ = self.src.layout(x, y)
            x_off = np.cumsum([0] + [len(self.on_objects[o]) for o in x])
            y_off = np.cumsum([0] + [len(self.on_objects[o]) for o in y])
            for i, yi in enumerate(y):
                for j, xj in enumerate(x):
                    h = self.src.hom_dim[(xj, yi)]
                    if h == 0:
                        continue
                    idx = self.dst.embed_index(fx, fy, self.on_objects[xj], self.on_objects[yi], int(x_off[j]), int(y_off[i]))
                    m[idx, offs[i, j] : offs[i, j] + h] = self.on_homs[(xj, yi)]
            self._mats[key] = m
        return m

    def __call__(self, f: AddMorphism) -> AddMorphism:
        m = self.hom_matrix(f.source, f.target)
        return AddMorphism(self.obj(f.source), self.obj(f.target), (m @ f.vec) % self.dst.p)

    def validate(self) -> Report:
        rep = Report(f"functor {self.name}".strip())
        bad = []
        for a in self.src.objects:
            if self(self.src.identity((a,))) != self.dst.identity(self.on_objects[a]):
                bad.append({"law": "identity", "object": a})
        for a, b, c in product(self.src.objects, repeat=3):
            for f in self.src.basis((a,), (b,)):
                for g in self.src.basis((b,), (c,)):
                    if self(self.src.compose(g, f)) != self.dst.compose(self(g), self(f)):
                        bad.append({"law": "composition", "objects": [a, b, c]})
        for item in bad:
            rep.add("functor-law", FAIL, **item)
        if not bad:
            rep.ok("functor-law")
        return rep

    @staticmethod
    def identity(cat: BaseCategory) -> "AddFunctor":
        return AddFunctor(
            cat,
            cat,
            {a: (a,) for a in cat.objects},
            {(a, b): np.eye(cat.hom_dim[(a, b)], dtype=np.int64) for a in cat.objects for b in cat.objects},
            name="Id",
        )


def compose_functors(f: AddFunctor, g: AddFunctor, name: str = "") -> AddFunctor:
    """f o g (apply g first)."""
    if g.dst is not f.src:
        raise ValueError("functors are not composable")
    on_objects = {a: f.obj(g.on_objects[a]) for a in g.src.objects}
    on_homs = {}
    for a in g.src.objects:
        for b in g.src.objects:
            on_homs[(a, b)] = (f.hom_matrix(g.on_objects[a], g.on_objects[b]) @ g.on_homs[(a, b)]) % f.dst.p
    return AddFunctor(g.src, f.dst, on_objects, on_homs, name=name or f"{f.name}{g.name}")


def functors_equal_on(f: AddFunctor, g: AddFunctor, universe: Universe) -> list[dict]:
    """Differences between f and g on universe objects and Hom coordinates."""
    diffs = []
    for x in universe.objects:
        if f.obj(x) != g.obj(x):
            diffs.append({"object": list(x), "left": list(f.obj(x)), "right": list(g.obj(x))})
    if diffs:
        return diffs
    for x in universe.objects:
        for y in universe.objects:
            if not np.array_equal(f.hom_matrix(x, y), g.hom_matrix(x, y)):
                diffs.append({"hom": [list(x), list(y)]})
    return diffs


class NatTransform:
    """Natural transformation F => G given on base objects."""

    def __init__(self, source: AddFunctor, target: AddFunctor, components: Mapping[str, AddMorphism], name: str = "") -> None:
        if source.src is not target.src or source.dst is not target.dst:
            raise ValueError("functors must share domain and codomain")
        self.source, self.target, self.name = source, target, name
        self.cat = source.dst
        self.components: dict[str, AddMorphism] = {}
        for a in source.src.objects:
            if a not in components:
                raise InputError(f"missing component at {a!r}", f"transformation {name!r}")
            c = components[a]
            if c.source != source.on_objects[a] or c.target != target.on_objects[a]:
                raise InputError(
                    f"component at {a!r} has endpoints {c.source}->{c.target}, expected "
                    f"{source.on_objects[a]}->{target.on_objects[a]}",
                    f"transformation {name!r}",
                )
            self.components[a] = c

    def component(self, x: AddObject) -> AddMorphism:
        x = tuple(x)
        if not x:
            return self.cat.zero((), ())
        return self.cat.direct_sum(*(self.components[o] for o in x))

    def naturality_failures(self) -> list[dict]:
        bad = []
        src = self.source.src
        for a, b in product(src.objects, repeat=2):
            for f in src.basis((a,), (b,)):
                lhs = self.cat.compose(self.target(f), self.components[a])
                rhs = self.cat.compose(self.components[b], self.source(f))
                if lhs != rhs:
                    bad.append({"objects": [a, b], "basis": int(np.flatnonzero(f.vec)[0])})
        return bad

    def non_invertible(self) -> list[str]:
        return [a for a, c in self.components.items() if not self.cat.is_iso(c)]

    def inverse(self, name: str = "") -> "NatTransform":
        comps = {}
        for a, c in self.components.items():
            inv = self.cat.inverse(c)
            if inv is None:
                raise ValueError(f"component at {a!r} is not invertible")
            comps[a] = inv
        return NatTransform(self.target, self.source, comps, name=name or f"{self.name}^-1")

    @staticmethod
    def identity(f: AddFunctor) -> "NatTransform":
        return NatTransform(f, f, {a: f.dst.identity(f.on_objects[a]) for a in f.src.objects}, name="1")


def vertical(theta: NatTransform, eta: NatTransform, name: str = "") -> NatTransform:
    """theta . eta."""
    cat = eta.cat
    comps = {a: cat.compose(theta.components[a], eta.components[a]) for a in eta.components}
    return NatTransform(eta.source, theta.target, comps, name=name)


def whisker_right(eta: NatTransform, h: AddFunctor, name: str = "") -> NatTransform:
    """eta_H : F H => G H."""
    fh = compose_functors(eta.source, h)
    gh = compose_functors(eta.target, h)
    return NatTransform(fh, gh, {a: eta.component(h.on_objects[a]) for a in h.src.objects}, name=name)


def whisker_left(h: AddFunctor, eta: NatTransform, name: str = "") -> NatTransform:
    """H eta : H F => H G."""
    hf = compose_functors(h, eta.source)
    hg = compose_functors(h, eta.target)
    return NatTransform(hf, hg, {a: h(eta.components[a]) for a in eta.components}, name=name)


@dataclass
class EquivalenceWitness:
    """F: C -> C', G: C' -> C, unit Id_{C'} => FG, counit GF => Id_C."""

    F: AddFunctor
    G: AddFunctor
    unit: NatTransform
    counit: NatTransform

    @property
    def source(self) -> BaseCategory:
        return self.F.src

    @property
    def target(self) -> BaseCategory:
        return self.F.dst

    @staticmethod
    def identity(cat: BaseCategory) -> "EquivalenceWitness":
        idf = AddFunctor.identity(cat)
        one = NatTransform.identity(idf)
        fg = compose_functors(idf, idf)
        unit = NatTransform(idf, fg, one.components, name="unit")
        counit = NatTransform(fg, idf, one.components, name="counit")
        return EquivalenceWitness(idf, idf, unit, counit)


def validate_equivalence(w: EquivalenceWitness, universe: Universe | None = None) -> Report:
    rep = Report("equivalence witness")
    c, d = w.F.src, w.F.dst
    if w.G.src is not d or w.G.dst is not c:
        rep.add("shape", FAIL, reason="G must go from the target of F back to its source")
        return rep
    for fun in (w.F, w.G):
        sub = fun.validate()
        for e in sub.entries:
            rep.add(f"functor-law:{fun.name or 'F'}", e.verdict, **e.detail)
    for label, eta in (("unit", w.unit), ("counit", w.counit)):
        bad = eta.naturality_failures()
        for b in bad:
            rep.add(f"naturality:{label}", FAIL, **b)
        if not bad:
            rep.ok(f"naturality:{label}")
        nonin = eta.non_invertible()
        for a in nonin:
            rep.add(f"invertible:{label}", FAIL, object=a)
        if not nonin:
            rep.ok(f"invertible:{label}")
    tri1 = []
    for a in c.objects:
        fa = w.F.on_objects[a]
        lhs = d.compose(w.F(w.counit.components[a]), w.unit.component(fa))
        if lhs != d.identity(fa):
            tri1.append(a)
    tri2 = []
    for b in d.objects:
        gb = w.G.on_objects[b]
        lhs = c.compose(w.counit.component(gb), w.G(w.unit.components[b]))
        if lhs != c.identity(gb):
            tri2.append(b)
    for a in tri1:
        rep.add("triangle:F", FAIL, object=a)
    if not tri1:
        rep.ok("triangle:F")
    for b in tri2:
        rep.add("triangle:G", FAIL, object=b)
    if not tri2:
        rep.ok("triangle:G")
    if universe is not None and rep.verdict != FAIL:
        bad = []
        for x in universe.objects:
            for y in universe.objects:
                m = w.F.hom_matrix(x, y)
                r = rank(m, c.p) if m.size else 0
                if r != c.dim(x, y) or r != d.dim(w.F.obj(x), w.F.obj(y)):
                    bad.append({"hom": [list(x), list(y)]})
        for b in bad:
            rep.add("fully-faithful", FAIL, **b)
        if not bad:
            rep.ok("fully-faithful", pairs=len(universe) ** 2)
    return rep


def _restrict_category(c: BaseCategory, keep: Sequence[str], name: str) -> BaseCategory:
    return BaseCategory(
        c.p,
        keep,
        {(a, b): c.hom_dim[(a, b)] for a in keep for b in keep},
        {(a, b, x): c.comp[(a, b, x)] for a in keep for b in keep for x in keep},
        {a: c.ident[a] for a in keep},
        name=name,
    )


def iso_classes(cat: BaseCategory, universe: Universe) -> list[list[AddObject]]:
    classes: list[list[AddObject]] = []
    for x in universe.objects:
        for cl in classes:
            if first_isomorphism(cat, cl[0], x) is not None:
                cl.append(x)
                break
        else:
            classes.append([x])
    return classes


def compute_skeleton(c: BaseCategory, universe: Universe | None = None):
    """Skeleton presented by base representatives, with F: C -> skeleton and G the inclusion.

    Returns (skeleton, witness).  A base object isomorphic to an earlier kept
    base object (or to zero) is dropped; the connecting isomorphism is the
    first found by the deterministic scan.
    """
    keep: list[str] = []
    rep_of: dict[str, AddObject] = {}
    alpha: dict[str, AddMorphism] = {}
    for b in c.objects:
        if first_isomorphism(c, (b,), ()) is not None:
            rep_of[b] = ()
            alpha[b] = c.zero((b,), ())
            continue
        for k in keep:
            iso = first_isomorphism(c, (b,), (k,))
            if iso is not None:
                rep_of[b] = (k,)
                alpha[b] = iso
                break
        else:
            keep.append(b)
            rep_of[b] = (b,)
            alpha[b] = c.identity((b,))
    skel = _restrict_category(c, keep, name=f"skeleton({c.name})" if c.name else "skeleton")
    alpha_inv = {}
    for b in c.objects:
        if rep_of[b] == ():
            alpha_inv[b] = c.zero((), (b,))
        else:
            inv = c.inverse(alpha[b])
            assert inv is not None
            alpha_inv[b] = inv
    on_homs = {}
    for a in c.objects:
        for b in c.objects:
            cols = []
            for f in c.basis((a,), (b,)):
                cols.append(c.chain(alpha[b], f, alpha_inv[a]).vec)
            shape = (c.dim(rep_of[a], rep_of[b]), c.hom_dim[(a, b)])
            on_homs[(a, b)] = np.array(cols, dtype=np.int64).T.reshape(shape) if cols else np.zeros(shape, dtype=np.int64)
    F = AddFunctor(c, skel, rep_of, on_homs, name="P")
    G = AddFunctor(skel, c, {k: (k,) for k in keep}, {(a, b): np.eye(c.hom_dim[(a, b)], dtype=np.int64) for a in keep for b in keep}, name="I")
    FG = compose_functors(F, G)
    GF = compose_functors(G, F)
    unit = NatTransform(AddFunctor.identity(skel), FG, {k: skel.identity((k,)) for k in keep}, name="unit")
    counit = NatTransform(GF, AddFunctor.identity(c), {b: alpha_inv[b] for b in c.objects}, name="counit")
    return skel, EquivalenceWitness(F, G, unit, counit)


def skeletal_inverse(f: AddFunctor, universe: Universe | None = None):
    """Strict inverse of a functor that is bijective on base objects; returns (inverse or None, report)."""
    rep = Report("skeletal inverse")
    c, d = f.src, f.dst
    images = {}
    for a in c.objects:
        img = f.on_objects[a]
        if len(img) != 1:
            rep.add("object-bijection", FAIL, object=a, image=list(img))
            return None, rep
        images[a] = img[0]
    if sorted(images.values(), key=d.index.get) != list(d.objects) or len(set(images.values())) != len(images):
        rep.add("object-bijection", FAIL, images={k: v for k, v in images.items()})
        return None, rep
    rep.ok("object-bijection")
    back = {v: k for k, v in images.items()}
    on_homs = {}
    for a2 in d.objects:
        for b2 in d.objects:
            m = f.on_homs[(back[a2], back[b2])]
            if m.shape[0] != m.shape[1]:
                rep.add("hom-bijection", FAIL, hom=[back[a2], back[b2]])
                return None, rep
            inv = mat_inverse(m, c.p) if m.size else m.T.copy()
            if inv is None:
                rep.add("hom-bijection", FAIL, hom=[back[a2], back[b2]])
                return None, rep
            on_homs[(a2, b2)] = inv
    rep.ok("hom-bijection")
    g = AddFunctor(d, c, {a2: (back[a2],) for a2 in d.objects}, on_homs, name=f"{f.name}^-1")
    if universe is not None:
        gf = compose_functors(g, f)
        fg = compose_functors(f, g)
        d1 = functors_equal_on(gf, AddFunctor.identity(c), universe)
        u2 = Universe(d, universe.bound) if universe.cat is not d else universe
        d2 = functors_equal_on(fg, AddFunctor.identity(d), u2)
        for diff in d1:
            rep.add("inverse:GF=Id", FAIL, **diff)
        if not d1:
            rep.ok("inverse:GF=Id", objects=len(universe))
        for diff in d2:
            rep.add("inverse:FG=Id", FAIL, **diff)
        if not d2:
            rep.ok("inverse:FG=Id", objects=len(u2))
    return g, rep
