"""Exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced mod p.  Elimination
uses a fixed pivot order (leftmost nonzero column, topmost row) so every
basis produced here is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "PrimeField",
    "FMatrix",
    "LinearSeq",
    "as_array",
    "rref",
    "rank",
    "kernel_basis",
    "solve_linear",
    "affine_solutions",
    "inverse",
    "is_exact_at",
    "span_elements",
    "image_basis",
    "LinearSystem",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ValueError(f"field characteristic must be prime, got {self.p!r}")
        if self.p >= 2**31:
            raise ValueError("characteristic must fit a machine word")

    def neg(self, x: int) -> int:
        return (-x) % self.p


@dataclass(frozen=True, eq=False)
class FMatrix:
    """A row-major matrix over F_p, used at I/O boundaries."""

    rows: int
    cols: int
    entries: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")
        if any(e < 0 or e >= self.p for e in self.entries):
            raise ValueError("entries must lie in [0, p)")

    @classmethod
    def from_array(cls, a: np.ndarray, p: int) -> "FMatrix":
        a = np.asarray(a, dtype=np.int64) % p
        r, c = a.shape
        return cls(r, c, tuple(int(x) for x in a.reshape(-1)), p)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> "FMatrix":
        if len(rows) == 0:
            return cls(0, cols or 0, (), p)
        return cls.from_array(np.array(rows, dtype=np.int64).reshape(len(rows), -1), p)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def to_rows(self) -> list[list[int]]:
        return self.array.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries, self.p) == (other.rows, other.cols, other.entries, other.p)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries, self.p))


def as_array(m: np.ndarray | FMatrix | Sequence[Sequence[int]], p: int) -> np.ndarray:
    if isinstance(m, FMatrix):
        return m.array
    a = np.asarray(m, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-dimensional matrix")
    return a % p


@dataclass(frozen=True, eq=False)
class LinearSeq:
    """Spaces d_0..d_k with maps m_i: F_p^{d_i} -> F_p^{d_{i+1}}."""

    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]
    p: int

    def __post_init__(self) -> None:
        if len(self.maps) != len(self.dims) - 1:
            raise ValueError("need exactly one map between consecutive spaces")
        for i, m in enumerate(self.maps):
            if m.shape != (self.dims[i + 1], self.dims[i]):
                raise ValueError(f"map {i} has shape {m.shape}, expected {(self.dims[i + 1], self.dims[i])}")


def _rref_gf2(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Row reduction over F_2 with rows packed into integers (column c is bit c)."""
    nrows, ncols = a.shape
    weights = 1 << np.arange(ncols, dtype=np.int64)
    rows = [int(v) for v in (a & 1) @ weights]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        bit = 1 << c
        k = next((i for i in range(r, nrows) if rows[i] & bit), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(c)
        r += 1
    packed = np.array(rows, dtype=np.int64).reshape(-1, 1)
    return (packed >> np.arange(ncols, dtype=np.int64)) & 1, pivots


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(m, dtype=np.int64) % p
    if p == 2 and 0 < a.shape[1] <= 62 and a.shape[0] > 0:
        return _rref_gf2(a)
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * pow(piv, -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others] = (a[others] - np.outer(col[others], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    a = np.asarray(m)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns of the returned (cols x k) array form a basis of ker(m)."""
    a = np.asarray(m, dtype=np.int64)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((ncols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-r[row, f]) % p
    return basis


def image_basis(m: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(m, dtype=np.int64) % p
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    _, pivots = rref(a, p)
    return a[:, pivots]


def solve_linear(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some x with m x = b, free variables set to zero; None if unsolvable."""
    a = np.asarray(m, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    nrows, ncols = a.shape
    if b.shape[0] != nrows:
        raise ValueError("right-hand side length must equal the row count")
    if nrows == 0:
        return np.zeros(ncols, dtype=np.int64)
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, pivots = rref(aug, p)
    if pivots and pivots[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, ncols]
    return x


def affine_solutions(m: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray] | None:
    """Particular solution and kernel basis, or None."""
    x = solve_linear(m, b, p)
    if x is None:
        return None
    return x, kernel_basis(m, p)


def inverse(m: np.ndarray, p: int) -> np.ndarray | None:
    a = np.asarray(m, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        return None
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        return None
    return r[:, n:]


def span_elements(basis: np.ndarray, p: int, offset: np.ndarray | None = None) -> Iterator[np.ndarray]:
    """Every element offset + basis @ c, coefficients in lexicographic order."""
    dim, k = basis.shape
    base = np.zeros(dim, dtype=np.int64) if offset is None else np.asarray(offset, dtype=np.int64)
    for coeffs in product(range(p), repeat=k):
        if k == 0:
            yield base % p
        else:
            yield (base + basis @ np.array(coeffs, dtype=np.int64)) % p


def is_exact_at(s: LinearSeq, i: int) -> bool:
    k = len(s.dims) - 1
    if not 1 <= i <= k - 1:
        raise IndexError(f"position {i} is not interior (valid range 1..{k - 1})")
    before, after = s.maps[i - 1], s.maps[i]
    if np.any((after @ before) % s.p):
        return False
    return rank(before, s.p) + rank(after, s.p) == s.dims[i]


class LinearSystem:
    """Block-structured linear equations  sum_k M_k x_k = b  over F_p.

    Unknown blocks are named; equations are added block-row by block-row.
    """

    def __init__(self, p: int) -> None:
        self.p = p
        self.sizes: dict[str, int] = {}
        self.order: list[str] = []
        self.rows: list[tuple[list[tuple[str, np.ndarray]], np.ndarray]] = []

    def var(self, name: str, size: int) -> str:
        if name in self.sizes:
            raise ValueError(f"duplicate unknown {name!r}")
        self.sizes[name] = int(size)
        self.order.append(name)
        return name

    def eq(self, terms: Sequence[tuple[str, np.ndarray]], rhs: np.ndarray) -> None:
        rhs = np.asarray(rhs, dtype=np.int64).reshape(-1)
        for name, m in terms:
            if m.shape != (rhs.shape[0], self.sizes[name]):
                raise ValueError(f"term for {name!r} has shape {m.shape}, expected {(rhs.shape[0], self.sizes[name])}")
        self.rows.append((list(terms), rhs))

    @property
    def ncols(self) -> int:
        return sum(self.sizes.values())

    def offsets(self) -> dict[str, int]:
        out, pos = {}, 0
        for name in self.order:
            out[name] = pos
            pos += self.sizes[name]
        return out

    def matrix(self) -> tuple[np.ndarray, np.ndarray]:
        offs = self.offsets()
        nrows = sum(r.shape[0] for _, r in self.rows)
        a = np.zeros((nrows, self.ncols), dtype=np.int64)
        b = np.zeros(nrows, dtype=np.int64)
        pos = 0
        for terms, rhs in self.rows:
            k = rhs.shape[0]
            for name, m in terms:
                o = offs[name]
                a[pos : pos + k, o : o + self.sizes[name]] += m
            b[pos : pos + k] = rhs
            pos += k
        return a % self.p, b % self.p

    def split(self, x: np.ndarray) -> dict[str, np.ndarray]:
        offs = self.offsets()
        return {name: np.asarray(x[offs[name] : offs[name] + self.sizes[name]]) for name in self.order}

    def solve(self) -> dict[str, np.ndarray] | None:
        a, b = self.matrix()
        x = solve_linear(a, b, self.p)
        return None if x is None else self.split(x)

    def solution_space(self) -> tuple[np.ndarray, np.ndarray] | None:
        """(particular, kernel basis columns) in flat coordinates."""
        a, b = self.matrix()
        return affine_solutions(a, b, self.p)
