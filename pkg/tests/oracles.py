"""Brute-force reference computations, independent of the package.

Everything here enumerates vectors or tuples outright; it is only usable at
desk scale and is deliberately naive.
"""
from __future__ import annotations

from itertools import product


def vectors(n: int, p: int):
    return [tuple(v) for v in product(range(p), repeat=n)]


def matvec(m: list[list[int]], v: tuple, p: int) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in m)


def kernel_set(m: list[list[int]], ncols: int, p: int) -> set[tuple]:
    zero = tuple([0] * len(m))
    return {v for v in vectors(ncols, p) if matvec(m, v, p) == zero}


def image_set(m: list[list[int]], ncols: int, p: int) -> set[tuple]:
    return {matvec(m, v, p) for v in vectors(ncols, p)}


def rank(m: list[list[int]], ncols: int, p: int) -> int:
    """log_p of the image size."""
    size, r = len(image_set(m, ncols, p)), 0
    while p**r < size:
        r += 1
    assert p**r == size
    return r


def solvable(m: list[list[int]], ncols: int, b: tuple, p: int) -> bool:
    return any(matvec(m, v, p) == tuple(x % p for x in b) for v in vectors(ncols, p))


def matmul(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % p for j in range(len(b[0]))] for i in range(len(a))]


def inverse(m: list[list[int]], p: int) -> list[list[int]] | None:
    n = len(m)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    for entries in product(range(p), repeat=n * n):
        cand = [list(entries[i * n : (i + 1) * n]) for i in range(n)]
        if matmul(m, cand, p) == ident:
            return cand
    return None


def homotopic(d_x: list, d_y: list, f: list, g: list, dims_x: list, dims_y: list, p: int) -> bool:
    """Scan every h^1..h^{m-1} (h^i: X^i -> Y^{i-1}) for f^i - g^i = d_Y h^i + h^{i+1} d_X.

    Vect over F_p, all dimensions positive; maps are matrices with rows = target dimension.
    """
    m = len(dims_x)
    shapes = [(dims_y[i - 1], dims_x[i]) for i in range(1, m)]
    total = sum(r * c for r, c in shapes)
    for flat in product(range(p), repeat=total):
        hs, pos = [None], 0
        for r, c in shapes:
            hs.append([list(flat[pos + i * c : pos + (i + 1) * c]) for i in range(r)])
            pos += r * c
        ok = True
        for i in range(m):
            r, c = dims_y[i], dims_x[i]
            acc = [[0] * c for _ in range(r)]
            if i >= 1:
                acc = _add(acc, matmul(d_y[i - 1], hs[i], p), p)
            if i + 1 <= m - 1:
                acc = _add(acc, matmul(hs[i + 1], d_x[i], p), p)
            if acc != [[(f[i][a][b] - g[i][a][b]) % p for b in range(c)] for a in range(r)]:
                ok = False
                break
        if ok:
            return True
    return False


def _add(a, b, p):
    return [[(x + y) % p for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
