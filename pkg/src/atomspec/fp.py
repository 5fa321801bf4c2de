"""Dense linear algebra over a prime field F_p on small numpy int arrays.

Subspaces of F_p^d are represented by their reduced row echelon basis, an
array of shape (k, d); that form is canonical, so two subspaces are equal
iff their bases are equal.
"""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np


def frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.flags.writeable = False
    return a


def zeros(rows: int, cols: int) -> np.ndarray:
    return frozen(np.zeros((rows, cols), dtype=np.int64))


def identity(n: int) -> np.ndarray:
    return frozen(np.eye(n, dtype=np.int64))


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return frozen(a[:r]), tuple(pivots)


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def span(vectors, dim: int, p: int) -> np.ndarray:
    """Echelon basis of the span of the given row vectors in F_p^dim."""
    arr = np.array(vectors, dtype=np.int64).reshape(-1, dim)
    if arr.shape[0] == 0:
        return zeros(0, dim)
    return rref(arr, p)[0]


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Echelon basis of {v : m v = 0}, as rows."""
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols)
    red, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return span(basis, cols, p)


def contains(basis: np.ndarray, v, p: int) -> bool:
    """Whether v lies in the row span of an echelon basis."""
    v = np.array(v, dtype=np.int64) % p
    if basis.shape[0] == 0:
        return not v.any()
    return rank(np.vstack([basis, v]), p) == basis.shape[0]


def coordinates(basis: np.ndarray, v, p: int) -> np.ndarray:
    """Coefficients of v in an echelon basis (v assumed to lie in the span)."""
    v = np.array(v, dtype=np.int64) % p
    pivots = [int(np.nonzero(row)[0][0]) for row in basis]
    return frozen(np.array([v[c] for c in pivots], dtype=np.int64))


def is_subspace(small: np.ndarray, big: np.ndarray, p: int) -> bool:
    return all(contains(big, row, p) for row in small)


def intersect(u: np.ndarray, w: np.ndarray, dim: int, p: int) -> np.ndarray:
    """Echelon basis of the intersection of two subspaces of F_p^dim."""
    if u.shape[0] == 0 or w.shape[0] == 0:
        return zeros(0, dim)
    # x in U and x in W  <=>  x = a U = b W, solve [U; -W]^T (a, b) = 0
    stacked = np.vstack([u, (-w) % p]).T % p
    sol = nullspace(stacked, p)
    vecs = [(s[: u.shape[0]] @ u) % p for s in sol]
    return span(vecs, dim, p)


def is_invertible(m: np.ndarray, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def all_matrices(rows: int, cols: int, p: int) -> Iterator[np.ndarray]:
    for entries in itertools.product(range(p), repeat=rows * cols):
        yield frozen(np.array(entries, dtype=np.int64).reshape(rows, cols))


def subspace_count(dim: int, p: int) -> int:
    """Total number of subspaces of F_p^dim (sum of Gaussian binomials)."""
    total = 0
    for k in range(dim + 1):
        num, den = 1, 1
        for i in range(k):
            num *= p ** (dim - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


def subspaces(dim: int, p: int) -> Iterator[np.ndarray]:
    """Every subspace of F_p^dim exactly once, as an echelon basis, by increasing dimension."""
    for k in range(dim + 1):
        for pivots in itertools.combinations(range(dim), k):
            # free entries: right of the pivot in each row, outside pivot columns
            slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, dim) if c not in pivots]
            for values in itertools.product(range(p), repeat=len(slots)):
                b = np.zeros((k, dim), dtype=np.int64)
                for r, pc in enumerate(pivots):
                    b[r, pc] = 1
                for (r, c), v in zip(slots, values):
                    b[r, c] = v
                yield frozen(b)


def key(a: np.ndarray) -> tuple:
    """Hashable canonical key of a small integer array."""
    return (a.shape, tuple(int(x) for x in a.flat))
