"""Exact integer matrices as lists of rows.  No floating point."""

from __future__ import annotations


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: list, b: list) -> list:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def scale(a: list, c: int) -> list:
    return [[c * x for x in row] for row in a]


def kron(a: list, b: list) -> list:
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def add(a: list, b: list) -> list:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def permutation_matrix(perm: list) -> list:
    """``P[perm[a]][a] = 1``: column ``a`` is the basis vector ``e_{perm[a]}``."""
    n = len(perm)
    p = [[0] * n for _ in range(n)]
    for a, b in enumerate(perm):
        p[b][a] = 1
    return p


def rank(m: list) -> int:
    """Rank by fraction-free (Bareiss) elimination over the integers."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, cols):
                # exact: Bareiss guarantees divisibility by the previous pivot
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == rows:
            break
    return r
