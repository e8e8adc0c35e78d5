"""Exact integer linear algebra on lists of Python ints.

Matrices are plain lists of rows. Nothing here touches floating point; entries
grow as big integers when they need to.
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple, Optional, Sequence

Vector = tuple[int, ...]
Matrix = list[list[int]]


class SmithForm(NamedTuple):
    diagonal: list[int]
    left: Matrix
    right: Matrix


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]]) -> Vector:
    """Row vector times matrix."""
    cols = len(m[0]) if m else 0
    return tuple(sum(v[k] * m[k][j] for k in range(len(m))) for j in range(cols))


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Returns ``(diagonal, U, V)`` with ``U @ M @ V`` diagonal, the diagonal
    entries nonnegative and each dividing the next. ``diagonal`` has length
    ``min(rows, cols)``.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("ragged matrix")
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, k: int) -> None:
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, k: int) -> None:
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            # a remainder left in the pivot row/column becomes the new pivot
            best = None
            for i in range(t + 1, rows):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                    best = (i, t, a[i][t])
            for j in range(t + 1, cols):
                if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                    best = (t, j, a[t][j])
            if best is not None:
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    diagonal = [a[i][i] for i in range(min(rows, cols))]
    return SmithForm(diagonal, u, v)


def hermite_rows(vectors: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Row-style Hermite normal form: a canonical echelon basis of the row lattice.

    Pivots are positive, pivot columns strictly increase, and entries above a
    pivot are reduced into ``[0, pivot)``.
    """
    rows = [list(map(int, r)) for r in vectors if any(r)]
    for r in rows:
        if len(r) != dim:
            raise ValueError(f"vector {r} does not have dimension {dim}")
    basis: list[list[int]] = []
    col = 0
    while rows and col < dim:
        live = [r for r in rows if r[col]]
        dead = [r for r in rows if not r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            head = live[0]
            nxt = [head]
            for r in live[1:]:
                q = r[col] // head[col]
                r = [x - q * y for x, y in zip(r, head)]
                (nxt if r[col] else dead).append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for i, b in enumerate(basis):
            q = b[col] // piv[col]
            if q:
                basis[i] = [x - q * y for x, y in zip(b, piv)]
        basis.append(piv)
        rows = [r for r in dead if any(r)]
        col += 1
    return [tuple(b) for b in basis]


def echelon_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[Vector]:
    """Coordinates of ``v`` in an echelon ``basis`` (as produced by
    :func:`hermite_rows`), or ``None`` if ``v`` is not in the row lattice."""
    rem = list(v)
    coords = []
    for b in basis:
        pc = next(i for i, x in enumerate(b) if x)
        if rem[pc] % b[pc]:
            return None
        c = rem[pc] // b[pc]
        coords.append(c)
        if c:
            rem = [x - c * y for x, y in zip(rem, b)]
    if any(rem):
        return None
    return tuple(coords)


def cofactor_normal(vectors: Sequence[Sequence[int]]) -> Vector:
    """Integer vector orthogonal to ``r - 1`` vectors in ``Z^r``.

    Entry ``j`` is the signed maximal minor with column ``j`` deleted
    (the generalized cross product). Zero iff the vectors are dependent.
    """
    k = len(vectors)
    r = k + 1
    out = []
    for j in range(r):
        minor = [[row[c] for c in range(r) if c != j] for row in vectors]
        out.append((-1) ** (j + k) * det(minor))
    g = 0
    for x in out:
        g = gcd(g, x)
    if g > 1:
        out = [x // g for x in out]
    return tuple(out)


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n > 0`` in increasing order."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
