"""Integer matrix algebra: Smith and Hermite normal forms, kernels, exact solving.

Matrices are plain lists of rows of Python ints.  Every lattice computation in
the package (fixed lattices, indices, standardization, module splitting) goes
through :func:`smith_normal_form`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = list[list[int]]
Vector = list[int]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in A]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    Bt = transpose(B) if B else [[] for _ in range(ncols)]
    out = []
    for row in A:
        if len(row) != inner:
            raise ValueError("dimension mismatch in matmul")
        out.append([sum(a * b for a, b in zip(row, col)) for col in Bt])
    return out


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def matpow(A: Sequence[Sequence[int]], k: int) -> Matrix:
    n = len(A)
    result = identity(n)
    base = copy(A)
    if k < 0:
        base = inverse_unimodular(base)
        k = -k
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def is_zero(A: Sequence[Sequence[int]]) -> bool:
    return all(x == 0 for row in A for x in row)


def columns(A: Sequence[Sequence[int]]) -> list[Vector]:
    return transpose(A)


def from_columns(cols: Sequence[Sequence[int]], nrows: int | None = None) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows or 0)]
    return [list(r) for r in zip(*cols)]


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def _swap_rows(M: Matrix, i: int, j: int) -> None:
    M[i], M[j] = M[j], M[i]


def _swap_cols(M: Matrix, i: int, j: int) -> None:
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M: Matrix, dst: int, src: int, q: int) -> None:
    """row[dst] += q * row[src]"""
    if q:
        rs = M[src]
        M[dst] = [a + q * b for a, b in zip(M[dst], rs)]


def _add_col(M: Matrix, dst: int, src: int, q: int) -> None:
    if q:
        for row in M:
            row[dst] += q * row[src]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` diagonal, ``U`` and ``V`` unimodular.

    The diagonal entries are non-negative and each divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = copy(A)
    U = identity(m)
    V = identity(n)
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return U, D, V
            _, i, j = best
            if i != t:
                _swap_rows(D, t, i)
                _swap_rows(U, t, i)
            if j != t:
                _swap_cols(D, t, j)
                _swap_cols(V, t, j)
            piv = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // piv
                    _add_row(D, i, t, -q)
                    _add_row(U, i, t, -q)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // piv
                    _add_col(D, j, t, -q)
                    _add_col(V, j, t, -q)
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
                None,
            )
            if bad is None:
                break
            _add_row(D, t, bad, 1)
            _add_row(U, t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


def smith_diagonal(A: Sequence[Sequence[int]]) -> list[int]:
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def hnf_rows(vectors: Sequence[Sequence[int]], dim: int | None = None) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Zero rows are dropped, pivots are positive, and entries above each pivot
    lie in ``[0, pivot)``.  Two generating sets span the same lattice iff their
    HNFs are equal.
    """
    M = [list(map(int, v)) for v in vectors if any(v)]
    if not M:
        return []
    ncols = len(M[0]) if dim is None else dim
    r = 0
    for c in range(ncols):
        rows = [i for i in range(r, len(M)) if M[i][c]]
        if not rows:
            continue
        while True:
            rows = [i for i in range(r, len(M)) if M[i][c]]
            piv = min(rows, key=lambda i: abs(M[i][c]))
            M[r], M[piv] = M[piv], M[r]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    _add_row(M, i, r, -q)
                    if M[i][c]:
                        done = False
            if done:
                break
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
        for i in range(r):
            q = M[i][c] // M[r][c]
            _add_row(M, i, r, -q)
        r += 1
        if r == len(M):
            break
    return [row for row in M[:r]]


def kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """Basis (HNF rows) of the integer nullspace ``{x : A x = 0}``."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    _, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    cols = [[V[i][j] for i in range(n)] for j in range(r, n)]
    return hnf_rows(cols, n)


def solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Vector]:
    """An integer solution of ``A x = b`` or ``None`` when none exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [0] * n
    U, D, V = smith_normal_form(A)
    c = matvec(U, b)
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    x = matvec(V, y)
    assert matvec(A, x) == list(b)
    return x


def inverse_unimodular(A: Sequence[Sequence[int]]) -> Matrix:
    n = len(A)
    d = det(A)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={d})")
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve(A, e)
        assert x is not None
        cols.append(x)
    return from_columns(cols)


def coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[Vector]:
    """Integer coordinates of ``v`` in the lattice spanned by ``basis`` (list of vectors)."""
    if not basis:
        return [] if not any(v) else None
    return solve(from_columns(basis), v)


def index_in(big: Sequence[Sequence[int]], small: Sequence[Sequence[int]]) -> int:
    """Index ``[span(big) : span(small)]``; 0 when ``small`` is not a full-rank sublattice."""
    big_h = hnf_rows(big)
    coords = []
    for v in small:
        c = coordinates(big_h, v)
        if c is None:
            return 0
        coords.append(c)
    if len(big_h) == 0:
        return 1
    if rank(coords) < len(big_h):
        return 0
    return abs_prod(smith_diagonal(coords)[: len(big_h)])


def abs_prod(xs: Sequence[int]) -> int:
    out = 1
    for x in xs:
        out *= abs(x)
    return out


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
