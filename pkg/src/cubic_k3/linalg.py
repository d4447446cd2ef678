"""Exact integer and rational linear algebra.

Matrices are plain nested sequences of Python ints (or ``Fraction`` for the
rational helpers); every function returns fresh tuples-of-tuples so results
are immutable and hashable.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]
MatrixLike = Sequence[Sequence[int]]


def as_matrix(m: MatrixLike) -> IntMatrix:
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def as_rat_matrix(m) -> RatMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def shape(m) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def transpose(m):
    if not m:
        return ()
    return tuple(zip(*m))


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vecmat(v, m):
    """Row vector times matrix."""
    return matvec(transpose(m), v)


def bilinear(g, x, y):
    """Evaluate x^T g y."""
    return sum(xi * gy for xi, gy in zip(x, matvec(g, y)))


def gram_of(basis, g):
    """Gram matrix B g B^T of the rows of ``basis`` under the form ``g``."""
    bg = matmul(basis, g)
    return matmul(bg, transpose(basis))


def block_diag(*blocks) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return as_matrix(out)


def is_symmetric(m) -> bool:
    n = len(m)
    return all(len(m[i]) == n for i in range(n)) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def det(m) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
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


def rat_inverse(m) -> RatMatrix:
    """Inverse over the rationals by Gauss-Jordan; raises on singular input."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def rank(m) -> int:
    rows, _ = shape(m)
    if rows == 0:
        return 0
    h, _ = hnf(m)
    return sum(1 for row in h if any(row))


def _row_combine(rows, i, j, a, b, c, d):
    """Replace (row_i, row_j) by (a*row_i + b*row_j, c*row_i + d*row_j)."""
    ri, rj = rows[i], rows[j]
    rows[i] = [a * x + b * y for x, y in zip(ri, rj)]
    rows[j] = [c * x + d * y for x, y in zip(ri, rj)]


def hnf(m: MatrixLike) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  Pivots are
    positive, entries above a pivot lie in ``[0, pivot)``, zero rows come last.
    """
    h = [list(row) for row in as_matrix(m)]
    nrows, ncols = shape(h)
    u = [list(row) for row in identity(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            _row_combine(h, r, i, x, y, p, q)
            _row_combine(u, r, i, x, y, p, q)
        piv = h[r][c]
        if piv == 0:
            continue
        if piv < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
            piv = -piv
        for i in range(r):
            q = h[i][c] // piv
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return as_matrix(h), as_matrix(u)


def _is_diagonal(m) -> bool:
    return all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m[0])) if i != j)


def snf(m: MatrixLike) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(d, u, v)`` with ``u @ m @ v == d``.

    Computed by alternating row and column Hermite reductions, then repairing
    the divisibility chain with gcd column moves.
    """
    m = as_matrix(m)
    nrows, ncols = shape(m)
    u = identity(nrows)
    v = identity(ncols)
    d = m
    if nrows == 0 or ncols == 0:
        return d, u, v
    while True:
        while not _is_diagonal(d):
            d, u1 = hnf(d)
            u = matmul(u1, u)
            if _is_diagonal(d):
                break
            dt, v1 = hnf(transpose(d))
            d = transpose(dt)
            v = matmul(v, transpose(v1))
        # divisibility chain: a failing pair (i, j) is fixed by col_i += col_j
        k = min(nrows, ncols)
        bad = None
        for i in range(k):
            for j in range(i + 1, k):
                a, b = d[i][i], d[j][j]
                if a == 0 and b != 0 or (a != 0 and b % a != 0):
                    bad = (i, j)
                    break
            if bad:
                break
        if bad is None:
            break
        i, j = bad
        if d[i][i] == 0:
            # swap to push zeros to the end
            perm = list(range(nrows))
            perm[i], perm[j] = perm[j], perm[i]
            pr = tuple(tuple(int(perm[r] == c) for c in range(nrows)) for r in range(nrows))
            permc = list(range(ncols))
            permc[i], permc[j] = permc[j], permc[i]
            pc = tuple(tuple(int(permc[c] == r) for c in range(ncols)) for r in range(ncols))
            d = matmul(matmul(pr, d), pc)
            u = matmul(pr, u)
            v = matmul(v, pc)
            continue
        col = [[int(r == c) for c in range(ncols)] for r in range(ncols)]
        col[j][i] = 1
        col = as_matrix(col)
        d = matmul(d, col)
        v = matmul(v, col)
    # nonnegative diagonal
    signs = [1] * nrows
    for i in range(min(nrows, ncols)):
        if d[i][i] < 0:
            signs[i] = -1
    if any(s < 0 for s in signs):
        s = tuple(tuple(signs[r] if r == c else 0 for c in range(nrows)) for r in range(nrows))
        d = matmul(s, d)
        u = matmul(s, u)
    return d, u, v


def smith_invariants(m: MatrixLike) -> list[int]:
    d, _, _ = snf(m)
    return [d[i][i] for i in range(min(shape(d)))]


def int_kernel(m: MatrixLike) -> IntMatrix:
    """Basis (rows, in Hermite form) of the integer left kernel ``{x : x @ m == 0}``."""
    m = as_matrix(m)
    nrows, _ = shape(m)
    if nrows == 0:
        return ()
    h, u = hnf(m)
    ker = [u[i] for i in range(nrows) if not any(h[i])]
    if not ker:
        return ()
    kh, _ = hnf(ker)
    return tuple(row for row in kh if any(row))


def pivot_signature(g: MatrixLike) -> tuple[int, int, int]:
    """Inertia ``(positive, negative, zero)`` of a symmetric integer matrix.

    Symmetric Gaussian elimination over the rationals; when no usable diagonal
    pivot remains but an off-diagonal entry does, the congruence
    ``x_i -> x_i + x_j`` creates one.
    """
    g = as_matrix(g)
    if not is_symmetric(g):
        raise ValueError("pivot_signature needs a symmetric matrix")
    a = [[Fraction(x) for x in row] for row in g]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row_i += row_j, col_i += col_j
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f:
                for k in active:
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[i][piv] = a[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


def row_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
