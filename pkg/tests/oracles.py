"""Brute-force oracles, kept independent of the code paths they check."""

import itertools
from fractions import Fraction
from math import gcd

import numpy as np


def a2_norm_table(max_norm):
    """Sets of A2 norms <= max_norm reached by any / by a primitive vector.

    Plain box enumeration: a^2 - ab + b^2 >= (a^2 + b^2)/2, so the box
    |a|, |b| <= sqrt(max_norm) covers everything.
    """
    r = int(max_norm**0.5) + 2
    a, b = np.meshgrid(np.arange(-r, r + 1), np.arange(-r, r + 1), indexing="ij")
    norm = 2 * (a * a - a * b + b * b)
    prim = np.gcd(a, b) == 1
    ok = norm <= max_norm
    return set(norm[ok].tolist()), set(norm[ok & prim].tolist())


def a2_vectors_box(two_n):
    r = int(two_n**0.5) + 2
    return sorted(
        (a, b)
        for a in range(-r, r + 1)
        for b in range(-r, r + 1)
        if 2 * (a * a - a * b + b * b) == two_n
    )


def _square_class(x, p):
    x = Fraction(x)
    n = x.numerator * x.denominator
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v % 2, n


def hilbert_by_search(a, b, p):
    """(a, b)_p from primitive solvability of z^2 = a x^2 + b y^2 mod p^k.

    Coefficients are reduced to valuation 0 or 1; then a primitive solution
    mod 2^5 (p = 2) or p^3 (p odd) lifts by Hensel's lemma.
    """
    k = 5 if p == 2 else 3
    mod = p**k
    va, ua = _square_class(a, p)
    vb, ub = _square_class(b, p)
    ca = (p**va * ua) % mod
    cb = (p**vb * ub) % mod
    xs = np.arange(mod, dtype=np.int64)
    sq = (xs * xs) % mod
    unit = xs % p != 0
    sq_any = np.zeros(mod, dtype=bool)
    sq_any[sq] = True
    sq_unit = np.zeros(mod, dtype=bool)
    sq_unit[sq[unit]] = True
    t = (ca * sq[:, None] + cb * sq[None, :]) % mod
    xy_unit = unit[:, None] | unit[None, :]
    ok = np.where(xy_unit, sq_any[t], sq_unit[t])
    return 1 if ok.any() else -1


def determinantal_invariants(m):
    """Smith invariants from gcds of k x k minors."""
    rows, cols = len(m), len(m[0])
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                sub = [[m[i][j] for j in ci] for i in ri]
                g = gcd(g, _det(sub))
        if g == 0:
            out.extend([0] * (min(rows, cols) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)))
