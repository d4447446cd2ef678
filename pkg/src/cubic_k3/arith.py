"""Factorization, Hilbert symbols and representations by the A2 form.

A2 vectors are written in the root basis lambda_1, lambda_2 with Gram
[[2, -1], [-1, 2]], so ``(a, b)`` has norm ``2(a^2 - ab + b^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from sympy import factorint, isprime

#: Composite cofactors above this size are not factored.
FACTOR_LIMIT = 2**64
TRIAL_BOUND = 10**6

REAL = "real"
Place = Union[int, str]


class FactorizationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Factorization:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ps = [p for p, _ in self.pairs]
        if ps != sorted(set(ps)) or any(e < 1 for _, e in self.pairs):
            raise ValueError("primes must be distinct, ascending, exponents >= 1")

    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        return dict(self.pairs).get(p, 0)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other):
        if isinstance(other, (list, tuple)):
            return list(self.pairs) == [tuple(x) for x in other]
        if isinstance(other, Factorization):
            return self.pairs == other.pairs
        return NotImplemented

    def __hash__(self):
        return hash(self.pairs)


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n >= 1``.

    Numbers below 2**64 are factored completely; larger ones only by trial
    division up to ``TRIAL_BOUND``, and a composite leftover raises.
    """
    n = int(n)
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    if n < FACTOR_LIMIT:
        fac = factorint(n)
    else:
        fac = factorint(n, limit=TRIAL_BOUND, use_rho=False, use_pm1=False, use_ecm=False)
        for p in fac:
            if not isprime(p):
                raise FactorizationError(f"composite cofactor {p} beyond factoring bound")
    return Factorization(tuple(sorted((int(p), int(e)) for p, e in fac.items())))


# -- the A2 norm form ------------------------------------------------------


@dataclass(frozen=True, order=True)
class A2Vector:
    a: int
    b: int

    @property
    def norm(self) -> int:
        return 2 * (self.a * self.a - self.a * self.b + self.b * self.b)

    @property
    def primitive(self) -> bool:
        return gcd(self.a, self.b) == 1

    def __iter__(self):
        yield self.a
        yield self.b


def _check_even(two_n: int):
    if two_n % 2:
        raise ValueError(f"norms in A2 are even, got {two_n}")
    if two_n < 0:
        raise ValueError("A2 is positive definite; norm must be >= 0")


def _norm_criterion(n: int) -> bool:
    """n = a^2 - ab + b^2 solvable iff primes 2 mod 3 occur to even powers."""
    if n == 0:
        return True
    return all(e % 2 == 0 for p, e in factorize(n) if p % 3 == 2)


def a2_represents(two_n: int) -> bool:
    """Whether some w in A2 has (w)^2 = two_n (decided by factorization)."""
    _check_even(two_n)
    return _norm_criterion(two_n // 2)


def a2_vectors_of_norm(two_n: int) -> list[A2Vector]:
    """All A2 vectors of the given norm, sorted.

    Since a^2 - ab + b^2 >= max(|a|, |b|)^2 / 2, both coordinates lie in
    ``|x| <= isqrt(two_n)``.  For each b in that box the remaining quadratic
    in a is solved exactly: (2a - b)^2 = 2 * two_n - 3 b^2.
    """
    _check_even(two_n)
    if two_n == 0:
        return [A2Vector(0, 0)]
    bound = isqrt(two_n) + 1
    out = []
    for b in range(-bound, bound + 1):
        disc = 2 * two_n - 3 * b * b
        if disc < 0:
            continue
        s = isqrt(disc)
        if s * s != disc:
            continue
        for t in {s, -s}:
            if (t + b) % 2 == 0:
                out.append(A2Vector((t + b) // 2, b))
    return sorted(out)


def a2_represents_primitive(two_n: int) -> bool:
    _check_even(two_n)
    if two_n < 2:
        raise ValueError("primitive vectors have norm >= 2")
    return any(w.primitive for w in a2_vectors_of_norm(two_n))


# -- Hilbert symbols -------------------------------------------------------


def _valuation(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _as_integer(x) -> int:
    """A nonzero integer in the same square class as the rational ``x``."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    return x.numerator * x.denominator


def hilbert_symbol(a, b, p: Place) -> int:
    """Local Hilbert symbol ``(a, b)_p`` for nonzero rationals a, b.

    ``p`` is a prime or ``"real"``.  Odd p uses Legendre symbols of the unit
    parts, p = 2 the epsilon/omega formulas.
    """
    a, b = _as_integer(a), _as_integer(b)
    if p == REAL:
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"place must be a prime or 'real', got {p!r}")
    alpha, u = _valuation(a, p)
    beta, v = _valuation(b, p)
    if p == 2:
        eps_u, eps_v = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        om_u, om_v = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    eps_p = ((p - 1) // 2) % 2
    sign = -1 if (alpha * beta * eps_p) % 2 else 1
    return sign * _legendre(u, p) ** beta * _legendre(v, p) ** alpha


def relevant_places(*xs) -> list[Place]:
    """The real place, 2, and all primes dividing a numerator or denominator."""
    primes = {2}
    for x in xs:
        x = Fraction(x)
        for n in (abs(x.numerator), x.denominator):
            primes.update(p for p, _ in factorize(n))
    return [REAL] + sorted(primes)


def ternary_isotropic(n: int) -> bool:
    """Whether -n x1^2 + x2^2 + 3 x3^2 = 0 has a nontrivial rational solution.

    Equivalent to x2^2 = n x1^2 - 3 x3^2, i.e. (n, -3)_v = 1 at every place;
    only the real place, 2, 3 and primes dividing n can fail.
    """
    if n < 1:
        raise ValueError("ternary_isotropic needs n >= 1")
    return all(hilbert_symbol(n, -3, v) == 1 for v in relevant_places(n, 3))


def prime_x2_3y2(p: int) -> tuple[bool, tuple[int, int] | None]:
    """Search for p = x^2 + 3 y^2 with x, y >= 0."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    y = 0
    while 3 * y * y <= p:
        r = p - 3 * y * y
        x = isqrt(r)
        if x * x == r:
            return True, (x, y)
        y += 1
    return False, None
