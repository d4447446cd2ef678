"""Numerical conditions on the discriminant d of special cubic fourfolds.

``star``       d = 0, 2 (mod 6)                      (the divisor C_d is nonempty)
``star2``      d/2 divisible by neither 9 nor a prime p = 2 (mod 3)
``star2prime`` every prime p = 2 (mod 3) divides d/2 to an even power

The preamble bound ``d > 6`` applies to divisor labels; pass
``with_bound=False`` to test only the arithmetic part, as needed for the
cofactors d0 in ``d = k^2 d0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .arith import factorize


@dataclass(frozen=True)
class ConditionFlags:
    d: int
    star: bool
    star2: bool
    star2prime: bool
    with_bound: bool = True


def _bound_ok(d: int, with_bound: bool) -> bool:
    return d > 6 or not with_bound


def cond_star(d: int, with_bound: bool = True) -> bool:
    return _bound_ok(d, with_bound) and d > 0 and d % 6 in (0, 2)


def cond_star2(d: int, with_bound: bool = True) -> bool:
    if d <= 0 or d % 2 or not _bound_ok(d, with_bound):
        return False
    half = d // 2
    if half % 9 == 0:
        return False
    return all(p % 3 != 2 for p, _ in factorize(half))


def cond_star2prime(d: int, with_bound: bool = True) -> bool:
    if d <= 0 or d % 2 or not _bound_ok(d, with_bound):
        return False
    return all(e % 2 == 0 for p, e in factorize(d // 2) if p % 3 == 2)


def conditions(d: int, with_bound: bool = True) -> ConditionFlags:
    return ConditionFlags(
        d,
        cond_star(d, with_bound),
        cond_star2(d, with_bound),
        cond_star2prime(d, with_bound),
        with_bound,
    )


def _require_star2prime(d: int):
    if not cond_star2prime(d, with_bound=False):
        raise ValueError(f"d={d} does not satisfy (**')")


def factorizations_k2d0(d: int) -> list[tuple[int, int]]:
    """All ``(k, d0)`` with ``d = k^2 d0`` and d0 satisfying (**), by k."""
    _require_star2prime(d)
    return [
        (k, d // (k * k))
        for k in range(1, isqrt(d) + 1)
        if d % (k * k) == 0 and cond_star2(d // (k * k), with_bound=False)
    ]


def brauer_orders(d: int) -> list[int]:
    """Admissible orders k of a Brauer class: k^2 | d with d/k^2 still (**')."""
    _require_star2prime(d)
    return [
        k
        for k in range(1, isqrt(d) + 1)
        if d % (k * k) == 0 and cond_star2prime(d // (k * k), with_bound=False)
    ]


@dataclass(frozen=True)
class HilbResult:
    """Outcome of the bounded search for d a^2 = 2(n^2 + n + 1)."""

    found: bool
    a: int | None = None
    n: int | None = None
    bound: int = 0

    def __str__(self):
        if self.found:
            return f"yes(a={self.a}, n={self.n})"
        return f"no_within_bound({self.bound})"


def hilb_condition(d: int, search_bound: int = 10_000) -> HilbResult:
    """Search n in [0, search_bound] for 2(n^2 + n + 1) = d a^2."""
    if d < 2:
        raise ValueError("hilb_condition needs d >= 2")
    if search_bound < 2**20:
        n = np.arange(search_bound + 1, dtype=np.int64)
        vals = 2 * (n * n + n + 1)
        candidates = n[vals % d == 0].tolist()
    else:
        candidates = (n for n in range(search_bound + 1) if (2 * (n * n + n + 1)) % d == 0)
    for n in candidates:
        q = 2 * (n * n + n + 1) // d
        a = isqrt(q)
        if a * a == q:
            return HilbResult(True, a, n, search_bound)
    return HilbResult(False, bound=search_bound)


ROWS = ("star", "star2", "star2prime")
ROW_LABELS = {"star": "(∗)", "star2": "(∗∗)", "star2prime": "(∗∗′)"}


@dataclass(frozen=True)
class ConditionTable:
    columns: tuple[int, ...]
    rows: dict

    def members(self, row: str) -> list[int]:
        return [d for d, ok in zip(self.columns, self.rows[row]) if ok]

    def to_json(self) -> dict:
        return {"columns": list(self.columns), "rows": {r: list(self.rows[r]) for r in ROWS}}


def table(d_from: int, d_to: int) -> ConditionTable:
    """Condition table over all d in ``[d_from, d_to]`` satisfying (∗)."""
    cols = tuple(d for d in range(d_from, d_to + 1) if cond_star(d))
    rows = {
        "star": tuple(True for _ in cols),
        "star2": tuple(cond_star2(d) for d in cols),
        "star2prime": tuple(cond_star2prime(d) for d in cols),
    }
    return ConditionTable(cols, rows)
